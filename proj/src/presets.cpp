#include "qtkit/presets.hpp"

#include "qtkit/io.hpp"

namespace qtkit {

namespace {

PolyMap make_map(std::initializer_list<const char*> comps) {
    const VarContext ctx = VarContext::xs(5);
    std::vector<Poly> components;
    for (const char* text : comps) components.push_back(parse_poly(text, ctx));
    return PolyMap(ctx, std::move(components));
}

} // namespace

std::vector<std::string> preset_names() { return {"a1", "a2", "b", "perazzo"}; }

std::optional<PolyMap> preset_map(std::string_view name) {
    if (name == "a1")
        return make_map({"x4^2", "x4*x5", "x1*x5 - x2*x4", "0", "0"});
    if (name == "a2")
        return make_map({
            "x5^2*((x1*x4 - x2*x3)*x1 - x5^2*x2)",
            "(x1*x4 - x2*x3)*((x1*x4 - x2*x3)*x1 - x5^2*x2)",
            "x5^2*((x1*x4 - x2*x3)*x3 - x5^2*x4)",
            "(x1*x4 - x2*x3)*((x1*x4 - x2*x3)*x3 - x5^2*x4)",
            "0",
        });
    if (name == "b")
        return make_map({
            "x5^5",
            "(x1*x3 - x2^2 + x4*x5)*x5^3",
            "(x1*x3 - x2^2 + x4*x5)^2*x5",
            "-(x1*x3 - x2^2 + x4*x5)^2*x1 + 2*(x1*x3 - x2^2 + x4*x5)*x2*x5^2 - x3*x5^4",
            "0",
        });
    return std::nullopt;
}

std::optional<Poly> preset_poly(std::string_view name) {
    if (name == "perazzo")
        return parse_poly("x1*x4^2 + x2*x4*x5 + x3*x5^2", VarContext::xs(5));
    return std::nullopt;
}

} // namespace qtkit
