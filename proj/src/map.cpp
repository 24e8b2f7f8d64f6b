#include "qtkit/map.hpp"

#include "qtkit/errors.hpp"

namespace qtkit {

PolyMap::PolyMap(VarContext ctx, std::vector<Poly> components)
    : ctx_(std::move(ctx)), components_(std::move(components)) {
    if (components_.size() != ctx_.size())
        throw precondition_error("map needs one component per variable");
    for (auto& c : components_) {
        if (c.context() == ctx_) continue;
        if (c.context().prefix_of(ctx_)) {
            c = c.embedded(ctx_);
        } else {
            throw precondition_error("map component in an incompatible context");
        }
    }
}

PolyMap PolyMap::zero(std::size_t n) {
    VarContext ctx = VarContext::xs(n);
    std::vector<Poly> comps(n, Poly::zero(ctx));
    return PolyMap(std::move(ctx), std::move(comps));
}

PolyMap PolyMap::identity(std::size_t n) {
    VarContext ctx = VarContext::xs(n);
    std::vector<Poly> comps;
    comps.reserve(n);
    for (std::size_t i = 0; i < n; ++i) comps.push_back(Poly::variable(ctx, i));
    return PolyMap(std::move(ctx), std::move(comps));
}

bool PolyMap::is_zero() const {
    for (const auto& c : components_)
        if (!c.is_zero()) return false;
    return true;
}

Degree PolyMap::degree() const {
    Degree d = Degree::neg_inf();
    for (const auto& c : components_) d = std::max(d, c.total_degree());
    return d;
}

bool PolyMap::is_homogeneous() const {
    std::optional<long> common;
    for (const auto& c : components_) {
        if (c.is_zero()) continue;
        auto d = c.homogeneous_degree();
        if (!d) return false;
        if (common && *common != *d) return false;
        common = d;
    }
    return true;
}

std::optional<long> PolyMap::homogeneous_common_degree() const {
    if (!is_homogeneous()) return std::nullopt;
    for (const auto& c : components_)
        if (!c.is_zero()) return c.homogeneous_degree();
    return std::nullopt; // zero map
}

Poly PolyMap::evaluate(const Poly& f) const {
    if (f.context().size() != components_.size())
        throw precondition_error("evaluate: arity mismatch");
    return f.substituted(components_, ctx_);
}

PolyMap PolyMap::composed(const PolyMap& inner) const {
    if (inner.dimension() != dimension())
        throw precondition_error("compose: dimension mismatch");
    std::vector<Poly> comps;
    comps.reserve(components_.size());
    for (const auto& c : components_) comps.push_back(inner.evaluate(c));
    return PolyMap(inner.context(), std::move(comps));
}

PolyMap PolyMap::scaled(const Poly& g) const {
    std::vector<Poly> comps;
    comps.reserve(components_.size());
    for (const auto& c : components_) comps.push_back(c * g);
    return PolyMap(ctx_, std::move(comps));
}

bool operator==(const PolyMap& a, const PolyMap& b) {
    if (a.dimension() != b.dimension()) return false;
    for (std::size_t i = 0; i < a.dimension(); ++i)
        if (a.component(i) != b.component(i)) return false;
    return true;
}

} // namespace qtkit
