#include "qtkit/context.hpp"

#include <algorithm>
#include <unordered_set>

#include "qtkit/errors.hpp"

namespace qtkit {

VarContext::VarContext(std::vector<std::string> names) {
    std::unordered_set<std::string> seen;
    for (const auto& n : names) {
        if (n.empty()) throw precondition_error("empty variable name");
        if (!seen.insert(n).second)
            throw precondition_error("duplicate variable name: " + n);
    }
    names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
}

VarContext VarContext::xs(std::size_t n) {
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
    return VarContext(std::move(names));
}

VarContext VarContext::ys(std::size_t n) {
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) names.push_back("y" + std::to_string(i));
    return VarContext(std::move(names));
}

std::optional<std::size_t> VarContext::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_->size(); ++i)
        if ((*names_)[i] == name) return i;
    return std::nullopt;
}

VarContext VarContext::adjoined(const std::string& name) const {
    std::vector<std::string> names = *names_;
    names.push_back(name);
    return VarContext(std::move(names));
}

bool VarContext::prefix_of(const VarContext& other) const {
    if (size() > other.size()) return false;
    return std::equal(names_->begin(), names_->end(), other.names_->begin());
}

} // namespace qtkit
