#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qtkit/poly.hpp"

namespace qtkit {

// Polynomial map H = (H_1, ..., H_n) in x1..xn; the map under study is
// always x + H. Dimension equals the context size.
class PolyMap {
public:
    PolyMap(VarContext ctx, std::vector<Poly> components);

    static PolyMap zero(std::size_t n);
    static PolyMap identity(std::size_t n);

    std::size_t dimension() const { return components_.size(); }
    const VarContext& context() const { return ctx_; }
    const Poly& component(std::size_t i) const { return components_[i]; }
    std::span<const Poly> components() const { return components_; }

    bool is_zero() const;
    Degree degree() const; // max over components; -inf for the zero map

    // Common-degree homogeneity: every nonzero component homogeneous of one
    // shared total degree (zero components are compatible with any degree).
    bool is_homogeneous() const;
    std::optional<long> homogeneous_common_degree() const; // nullopt for zero map

    // f(H): substitute component i for variable i of f's context. f may live
    // in any context of the same size (e.g. y1..yn).
    Poly evaluate(const Poly& f) const;

    // this o inner, componentwise.
    PolyMap composed(const PolyMap& inner) const;

    PolyMap scaled(const Poly& g) const;

    friend bool operator==(const PolyMap& a, const PolyMap& b);
    friend bool operator!=(const PolyMap& a, const PolyMap& b) { return !(a == b); }

private:
    VarContext ctx_;
    std::vector<Poly> components_;
};

} // namespace qtkit
