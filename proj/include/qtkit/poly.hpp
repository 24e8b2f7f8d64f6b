#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qtkit/context.hpp"
#include "qtkit/degree.hpp"
#include "qtkit/scalar.hpp"

namespace qtkit {

// Exponent vector, compared in graded lexicographic order (total degree
// first, then the exponents with the context's declared variable order).
struct Monomial {
    std::uint32_t degree = 0;
    std::vector<std::uint32_t> exps;

    static Monomial one(std::size_t n) { return Monomial{0, std::vector<std::uint32_t>(n, 0)}; }
    static Monomial of(std::vector<std::uint32_t> e);

    std::size_t size() const { return exps.size(); }

    bool divides(const Monomial& o) const;
    Monomial times(const Monomial& o) const;
    Monomial divided_by(const Monomial& o) const; // requires o.divides(*this)

    auto operator<=>(const Monomial&) const = default;
};

// Sparse multivariate polynomial over the Gaussian rationals in a fixed
// variable context. Terms are kept in canonical (graded lex) order with no
// zero coefficients, so equal polynomials have identical representations.
class Poly {
public:
    using TermMap = std::map<Monomial, Scalar>;

    explicit Poly(VarContext ctx) : ctx_(std::move(ctx)) {}

    static Poly zero(VarContext ctx) { return Poly(std::move(ctx)); }
    static Poly constant(VarContext ctx, Scalar c);
    static Poly one(VarContext ctx) { return constant(std::move(ctx), Scalar(1)); }
    static Poly variable(VarContext ctx, std::size_t index);
    static Poly monomial(VarContext ctx, Monomial m, Scalar c);

    const VarContext& context() const { return ctx_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    bool is_constant() const; // zero or a single degree-0 term
    Scalar constant_value() const; // requires is_constant()

    Scalar coefficient(const Monomial& m) const;

    Degree total_degree() const;
    Degree degree_in(std::span<const std::size_t> vars) const;
    Degree degree_in(std::size_t var) const;

    // Homogeneity: the zero polynomial is homogeneous (of no particular
    // degree); otherwise every term must share one total degree.
    bool is_homogeneous() const;
    std::optional<long> homogeneous_degree() const; // nullopt for zero

    // Decomposition into homogeneous parts, degrees strictly increasing.
    std::vector<std::pair<long, Poly>> homogeneous_components() const;

    Poly derivative(std::size_t var) const;

    // Simultaneous substitution: variable k of this context maps to
    // images[k], which must all live in `target`.
    Poly substituted(const std::vector<Poly>& images, const VarContext& target) const;

    Poly embedded(const VarContext& bigger) const; // this context must be a prefix

    // Exact division; nullopt when the divisor does not divide exactly.
    std::optional<Poly> divided_exactly(const Poly& divisor) const;

    Scalar leading_coefficient() const; // 0 for the zero polynomial
    const Monomial* leading_monomial() const; // nullptr for the zero polynomial
    Poly monic() const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly pow(std::uint32_t k) const;
    Poly scaled(const Scalar& c) const;

    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const Poly& p); // io.cpp

private:
    void add_term(const Monomial& m, const Scalar& c);
    static void align(Poly& a, Poly& b); // embed along prefix or throw

    VarContext ctx_;
    TermMap terms_;

    friend Poly gcd(Poly a, Poly b);
};

// Multivariate gcd, normalized primitive with leading coefficient 1 under the
// canonical term order. Computed by recursive content/primitive-part
// reduction with a subresultant PRS in the innermost variable.
Poly gcd(Poly a, Poly b);
Poly gcd_many(std::span<const Poly> ps); // errors on an all-zero input list

} // namespace qtkit
