#include <cstdint>
#include <optional>
#include <vector>

#include "qtkit/errors.hpp"
#include "qtkit/poly.hpp"

namespace qtkit {

namespace {

long deg_in_var(const Poly& p, std::size_t k) {
    Degree d = p.degree_in(k);
    return d.finite() ? d.value() : -1;
}

// Coefficient of x_k^e, as a polynomial with the x_k exponent cleared.
Poly coeff_in_var(const Poly& p, std::size_t k, std::uint32_t e) {
    Poly out(p.context());
    for (const auto& [m, c] : p.terms()) {
        if (m.exps[k] != e) continue;
        Monomial rest = m;
        rest.degree -= e;
        rest.exps[k] = 0;
        out += Poly::monomial(p.context(), std::move(rest), c);
    }
    return out;
}

std::vector<Poly> coeffs_in_var(const Poly& p, std::size_t k) {
    const long d = deg_in_var(p, k);
    std::vector<Poly> out;
    for (long e = 0; e <= d; ++e)
        out.push_back(coeff_in_var(p, k, static_cast<std::uint32_t>(e)));
    return out;
}

Poly shift_var(const Poly& p, std::size_t k, std::uint32_t e) {
    Monomial m = Monomial::one(p.context().size());
    m.exps[k] = e;
    m.degree = e;
    return p * Poly::monomial(p.context(), std::move(m), Scalar(1));
}

Poly exact_div(const Poly& a, const Poly& b) {
    auto q = a.divided_exactly(b);
    if (!q) throw theorem_violation("inexact division inside gcd");
    return *q;
}

// Pseudo-remainder of a by b with respect to x_k: lc_k(b)^(da-db+1) * a mod b.
Poly prem(const Poly& a, const Poly& b, std::size_t k) {
    const long db = deg_in_var(b, k);
    const Poly lb = coeff_in_var(b, k, static_cast<std::uint32_t>(db));
    Poly r = a;
    long steps = deg_in_var(a, k) - db + 1;
    while (!r.is_zero()) {
        const long dr = deg_in_var(r, k);
        if (dr < db) break;
        const Poly lr = coeff_in_var(r, k, static_cast<std::uint32_t>(dr));
        r = r * lb - shift_var(lr, k, static_cast<std::uint32_t>(dr - db)) * b;
        --steps;
    }
    for (; steps > 0; --steps) r = r * lb;
    return r;
}

Poly primitive_part(const Poly& p, std::size_t k, Poly* content_out) {
    auto coeffs = coeffs_in_var(p, k);
    std::erase_if(coeffs, [](const Poly& c) { return c.is_zero(); });
    Poly content = gcd_many(coeffs);
    if (content_out) *content_out = content;
    return exact_div(p, content);
}

} // namespace

Poly gcd(Poly a, Poly b) {
    {
        // Align contexts up front; everything below stays in one context.
        Poly sum = a;
        sum += b;
        a = a.embedded(sum.context());
        b = b.embedded(sum.context());
    }
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return Poly::one(a.context());

    // Innermost variable actually present in either argument.
    std::size_t k = 0;
    bool found = false;
    for (std::size_t v = a.context().size(); v-- > 0;) {
        if (deg_in_var(a, v) > 0 || deg_in_var(b, v) > 0) {
            k = v;
            found = true;
            break;
        }
    }
    if (!found) return Poly::one(a.context());

    Poly cont_a(a.context()), cont_b(b.context());
    Poly A = primitive_part(a, k, &cont_a);
    Poly B = primitive_part(b, k, &cont_b);
    const Poly c = gcd(cont_a, cont_b);

    if (deg_in_var(A, k) < deg_in_var(B, k)) std::swap(A, B);

    // Subresultant PRS; divisors are exact by the subresultant theory.
    Poly g = Poly::one(a.context());
    Poly h = Poly::one(a.context());
    Poly result(a.context());
    while (true) {
        if (B.is_zero()) {
            result = primitive_part(A, k, nullptr);
            break;
        }
        if (deg_in_var(B, k) == 0) {
            result = Poly::one(a.context());
            break;
        }
        const long delta = deg_in_var(A, k) - deg_in_var(B, k);
        Poly R = prem(A, B, k);
        A = B;
        Poly divisor = g;
        for (long i = 0; i < delta; ++i) divisor = divisor * h;
        B = R.is_zero() ? R : exact_div(R, divisor);
        g = coeff_in_var(A, k, static_cast<std::uint32_t>(deg_in_var(A, k)));
        if (delta == 1) {
            h = g;
        } else if (delta > 1) {
            Poly gd = g;
            for (long i = 1; i < delta; ++i) gd = gd * g;
            Poly hd = h;
            for (long i = 2; i < delta; ++i) hd = hd * h;
            h = exact_div(gd, hd);
        }
    }
    return (c * result).monic();
}

Poly gcd_many(std::span<const Poly> ps) {
    const Poly* first_nonzero = nullptr;
    for (const auto& p : ps) {
        if (!p.is_zero()) {
            first_nonzero = &p;
            break;
        }
    }
    if (!first_nonzero) throw precondition_error("gcd of an all-zero list");
    Poly acc = first_nonzero->monic();
    for (const auto& p : ps) {
        if (&p == first_nonzero || p.is_zero()) continue;
        acc = gcd(acc, p);
        if (acc.is_constant()) return Poly::one(acc.context());
    }
    return acc;
}

} // namespace qtkit
