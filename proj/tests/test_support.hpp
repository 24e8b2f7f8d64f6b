// Shared helpers for the test suites: seeded random generators and small
// independent oracle implementations (cofactor determinant, minor-based rank,
// naive relation search). The oracles deliberately avoid the library's
// elimination paths.
#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "qtkit/io.hpp"
#include "qtkit/map.hpp"
#include "qtkit/matrix.hpp"
#include "qtkit/poly.hpp"

namespace testsupport {

using qtkit::Monomial;
using qtkit::Poly;
using qtkit::PolyMap;
using qtkit::PolyMatrix;
using qtkit::Scalar;
using qtkit::ScalarMatrix;
using qtkit::VarContext;

using Rng = std::mt19937_64;

inline Scalar random_scalar(Rng& rng, bool allow_imaginary = true) {
    std::uniform_int_distribution<int> num(-3, 3);
    Scalar s(num(rng));
    if (allow_imaginary && std::uniform_int_distribution<int>(0, 4)(rng) == 0)
        s += Scalar::i() * Scalar(num(rng));
    return s;
}

inline Scalar random_nonzero_scalar(Rng& rng, bool allow_imaginary = true) {
    for (;;) {
        Scalar s = random_scalar(rng, allow_imaginary);
        if (!s.is_zero()) return s;
    }
}

inline Poly random_poly(Rng& rng, const VarContext& ctx, int max_terms, int max_var_exp,
                        bool allow_imaginary = true) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> exp(0, max_var_exp);
    Poly p = Poly::zero(ctx);
    const int k = nterms(rng);
    for (int t = 0; t < k; ++t) {
        std::vector<std::uint32_t> e(ctx.size());
        for (auto& x : e) x = static_cast<std::uint32_t>(exp(rng));
        p += Poly::monomial(ctx, Monomial::of(e), random_scalar(rng, allow_imaginary));
    }
    return p;
}

inline Poly random_poly_total_degree(Rng& rng, const VarContext& ctx, int max_terms,
                                     long max_total_degree, bool allow_imaginary = true) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    Poly p = Poly::zero(ctx);
    const int k = nterms(rng);
    for (int t = 0; t < k; ++t) {
        std::vector<std::uint32_t> e(ctx.size(), 0);
        long budget = std::uniform_int_distribution<long>(0, max_total_degree)(rng);
        while (budget > 0) {
            const std::size_t v =
                std::uniform_int_distribution<std::size_t>(0, ctx.size() - 1)(rng);
            ++e[v];
            --budget;
        }
        p += Poly::monomial(ctx, Monomial::of(e), random_scalar(rng, allow_imaginary));
    }
    return p;
}

inline Poly random_linear_form(Rng& rng, const VarContext& ctx) {
    Poly l = Poly::zero(ctx);
    for (std::size_t i = 0; i < ctx.size(); ++i)
        l += Poly::variable(ctx, i).scaled(random_scalar(rng, false));
    return l;
}

// Random exactly invertible matrix: a signed permutation composed with a few
// unit shears. Stays sparse, so conjugated maps remain cheap to compose.
inline ScalarMatrix random_invertible_matrix(Rng& rng, std::size_t n, int shears = 2) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    ScalarMatrix T(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const int sign = std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1;
        T.at(i, perm[i]) = Scalar(sign);
    }
    for (int s = 0; s < shears; ++s) {
        std::size_t i = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
        std::size_t j = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
        if (i == j) continue;
        ScalarMatrix E = ScalarMatrix::identity(n);
        E.at(i, j) = Scalar(std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1);
        T = E * T;
    }
    return T;
}

// --- oracles -------------------------------------------------------------

inline Poly cofactor_det(const PolyMatrix& m) {
    const std::size_t n = m.rows();
    if (n == 0) return Poly::one(m.context());
    if (n == 1) return m.at(0, 0);
    Poly acc = Poly::zero(m.context());
    for (std::size_t j = 0; j < n; ++j) {
        if (m.at(0, j).is_zero()) continue;
        PolyMatrix minor(n - 1, n - 1, m.context());
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor.at(r - 1, cc++) = m.at(r, c);
            }
        }
        Poly term = m.at(0, j) * cofactor_det(minor);
        if (j % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    return acc;
}

// Largest k such that some k x k minor is nonzero, by exhaustion.
inline std::size_t minor_rank(const PolyMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    const std::size_t maxk = std::min(rows, cols);
    auto combinations = [](std::size_t n, std::size_t k) {
        std::vector<std::vector<std::size_t>> out;
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
        for (;;) {
            out.push_back(idx);
            std::size_t i = k;
            while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
        return out;
    };
    for (std::size_t k = maxk; k >= 1; --k) {
        for (const auto& rsel : combinations(rows, k))
            for (const auto& csel : combinations(cols, k)) {
                PolyMatrix sub(k, k, m.context());
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j)
                        sub.at(i, j) = m.at(rsel[i], csel[j]);
                if (!cofactor_det(sub).is_zero()) return k;
            }
    }
    return 0;
}

// Naive degree-bounded relation search: own monomial enumeration, own row
// assembly, textbook Gauss-Jordan parameterized by back-substitution.
struct NaiveRelations {
    std::vector<Poly> generators;              // normalized, in y1..yn
    std::vector<std::size_t> dims_per_degree;  // index d = dim of space at degree <= d
};

inline void naive_enumerate(std::size_t n, long d, std::size_t pos,
                            std::vector<std::uint32_t>& cur,
                            std::vector<std::vector<std::uint32_t>>& out) {
    if (pos == n) {
        out.push_back(cur);
        return;
    }
    long used = 0;
    for (std::size_t i = 0; i < pos; ++i) used += cur[i];
    for (long e = 0; used + e <= d; ++e) {
        cur[pos] = static_cast<std::uint32_t>(e);
        naive_enumerate(n, d, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

inline NaiveRelations naive_relations(const PolyMap& H, long dmax) {
    using qtkit::Degree;
    const std::size_t n = H.dimension();
    const VarContext yctx = VarContext::ys(n);

    std::vector<std::vector<std::uint32_t>> alphas;
    {
        std::vector<std::uint32_t> cur(n, 0);
        naive_enumerate(n, dmax, 0, cur, alphas);
    }
    // Sort by (total degree, exponent vector) descending so that the reduced
    // echelon normalization matches the library's documented pivot order.
    std::sort(alphas.begin(), alphas.end(),
              [](const auto& a, const auto& b) {
                  long da = 0, db = 0;
                  for (auto v : a) da += v;
                  for (auto v : b) db += v;
                  if (da != db) return da > db;
                  return a > b;
              });

    std::vector<Poly> images;
    images.reserve(alphas.size());
    for (const auto& a : alphas) {
        Poly prod = Poly::one(H.context());
        for (std::size_t i = 0; i < n; ++i)
            for (std::uint32_t e = 0; e < a[i]; ++e) prod = prod * H.component(i);
        images.push_back(prod);
    }

    // Rows: one per x-monomial present anywhere.
    std::vector<Monomial> row_keys;
    for (const auto& p : images)
        for (const auto& [m, c] : p.terms()) row_keys.push_back(m);
    std::sort(row_keys.begin(), row_keys.end());
    row_keys.erase(std::unique(row_keys.begin(), row_keys.end()), row_keys.end());

    std::vector<std::vector<Scalar>> M(row_keys.size(),
                                       std::vector<Scalar>(alphas.size(), Scalar(0)));
    for (std::size_t c = 0; c < alphas.size(); ++c)
        for (const auto& [m, coeff] : images[c].terms()) {
            const auto it = std::lower_bound(row_keys.begin(), row_keys.end(), m);
            M[static_cast<std::size_t>(it - row_keys.begin())][c] = coeff;
        }

    // Textbook RREF.
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < alphas.size() && r < M.size(); ++c) {
        std::size_t pr = r;
        while (pr < M.size() && M[pr][c].is_zero()) ++pr;
        if (pr == M.size()) continue;
        std::swap(M[pr], M[r]);
        Scalar inv = Scalar(1) / M[r][c];
        for (auto& x : M[r]) x = x * inv;
        for (std::size_t i = 0; i < M.size(); ++i) {
            if (i == r || M[i][c].is_zero()) continue;
            const Scalar f = M[i][c];
            for (std::size_t j = 0; j < alphas.size(); ++j) M[i][j] -= f * M[r][j];
        }
        pivot_cols.push_back(c);
        ++r;
    }

    NaiveRelations out;
    std::vector<bool> is_pivot(alphas.size(), false);
    for (auto c : pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<Scalar>> basis;
    for (std::size_t f = 0; f < alphas.size(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<Scalar> v(alphas.size(), Scalar(0));
        v[f] = Scalar(1);
        for (std::size_t pi = 0; pi < pivot_cols.size(); ++pi)
            v[pivot_cols[pi]] = -M[pi][f];
        basis.push_back(std::move(v));
    }
    // Bring the basis itself to reduced echelon form over the descending
    // monomial order; that canonical form is what generators are compared in.
    {
        std::size_t rr = 0;
        for (std::size_t c = 0; c < alphas.size() && rr < basis.size(); ++c) {
            std::size_t pr = rr;
            while (pr < basis.size() && basis[pr][c].is_zero()) ++pr;
            if (pr == basis.size()) continue;
            std::swap(basis[pr], basis[rr]);
            const Scalar inv = Scalar(1) / basis[rr][c];
            for (auto& x : basis[rr]) x = x * inv;
            for (std::size_t i = 0; i < basis.size(); ++i) {
                if (i == rr || basis[i][c].is_zero()) continue;
                const Scalar f2 = basis[i][c];
                for (std::size_t j = 0; j < alphas.size(); ++j)
                    basis[i][j] -= f2 * basis[rr][j];
            }
            ++rr;
        }
    }
    for (const auto& v : basis) {
        Poly R(yctx);
        for (std::size_t c = 0; c < alphas.size(); ++c)
            if (!v[c].is_zero()) R += Poly::monomial(yctx, Monomial::of(alphas[c]), v[c]);
        if (!R.is_zero()) out.generators.push_back(R);
    }
    std::sort(out.generators.begin(), out.generators.end(),
              [](const Poly& a, const Poly& b) {
                  return qtkit::format_poly(a) < qtkit::format_poly(b);
              });

    out.dims_per_degree.assign(static_cast<std::size_t>(dmax) + 1, 0);
    for (long d = 1; d <= dmax; ++d) {
        std::size_t count = 0;
        for (const auto& g : out.generators) {
            const Degree gd = g.total_degree();
            if (gd <= Degree(d)) ++count;
        }
        out.dims_per_degree[static_cast<std::size_t>(d)] = count;
    }
    return out;
}

} // namespace testsupport
