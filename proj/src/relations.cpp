#include "qtkit/relations.hpp"

#include <algorithm>
#include <map>

#include "qtkit/errors.hpp"

namespace qtkit {

namespace {

void enumerate_exact(std::size_t n, long d, std::size_t pos,
                     std::vector<std::uint32_t>& cur, std::vector<Monomial>& out) {
    if (pos + 1 == n) {
        cur[pos] = static_cast<std::uint32_t>(d);
        out.push_back(Monomial::of(cur));
        cur[pos] = 0;
        return;
    }
    for (long e = 0; e <= d; ++e) {
        cur[pos] = static_cast<std::uint32_t>(e);
        enumerate_exact(n, d - e, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

// All monomials of total degree exactly d, ascending graded-lex.
std::vector<Monomial> monomials_of_degree(std::size_t n, long d) {
    std::vector<Monomial> out;
    if (n == 0) return out;
    std::vector<std::uint32_t> cur(n, 0);
    enumerate_exact(n, d, 0, cur, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Monomial> monomials_up_to(std::size_t n, long d) {
    std::vector<Monomial> out;
    for (long e = 0; e <= d; ++e) {
        auto level = monomials_of_degree(n, e);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

// Cache of component powers H_i^k.
class PowerCache {
public:
    explicit PowerCache(const PolyMap& H) : H_(H), pows_(H.dimension()) {
        for (std::size_t i = 0; i < H.dimension(); ++i)
            pows_[i].push_back(Poly::one(H.context()));
    }

    const Poly& get(std::size_t i, std::uint32_t k) {
        auto& v = pows_[i];
        while (v.size() <= k) v.push_back(v.back() * H_.component(i));
        return v[k];
    }

private:
    const PolyMap& H_;
    std::vector<std::vector<Poly>> pows_;
};

Poly power_product(PowerCache& cache, const PolyMap& H, const Monomial& alpha) {
    Poly out = Poly::one(H.context());
    for (std::size_t i = 0; i < alpha.size(); ++i)
        if (alpha.exps[i] > 0) out = out * cache.get(i, alpha.exps[i]);
    return out;
}

// Nullspace of the coefficient system over the candidate monomials. Columns
// are processed in ascending graded-lex order, which makes the free-column
// basis the reduced echelon basis of the solution space with graded-lex
// pivot order (each generator monic at its leading monomial).
std::vector<std::vector<Scalar>> nullspace_basis(const PolyMap& H,
                                                 const std::vector<Monomial>& cols,
                                                 PowerCache& cache,
                                                 std::size_t entry_cap) {
    std::map<Monomial, std::vector<Scalar>> row_map;
    std::size_t entries = 0;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        Poly p = power_product(cache, H, cols[c]);
        for (const auto& [m, coeff] : p.terms()) {
            auto [it, fresh] = row_map.try_emplace(m);
            if (fresh) it->second.assign(cols.size(), Scalar(0));
            it->second[c] = coeff;
            if (++entries > entry_cap)
                throw resource_limit_error(
                    "relation system exceeds the entry cap (" +
                    std::to_string(entry_cap) + " entries); raise the cap or lower dmax");
        }
    }
    if (!cols.empty() && row_map.size() > entry_cap / cols.size())
        throw resource_limit_error(
            "relation system of " + std::to_string(row_map.size()) + "x" +
            std::to_string(cols.size()) + " exceeds the entry cap (" +
            std::to_string(entry_cap) + "); raise the cap or lower dmax");
    std::vector<std::vector<Scalar>> rows;
    rows.reserve(row_map.size());
    for (auto& [m, row] : row_map) rows.push_back(std::move(row));

    const std::size_t ncols = cols.size();
    std::vector<std::pair<std::size_t, std::size_t>> pivots; // (row, col)
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
        std::size_t pivot = r;
        while (pivot < rows.size() && rows[pivot][c].is_zero()) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[pivot], rows[r]);
        const Scalar d = rows[r][c];
        for (std::size_t j = c; j < ncols; ++j) rows[r][j] = rows[r][j] / d;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c].is_zero()) continue;
            const Scalar f = rows[i][c];
            for (std::size_t j = c; j < ncols; ++j) rows[i][j] -= f * rows[r][j];
        }
        pivots.emplace_back(r, c);
        ++r;
    }

    std::vector<bool> is_pivot(ncols, false);
    for (auto [pr, pc] : pivots) is_pivot[pc] = true;
    std::vector<std::vector<Scalar>> basis;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Scalar> v(ncols, Scalar(0));
        v[f] = Scalar(1);
        for (auto [pr, pc] : pivots) v[pc] = -rows[pr][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

Relation make_relation(const PolyMap& H, const VarContext& yctx,
                       const std::vector<Monomial>& cols, const std::vector<Scalar>& v) {
    Poly R(yctx);
    for (std::size_t c = 0; c < cols.size(); ++c)
        if (!v[c].is_zero()) R += Poly::monomial(yctx, cols[c], v[c]);
    const long degree = R.total_degree().finite() ? R.total_degree().value() : 0;
    const bool certified = H.evaluate(R).is_zero();
    if (!certified)
        throw theorem_violation("nullspace generator failed the substitution re-check");
    return Relation{std::move(R), degree, certified};
}

} // namespace

std::vector<Relation> linear_relations(const PolyMap& H) {
    const std::size_t n = H.dimension();
    const VarContext yctx = VarContext::ys(n);
    const auto cols = monomials_of_degree(n, 1);
    PowerCache cache(H);
    auto basis = nullspace_basis(H, cols, cache, kDefaultRelationEntryCap);
    std::vector<Relation> out;
    out.reserve(basis.size());
    for (const auto& v : basis) out.push_back(make_relation(H, yctx, cols, v));
    return out;
}

RelationBasis find_relations(const PolyMap& H, long dmax, std::size_t entry_cap) {
    if (dmax < 1) throw precondition_error("find_relations needs dmax >= 1");
    const std::size_t n = H.dimension();
    const VarContext yctx = VarContext::ys(n);
    RelationBasis result;
    result.degree_bound = dmax;
    result.dims_per_degree.assign(static_cast<std::size_t>(dmax) + 1, 0);
    PowerCache cache(H);

    // Relations of a common-degree homogeneous map of degree >= 1 (or of the
    // zero map) split into homogeneous parts, so the search runs per degree.
    // Constant maps do not have this property.
    const auto common = H.homogeneous_common_degree();
    const bool homogeneous_mode = H.is_homogeneous() && (!common || *common >= 1);
    if (homogeneous_mode) {
        for (long d = 1; d <= dmax; ++d) {
            const auto cols = monomials_of_degree(n, d);
            auto basis = nullspace_basis(H, cols, cache, entry_cap);
            for (const auto& v : basis)
                result.generators.push_back(make_relation(H, yctx, cols, v));
            result.dims_per_degree[static_cast<std::size_t>(d)] =
                result.dims_per_degree[static_cast<std::size_t>(d - 1)] + basis.size();
        }
    } else {
        const auto cols = monomials_up_to(n, dmax);
        auto basis = nullspace_basis(H, cols, cache, entry_cap);
        for (const auto& v : basis)
            result.generators.push_back(make_relation(H, yctx, cols, v));
        for (long d = 1; d <= dmax; ++d) {
            std::size_t count = 0;
            for (const auto& g : result.generators)
                if (g.degree <= d) ++count;
            result.dims_per_degree[static_cast<std::size_t>(d)] = count;
        }
    }

    for (const auto& g : result.generators) {
        if (!result.minimal_degree || g.degree < *result.minimal_degree)
            result.minimal_degree = g.degree;
    }
    return result;
}

long default_relation_bound(std::size_t dimension, Degree map_degree,
                            std::size_t entry_cap) {
    const unsigned long long e =
        map_degree.finite() && map_degree.value() > 1
            ? static_cast<unsigned long long>(map_degree.value())
            : 1;
    auto binom = [&](unsigned long long n, unsigned long long k) {
        unsigned long long c = 1;
        for (unsigned long long i = 1; i <= k; ++i) {
            c = c * (n - k + i) / i;
            if (c > 4 * entry_cap) return c; // saturate
        }
        return c;
    };
    long d = 1;
    while (d < 8) {
        const unsigned long long next = static_cast<unsigned long long>(d) + 1;
        const unsigned long long cols = binom(dimension + next, next);
        const unsigned long long rows =
            dimension >= 1 ? binom(next * e + dimension - 1, dimension - 1) : 1;
        if (cols > entry_cap / std::max(1ULL, rows)) break;
        ++d;
    }
    return d;
}

Poly reduce_mod_linear(const Relation& R, std::span<const Relation> linear) {
    if (linear.empty()) return R.R;
    const VarContext& yctx = R.R.context();
    const std::size_t n = yctx.size();

    // Rows over columns y1 > y2 > ... > yn > constant.
    std::vector<std::vector<Scalar>> rows;
    for (const auto& l : linear) {
        if (l.R.total_degree() != Degree(1))
            throw precondition_error("reduce_mod_linear: forms must have degree 1");
        Poly form = l.R;
        if (form.context() != yctx) {
            if (form.context().prefix_of(yctx))
                form = form.embedded(yctx);
            else
                throw precondition_error("reduce_mod_linear: context mismatch");
        }
        std::vector<Scalar> row(n + 1, Scalar(0));
        for (const auto& [m, c] : form.terms()) {
            if (m.degree == 0) {
                row[n] = c;
            } else {
                for (std::size_t i = 0; i < n; ++i)
                    if (m.exps[i] == 1) row[i] = c;
            }
        }
        rows.push_back(std::move(row));
    }

    std::vector<std::pair<std::size_t, std::size_t>> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
        std::size_t pivot = r;
        while (pivot < rows.size() && rows[pivot][c].is_zero()) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[pivot], rows[r]);
        const Scalar d = rows[r][c];
        for (std::size_t j = c; j <= n; ++j) rows[r][j] = rows[r][j] / d;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c].is_zero()) continue;
            const Scalar f = rows[i][c];
            for (std::size_t j = c; j <= n; ++j) rows[i][j] -= f * rows[r][j];
        }
        pivots.emplace_back(r, c);
        ++r;
    }
    if (r != rows.size())
        throw precondition_error("reduce_mod_linear: dependent linear forms");

    std::vector<Poly> images;
    images.reserve(n);
    for (std::size_t i = 0; i < n; ++i) images.push_back(Poly::variable(yctx, i));
    for (auto [pr, pc] : pivots) {
        Poly image = Poly::constant(yctx, -rows[pr][n]);
        for (std::size_t j = pc + 1; j < n; ++j)
            if (!rows[pr][j].is_zero())
                image -= Poly::variable(yctx, j).scaled(rows[pr][j]);
        images[pc] = std::move(image);
    }
    return R.R.substituted(images, yctx);
}

} // namespace qtkit
