#include "qtkit/qt.hpp"

#include <algorithm>

#include "qtkit/errors.hpp"
#include "qtkit/relations.hpp"

namespace qtkit {

namespace {

std::vector<Poly> jh_times_h(const PolyMap& H) {
    return jacobian(H).apply(H.components());
}

// Images x_i + t*H_i in the context (x1..xn, t).
std::vector<Poly> x_plus_tH(const PolyMap& H, VarContext& extended) {
    extended = H.context().adjoined("t");
    const std::size_t n = H.dimension();
    const Poly t = Poly::variable(extended, n);
    std::vector<Poly> images;
    images.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        images.push_back(Poly::variable(extended, i) + t * H.component(i).embedded(extended));
    return images;
}

std::vector<Poly> x_plus_H(const PolyMap& H) {
    std::vector<Poly> images;
    images.reserve(H.dimension());
    for (std::size_t i = 0; i < H.dimension(); ++i)
        images.push_back(Poly::variable(H.context(), i) + H.component(i));
    return images;
}

Poly gradient_dot(const Poly& f, const PolyMap& H) {
    Poly acc = Poly::zero(H.context());
    for (std::size_t i = 0; i < H.dimension(); ++i) {
        const Poly df = f.derivative(i);
        if (df.is_zero() || H.component(i).is_zero()) continue;
        acc += df * H.component(i);
    }
    return acc;
}

} // namespace

bool is_quasi_translation(const PolyMap& H) {
    for (const auto& entry : jh_times_h(H))
        if (!entry.is_zero()) return false;
    return true;
}

QtReport check_qt_equivalences(const PolyMap& H) {
    QtReport report;
    const std::size_t n = H.dimension();

    // (3) JH . H = 0
    report.cond_JHH = is_quasi_translation(H);

    // (2) H(x + tH) = H, t a fresh indeterminate
    {
        VarContext ext(VarContext::xs(0));
        const auto images = x_plus_tH(H, ext);
        report.cond_Ht = true;
        for (std::size_t i = 0; i < n; ++i) {
            const Poly composed = H.component(i).substituted(images, ext);
            if (composed != H.component(i).embedded(ext)) {
                report.cond_Ht = false;
                break;
            }
        }
    }

    // (1) x - H is the inverse of x + H, both compositions checked
    {
        const auto plus = x_plus_H(H);
        std::vector<Poly> minus;
        minus.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            minus.push_back(Poly::variable(H.context(), i) - H.component(i));
        report.cond_inverse = true;
        for (std::size_t i = 0; i < n; ++i) {
            const Poly xi = Poly::variable(H.context(), i);
            if (minus[i].substituted(plus, H.context()) != xi ||
                plus[i].substituted(minus, H.context()) != xi) {
                report.cond_inverse = false;
                break;
            }
        }
    }
    return report;
}

bool is_invariant(const Poly& f, const PolyMap& H, bool verify_all) {
    if (!is_quasi_translation(H))
        throw precondition_error("is_invariant requires x + H to be a quasi-translation");
    Poly g = f;
    if (g.context() != H.context()) {
        if (g.context().prefix_of(H.context()))
            g = g.embedded(H.context());
        else
            throw precondition_error("invariant candidate in an incompatible context");
    }
    const bool by_jacobian = gradient_dot(g, H).is_zero();
    if (verify_all) {
        const bool by_composition =
            g.substituted(x_plus_H(H), H.context()) == g;
        VarContext ext(VarContext::xs(0));
        const auto images = x_plus_tH(H, ext);
        const bool by_t_composition = g.substituted(images, ext) == g.embedded(ext);
        if (by_jacobian != by_composition || by_jacobian != by_t_composition)
            throw theorem_violation("invariance criteria disagree");
    }
    return by_jacobian;
}

std::pair<Poly, PolyMap> qt_gcd_split(const PolyMap& H) {
    if (H.is_zero()) throw precondition_error("gcd split of the zero map");
    if (!is_quasi_translation(H))
        throw precondition_error("gcd split requires a quasi-translation");
    const Poly g = gcd_many(H.components());
    std::vector<Poly> comps;
    comps.reserve(H.dimension());
    for (const auto& c : H.components()) {
        auto q = c.divided_exactly(g);
        if (!q) throw theorem_violation("gcd does not divide a component");
        comps.push_back(std::move(*q));
    }
    PolyMap Ht(H.context(), std::move(comps));
    if (!is_quasi_translation(Ht))
        throw theorem_violation("split map is not a quasi-translation");
    // Rank preservation holds when the split map is homogeneous of positive
    // degree.
    const auto d = Ht.homogeneous_common_degree();
    if (d && *d >= 1 && rank_ff(jacobian(H)) != rank_ff(jacobian(Ht)))
        throw theorem_violation("gcd split changed the Jacobian rank");
    return {g, std::move(Ht)};
}

PolyMap qt_conjugate_linear(const PolyMap& H, const ScalarMatrix& T) {
    const std::size_t n = H.dimension();
    if (T.rows() != n || T.cols() != n)
        throw precondition_error("conjugation matrix has the wrong shape");
    const auto Tinv = T.inverse();
    if (!Tinv) throw precondition_error("conjugation matrix is singular");
    if (!is_quasi_translation(H))
        throw precondition_error("conjugation requires a quasi-translation");

    const auto Tx = linear_map_components(T, H.context());
    std::vector<Poly> HTx;
    HTx.reserve(n);
    for (const auto& c : H.components()) HTx.push_back(c.substituted(Tx, H.context()));

    std::vector<Poly> comps(n, Poly::zero(H.context()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (Tinv->at(i, j).is_zero() || HTx[j].is_zero()) continue;
            comps[i] += HTx[j].scaled(Tinv->at(i, j));
        }
    PolyMap out(H.context(), std::move(comps));
    if (!is_quasi_translation(out))
        throw theorem_violation("linear conjugate is not a quasi-translation");
    return out;
}

PolyMap qt_conjugate(const PolyMap& H, const PolyMap& F, const PolyMap& G) {
    const std::size_t n = H.dimension();
    // mid = (x + H) o F, then G o mid, then subtract x.
    std::vector<Poly> mid;
    mid.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        mid.push_back(F.component(i) + F.evaluate(H.component(i)));
    PolyMap midmap(H.context(), std::move(mid));
    std::vector<Poly> outer;
    outer.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        outer.push_back(midmap.evaluate(G.component(i)) - Poly::variable(H.context(), i));
    return PolyMap(H.context(), std::move(outer));
}

bool qt_conjugation_criterion(const PolyMap& H, const PolyMap& F, const PolyMap& G) {
    const std::size_t n = H.dimension();
    if (F.dimension() != n || G.dimension() != n)
        throw precondition_error("conjugation criterion: dimension mismatch");
    if (F.composed(G) != PolyMap::identity(n) || G.composed(F) != PolyMap::identity(n))
        throw precondition_error("F and G are not mutually inverse");
    if (!is_quasi_translation(H))
        throw precondition_error("conjugation criterion requires a quasi-translation");

    VarContext ext(VarContext::xs(0));
    const auto images = x_plus_tH(H, ext);
    const std::size_t t_index = n;
    for (std::size_t i = 0; i < n; ++i) {
        const Poly composed = G.component(i).substituted(images, ext);
        if (composed.degree_in(t_index) > Degree(1)) return false;
    }
    if (!is_quasi_translation(qt_conjugate(H, F, G)))
        throw theorem_violation("criterion held but the conjugate is not a quasi-translation");
    return true;
}

PolyMap qt_homogenize(const PolyMap& H, long d) {
    if (!is_quasi_translation(H))
        throw precondition_error("homogenization requires a quasi-translation");
    if (Degree(d) < H.degree())
        throw precondition_error("homogenization degree below deg H");
    const std::size_t n = H.dimension();
    const VarContext ext = H.context().adjoined("x" + std::to_string(n + 1));
    std::vector<Poly> comps;
    comps.reserve(n + 1);
    for (const auto& c : H.components()) {
        Poly lifted(ext);
        for (const auto& [m, coeff] : c.terms()) {
            Monomial e = m;
            e.exps.resize(n + 1, 0);
            e.exps[n] = static_cast<std::uint32_t>(d) - m.degree;
            e.degree = static_cast<std::uint32_t>(d);
            lifted += Poly::monomial(ext, std::move(e), coeff);
        }
        comps.push_back(std::move(lifted));
    }
    comps.push_back(Poly::zero(ext));
    PolyMap out(ext, std::move(comps));
    const auto hd = out.homogeneous_common_degree();
    if (!out.is_zero() && (!hd || *hd != d))
        throw theorem_violation("homogenization is not homogeneous of the requested degree");
    if (!is_quasi_translation(out))
        throw theorem_violation("homogenization is not a quasi-translation");
    return out;
}

PolyMap dehomogenize(const PolyMap& H) {
    const std::size_t n = H.dimension();
    if (n < 2) throw precondition_error("dehomogenize needs dimension >= 2");
    VarContext small(std::vector<std::string>(H.context().names().begin(),
                                              H.context().names().end() - 1));
    std::vector<Poly> images;
    images.reserve(n);
    for (std::size_t i = 0; i + 1 < n; ++i) images.push_back(Poly::variable(small, i));
    images.push_back(Poly::one(small));
    std::vector<Poly> comps;
    comps.reserve(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
        comps.push_back(H.component(i).substituted(images, small));
    return PolyMap(small, std::move(comps));
}

HomogeneousChecks homogeneous_qt_checks(const PolyMap& H) {
    if (!H.is_homogeneous())
        throw precondition_error("homogeneous checks on a non-homogeneous map");
    if (!is_quasi_translation(H))
        throw precondition_error("homogeneous checks require a quasi-translation");
    const auto d = H.homogeneous_common_degree();
    if (d && *d < 1)
        throw precondition_error("homogeneous checks need deg H >= 1 (or the zero map)");
    HomogeneousChecks out;
    const std::size_t n = H.dimension();
    out.maps_to_zero = true;
    for (const auto& c : H.components())
        if (!H.evaluate(c).is_zero()) {
            out.maps_to_zero = false;
            break;
        }
    out.rank = rank_ff(jacobian(H));
    out.rank_bound = std::max<std::size_t>(n >= 2 ? n - 2 : 0, 1);
    out.rank_ok = out.rank <= out.rank_bound;
    out.nilpotent = is_nilpotent(jacobian(H));
    return out;
}

std::vector<Poly> linear_invariants(const PolyMap& H) {
    if (!is_quasi_translation(H))
        throw precondition_error("linear invariants require a quasi-translation");
    std::vector<Poly> out;
    for (const auto& rel : linear_relations(H)) {
        Poly l = Poly::zero(H.context());
        for (const auto& [m, c] : rel.R.terms())
            for (std::size_t i = 0; i < H.dimension(); ++i)
                if (m.exps[i] == 1) l += Poly::variable(H.context(), i).scaled(c);
        if (!is_invariant(l, H))
            throw theorem_violation("linear relation is not an invariant");
        out.push_back(std::move(l));
    }
    return out;
}

} // namespace qtkit
