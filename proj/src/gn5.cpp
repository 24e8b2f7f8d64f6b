#include "qtkit/gn5.hpp"

#include <algorithm>

#include "qtkit/errors.hpp"
#include "qtkit/qt.hpp"

namespace qtkit {

namespace {

PolyMap gradient_map(const Poly& h) {
    const VarContext& ctx = h.context();
    std::vector<Poly> comps;
    comps.reserve(ctx.size());
    for (std::size_t i = 0; i < ctx.size(); ++i) comps.push_back(h.derivative(i));
    return PolyMap(ctx, std::move(comps));
}

std::vector<Poly> x_plus_tH_images(const PolyMap& H, VarContext& ext) {
    ext = H.context().adjoined("t");
    const Poly t = Poly::variable(ext, H.dimension());
    std::vector<Poly> images;
    images.reserve(H.dimension());
    for (std::size_t i = 0; i < H.dimension(); ++i)
        images.push_back(Poly::variable(ext, i) + t * H.component(i).embedded(ext));
    return images;
}

} // namespace

HessianPipelineResult hessian_to_qt(const Poly& h, long dmax) {
    if (dmax < 1) throw precondition_error("hessian pipeline needs dmax >= 1");
    const Poly det_h = det(hessian(h));
    if (!det_h.is_zero())
        throw precondition_error("hessian pipeline requires det Hh = 0");

    const PolyMap grad = gradient_map(h);
    RelationBasis basis = find_relations(grad, dmax);
    if (!basis.minimal_degree)
        throw resource_limit_error(
            "no relation of grad h found within dmax = " + std::to_string(dmax) +
            "; the bound is exhausted, not the relation space");

    const Relation* chosen = nullptr;
    for (const auto& g : basis.generators) {
        if (g.degree == *basis.minimal_degree) {
            chosen = &g;
            break;
        }
    }
    Relation R = *chosen;

    const std::size_t n = h.context().size();
    std::vector<Poly> comps;
    comps.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        comps.push_back(grad.evaluate(R.R.derivative(i)));
    PolyMap H(h.context(), std::move(comps));

    HessianPipelineResult out{h, R, H, std::move(basis), PipelineChecks{}, dmax};
    out.checks.det_hessian_zero = true;
    out.checks.jhh_zero = is_quasi_translation(H);
    out.checks.h_nonzero = !H.is_zero();

    VarContext ext(VarContext::xs(0));
    const auto images = x_plus_tH_images(H, ext);
    out.checks.gradient_invariant = true;
    for (std::size_t i = 0; i < n; ++i) {
        const Poly gi = grad.component(i);
        if (gi.substituted(images, ext) != gi.embedded(ext)) {
            out.checks.gradient_invariant = false;
            break;
        }
    }

    bool parts_vanish = true;
    for (const auto& [d, part] : R.R.homogeneous_components())
        if (!grad.evaluate(part).is_zero()) {
            parts_vanish = false;
            break;
        }
    if (parts_vanish)
        out.checks.h_invariant = h.substituted(images, ext) == h.embedded(ext);

    if (!out.checks.all())
        throw theorem_violation("hessian pipeline produced a map that fails verification");
    return out;
}

std::vector<Relation> gradient_linear_dependence(const Poly& h) {
    const std::size_t n = h.context().size();
    if (n > 4)
        throw precondition_error("gradient linear dependence is guaranteed only for n <= 4");
    if (!h.is_homogeneous())
        throw precondition_error("gradient linear dependence needs homogeneous h");
    if (!det(hessian(h)).is_zero())
        throw precondition_error("gradient linear dependence needs det Hh = 0");
    auto rels = linear_relations(gradient_map(h));
    if (rels.empty())
        throw theorem_violation(
            "no linear dependence among the gradient components in dimension <= 4");
    return rels;
}

bool is_gn_plane(const PolyMap& H, std::span<const Scalar> u, std::span<const Scalar> v) {
    const std::size_t n = H.dimension();
    if (u.size() != n || v.size() != n)
        throw precondition_error("gn-plane vectors have the wrong length");
    ScalarMatrix uv(2, n);
    for (std::size_t j = 0; j < n; ++j) {
        uv.at(0, j) = u[j];
        uv.at(1, j) = v[j];
    }
    if (uv.rank() != 2)
        throw precondition_error("gn-plane vectors are linearly dependent");

    const VarContext st(std::vector<std::string>{"s", "t"});
    const Poly s_var = Poly::variable(st, 0);
    const Poly t_var = Poly::variable(st, 1);
    std::vector<Poly> images;
    images.reserve(n);
    for (std::size_t j = 0; j < n; ++j)
        images.push_back(s_var.scaled(u[j]) + t_var.scaled(v[j]));
    for (const auto& c : H.components())
        if (!c.substituted(images, st).is_zero()) return false;
    return true;
}

ApexCertificate apex_certificate(const PolyMap& H, std::span<const Scalar> p, long dmax) {
    const std::size_t n = H.dimension();
    if (p.size() != n) throw precondition_error("apex vector has the wrong length");
    bool nonzero = false;
    for (const auto& c : p) nonzero = nonzero || !c.is_zero();
    if (!nonzero) throw precondition_error("apex vector must be nonzero");

    ApexCertificate cert;
    cert.p.assign(p.begin(), p.end());
    cert.degree_bound = dmax;

    const RelationBasis basis = find_relations(H, dmax);
    VarContext ext = H.context().adjoined("t");
    const Poly t = Poly::variable(ext, n);
    std::vector<Poly> images;
    images.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        images.push_back(H.component(i).embedded(ext) + t.scaled(p[i]));

    cert.holds = true;
    for (const auto& g : basis.generators) {
        if (!g.R.substituted(images, ext).is_zero()) {
            cert.holds = false;
            break;
        }
    }
    return cert;
}

LinearImageCertificate case_a2_certificate(const PolyMap& H, long dmax) {
    LinearImageCertificate cert;
    cert.degree_bound = dmax;
    const auto linear = linear_relations(H);
    cert.linear_count = linear.size();
    cert.generators_reduce = true;
    if (!linear.empty()) {
        const RelationBasis basis = find_relations(H, dmax);
        for (const auto& g : basis.generators)
            if (!reduce_mod_linear(g, linear).is_zero()) {
                cert.generators_reduce = false;
                break;
            }
    } else {
        cert.generators_reduce = false;
    }
    cert.holds = cert.linear_count == 2 && cert.generators_reduce;
    return cert;
}

bool gn_form_verify(const Poly& h, const ScalarMatrix& T, const Poly& f,
                    const Poly& a1, const Poly& a2, const Poly& a3) {
    const VarContext& ctx = h.context();
    if (ctx.size() != 5) throw precondition_error("gn form verification is for dimension 5");
    if (T.rows() != 5 || T.cols() != 5 || !T.inverse())
        throw precondition_error("witness matrix must be invertible of size 5");
    if (f.context().size() != 3)
        throw precondition_error("witness f must live in three variables");
    const std::size_t rest[3] = {2, 3, 4};
    for (const Poly* a : {&a1, &a2, &a3}) {
        if (a->context() != ctx)
            throw precondition_error("witness coefficients must live in the ambient context");
        if (a->degree_in(std::span<const std::size_t>(rest, 3)) > Degree(0))
            throw precondition_error("witness coefficients may involve x1, x2 only");
    }

    const Poly lhs = h.substituted(linear_map_components(T, ctx), ctx);
    std::vector<Poly> images;
    images.push_back(Poly::variable(ctx, 0));
    images.push_back(Poly::variable(ctx, 1));
    images.push_back(a1 * Poly::variable(ctx, 2) + a2 * Poly::variable(ctx, 3) +
                     a3 * Poly::variable(ctx, 4));
    const Poly rhs = f.substituted(images, ctx);
    return lhs == rhs;
}

bool fall_b_form_verify(const PolyMap& H, std::size_t dist, const Poly& g,
                        const std::array<Poly, 4>& hvec, const Poly& p, const Poly& q) {
    const std::size_t n = H.dimension();
    if (n != 5) throw precondition_error("fall-b verification is for dimension 5");
    if (dist < 1 || dist > 5)
        throw precondition_error("distinguished index must be in 1..5");
    auto in_ctx = [&](const Poly& f) {
        if (f.context() == H.context()) return f;
        if (f.context().prefix_of(H.context())) return f.embedded(H.context());
        throw precondition_error("witness in an incompatible context");
    };
    const Poly gw = in_ctx(g), pw = in_ctx(p), qw = in_ctx(q);
    if (gw.is_zero()) throw precondition_error("degenerate witness: g = 0");
    if (!gw.is_homogeneous() || !pw.is_homogeneous() || !qw.is_homogeneous())
        throw precondition_error("witnesses g, p, q must be homogeneous");
    for (const auto& hc : hvec) {
        if (hc.context().size() != 2)
            throw precondition_error("witness h components must live in two variables");
        if (!hc.is_homogeneous())
            throw precondition_error("witness h components must be homogeneous");
    }
    if (pw.is_zero() && qw.is_zero())
        throw precondition_error("witnesses p, q must not both vanish");
    {
        const Poly pq[2] = {pw, qw};
        if (gcd_many(pq) != Poly::one(H.context()))
            throw precondition_error("witnesses p, q must be coprime");
    }

    std::vector<Poly> images{pw, qw};
    std::size_t k = 0;
    for (std::size_t i = 0; i < 5; ++i) {
        if (i + 1 == dist) continue;
        const Poly expected = gw * hvec[k].substituted(images, H.context());
        if (H.component(i) != expected) return false;
        ++k;
    }
    // g, p, q are invariants of x + H; Jf . H = 0 is the checkable criterion.
    for (const Poly* f : {&gw, &pw, &qw}) {
        Poly dot = Poly::zero(H.context());
        for (std::size_t i = 0; i < n; ++i) dot += f->derivative(i) * H.component(i);
        if (!dot.is_zero()) return false;
    }
    return true;
}

DegreeReport degree_report(const PolyMap& H) {
    DegreeReport out;
    out.degree = H.degree();
    for (const auto& c : H.components()) out.per_component.push_back(c.total_degree());
    for (std::size_t j = 0; j < H.dimension(); ++j) {
        Degree d = Degree::neg_inf();
        for (const auto& c : H.components()) d = std::max(d, c.degree_in(j));
        out.per_variable.push_back(d);
    }
    out.rank = rank_ff(jacobian(H));
    out.linear_invariant_count = linear_relations(H).size();
    return out;
}

} // namespace qtkit
