#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qtkit/degree.hpp"
#include "qtkit/map.hpp"
#include "qtkit/matrix.hpp"
#include "qtkit/relations.hpp"

namespace qtkit {

struct PipelineChecks {
    bool det_hessian_zero = false;
    bool jhh_zero = false;        // JH . H = 0
    bool gradient_invariant = false; // (grad h)(x + tH) = grad h
    bool h_nonzero = false;
    // h(x + tH) = h, checked when every homogeneous part of R annihilates
    // grad h; disengaged otherwise.
    std::optional<bool> h_invariant;

    bool all() const {
        return det_hessian_zero && jhh_zero && gradient_invariant && h_nonzero &&
               (!h_invariant.has_value() || *h_invariant);
    }
};

// Result of the singular-Hessian pipeline: a minimal-degree relation R of
// grad h and the quasi-translation H = (grad R)(grad h), with every claim
// re-verified symbolically.
struct HessianPipelineResult {
    Poly h;
    Relation R;
    PolyMap H;
    RelationBasis basis;
    PipelineChecks checks;
    long dmax_used = 0;
};

HessianPipelineResult hessian_to_qt(const Poly& h, long dmax);

// For homogeneous h in dimension <= 4 with det Hh = 0 the components of
// grad h are provably linearly dependent; an empty result raises a
// theorem-violation alarm.
std::vector<Relation> gradient_linear_dependence(const Poly& h);

// True iff H vanishes identically on the plane spanned by u and v.
bool is_gn_plane(const PolyMap& H, std::span<const Scalar> u, std::span<const Scalar> v);

// Bound-relative certificate that p is a projective image apex of H: every
// certified relation of H up to degree_bound vanishes on H + t*p.
struct ApexCertificate {
    std::vector<Scalar> p;
    long degree_bound = 0;
    bool holds = false;
};

ApexCertificate apex_certificate(const PolyMap& H, std::span<const Scalar> p, long dmax);

// Bound-relative certificate for the classical 'Fall a2' state of a rank-3
// map in dimension 5 (image closure a threedimensional linear subspace):
// exactly two independent linear relations, and every relation generator up
// to the bound reduces to zero modulo them.
struct LinearImageCertificate {
    std::size_t linear_count = 0;
    bool generators_reduce = false;
    long degree_bound = 0;
    bool holds = false;
};

LinearImageCertificate case_a2_certificate(const PolyMap& H, long dmax);

// h(Tx) = f(x1, x2, a1(x1,x2) x3 + a2(x1,x2) x4 + a3(x1,x2) x5), checked as
// an exact substitution identity in dimension 5. f lives in any 3-variable
// context; a1, a2, a3 may involve x1, x2 only.
bool gn_form_verify(const Poly& h, const ScalarMatrix& T, const Poly& f,
                    const Poly& a1, const Poly& a2, const Poly& a3);

// Verifies H = (g h_1(p,q), ..., g h_4(p,q), H_dist) up to the distinguished
// component (1-based index), plus that g, p, q are invariants of x + H.
// Witness sanity (homogeneity, gcd(p,q) = 1, g != 0) is a precondition.
bool fall_b_form_verify(const PolyMap& H, std::size_t dist, const Poly& g,
                        const std::array<Poly, 4>& hvec, const Poly& p, const Poly& q);

struct DegreeReport {
    Degree degree;
    std::vector<Degree> per_component;
    std::vector<Degree> per_variable; // deg_{x_j} over all components
    std::size_t rank = 0;
    std::size_t linear_invariant_count = 0;
};

DegreeReport degree_report(const PolyMap& H);

} // namespace qtkit
