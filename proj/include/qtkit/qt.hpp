#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qtkit/map.hpp"
#include "qtkit/matrix.hpp"
#include "qtkit/poly.hpp"

namespace qtkit {

// The three equivalent quasi-translation criteria, evaluated independently.
// They provably coincide; agree() == false signals an implementation bug.
struct QtReport {
    bool cond_inverse = false; // (x - H) o (x + H) = x
    bool cond_Ht = false;      // H(x + tH) = H
    bool cond_JHH = false;     // JH . H = 0

    bool agree() const { return cond_inverse == cond_Ht && cond_Ht == cond_JHH; }
    bool all() const { return cond_inverse && cond_Ht && cond_JHH; }
};

// Fast path: JH . H = 0.
bool is_quasi_translation(const PolyMap& H);

QtReport check_qt_equivalences(const PolyMap& H);

// Jf . H = 0; requires x + H to be a quasi-translation. With verify_all the
// other two formulations of invariance are evaluated and must agree.
bool is_invariant(const Poly& f, const PolyMap& H, bool verify_all = false);

// H = g * Ht with gcd of Ht's components = 1 (monic normalization). The split
// map is re-verified as a quasi-translation, and rank is checked preserved
// when H is homogeneous of positive degree.
std::pair<Poly, PolyMap> qt_gcd_split(const PolyMap& H);

// x + T^{-1} H(Tx); verified to be a quasi-translation.
PolyMap qt_conjugate_linear(const PolyMap& H, const ScalarMatrix& T);

// G o F = x is checked exactly. True iff deg_t G_i(x + tH) <= 1 for all i; in
// the true case G o (x + H) o F is computed and verified a quasi-translation.
bool qt_conjugation_criterion(const PolyMap& H, const PolyMap& F, const PolyMap& G);

// The conjugate G o (x + H) o F as a map H~ with the full map = x + H~.
PolyMap qt_conjugate(const PolyMap& H, const PolyMap& F, const PolyMap& G);

// (x, x_{n+1}) + x_{n+1}^d (H(x/x_{n+1}), 0), cleared to polynomial form.
// Requires d >= deg H; verified homogeneous of degree d and a quasi-translation.
PolyMap qt_homogenize(const PolyMap& H, long d);

// Substitute x_n = 1 and drop the last component.
PolyMap dehomogenize(const PolyMap& H);

struct HomogeneousChecks {
    bool maps_to_zero = false; // H(H) = 0
    std::size_t rank = 0;
    std::size_t rank_bound = 0; // max(n-2, 1)
    bool rank_ok = false;
    bool nilpotent = false;

    bool all() const { return maps_to_zero && rank_ok && nilpotent; }
};

// Consequences of homogeneity for quasi-translations: H(H) = 0,
// rk JH <= max(n-2, 1), JH nilpotent.
HomogeneousChecks homogeneous_qt_checks(const PolyMap& H);

// Basis of linear forms l with l(H) = 0, re-expressed in x and re-verified
// via is_invariant.
std::vector<Poly> linear_invariants(const PolyMap& H);

} // namespace qtkit
