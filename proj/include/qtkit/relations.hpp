#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qtkit/map.hpp"
#include "qtkit/poly.hpp"

namespace qtkit {

// A polynomial R in y1..yn with R(H) = 0. Normalized monic under the
// canonical order; certified is set only after the substitution re-check.
struct Relation {
    Poly R;
    long degree = 0;
    bool certified = false;
};

// Nullspace basis of the degree-bounded relation search. Generators are the
// reduced echelon basis of the solution space with graded-lex pivot order, so
// the subset of generators of degree <= d spans the relation space at every
// d <= degree_bound. dims_per_degree[d] is that space's dimension (index 0
// unused).
struct RelationBasis {
    std::vector<Relation> generators;
    long degree_bound = 0;
    std::optional<long> minimal_degree;
    std::vector<std::size_t> dims_per_degree;
};

inline constexpr std::size_t kDefaultRelationEntryCap = 200000;

// Basis of { c : sum_i c_i H_i = 0 }, each returned as a degree-1 Relation.
std::vector<Relation> linear_relations(const PolyMap& H);

// Degree-bounded relation search: exact nullspace of the monomial coefficient
// system sum_{|alpha| <= d} c_alpha H^alpha = 0. When every component of H is
// homogeneous of one common degree the search runs per homogeneous degree.
RelationBasis find_relations(const PolyMap& H, long dmax,
                             std::size_t entry_cap = kDefaultRelationEntryCap);

// Heuristic default bound for a CLI invocation without --dmax: the largest d
// for which the dense system size (candidate monomials times the expansion's
// monomial count, driven by the map degree) stays under the entry cap.
long default_relation_bound(std::size_t dimension, Degree map_degree,
                            std::size_t entry_cap = kDefaultRelationEntryCap);

// Eliminates one y-variable per independent degree-1 form by substitution;
// zero iff R lies in the ideal generated by the forms.
Poly reduce_mod_linear(const Relation& R, std::span<const Relation> linear);

} // namespace qtkit
