#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qtkit/map.hpp"
#include "qtkit/poly.hpp"
#include "qtkit/scalar.hpp"

namespace qtkit {

// Dense matrix of polynomials in a shared context.
class PolyMatrix {
public:
    PolyMatrix(std::size_t rows, std::size_t cols, VarContext ctx);

    static PolyMatrix identity(std::size_t n, VarContext ctx);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const VarContext& context() const { return ctx_; }

    Poly& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Poly& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    bool is_zero() const;
    Poly trace() const; // square only

    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);

    // Matrix-vector product over the polynomial ring.
    std::vector<Poly> apply(std::span<const Poly> v) const;

private:
    std::size_t rows_;
    std::size_t cols_;
    VarContext ctx_;
    std::vector<Poly> entries_;
};

PolyMatrix jacobian(const PolyMap& H);
PolyMatrix jacobian(std::span<const Poly> components, const VarContext& ctx);
PolyMatrix hessian(const Poly& h);

// Exact determinant via fraction-free (Bareiss) elimination.
Poly det(const PolyMatrix& m);

// Rank over the fraction field, by deterministic fraction-free elimination
// with exact zero tests (first nonzero pivot in column order).
std::size_t rank_ff(const PolyMatrix& m);

// trace(M^k) = 0 for k = 1..size; valid in characteristic 0.
bool is_nilpotent(const PolyMatrix& m);

// Dense matrix of scalars, for linear conjugations and witnesses.
class ScalarMatrix {
public:
    ScalarMatrix(std::size_t rows, std::size_t cols);

    static ScalarMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Scalar& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Scalar& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    std::optional<ScalarMatrix> inverse() const; // nullopt when singular
    std::size_t rank() const;

    friend ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b);
    friend bool operator==(const ScalarMatrix& a, const ScalarMatrix& b);

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Scalar> entries_;
};

// Components of the linear map x -> Tx, i.e. entry i is sum_j T(i,j)*x_j.
std::vector<Poly> linear_map_components(const ScalarMatrix& T, const VarContext& ctx);

} // namespace qtkit
