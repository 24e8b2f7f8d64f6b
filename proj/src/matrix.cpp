#include "qtkit/matrix.hpp"

#include "qtkit/errors.hpp"

namespace qtkit {

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, VarContext ctx)
    : rows_(rows), cols_(cols), ctx_(std::move(ctx)),
      entries_(rows * cols, Poly::zero(ctx_)) {}

PolyMatrix PolyMatrix::identity(std::size_t n, VarContext ctx) {
    PolyMatrix m(n, n, std::move(ctx));
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Poly::one(m.ctx_);
    return m;
}

bool PolyMatrix::is_zero() const {
    for (const auto& e : entries_)
        if (!e.is_zero()) return false;
    return true;
}

Poly PolyMatrix::trace() const {
    if (rows_ != cols_) throw precondition_error("trace of a non-square matrix");
    Poly t = Poly::zero(ctx_);
    for (std::size_t i = 0; i < rows_; ++i) t += at(i, i);
    return t;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols() != b.rows()) throw precondition_error("matrix product shape mismatch");
    PolyMatrix out(a.rows(), b.cols(), a.context());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a.at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                if (b.at(k, j).is_zero()) continue;
                out.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        }
    return out;
}

std::vector<Poly> PolyMatrix::apply(std::span<const Poly> v) const {
    if (v.size() != cols_) throw precondition_error("matrix apply shape mismatch");
    std::vector<Poly> out(rows_, Poly::zero(ctx_));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            if (at(i, j).is_zero() || v[j].is_zero()) continue;
            out[i] += at(i, j) * v[j];
        }
    return out;
}

PolyMatrix jacobian(std::span<const Poly> components, const VarContext& ctx) {
    PolyMatrix m(components.size(), ctx.size(), ctx);
    for (std::size_t i = 0; i < components.size(); ++i)
        for (std::size_t j = 0; j < ctx.size(); ++j)
            m.at(i, j) = components[i].derivative(j);
    return m;
}

PolyMatrix jacobian(const PolyMap& H) {
    return jacobian(H.components(), H.context());
}

PolyMatrix hessian(const Poly& h) {
    const VarContext& ctx = h.context();
    const std::size_t n = ctx.size();
    PolyMatrix m(n, n, ctx);
    std::vector<Poly> grad;
    grad.reserve(n);
    for (std::size_t i = 0; i < n; ++i) grad.push_back(h.derivative(i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m.at(i, j) = grad[i].derivative(j);
    return m;
}

Poly det(const PolyMatrix& m) {
    if (m.rows() != m.cols()) throw precondition_error("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return Poly::one(m.context());
    PolyMatrix w = m;
    bool negate = false;
    Poly prev = Poly::one(m.context());
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && w.at(pivot, k).is_zero()) ++pivot;
        if (pivot == n) return Poly::zero(m.context());
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(w.at(pivot, j), w.at(k, j));
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Poly num = w.at(k, k) * w.at(i, j) - w.at(i, k) * w.at(k, j);
                auto q = num.divided_exactly(prev);
                if (!q) throw theorem_violation("Bareiss division was not exact");
                w.at(i, j) = std::move(*q);
            }
            w.at(i, k) = Poly::zero(m.context());
        }
        prev = w.at(k, k);
    }
    Poly d = w.at(n - 1, n - 1);
    return negate ? -d : d;
}

std::size_t rank_ff(const PolyMatrix& m) {
    PolyMatrix w = m;
    const std::size_t rows = m.rows(), cols = m.cols();
    Poly prev = Poly::one(m.context());
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && w.at(pivot, c).is_zero()) ++pivot;
        if (pivot == rows) continue;
        if (pivot != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(w.at(pivot, j), w.at(r, j));
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                Poly num = w.at(r, c) * w.at(i, j) - w.at(i, c) * w.at(r, j);
                auto q = num.divided_exactly(prev);
                if (!q) throw theorem_violation("fraction-free elimination division was not exact");
                w.at(i, j) = std::move(*q);
            }
            w.at(i, c) = Poly::zero(m.context());
        }
        prev = w.at(r, c);
        ++r;
    }
    return r;
}

bool is_nilpotent(const PolyMatrix& m) {
    if (m.rows() != m.cols()) throw precondition_error("nilpotency test on a non-square matrix");
    const std::size_t n = m.rows();
    PolyMatrix p = m;
    for (std::size_t k = 1; k <= n; ++k) {
        if (!p.trace().is_zero()) return false;
        if (k < n) p = p * m;
    }
    return true;
}

ScalarMatrix::ScalarMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Scalar(0)) {}

ScalarMatrix ScalarMatrix::identity(std::size_t n) {
    ScalarMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
    return m;
}

ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b) {
    if (a.cols() != b.rows()) throw precondition_error("matrix product shape mismatch");
    ScalarMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a.at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                out.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return out;
}

bool operator==(const ScalarMatrix& a, const ScalarMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

std::optional<ScalarMatrix> ScalarMatrix::inverse() const {
    if (rows_ != cols_) return std::nullopt;
    const std::size_t n = rows_;
    ScalarMatrix w = *this;
    ScalarMatrix inv = identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        while (pivot < n && w.at(pivot, c).is_zero()) ++pivot;
        if (pivot == n) return std::nullopt;
        if (pivot != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(w.at(pivot, j), w.at(c, j));
                std::swap(inv.at(pivot, j), inv.at(c, j));
            }
        const Scalar d = w.at(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            w.at(c, j) = w.at(c, j) / d;
            inv.at(c, j) = inv.at(c, j) / d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || w.at(i, c).is_zero()) continue;
            const Scalar f = w.at(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                w.at(i, j) -= f * w.at(c, j);
                inv.at(i, j) -= f * inv.at(c, j);
            }
        }
    }
    return inv;
}

std::size_t ScalarMatrix::rank() const {
    ScalarMatrix w = *this;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t pivot = r;
        while (pivot < rows_ && w.at(pivot, c).is_zero()) ++pivot;
        if (pivot == rows_) continue;
        if (pivot != r)
            for (std::size_t j = 0; j < cols_; ++j) std::swap(w.at(pivot, j), w.at(r, j));
        for (std::size_t i = r + 1; i < rows_; ++i) {
            if (w.at(i, c).is_zero()) continue;
            const Scalar f = w.at(i, c) / w.at(r, c);
            for (std::size_t j = c; j < cols_; ++j) w.at(i, j) -= f * w.at(r, j);
        }
        ++r;
    }
    return r;
}

std::vector<Poly> linear_map_components(const ScalarMatrix& T, const VarContext& ctx) {
    if (T.cols() != ctx.size()) throw precondition_error("linear map shape mismatch");
    std::vector<Poly> out;
    out.reserve(T.rows());
    for (std::size_t i = 0; i < T.rows(); ++i) {
        Poly c = Poly::zero(ctx);
        for (std::size_t j = 0; j < T.cols(); ++j) {
            if (T.at(i, j).is_zero()) continue;
            c += Poly::variable(ctx, j).scaled(T.at(i, j));
        }
        out.push_back(std::move(c));
    }
    return out;
}

} // namespace qtkit
