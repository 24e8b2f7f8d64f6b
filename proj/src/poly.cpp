#include "qtkit/poly.hpp"

#include <algorithm>

#include "qtkit/errors.hpp"

namespace qtkit {

Monomial Monomial::of(std::vector<std::uint32_t> e) {
    std::uint32_t d = 0;
    for (auto v : e) d += v;
    return Monomial{d, std::move(e)};
}

bool Monomial::divides(const Monomial& o) const {
    if (exps.size() != o.exps.size() || degree > o.degree) return false;
    for (std::size_t i = 0; i < exps.size(); ++i)
        if (exps[i] > o.exps[i]) return false;
    return true;
}

Monomial Monomial::times(const Monomial& o) const {
    Monomial r{static_cast<std::uint32_t>(degree + o.degree), exps};
    for (std::size_t i = 0; i < exps.size(); ++i) r.exps[i] += o.exps[i];
    return r;
}

Monomial Monomial::divided_by(const Monomial& o) const {
    Monomial r{static_cast<std::uint32_t>(degree - o.degree), exps};
    for (std::size_t i = 0; i < exps.size(); ++i) r.exps[i] -= o.exps[i];
    return r;
}

Poly Poly::constant(VarContext ctx, Scalar c) {
    Poly p(std::move(ctx));
    if (!c.is_zero()) p.terms_.emplace(Monomial::one(p.ctx_.size()), std::move(c));
    return p;
}

Poly Poly::variable(VarContext ctx, std::size_t index) {
    if (index >= ctx.size()) throw precondition_error("variable index out of range");
    Monomial m = Monomial::one(ctx.size());
    m.exps[index] = 1;
    m.degree = 1;
    return monomial(std::move(ctx), std::move(m), Scalar(1));
}

Poly Poly::monomial(VarContext ctx, Monomial m, Scalar c) {
    if (m.size() != ctx.size()) throw precondition_error("monomial length != context size");
    Poly p(std::move(ctx));
    if (!c.is_zero()) p.terms_.emplace(std::move(m), std::move(c));
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree == 0);
}

Scalar Poly::constant_value() const {
    if (terms_.empty()) return Scalar(0);
    if (!is_constant()) throw precondition_error("constant_value on non-constant polynomial");
    return terms_.begin()->second;
}

Scalar Poly::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
}

Degree Poly::total_degree() const {
    if (terms_.empty()) return Degree::neg_inf();
    return Degree(static_cast<long>(terms_.rbegin()->first.degree));
}

Degree Poly::degree_in(std::span<const std::size_t> vars) const {
    for (auto v : vars)
        if (v >= ctx_.size()) throw precondition_error("degree_in: variable outside the context");
    if (terms_.empty()) return Degree::neg_inf();
    long best = 0;
    for (const auto& [m, c] : terms_) {
        long d = 0;
        for (auto v : vars) d += m.exps[v];
        best = std::max(best, d);
    }
    return Degree(best);
}

Degree Poly::degree_in(std::size_t var) const {
    const std::size_t vs[1] = {var};
    return degree_in(std::span<const std::size_t>(vs, 1));
}

bool Poly::is_homogeneous() const {
    if (terms_.empty()) return true;
    const std::uint32_t d = terms_.begin()->first.degree;
    return terms_.rbegin()->first.degree == d; // grlex order: extremes share degree
}

std::optional<long> Poly::homogeneous_degree() const {
    if (terms_.empty()) return std::nullopt;
    if (!is_homogeneous()) return std::nullopt;
    return static_cast<long>(terms_.begin()->first.degree);
}

std::vector<std::pair<long, Poly>> Poly::homogeneous_components() const {
    std::map<long, Poly> parts;
    for (const auto& [m, c] : terms_) {
        auto [it, fresh] = parts.try_emplace(static_cast<long>(m.degree), ctx_);
        it->second.terms_.emplace(m, c);
    }
    std::vector<std::pair<long, Poly>> out;
    out.reserve(parts.size());
    for (auto& [d, p] : parts) out.emplace_back(d, std::move(p));
    return out;
}

Poly Poly::derivative(std::size_t var) const {
    if (var >= ctx_.size()) throw precondition_error("unknown variable in derivative");
    Poly out(ctx_);
    for (const auto& [m, c] : terms_) {
        const std::uint32_t e = m.exps[var];
        if (e == 0) continue;
        Monomial dm = m;
        dm.exps[var] = e - 1;
        dm.degree -= 1;
        out.terms_.emplace(std::move(dm), c * Scalar(static_cast<long>(e)));
    }
    return out;
}

void Poly::add_term(const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly Poly::embedded(const VarContext& bigger) const {
    if (ctx_ == bigger) return *this;
    if (!ctx_.prefix_of(bigger))
        throw precondition_error("incompatible contexts: cannot embed");
    Poly out(bigger);
    const std::size_t n = bigger.size();
    for (const auto& [m, c] : terms_) {
        Monomial e = m;
        e.exps.resize(n, 0);
        out.terms_.emplace(std::move(e), c);
    }
    return out;
}

void Poly::align(Poly& a, Poly& b) {
    if (a.ctx_ == b.ctx_) return;
    if (a.ctx_.prefix_of(b.ctx_)) {
        a = a.embedded(b.ctx_);
    } else if (b.ctx_.prefix_of(a.ctx_)) {
        b = b.embedded(a.ctx_);
    } else {
        throw precondition_error("incompatible contexts");
    }
}

Poly Poly::operator-() const {
    Poly out(ctx_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

Poly& Poly::operator+=(const Poly& o) {
    Poly rhs = o;
    align(*this, rhs);
    for (const auto& [m, c] : rhs.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    Poly rhs = o;
    align(*this, rhs);
    for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    Poly::align(x, y);
    Poly out(x.context());
    if (x.is_zero() || y.is_zero()) return out;
    // Single-term factors are common (monomial shifts); keep them cheap.
    if (x.term_count() == 1) std::swap(x, y);
    if (y.term_count() == 1) {
        const auto& [m, c] = *y.terms().begin();
        for (const auto& [ma, ca] : x.terms())
            out.terms_.emplace(ma.times(m), ca * c);
        return out;
    }
    for (const auto& [ma, ca] : x.terms())
        for (const auto& [mb, cb] : y.terms())
            out.add_term(ma.times(mb), ca * cb);
    return out;
}

Poly Poly::pow(std::uint32_t k) const {
    Poly result = Poly::one(ctx_);
    Poly base = *this;
    while (k > 0) {
        if (k & 1u) result = result * base;
        k >>= 1u;
        if (k > 0) base = base * base;
    }
    return result;
}

Poly Poly::scaled(const Scalar& c) const {
    Poly out(ctx_);
    if (c.is_zero()) return out;
    for (const auto& [m, coeff] : terms_) out.terms_.emplace(m, coeff * c);
    return out;
}

bool operator==(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    Poly::align(x, y);
    return x.terms_ == y.terms_;
}

Scalar Poly::leading_coefficient() const {
    if (terms_.empty()) return Scalar(0);
    return terms_.rbegin()->second;
}

const Monomial* Poly::leading_monomial() const {
    if (terms_.empty()) return nullptr;
    return &terms_.rbegin()->first;
}

Poly Poly::monic() const {
    if (terms_.empty()) return *this;
    return scaled(Scalar(1) / leading_coefficient());
}

std::optional<Poly> Poly::divided_exactly(const Poly& divisor) const {
    Poly d = divisor;
    Poly r = *this;
    Poly::align(r, d);
    if (d.is_zero()) throw std::domain_error("division by zero polynomial");
    Poly q(r.context());
    while (!r.is_zero()) {
        const Monomial& lr = *r.leading_monomial();
        const Monomial& ld = *d.leading_monomial();
        if (!ld.divides(lr)) return std::nullopt;
        Poly t = Poly::monomial(r.context(), lr.divided_by(ld),
                                r.leading_coefficient() / d.leading_coefficient());
        q += t;
        r -= t * d;
    }
    return q;
}

namespace {

using Term = std::pair<Monomial, Scalar>;

// Simultaneous substitution by recursive coefficient split + Horner on the
// last variable; this keeps intermediate sizes near the final expansion
// instead of expanding each term's power product independently.
Poly eval_terms(std::vector<Term> terms, std::ptrdiff_t k,
                const std::vector<Poly>& images, const VarContext& target) {
    if (terms.empty()) return Poly::zero(target);
    if (k < 0) {
        Scalar sum(0);
        for (const auto& [m, c] : terms) sum += c;
        return Poly::constant(target, sum);
    }
    std::map<std::uint32_t, std::vector<Term>> buckets;
    for (auto& [m, c] : terms) {
        const std::uint32_t e = m.exps[static_cast<std::size_t>(k)];
        Monomial rest = m;
        rest.degree -= e;
        rest.exps[static_cast<std::size_t>(k)] = 0;
        buckets[e].emplace_back(std::move(rest), c);
    }
    Poly acc = Poly::zero(target);
    bool first = true;
    std::uint32_t prev_e = 0;
    for (auto it = buckets.rbegin(); it != buckets.rend(); ++it) {
        Poly inner = eval_terms(std::move(it->second), k - 1, images, target);
        if (first) {
            acc = std::move(inner);
            first = false;
        } else {
            acc = acc * images[static_cast<std::size_t>(k)].pow(prev_e - it->first) + inner;
        }
        prev_e = it->first;
    }
    if (prev_e > 0)
        acc = acc * images[static_cast<std::size_t>(k)].pow(prev_e);
    return acc;
}

} // namespace

Poly Poly::substituted(const std::vector<Poly>& images, const VarContext& target) const {
    if (images.size() != ctx_.size())
        throw precondition_error("substitution needs one image per context variable");
    std::vector<Poly> imgs;
    imgs.reserve(images.size());
    for (const auto& im : images) {
        if (im.context() == target) {
            imgs.push_back(im);
        } else if (im.context().prefix_of(target)) {
            imgs.push_back(im.embedded(target));
        } else {
            throw precondition_error("substitution image not in the target context");
        }
    }
    std::vector<Term> terms(terms_.begin(), terms_.end());
    return eval_terms(std::move(terms), static_cast<std::ptrdiff_t>(ctx_.size()) - 1,
                      imgs, target);
}

} // namespace qtkit
