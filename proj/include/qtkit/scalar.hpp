#pragma once

#include <gmpxx.h>

#include <ostream>
#include <string>
#include <utility>

namespace qtkit {

// Gaussian rational re + im*i. Components are arbitrary-precision rationals
// kept in lowest terms with positive denominator (mpq_class canonical form),
// so field arithmetic is exact everywhere.
class Scalar {
public:
    Scalar() : re_(0), im_(0) {}
    Scalar(long n) : re_(n), im_(0) {}
    Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}
    explicit Scalar(mpq_class re) : re_(std::move(re)), im_(0) {}

    static Scalar rational(long num, long den);
    static Scalar i() { return Scalar(mpq_class(0), mpq_class(1)); }

    const mpq_class& real() const { return re_; }
    const mpq_class& imag() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    Scalar conjugate() const { return Scalar(re_, -im_); }

    Scalar operator-() const { return Scalar(-re_, -im_); }

    Scalar& operator+=(const Scalar& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    Scalar& operator*=(const Scalar& o) {
        mpq_class re = re_ * o.re_ - im_ * o.im_;
        mpq_class im = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(re);
        im_ = std::move(im);
        return *this;
    }
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // Diagnostic form; the report/grammar form lives in io.hpp.
    std::string str() const;

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) {
        return os << s.str();
    }

private:
    mpq_class re_;
    mpq_class im_;
};

} // namespace qtkit
