#include "qtkit/scalar.hpp"

#include <stdexcept>

namespace qtkit {

Scalar Scalar::rational(long num, long den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(std::move(q));
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.is_zero()) throw std::domain_error("division by zero scalar");
    // (a+bi)/(c+di) = (a+bi)(c-di)/(c^2+d^2)
    mpq_class n = o.re_ * o.re_ + o.im_ * o.im_;
    mpq_class re = (re_ * o.re_ + im_ * o.im_) / n;
    mpq_class im = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

std::string Scalar::str() const {
    if (is_zero()) return "0";
    std::string out;
    if (sgn(re_) != 0) out += re_.get_str();
    if (sgn(im_) != 0) {
        if (!out.empty() && sgn(im_) > 0) out += "+";
        if (im_ == 1) {
            out += "i";
        } else if (im_ == -1) {
            out += "-i";
        } else {
            out += im_.get_str() + "*i";
        }
    }
    return out;
}

} // namespace qtkit
