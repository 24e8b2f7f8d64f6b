#pragma once

#include <ostream>
#include <string>

namespace qtkit {

// Total degree with a -inf sentinel for the zero polynomial. The sentinel
// compares below every integer.
class Degree {
public:
    constexpr Degree() : finite_(false), value_(0) {}
    constexpr Degree(long v) : finite_(true), value_(v) {}

    static constexpr Degree neg_inf() { return Degree(); }

    constexpr bool finite() const { return finite_; }
    constexpr long value() const { return value_; }

    friend constexpr bool operator==(Degree a, Degree b) {
        return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
    }
    friend constexpr bool operator!=(Degree a, Degree b) { return !(a == b); }
    friend constexpr bool operator<(Degree a, Degree b) {
        if (!a.finite_) return b.finite_;
        if (!b.finite_) return false;
        return a.value_ < b.value_;
    }
    friend constexpr bool operator>(Degree a, Degree b) { return b < a; }
    friend constexpr bool operator<=(Degree a, Degree b) { return !(b < a); }
    friend constexpr bool operator>=(Degree a, Degree b) { return !(a < b); }

    std::string str() const { return finite_ ? std::to_string(value_) : "-inf"; }

    friend std::ostream& operator<<(std::ostream& os, Degree d) { return os << d.str(); }

private:
    bool finite_;
    long value_;
};

} // namespace qtkit
