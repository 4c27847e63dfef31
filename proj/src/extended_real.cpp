#include "qdiv/extended_real.hpp"

#include "qdiv/errors.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace qdiv {

ExtendedReal ExtendedReal::from_double(double v) {
    if (std::isnan(v)) throw DomainError("extended real: NaN has no extended-real value");
    if (std::isinf(v)) return v > 0 ? pos_inf() : neg_inf();
    return ExtendedReal(v);
}

double ExtendedReal::value() const {
    if (!is_finite()) throw DomainError("extended real: value() on " + to_string());
    return value_;
}

double ExtendedReal::to_double() const {
    switch (kind_) {
    case Kind::pos_inf: return HUGE_VAL;
    case Kind::neg_inf: return -HUGE_VAL;
    default: return value_;
    }
}

ExtendedReal ExtendedReal::operator-() const {
    switch (kind_) {
    case Kind::pos_inf: return neg_inf();
    case Kind::neg_inf: return pos_inf();
    default: return ExtendedReal(-value_);
    }
}

ExtendedReal operator+(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.is_finite() && b.is_finite()) return ExtendedReal(a.value_ + b.value_);
    if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf()))
        throw DomainError("extended real: (+inf) + (-inf) is undefined");
    return a.is_finite() ? b : a;
}

ExtendedReal operator*(double c, const ExtendedReal& x) {
    if (std::isnan(c)) throw DomainError("extended real: NaN scalar");
    if (x.is_finite()) return ExtendedReal::from_double(c * x.value_);
    if (c == 0.0) throw DomainError("extended real: 0 * " + x.to_string() + " is undefined");
    return (c > 0) == x.is_pos_inf() ? ExtendedReal::pos_inf() : ExtendedReal::neg_inf();
}

ExtendedReal operator/(const ExtendedReal& x, double c) {
    if (c == 0.0 || !std::isfinite(c)) throw DomainError("extended real: division by zero or non-finite scalar");
    return (1.0 / c) * x;
}

bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.kind_ != b.kind_) return false;
    return !a.is_finite() || a.value_ == b.value_;
}

bool operator<(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.is_neg_inf()) return !b.is_neg_inf();
    if (a.is_pos_inf()) return false;
    if (b.is_pos_inf()) return true;
    if (b.is_neg_inf()) return false;
    return a.value_ < b.value_;
}

std::string ExtendedReal::to_string() const {
    if (is_pos_inf()) return "+inf";
    if (is_neg_inf()) return "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value_);
    return std::string(buf, res.ptr);
}

std::ostream& operator<<(std::ostream& os, const ExtendedReal& x) { return os << x.to_string(); }

ExtendedReal extended_log(double x) {
    if (x < 0 || std::isnan(x)) throw DomainError("extended log: negative argument");
    if (x == 0.0) return ExtendedReal::neg_inf();
    return ExtendedReal::from_double(std::log(x));
}

ExtendedReal extended_exp(const ExtendedReal& x) {
    if (x.is_neg_inf()) return ExtendedReal(0.0);
    if (x.is_pos_inf()) return ExtendedReal::pos_inf();
    return ExtendedReal::from_double(std::exp(x.value()));
}

double deviation(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.is_finite() && b.is_finite()) return std::abs(a.value() - b.value());
    if (a.kind() == b.kind()) return 0.0;
    return HUGE_VAL;
}

} // namespace qdiv
