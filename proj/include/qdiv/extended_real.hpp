#pragma once

#include <iosfwd>
#include <string>

namespace qdiv {

/// A value in [-inf, +inf].
///
/// Arithmetic follows the usual extended-real conventions: log 0 = -inf,
/// c * (+-inf) takes the sign of c for c != 0, exp(-inf) = 0. The product
/// 0 * (+-inf) and the sum (+inf) + (-inf) are undefined and throw
/// DomainError rather than silently returning a number.
class ExtendedReal {
  public:
    enum class Kind { finite, pos_inf, neg_inf };

    constexpr ExtendedReal() = default;
    constexpr ExtendedReal(double v) : value_(v) {} // NOLINT: implicit by intent

    static constexpr ExtendedReal pos_inf() { return ExtendedReal(Kind::pos_inf); }
    static constexpr ExtendedReal neg_inf() { return ExtendedReal(Kind::neg_inf); }

    /// Maps IEEE infinities onto the infinite kinds; NaN throws DomainError.
    static ExtendedReal from_double(double v);

    constexpr Kind kind() const { return kind_; }
    constexpr bool is_finite() const { return kind_ == Kind::finite; }
    constexpr bool is_pos_inf() const { return kind_ == Kind::pos_inf; }
    constexpr bool is_neg_inf() const { return kind_ == Kind::neg_inf; }

    /// Finite value; throws DomainError on an infinite value.
    double value() const;
    /// IEEE double, with infinities mapped to +-HUGE_VAL.
    double to_double() const;

    ExtendedReal operator-() const;

    friend ExtendedReal operator+(const ExtendedReal& a, const ExtendedReal& b);
    friend ExtendedReal operator-(const ExtendedReal& a, const ExtendedReal& b) { return a + (-b); }
    friend ExtendedReal operator*(double c, const ExtendedReal& x);
    friend ExtendedReal operator*(const ExtendedReal& x, double c) { return c * x; }
    /// Division by a nonzero finite scalar.
    friend ExtendedReal operator/(const ExtendedReal& x, double c);

    friend bool operator==(const ExtendedReal& a, const ExtendedReal& b);
    friend bool operator<(const ExtendedReal& a, const ExtendedReal& b);
    friend bool operator<=(const ExtendedReal& a, const ExtendedReal& b) { return !(b < a); }
    friend bool operator>(const ExtendedReal& a, const ExtendedReal& b) { return b < a; }
    friend bool operator>=(const ExtendedReal& a, const ExtendedReal& b) { return !(a < b); }

    /// "+inf", "-inf", or the shortest round-trip decimal form.
    std::string to_string() const;

  private:
    constexpr explicit ExtendedReal(Kind k) : kind_(k) {}

    Kind kind_ = Kind::finite;
    double value_ = 0.0;
};

std::ostream& operator<<(std::ostream& os, const ExtendedReal& x);

/// log on [0, inf) with log 0 = -inf. Negative input throws DomainError.
ExtendedReal extended_log(double x);

/// The continuous extension of exp to [-inf, +inf].
ExtendedReal extended_exp(const ExtendedReal& x);

/// |a - b| for finite values, 0 for matching infinities, +inf otherwise.
double deviation(const ExtendedReal& a, const ExtendedReal& b);

} // namespace qdiv
