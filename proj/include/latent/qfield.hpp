#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace latent {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Element of the quadratic field Q(sqrt 2), stored as a + b*sqrt(2) with
/// exact rational parts. Ring operations, division, sign and comparisons
/// are all exact; this is the scalar used everywhere a certificate must be
/// re-verifiable (boxes, LP rows, witnesses).
class QField {
 public:
  QField() : a_(0), b_(0) {}
  QField(long v) : a_(v), b_(0) {}  // NOLINT: implicit by design
  QField(Rational a) : a_(std::move(a)), b_(0) {}
  QField(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  static QField sqrt2() { return QField(Rational(0), Rational(1)); }
  static QField from_fraction(long num, long den) {
    return QField(Rational(num, den));
  }
  /// num/den + snum/sden * sqrt(2)
  static QField make(long num, long den, long snum, long sden) {
    return QField(Rational(num, den), Rational(snum, sden));
  }

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt2_part() const { return b_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  QField operator-() const { return QField(-a_, -b_); }

  QField& operator+=(const QField& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  QField& operator-=(const QField& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  QField& operator*=(const QField& o) {
    // (a + b s)(c + d s) = ac + 2bd + (ad + bc) s,  s = sqrt(2)
    Rational a = a_ * o.a_ + 2 * b_ * o.b_;
    Rational b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    return *this;
  }
  QField& operator/=(const QField& o) {
    if (o.is_zero()) throw std::domain_error("QField: division by zero");
    // 1/(c + d s) = (c - d s)/(c^2 - 2 d^2); the norm is nonzero since
    // sqrt(2) is irrational.
    Rational norm = o.a_ * o.a_ - 2 * o.b_ * o.b_;
    Rational a = (a_ * o.a_ - 2 * b_ * o.b_) / norm;
    Rational b = (b_ * o.a_ - a_ * o.b_) / norm;
    a_ = std::move(a);
    b_ = std::move(b);
    return *this;
  }

  friend QField operator+(QField x, const QField& y) { return x += y; }
  friend QField operator-(QField x, const QField& y) { return x -= y; }
  friend QField operator*(QField x, const QField& y) { return x *= y; }
  friend QField operator/(QField x, const QField& y) { return x /= y; }

  /// Exact sign: -1, 0, +1.
  int sign() const {
    const int sa = a_.sign();
    const int sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: compare a^2 with 2 b^2; sign follows the larger term.
    Rational a2 = a_ * a_;
    Rational b2 = 2 * b_ * b_;
    if (a2 == b2) return 0;  // cannot happen for nonzero parts, kept for safety
    return a2 > b2 ? sa : sb;
  }

  friend bool operator==(const QField& x, const QField& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const QField& x, const QField& y) { return !(x == y); }
  friend bool operator<(const QField& x, const QField& y) {
    return (x - y).sign() < 0;
  }
  friend bool operator>(const QField& x, const QField& y) { return y < x; }
  friend bool operator<=(const QField& x, const QField& y) { return !(y < x); }
  friend bool operator>=(const QField& x, const QField& y) { return !(x < y); }

  QField abs() const { return sign() < 0 ? -*this : *this; }

  double to_double() const {
    return a_.convert_to<double>() +
           b_.convert_to<double>() * 1.4142135623730950488;
  }

  /// "p/q", "r/s√2" or "p/q+r/s√2" (minus signs folded into the parts).
  std::string str() const;

 private:
  Rational a_;
  Rational b_;
};

std::ostream& operator<<(std::ostream& os, const QField& q);

std::string rational_str(const Rational& r);
Rational rational_from_str(const std::string& s);

}  // namespace latent
