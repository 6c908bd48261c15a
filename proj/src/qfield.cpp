#include "latent/qfield.hpp"

#include <ostream>
#include <sstream>

namespace latent {

std::string rational_str(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

Rational rational_from_str(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(Integer(s));
  Integer num(s.substr(0, slash));
  Integer den(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("rational_from_str: zero denominator");
  return Rational(num, den);
}

std::string QField::str() const {
  if (b_ == 0) return rational_str(a_);
  std::string sq = rational_str(b_ < 0 ? Rational(-b_) : b_) + "√2";
  if (b_ == 1) sq = "√2";
  if (b_ == -1) sq = "√2";
  if (a_ == 0) return (b_ < 0 ? "-" : "") + sq;
  return rational_str(a_) + (b_ < 0 ? "-" : "+") + sq;
}

std::ostream& operator<<(std::ostream& os, const QField& q) {
  return os << q.str();
}

}  // namespace latent
