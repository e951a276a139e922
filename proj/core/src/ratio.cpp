#include "mapfp/ratio.hpp"

namespace mapfp {

Rational RatioForm::value() const {
  if (den == 0) return Rational(0);
  return Rational(num, den);
}

bool value_equal(const RatioForm& x, const RatioForm& y) {
  return value_compare(x, y) == std::strong_ordering::equal;
}

std::strong_ordering value_compare(const RatioForm& x, const RatioForm& y) {
  const bool x_zero = x.has_zero_value();
  const bool y_zero = y.has_zero_value();
  if (x_zero || y_zero) {
    if (x_zero && y_zero) return std::strong_ordering::equal;
    return x_zero ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  const BigInt lhs = x.num * y.den;
  const BigInt rhs = y.num * x.den;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string to_string(const RatioForm& r) {
  return r.num.str() + "/" + r.den.str();
}

std::string numerator_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str();
}

std::string denominator_string(const Rational& r) {
  return boost::multiprecision::denominator(r).str();
}

}  // namespace mapfp
