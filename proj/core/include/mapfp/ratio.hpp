#pragma once

#include <compare>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace mapfp {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// An unreduced fraction p/q of non-negative integers.
//
// Two forms are equal only when numerator and denominator match exactly, so
// 1/1 and 2/2 are different forms. Comparisons of *values* go through
// value_equal / value_compare, which use cross-multiplication and treat any
// p/0 (including 0/0) as the value zero.
struct RatioForm {
  BigInt num{0};
  BigInt den{0};

  RatioForm() = default;
  RatioForm(BigInt p, BigInt q) : num(std::move(p)), den(std::move(q)) {}

  bool operator==(const RatioForm&) const = default;

  bool has_zero_value() const { return den == 0 || num == 0; }

  Rational value() const;

  RatioForm& operator+=(const RatioForm& other) {
    num += other.num;
    den += other.den;
    return *this;
  }
};

bool value_equal(const RatioForm& x, const RatioForm& y);
std::strong_ordering value_compare(const RatioForm& x, const RatioForm& y);

// "p/q", unreduced.
std::string to_string(const RatioForm& r);

// Numerator and denominator of a rational as decimal strings.
std::string numerator_string(const Rational& r);
std::string denominator_string(const Rational& r);

}  // namespace mapfp
