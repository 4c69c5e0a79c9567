#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace virialkit {

using Rational = mpq_class;

// Parses "p", "p/q" or "-p/q" (a leading U+2212 minus is accepted too).
Rational parse_rational(std::string_view text);

// Canonical "p/q" text; integers print without the denominator.
std::string format_rational(const Rational& q);

// Exact conversion of a finite double (every double is a dyadic rational).
Rational rational_from_double(double x);

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

// Field helpers shared by the templated series code.
template <class F>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static constexpr const char* name = "rational";
  static constexpr bool exact = true;
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static Rational from_int(long v) { return Rational(v); }
  static Rational abs(const Rational& x) { return ::abs(x); }
  static Rational from_rational(const Rational& x) { return x; }
};

template <>
struct FieldTraits<double> {
  static constexpr const char* name = "float";
  static constexpr bool exact = false;
  static bool is_zero(double x) { return x == 0.0; }
  static double from_int(long v) { return static_cast<double>(v); }
  static double abs(double x) { return std::fabs(x); }
  static double from_rational(const Rational& x) { return x.get_d(); }
};

template <class F>
concept CoefficientField = requires { FieldTraits<F>::exact; };

}  // namespace virialkit
