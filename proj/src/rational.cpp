#include "virialkit/rational.hpp"

#include <cmath>
#include <cctype>

#include "virialkit/errors.hpp"

namespace virialkit {

Rational parse_rational(std::string_view text) {
  std::string s;
  s.reserve(text.size());
  // U+2212 MINUS SIGN in UTF-8.
  constexpr std::string_view kUnicodeMinus = "\xE2\x88\x92";
  if (text.substr(0, kUnicodeMinus.size()) == kUnicodeMinus) {
    s.push_back('-');
    text.remove_prefix(kUnicodeMinus.size());
  }
  for (char c : text) {
    if (c == ' ') continue;
    s.push_back(c);
  }
  if (s.empty()) throw UsageError("empty rational literal");
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/')) {
      throw UsageError("rational literal must be of the form p/q: '" + std::string(text) + "'");
    }
  }
  if (s.front() == '+') s.erase(s.begin());
  Rational q;
  if (q.set_str(s, 10) != 0) throw UsageError("malformed rational literal '" + s + "'");
  if (sgn(q.get_den()) == 0) throw UsageError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) { return q.get_str(10); }

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw UsageError("cannot convert a non-finite value to a rational");
  Rational q(x);
  q.canonicalize();
  return q;
}

}  // namespace virialkit
