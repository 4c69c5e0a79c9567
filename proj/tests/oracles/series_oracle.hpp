#pragma once

// Dense-exponent polynomial arithmetic over GMP rationals, written without the
// library's series type, plus single-variable reversion by undetermined
// coefficients.

#include <gmpxx.h>

#include <map>
#include <numeric>
#include <vector>

namespace oracle {

using Exponents = std::vector<int>;
using Poly = std::map<Exponents, mpq_class>;

inline int total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

inline Poly multiply(const Poly& a, const Poly& b, int max_degree) {
  Poly out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      Exponents e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      if (total_degree(e) > max_degree) continue;
      out[e] += ca * cb;
    }
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

// Single-variable power series as coefficient vectors, index = degree.
using Dense = std::vector<mpq_class>;

inline Dense dense_mul(const Dense& a, const Dense& b, int degree) {
  Dense out(static_cast<std::size_t>(degree) + 1, 0);
  for (int i = 0; i <= degree && i < static_cast<int>(a.size()); ++i) {
    for (int j = 0; i + j <= degree && j < static_cast<int>(b.size()); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// c with p(z) = sum_n c_n rho(z)^n, rho = z p'(z), by undetermined coefficients
// applied to the whole polynomial identity (not graded bookkeeping).
inline Dense virial_single_species(const Dense& b, int degree) {
  Dense rho(static_cast<std::size_t>(degree) + 1, 0);
  for (int n = 1; n <= degree && n < static_cast<int>(b.size()); ++n) rho[n] = b[n] * n;
  std::vector<Dense> powers{Dense{1}};
  for (int n = 1; n <= degree; ++n) powers.push_back(dense_mul(powers.back(), rho, degree));
  Dense c(static_cast<std::size_t>(degree) + 1, 0);
  for (int k = 1; k <= degree; ++k) {
    mpq_class rest = k < static_cast<int>(b.size()) ? b[k] : mpq_class(0);
    for (int n = 1; n < k; ++n) rest -= c[n] * powers[n][k];
    c[k] = rest / powers[k][k];
  }
  return c;
}

}  // namespace oracle
