#pragma once

#include <map>
#include <vector>

#include "virialkit/multi_index.hpp"
#include "virialkit/rational.hpp"

namespace virialkit {

// Finite window on a series in countably many variables: total degree <= degree
// and species index <= species.
struct Truncation {
  int degree = 0;
  int species = 1;

  bool admits(const MultiIndex& n) const {
    return n.degree() <= degree && n.max_species() <= species;
  }
  friend bool operator==(const Truncation&, const Truncation&) = default;
};

void validate(const Truncation& t);

// Truncated multivariate formal power series in canonical sparse form: only
// admissible multi-indices with nonzero coefficients are stored. F is the
// coefficient field (Rational or double); series over different fields never mix.
template <class F>
class Series {
 public:
  using Field = F;
  using Terms = std::map<MultiIndex, F>;

  explicit Series(Truncation t);

  static Series constant(const F& c, Truncation t);
  static Series variable(Species i, Truncation t);
  static Series monomial(const MultiIndex& n, const F& c, Truncation t);

  const Truncation& truncation() const { return trunc_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  // Throws UsageError when n is not admissible: the coefficient is undefined there.
  F coefficient(const MultiIndex& n) const;
  F constant_term() const;

  // Adds c to the coefficient of n. Terms outside the truncation are dropped.
  void accumulate(const MultiIndex& n, const F& c);

  // Terms of total degree exactly d.
  Series homogeneous_part(int d) const;

  Series operator-() const;
  Series scaled(const F& c) const;

  friend bool operator==(const Series& a, const Series& b) {
    return a.trunc_ == b.trunc_ && a.terms_ == b.terms_;
  }

 private:
  Truncation trunc_;
  Terms terms_;
};

template <class F>
Series<F> add(const Series<F>& a, const Series<F>& b);
template <class F>
Series<F> sub(const Series<F>& a, const Series<F>& b);
// Cauchy product; terms beyond the truncation are discarded.
template <class F>
Series<F> mul(const Series<F>& a, const Series<F>& b);

template <class F>
Series<F> operator+(const Series<F>& a, const Series<F>& b) { return add(a, b); }
template <class F>
Series<F> operator-(const Series<F>& a, const Series<F>& b) { return sub(a, b); }
template <class F>
Series<F> operator*(const Series<F>& a, const Series<F>& b) { return mul(a, b); }

template <class F>
Series<F> partial_derivative(const Series<F>& a, Species i);
// Multiplies by z_i.
template <class F>
Series<F> variable_mul(const Series<F>& a, Species i);

// exp(a) for a with zero constant term.
template <class F>
Series<F> exp_series(const Series<F>& a);

// log f split as log(c0) + tail, where tail = log(f / c0) has zero constant term.
// Keeping c0 symbolic keeps rational arithmetic closed.
template <class F>
struct LogSeries {
  F constant;
  Series<F> tail;
};

template <class F>
LogSeries<F> log_series(const Series<F>& a);
// Inverse of log_series: constant * exp(tail).
template <class F>
Series<F> exp_series(const LogSeries<F>& l);
// Float-only convenience: folds the real log(c0) into the constant term.
Series<double> log_series_value(const Series<double>& a);

template <class F>
Series<F> reciprocal(const Series<F>& a);

template <class F>
using SeriesFamily = std::map<Species, Series<F>>;

// prod_i family(i)^{n_i}; the empty product is 1 in truncation t.
template <class F>
Series<F> power(const MultiIndex& n, const SeriesFamily<F>& family, Truncation t);

// Caches family(i)^e so repeated monomials share work.
template <class F>
class PowerCache {
 public:
  PowerCache(const SeriesFamily<F>& family, Truncation t);
  const Series<F>& pow(Species i, int e);
  Series<F> monomial(const MultiIndex& n);

 private:
  const SeriesFamily<F>* family_;
  Truncation trunc_;
  std::map<std::pair<Species, int>, Series<F>> cache_;
};

// sum_n outer(n) * prod_i family(i)^{n_i}, truncated to the family's truncation.
// Every family member must have zero constant term.
template <class F>
Series<F> substitute(const Series<F>& outer, const SeriesFamily<F>& family);

template <class F>
F coefficient(const Series<F>& a, const MultiIndex& n) { return a.coefficient(n); }

// Square matrix of series sharing one truncation.
template <class F>
class SeriesMatrix {
 public:
  static constexpr int kMaxDimension = 12;

  SeriesMatrix(int dimension, Truncation t);

  int dimension() const { return n_; }
  const Truncation& truncation() const { return trunc_; }
  const Series<F>& at(int i, int j) const { return entries_[index(i, j)]; }
  void set(int i, int j, Series<F> s);

 private:
  std::size_t index(int i, int j) const;

  int n_;
  Truncation trunc_;
  std::vector<Series<F>> entries_;
};

// Cofactor (Laplace) expansion along rows, memoised over column subsets.
template <class F>
Series<F> determinant(const SeriesMatrix<F>& m);

// One-way field conversion.
Series<double> to_float(const Series<Rational>& a);

extern template class Series<Rational>;
extern template class Series<double>;
extern template class PowerCache<Rational>;
extern template class PowerCache<double>;
extern template class SeriesMatrix<Rational>;
extern template class SeriesMatrix<double>;

}  // namespace virialkit
