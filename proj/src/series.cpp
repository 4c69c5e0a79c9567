#include "virialkit/series.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "virialkit/errors.hpp"

namespace virialkit {

void validate(const Truncation& t) {
  if (t.degree < 0) throw UsageError("truncation degree must be nonnegative");
  if (t.species < 1) throw UsageError("truncation species cap must be positive");
}

namespace {

template <class F>
F inverse_of(long d) {
  if constexpr (std::is_same_v<F, Rational>) {
    return Rational(1, d);
  } else {
    return 1.0 / static_cast<double>(d);
  }
}

template <class F>
void require_same_truncation(const Series<F>& a, const Series<F>& b, const char* op) {
  if (!(a.truncation() == b.truncation())) {
    throw UsageError(std::string(op) + ": operands have different truncations");
  }
}

template <class F>
void require_species(const Series<F>& a, Species i, const char* op) {
  if (i < 1 || i > a.truncation().species) {
    throw UsageError(std::string(op) + ": species " + std::to_string(i) + " outside truncation");
  }
}

// Homogeneous components 0..D.
template <class F>
std::vector<Series<F>> graded_parts(const Series<F>& a) {
  const Truncation t = a.truncation();
  std::vector<Series<F>> parts(static_cast<std::size_t>(t.degree) + 1, Series<F>(t));
  for (const auto& [n, c] : a.terms()) parts[static_cast<std::size_t>(n.degree())].accumulate(n, c);
  return parts;
}

template <class F>
Series<F> sum_parts(const std::vector<Series<F>>& parts, Truncation t) {
  Series<F> out(t);
  for (const auto& p : parts) {
    for (const auto& [n, c] : p.terms()) out.accumulate(n, c);
  }
  return out;
}

}  // namespace

template <class F>
Series<F>::Series(Truncation t) : trunc_(t) {
  validate(t);
}

template <class F>
Series<F> Series<F>::constant(const F& c, Truncation t) {
  Series s(t);
  s.accumulate(MultiIndex{}, c);
  return s;
}

template <class F>
Series<F> Series<F>::variable(Species i, Truncation t) {
  Series s(t);
  require_species(s, i, "variable");
  s.accumulate(MultiIndex::unit(i), FieldTraits<F>::from_int(1));
  return s;
}

template <class F>
Series<F> Series<F>::monomial(const MultiIndex& n, const F& c, Truncation t) {
  Series s(t);
  if (n.max_species() > t.species) throw UsageError("monomial: species outside truncation");
  s.accumulate(n, c);
  return s;
}

template <class F>
F Series<F>::coefficient(const MultiIndex& n) const {
  if (!trunc_.admits(n)) {
    throw UsageError("coefficient: multi-index " + n.compact() + " is not admissible under the truncation");
  }
  auto it = terms_.find(n);
  return it == terms_.end() ? FieldTraits<F>::from_int(0) : it->second;
}

template <class F>
F Series<F>::constant_term() const {
  auto it = terms_.find(MultiIndex{});
  return it == terms_.end() ? FieldTraits<F>::from_int(0) : it->second;
}

template <class F>
void Series<F>::accumulate(const MultiIndex& n, const F& c) {
  if (!trunc_.admits(n) || FieldTraits<F>::is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(n, c);
  if (!inserted) {
    it->second += c;
    if (FieldTraits<F>::is_zero(it->second)) terms_.erase(it);
  }
}

template <class F>
Series<F> Series<F>::homogeneous_part(int d) const {
  Series out(trunc_);
  for (const auto& [n, c] : terms_) {
    if (n.degree() == d) out.terms_.emplace_hint(out.terms_.end(), n, c);
  }
  return out;
}

template <class F>
Series<F> Series<F>::operator-() const {
  Series out(*this);
  for (auto& [n, c] : out.terms_) c = -c;
  return out;
}

template <class F>
Series<F> Series<F>::scaled(const F& c) const {
  Series out(trunc_);
  if (FieldTraits<F>::is_zero(c)) return out;
  for (const auto& [n, v] : terms_) out.accumulate(n, v * c);
  return out;
}

template <class F>
Series<F> add(const Series<F>& a, const Series<F>& b) {
  require_same_truncation(a, b, "add");
  Series<F> out = a;
  for (const auto& [n, c] : b.terms()) out.accumulate(n, c);
  return out;
}

template <class F>
Series<F> sub(const Series<F>& a, const Series<F>& b) {
  require_same_truncation(a, b, "sub");
  Series<F> out = a;
  for (const auto& [n, c] : b.terms()) out.accumulate(n, -c);
  return out;
}

template <class F>
Series<F> mul(const Series<F>& a, const Series<F>& b) {
  require_same_truncation(a, b, "mul");
  const int max_degree = a.truncation().degree;
  Series<F> out(a.truncation());
  for (const auto& [na, ca] : a.terms()) {
    const int room = max_degree - na.degree();
    if (room < 0) break;
    // Graded order: b's terms within the remaining degree form a prefix.
    for (const auto& [nb, cb] : b.terms()) {
      if (nb.degree() > room) break;
      out.accumulate(na + nb, ca * cb);
    }
  }
  return out;
}

template <class F>
Series<F> partial_derivative(const Series<F>& a, Species i) {
  require_species(a, i, "partial_derivative");
  Series<F> out(a.truncation());
  for (const auto& [n, c] : a.terms()) {
    const int e = n.exponent(i);
    if (e == 0) continue;
    out.accumulate(n.shifted(i, -1), c * FieldTraits<F>::from_int(e));
  }
  return out;
}

template <class F>
Series<F> variable_mul(const Series<F>& a, Species i) {
  require_species(a, i, "variable_mul");
  Series<F> out(a.truncation());
  for (const auto& [n, c] : a.terms()) out.accumulate(n.shifted(i, 1), c);
  return out;
}

// Uses the Euler operator E = sum_i z_i d/dz_i, which scales a degree-d
// component by d: E exp(a) = exp(a) E a gives g_d = (1/d) sum_j j a_j g_{d-j}.
template <class F>
Series<F> exp_series(const Series<F>& a) {
  if (!FieldTraits<F>::is_zero(a.constant_term())) {
    throw DomainError("exp_series: constant term must be zero");
  }
  const Truncation t = a.truncation();
  const auto parts = graded_parts(a);
  std::vector<Series<F>> g(parts.size(), Series<F>(t));
  g[0] = Series<F>::constant(FieldTraits<F>::from_int(1), t);
  for (int d = 1; d <= t.degree; ++d) {
    Series<F> acc(t);
    for (int j = 1; j <= d; ++j) {
      if (parts[static_cast<std::size_t>(j)].is_zero()) continue;
      acc = add(acc, mul(parts[static_cast<std::size_t>(j)], g[static_cast<std::size_t>(d - j)])
                         .scaled(FieldTraits<F>::from_int(j)));
    }
    g[static_cast<std::size_t>(d)] = acc.scaled(inverse_of<F>(d));
  }
  return sum_parts(g, t);
}

template <class F>
LogSeries<F> log_series(const Series<F>& a) {
  const F c0 = a.constant_term();
  if (FieldTraits<F>::is_zero(c0)) throw DomainError("log_series: constant term must be nonzero");
  if constexpr (FieldTraits<F>::exact) {
    if (sgn(c0) < 0) throw DomainError("log_series: exact mode requires a positive constant term");
  }
  const Truncation t = a.truncation();
  const auto h = graded_parts(a.scaled(FieldTraits<F>::from_int(1) / c0));
  std::vector<Series<F>> l(h.size(), Series<F>(t));
  for (int d = 1; d <= t.degree; ++d) {
    Series<F> acc(t);
    for (int j = 1; j < d; ++j) {
      if (l[static_cast<std::size_t>(j)].is_zero()) continue;
      acc = add(acc, mul(l[static_cast<std::size_t>(j)], h[static_cast<std::size_t>(d - j)])
                         .scaled(FieldTraits<F>::from_int(j)));
    }
    l[static_cast<std::size_t>(d)] = sub(h[static_cast<std::size_t>(d)], acc.scaled(inverse_of<F>(d)));
  }
  return LogSeries<F>{c0, sum_parts(l, t)};
}

template <class F>
Series<F> exp_series(const LogSeries<F>& l) {
  return exp_series(l.tail).scaled(l.constant);
}

Series<double> log_series_value(const Series<double>& a) {
  const double c0 = a.constant_term();
  if (!(c0 > 0.0)) throw DomainError("log_series_value: constant term must be positive");
  auto l = log_series(a);
  l.tail.accumulate(MultiIndex{}, std::log(c0));
  return l.tail;
}

template <class F>
Series<F> reciprocal(const Series<F>& a) {
  const F c0 = a.constant_term();
  if (FieldTraits<F>::is_zero(c0)) throw DomainError("reciprocal: constant term must be nonzero");
  const Truncation t = a.truncation();
  const F inv = FieldTraits<F>::from_int(1) / c0;
  const auto parts = graded_parts(a);
  std::vector<Series<F>> r(parts.size(), Series<F>(t));
  r[0] = Series<F>::constant(inv, t);
  for (int d = 1; d <= t.degree; ++d) {
    Series<F> acc(t);
    for (int j = 1; j <= d; ++j) {
      if (parts[static_cast<std::size_t>(j)].is_zero()) continue;
      acc = add(acc, mul(parts[static_cast<std::size_t>(j)], r[static_cast<std::size_t>(d - j)]));
    }
    r[static_cast<std::size_t>(d)] = acc.scaled(-inv);
  }
  return sum_parts(r, t);
}

template <class F>
PowerCache<F>::PowerCache(const SeriesFamily<F>& family, Truncation t) : family_(&family), trunc_(t) {
  for (const auto& [i, s] : family) {
    if (!(s.truncation() == t)) throw UsageError("power: family members must share the truncation");
  }
}

template <class F>
const Series<F>& PowerCache<F>::pow(Species i, int e) {
  auto key = std::make_pair(i, e);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  auto fit = family_->find(i);
  if (fit == family_->end()) {
    throw UsageError("power: family has no series for species " + std::to_string(i));
  }
  Series<F> value = e == 0   ? Series<F>::constant(FieldTraits<F>::from_int(1), trunc_)
                    : e == 1 ? fit->second
                             : mul(pow(i, e - 1), fit->second);
  return cache_.emplace(key, std::move(value)).first->second;
}

template <class F>
Series<F> PowerCache<F>::monomial(const MultiIndex& n) {
  Series<F> out = Series<F>::constant(FieldTraits<F>::from_int(1), trunc_);
  for (const auto& [i, e] : n.entries()) out = mul(out, pow(i, e));
  return out;
}

template <class F>
Series<F> power(const MultiIndex& n, const SeriesFamily<F>& family, Truncation t) {
  PowerCache<F> cache(family, t);
  return cache.monomial(n);
}

template <class F>
Series<F> substitute(const Series<F>& outer, const SeriesFamily<F>& family) {
  if (family.empty()) {
    return Series<F>::constant(outer.constant_term(), outer.truncation());
  }
  const Truncation t = family.begin()->second.truncation();
  for (const auto& [i, s] : family) {
    if (!FieldTraits<F>::is_zero(s.constant_term())) {
      throw DomainError("substitute: family series for species " + std::to_string(i) +
                        " has a nonzero constant term");
    }
  }
  PowerCache<F> cache(family, t);
  Series<F> out(t);
  for (const auto& [n, c] : outer.terms()) {
    // Zero constant terms mean rho^n starts at degree |n|.
    if (n.degree() > t.degree) break;
    const auto m = cache.monomial(n);
    for (const auto& [k, v] : m.terms()) out.accumulate(k, c * v);
  }
  return out;
}

template <class F>
SeriesMatrix<F>::SeriesMatrix(int dimension, Truncation t) : n_(dimension), trunc_(t) {
  if (dimension < 0 || dimension > kMaxDimension) {
    throw UsageError("SeriesMatrix: dimension must lie in [0, " + std::to_string(kMaxDimension) + "]");
  }
  entries_.assign(static_cast<std::size_t>(dimension * dimension), Series<F>(t));
}

template <class F>
std::size_t SeriesMatrix<F>::index(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) throw UsageError("SeriesMatrix: index out of range");
  return static_cast<std::size_t>(i * n_ + j);
}

template <class F>
void SeriesMatrix<F>::set(int i, int j, Series<F> s) {
  if (!(s.truncation() == trunc_)) throw UsageError("SeriesMatrix: entry truncation mismatch");
  entries_[index(i, j)] = std::move(s);
}

namespace {

template <class F>
const Series<F>& minor_det(const SeriesMatrix<F>& m, int row, unsigned cols, std::map<unsigned, Series<F>>& memo) {
  if (auto it = memo.find(cols); it != memo.end()) return it->second;
  Series<F> acc(m.truncation());
  if (row == m.dimension()) {
    acc = Series<F>::constant(FieldTraits<F>::from_int(1), m.truncation());
  } else {
    int sign = 1;
    for (int c = 0; c < m.dimension(); ++c) {
      const unsigned bit = 1u << c;
      if (!(cols & bit)) continue;
      const auto& entry = m.at(row, c);
      if (!entry.is_zero()) {
        auto term = mul(entry, minor_det(m, row + 1, cols & ~bit, memo));
        acc = sign > 0 ? add(acc, term) : sub(acc, term);
      }
      sign = -sign;
    }
  }
  return memo.emplace(cols, std::move(acc)).first->second;
}

}  // namespace

template <class F>
Series<F> determinant(const SeriesMatrix<F>& m) {
  std::map<unsigned, Series<F>> memo;
  const unsigned all = m.dimension() == 0 ? 0u : ((1u << m.dimension()) - 1u);
  return minor_det(m, 0, all, memo);
}

Series<double> to_float(const Series<Rational>& a) {
  Series<double> out(a.truncation());
  for (const auto& [n, c] : a.terms()) out.accumulate(n, c.get_d());
  return out;
}

#define VIRIALKIT_INSTANTIATE(F)                                                      \
  template class Series<F>;                                                           \
  template class PowerCache<F>;                                                       \
  template class SeriesMatrix<F>;                                                     \
  template Series<F> add(const Series<F>&, const Series<F>&);                         \
  template Series<F> sub(const Series<F>&, const Series<F>&);                         \
  template Series<F> mul(const Series<F>&, const Series<F>&);                         \
  template Series<F> partial_derivative(const Series<F>&, Species);                   \
  template Series<F> variable_mul(const Series<F>&, Species);                         \
  template Series<F> exp_series(const Series<F>&);                                    \
  template LogSeries<F> log_series(const Series<F>&);                                 \
  template Series<F> exp_series(const LogSeries<F>&);                                 \
  template Series<F> reciprocal(const Series<F>&);                                    \
  template Series<F> power(const MultiIndex&, const SeriesFamily<F>&, Truncation);    \
  template Series<F> substitute(const Series<F>&, const SeriesFamily<F>&);            \
  template Series<F> determinant(const SeriesMatrix<F>&);

VIRIALKIT_INSTANTIATE(Rational)
VIRIALKIT_INSTANTIATE(double)

#undef VIRIALKIT_INSTANTIATE

}  // namespace virialkit
