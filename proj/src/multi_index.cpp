#include "virialkit/multi_index.hpp"

#include <algorithm>

#include "virialkit/errors.hpp"

namespace virialkit {

MultiIndex::MultiIndex(std::initializer_list<Entry> entries) : entries_(entries) { normalize(); }

MultiIndex::MultiIndex(std::vector<Entry> entries) : entries_(std::move(entries)) { normalize(); }

void MultiIndex::normalize() {
  std::sort(entries_.begin(), entries_.end());
  std::vector<Entry> merged;
  merged.reserve(entries_.size());
  for (const auto& [s, e] : entries_) {
    if (s < 1) throw UsageError("species indices start at 1");
    if (e < 0) throw UsageError("multi-index exponents must be nonnegative");
    if (!merged.empty() && merged.back().first == s) {
      merged.back().second += e;
    } else {
      merged.emplace_back(s, e);
    }
  }
  std::erase_if(merged, [](const Entry& x) { return x.second == 0; });
  entries_ = std::move(merged);
  degree_ = 0;
  for (const auto& entry : entries_) degree_ += entry.second;
}

MultiIndex MultiIndex::unit(Species i) { return MultiIndex({{i, 1}}); }

MultiIndex MultiIndex::from_dense(const std::vector<int>& exponents) {
  std::vector<Entry> e;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] != 0) e.emplace_back(static_cast<Species>(i + 1), exponents[i]);
  }
  return MultiIndex(std::move(e));
}

int MultiIndex::exponent(Species i) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), Entry{i, 0},
                             [](const Entry& a, const Entry& b) { return a.first < b.first; });
  return (it != entries_.end() && it->first == i) ? it->second : 0;
}

Rational MultiIndex::factorial() const {
  mpz_class f = 1;
  for (const auto& [s, e] : entries_) {
    mpz_class t;
    mpz_fac_ui(t.get_mpz_t(), static_cast<unsigned long>(e));
    f *= t;
  }
  return Rational(f);
}

MultiIndex MultiIndex::shifted(Species i, int delta) const {
  int e = exponent(i) + delta;
  if (e < 0) throw UsageError("multi-index exponent would become negative");
  std::vector<Entry> out = entries_;
  auto it = std::find_if(out.begin(), out.end(), [i](const Entry& x) { return x.first == i; });
  if (it != out.end()) {
    it->second = e;
  } else {
    out.emplace_back(i, e);
  }
  return MultiIndex(std::move(out));
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex r;
  r.entries_.reserve(a.entries_.size() + b.entries_.size());
  auto i = a.entries_.begin();
  auto j = b.entries_.begin();
  while (i != a.entries_.end() || j != b.entries_.end()) {
    if (j == b.entries_.end() || (i != a.entries_.end() && i->first < j->first)) {
      r.entries_.push_back(*i++);
    } else if (i == a.entries_.end() || j->first < i->first) {
      r.entries_.push_back(*j++);
    } else {
      r.entries_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  r.degree_ = a.degree_ + b.degree_;
  return r;
}

bool MultiIndex::divides(const MultiIndex& k) const {
  for (const auto& [s, e] : entries_) {
    if (k.exponent(s) < e) return false;
  }
  return true;
}

std::vector<int> MultiIndex::dense(int species) const {
  std::vector<int> d(static_cast<std::size_t>(species), 0);
  for (const auto& [s, e] : entries_) {
    if (s > species) throw UsageError("multi-index touches species beyond the requested width");
    d[static_cast<std::size_t>(s - 1)] = e;
  }
  return d;
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
  if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
  auto i = a.entries_.begin();
  auto j = b.entries_.begin();
  while (i != a.entries_.end() && j != b.entries_.end()) {
    if (i->first != j->first) {
      // The index whose first nonzero species comes later has a zero there.
      return i->first < j->first ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    if (i->second != j->second) return i->second <=> j->second;
    ++i;
    ++j;
  }
  if (i != a.entries_.end()) return std::strong_ordering::greater;
  if (j != b.entries_.end()) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

std::string MultiIndex::compact() const {
  if (entries_.empty()) return "0";
  std::string s;
  for (const auto& [sp, e] : entries_) {
    if (!s.empty()) s += '+';
    s += std::to_string(e) + "\xC2\xB7" + "e" + std::to_string(sp);
  }
  return s;
}

namespace {

void compositions(int remaining, int species, int cap, std::vector<int>& cur, std::vector<MultiIndex>& out) {
  if (species == cap) {
    cur[static_cast<std::size_t>(species - 1)] = remaining;
    out.push_back(MultiIndex::from_dense(cur));
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[static_cast<std::size_t>(species - 1)] = e;
    compositions(remaining - e, species + 1, cap, cur, out);
  }
}

}  // namespace

std::vector<MultiIndex> indices_of_degree(int degree, int species_cap) {
  if (degree < 0 || species_cap < 1) throw UsageError("indices_of_degree: invalid degree or species cap");
  std::vector<MultiIndex> out;
  std::vector<int> cur(static_cast<std::size_t>(species_cap), 0);
  compositions(degree, 1, species_cap, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<MultiIndex> indices_up_to(int degree, int species_cap) {
  std::vector<MultiIndex> out;
  for (int d = 0; d <= degree; ++d) {
    auto layer = indices_of_degree(d, species_cap);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

std::size_t MultiIndexHash::operator()(const MultiIndex& n) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (const auto& [s, e] : n.entries()) {
    h ^= static_cast<std::size_t>(s) * 0x100000001b3ULL + static_cast<std::size_t>(e) + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace virialkit
