#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "virialkit/rational.hpp"

namespace virialkit {

using Species = int;

// Exponent vector over species 1, 2, ... with finitely many nonzero entries.
// Stored as (species, exponent) pairs sorted by species; zero exponents are
// never stored.
class MultiIndex {
 public:
  using Entry = std::pair<Species, int>;

  MultiIndex() = default;
  // Entries may be unsorted and may contain zeros; duplicates are summed.
  MultiIndex(std::initializer_list<Entry> entries);
  explicit MultiIndex(std::vector<Entry> entries);

  static MultiIndex unit(Species i);
  // Dense form: exponents[0] is the exponent of species 1.
  static MultiIndex from_dense(const std::vector<int>& exponents);

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  int degree() const { return degree_; }
  int exponent(Species i) const;
  // Largest species with a nonzero exponent, 0 for the empty index.
  Species max_species() const { return entries_.empty() ? 0 : entries_.back().first; }

  // n! = prod_i n_i!
  Rational factorial() const;

  // Returns a copy with the exponent of species i changed by delta.
  // Throws UsageError if the result would be negative.
  MultiIndex shifted(Species i, int delta) const;

  friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);

  // Componentwise n <= k.
  bool divides(const MultiIndex& k) const;

  std::vector<int> dense(int species) const;

  // Graded order: total degree first, then lexicographic on the dense
  // exponent vector (species 1 first).
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b);
  friend bool operator==(const MultiIndex& a, const MultiIndex& b) = default;

  // "2·e1+1·e3"; the empty index prints as "0".
  std::string compact() const;

 private:
  void normalize();

  std::vector<Entry> entries_;
  int degree_ = 0;
};

// Every multi-index with |n| <= degree and species <= species_cap, in graded order.
std::vector<MultiIndex> indices_up_to(int degree, int species_cap);
// Only those with |n| == degree.
std::vector<MultiIndex> indices_of_degree(int degree, int species_cap);

struct MultiIndexHash {
  std::size_t operator()(const MultiIndex& n) const noexcept;
};

}  // namespace virialkit
