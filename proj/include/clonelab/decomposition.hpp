// Decompositions of a row set H into cylinders over index subsets, the
// derived index families (permutation-linked pairs, equal pairs, anchored
// pairs, small columns, columns within a carrier subset), and weak/strong
// separation of positions.
#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "clonelab/galois.hpp"

namespace clonelab {

// A family of subsets of 0..m-1. Empty member subsets are rejected unless
// explicitly allowed: the cylinder over the empty set is the full cube and
// silently trivializes decomposability.
class SubsetFamily {
 public:
  SubsetFamily(int m, std::vector<std::vector<int>> sets,
               bool allow_empty = false);

  int m() const noexcept { return m_; }
  const std::vector<std::vector<int>>& sets() const noexcept { return sets_; }
  bool empty() const noexcept { return sets_.empty(); }

  bool operator==(const SubsetFamily&) const = default;

 private:
  int m_;
  std::vector<std::vector<int>> sets_;  // each sorted; list sorted, deduped
};

struct DecompositionResult {
  std::vector<QSet> cylinders;  // (H|_R)|^Q per family member, same order
  QSet intersection;
};

// H is always contained in the intersection, and the intersection restricted
// to any family member R equals H|_R.
DecompositionResult decomposition_apply(const QSet& h, const SubsetFamily& fam);

// H equals the intersection of its cylinders over the family.
bool is_decomposable(const QSet& h, const SubsetFamily& fam);

struct IndexFamilies {
  // {p,q} such that some permutation sigma has h(q) = sigma(h(p)) for all h.
  std::vector<std::pair<int, int>> perm_linked_pairs;
  // {p,q} with h(p) = h(q) for all h; always a subset of perm_linked_pairs.
  std::vector<std::pair<int, int>> equal_pairs;
  // {p,q} such that some (a,b) has h(p)=a or h(q)=b for all h.
  std::vector<std::pair<int, int>> anchored_pairs;
  // Positions q with |H(q)| < n.
  std::vector<int> small_columns;
  // Positions q with H(q) within B, for each 2-element carrier subset B.
  std::map<std::pair<Value, Value>, std::vector<int>> columns_within;
};

// n controls the small-column family; when b is given, columns_within holds
// only that subset, otherwise every 2-element subset of the carrier.
IndexFamilies index_families(const QSet& h, int n,
                             std::optional<std::pair<Value, Value>> b =
                                 std::nullopt);

struct SeparationWitness {
  int p = 0;
  int q = 0;
  Value a = 0;
  std::size_t row1 = 0;  // h1(p) = h2(p) = a, h1(q) != h2(q)
  std::size_t row2 = 0;
};

// Two rows agreeing with value a at p but differing at q, if any.
std::optional<SeparationWitness> weakly_separates(const QSet& h, int p, int q,
                                                  Value a);

// Every b in H(q) is realized alongside a at p.
bool strongly_separates(const QSet& h, int p, int q, Value a);

}  // namespace clonelab
