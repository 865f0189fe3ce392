// The per-arity value-linkage relations of a clone, assembled with the
// minimal non-projection arity and the family of 2-element restrictions into
// a bounded characteristic, plus the classifier mapping a characteristic to
// one of the six structural cases on carriers of size >= 2.
#pragma once

#include <map>

#include "clonelab/clone_engine.hpp"
#include "clonelab/conditions.hpp"
#include "clonelab/post_classes.hpp"

namespace clonelab {

// A binary relation on A^n, stored as ordered pairs of encoded n-tuples.
struct NTupleRelation {
  int k = 0;
  int n = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;  // sorted

  bool contains(std::uint64_t a, std::uint64_t b) const;
  // The restriction to rank-2 tuple pairs, for comparison against the
  // special relations (which live on rank-2 pairs only).
  BinaryPairRelation rank2_part() const;
  bool operator==(const NTupleRelation&) const = default;
};

// (a, b) related iff the realized value-pair set {(f(a), f(b)) : f in F_[n]}
// is the graph of an injective partial map (then a permutation extends it).
NTupleRelation relation_R(const GeneratorSet& gens, int n,
                          std::uint64_t cap = kDefaultSliceCap);

// (a, b) related iff some anchor (x, y) has f(a)=x or f(b)=y for every f.
NTupleRelation relation_D(const GeneratorSet& gens, int n,
                          std::uint64_t cap = kDefaultSliceCap);

struct Characteristic {
  int k = 0;
  int bound = 0;
  ArityVerdict r;
  std::map<int, NTupleRelation> linkage;   // R_n for 2 <= n <= bound
  std::map<int, NTupleRelation> anchored;  // D_n likewise
  PiFamily pi;
};

Characteristic characteristic(const GeneratorSet& gens, int bound = 3,
                              std::uint64_t cap = kDefaultSliceCap);

// Componentwise bounded equality; carriers and bounds must match.
bool chi_equal(const Characteristic& a, const Characteristic& b);

// The six cases: 1 minimal non-projection arity >= 4 (or beyond the bound);
// 2 arity 3 with restrictions not linear; 3 arity 3 linear; 4 arity 2
// generic; 5 arity 2 on four elements with the disjoint-or-equal linkage;
// 6 arity 2 on three elements with the up-arrow linkage.
int classify_case(const Characteristic& chi);

}  // namespace clonelab
