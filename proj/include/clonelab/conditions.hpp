// Richness conditions on clones: the existence of slice members realizing
// prescribed values on high-rank tuples while behaving like a projection,
// a majority-pattern function, or an idempotent function elsewhere. Also the
// special pair relations on 3- and 4-element carriers, pair types, the
// value-transfer relations, the two distinguished binary tables on k=3, and
// the equivariant function family on k=4.
//
// All checks run on cell-projected slices (demand cells only): generator
// application acts cellwise, so projected closure is exact.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "clonelab/clone_engine.hpp"
#include "clonelab/core.hpp"
#include "clonelab/post_classes.hpp"

namespace clonelab {

enum class DeltaKind { S, Partial, Two };

std::string to_string(DeltaKind kind);

struct DeltaWitness {
  Tuple demand_tuple;            // the high-rank tuple a
  Value demand_value = 0;        // the required value at it
  Tuple second_tuple;            // second tuple b (idempotent-pair check only)
  Value second_value = 0;
  std::vector<std::uint64_t> cells;  // cells the witness trace is recorded on
  Tuple trace;                   // empty in a counterexample
};

struct DeltaReport {
  DeltaKind kind = DeltaKind::S;
  int n = 0;  // arity parameter (3 for Partial, 2 for Two)
  bool holds = false;
  bool vacuous = false;  // no demands exist on this carrier
  std::optional<int> witness_index;      // the uniform slot i (DeltaKind::S)
  std::vector<DeltaWitness> witnesses;   // one per checked demand, when holds
  std::optional<DeltaWitness> counterexample;  // unmet demand, when not
};

// For some i < n: every rank-n tuple a and value in ran a are realized by an
// n-ary slice member agreeing with the i-th projection on all rank-<n cells.
DeltaReport delta_s(const GeneratorSet& gens, int n,
                    std::uint64_t cap = kDefaultSliceCap);

// Every rank-3 triple and value in its range are realized by a ternary slice
// member with the majority pattern on all rank-<=2 cells.
DeltaReport delta_partial(const GeneratorSet& gens,
                          std::uint64_t cap = kDefaultSliceCap);

// Every pair of rank-2 pairs with distinct ranges and every choice of target
// values are realized by one idempotent binary slice member.
DeltaReport delta_2(const GeneratorSet& gens,
                    std::uint64_t cap = kDefaultSliceCap);

// Ordered pairs of rank-2 pairs, each encoded as a0*k + a1.
struct BinaryPairRelation {
  int k = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;  // sorted

  bool contains(std::uint64_t a, std::uint64_t b) const;
  bool operator==(const BinaryPairRelation&) const = default;
};

enum class SpecialRelationKind { UpArrow, PlusMinus };

// UpArrow (k=3): ab=cd, or b=c and a!=d, or a=d and b!=c.
// PlusMinus (k=4): equal ranges or disjoint ranges.
BinaryPairRelation special_relation(SpecialRelationKind kind, int k);

enum class PairType { T0, T1, T00, T01, T10, T11, T2 };

std::string to_string(PairType t);

// The unique matching case for two rank-2 pairs: equal; swapped; a_i = b_j
// with the complementary entries distinct (tag ij); or disjoint ranges.
PairType pair_type(std::pair<Value, Value> a, std::pair<Value, Value> b);

// Value transfer: (a, b) related iff every binary slice member sending a to
// a_i sends b to b_i.
BinaryPairRelation triangle_rel(const GeneratorSet& gens, int i,
                                std::uint64_t cap = kDefaultSliceCap);

// The two distinguished commutative binary tables on a 3-element carrier;
// u(x,y) = x exactly when v(x,y) = y.
std::pair<FiniteFunction, FiniteFunction> uv_pair(int k = 3);

// {id, (01)(23), (02)(13), (03)(12)} on a 4-element carrier.
std::vector<Permutation> klein_group(int k = 4);

// Orbits of 2-element subsets under the group above: {01|23}, {02|13},
// {03|12}. Returns the orbit index of {a, b}.
int klein_orbit_of(Value a, Value b);

// On carrier 4: f restricted to every 2-element subset lies in the clone
// matching P, and f commutes with the group above on all rank-2 tuples.
bool is_klein_P_function(const FiniteFunction& f, const PostClassId& p);

// All traces on rank-<=2 cells realizable by conservative equivariant
// P-functions of arity n: rank-1 cells are forced, and each subset orbit
// independently follows a self-dual n-ary member of P.
struct KleinTraceSet {
  int n = 0;
  std::vector<std::uint64_t> cells;  // rank-<=2 cells over k=4, ascending
  std::vector<Tuple> traces;         // sorted
};

KleinTraceSet klein_rank2_slice(const PostClassId& p, int n);

}  // namespace clonelab
