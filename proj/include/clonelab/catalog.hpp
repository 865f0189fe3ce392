// Built-in generator sets for the worked clones on carriers 2, 3, 4, with
// their expected structural case and richness profile. These drive the
// verification suites and the reproducible acceptance runs.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clonelab/clone_engine.hpp"

namespace clonelab {

struct DeltaExpectation {
  std::optional<int> slot_n;  // the slot condition holds at this arity
  bool partial = false;       // the majority-pattern condition holds
  bool two = false;           // the idempotent-pair condition holds
};

struct CloneCatalogEntry {
  std::string name;
  GeneratorSet gens;
  int expected_case = 0;
  DeltaExpectation expected_delta;
};

// k in {2, 3, 4}. All entries are conservative and conjugation-closed.
std::vector<CloneCatalogEntry> builtin_catalog(int k);

const CloneCatalogEntry& catalog_entry(const std::vector<CloneCatalogEntry>& entries,
                                       const std::string& name);

// The distinguished single generators used by the catalog.

// Ternary majority-pattern function on k=3 sending every rank-3 cell to its
// first coordinate.
FiniteFunction majority_pattern_first(int k = 3);

// The 4-ary function on k=4 equal to the first coordinate on all cells of
// rank < 4 and to the second coordinate on rank-4 cells. Fixed by every
// conjugation, with minimal non-projection arity 4.
FiniteFunction rank4_selector(int k = 4);

// All conservative ternary minority-pattern functions on k=3 (729 of them).
std::vector<FiniteFunction> all_minority_functions(int k = 3);

// The 8 binary conservative equivariant functions on k=4 whose restrictions
// to 2-element subsets are projections.
std::vector<FiniteFunction> klein_binary_functions(int k = 4);

}  // namespace clonelab
