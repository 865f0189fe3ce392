#include <doctest.h>

#include <algorithm>
#include <random>

#include "clonelab/catalog.hpp"
#include "clonelab/clone_engine.hpp"
#include "clonelab/conditions.hpp"
#include "oracle.hpp"

using namespace clonelab;

namespace {

GeneratorSet majority_gens() {
  return GeneratorSet(2, {FiniteFunction(2, 3, {0, 0, 0, 1, 0, 1, 1, 1})});
}

GeneratorSet xor3_gens() {
  return GeneratorSet(2, {FiniteFunction(2, 3, {0, 1, 1, 0, 1, 0, 0, 1})});
}

GeneratorSet and_or_gens() {
  return GeneratorSet(2, {FiniteFunction(2, 2, {0, 0, 0, 1}),
                          FiniteFunction(2, 2, {0, 1, 1, 1})});
}

GeneratorSet uv_gens() {
  const auto [u, v] = uv_pair(3);
  return GeneratorSet(3, {u, v});
}

std::set<std::vector<Value>> tables_of(const FunctionSet& set, int n) {
  std::set<std::vector<Value>> out;
  for (const auto& f : set.at_arity(n)) out.insert(f.table());
  return out;
}

}  // namespace

TEST_CASE("generator sets deduplicate and order canonically") {
  const auto [u, v] = uv_pair(3);
  const GeneratorSet gens(3, {v, u, v, u});
  CHECK(gens.size() == 2);
  CHECK(std::is_sorted(gens.functions().begin(), gens.functions().end()));
  CHECK_THROWS_AS(GeneratorSet(2, {u}), std::invalid_argument);
}

TEST_CASE("empty generation gives exactly the projections") {
  const auto s = slice(GeneratorSet(3), 2);
  CHECK(s.total_size() == 2);
  CHECK(contains(s, FiniteFunction::projection(3, 2, 0)));
  CHECK(contains(s, FiniteFunction::projection(3, 2, 1)));
}

TEST_CASE("majority generates only itself at arity 3") {
  const auto s = slice(majority_gens(), 3);
  CHECK(s.total_size() == 4);
  CHECK(contains(s, FiniteFunction(2, 3, {0, 0, 0, 1, 0, 1, 1, 1})));
  for (int i = 0; i < 3; ++i) {
    CHECK(contains(s, FiniteFunction::projection(2, 3, i)));
  }
}

TEST_CASE("unary slice of a conservative clone is the identity alone") {
  const auto s = slice(uv_gens(), 1);
  CHECK(s.total_size() == 1);
  CHECK(contains(s, FiniteFunction::projection(3, 1, 0)));
}

TEST_CASE("slices match the naive closure oracle on k = 2") {
  for (const auto& gens : {majority_gens(), xor3_gens(), and_or_gens()}) {
    for (int m = 1; m <= 3; ++m) {
      const auto expected = oracle::naive_slice(gens, m);
      const auto got = tables_of(slice(gens, m), m);
      CHECK(got == expected);
    }
  }
}

TEST_CASE("every slice contains all projections of its arity") {
  for (const auto& gens : {uv_gens(), GeneratorSet(3)}) {
    for (int m = 1; m <= 3; ++m) {
      const auto s = slice(gens, m);
      for (int i = 0; i < m; ++i) {
        CHECK(contains(s, FiniteFunction::projection(3, m, i)));
      }
    }
  }
}

TEST_CASE("cell-projected slices equal the projection of the full slice") {
  std::mt19937_64 rng(17);
  for (const auto& gens : {majority_gens(), xor3_gens(), and_or_gens()}) {
    for (int m = 2; m <= 3; ++m) {
      const std::uint64_t size = pow_checked(2, m);
      std::vector<std::uint64_t> cells;
      for (std::uint64_t c = 0; c < size; ++c) {
        if (rng() % 2) cells.push_back(c);
      }
      if (cells.empty()) cells.push_back(0);
      const auto projected = slice_on_cells(gens, m, cells);
      std::set<Tuple> expected;
      for (const auto& f : slice(gens, m).all()) {
        Tuple t(projected.cells.size());
        for (std::size_t i = 0; i < projected.cells.size(); ++i) {
          t[i] = f.at_cell(projected.cells[i]);
        }
        expected.insert(std::move(t));
      }
      CHECK(std::set<Tuple>(projected.traces.begin(), projected.traces.end()) ==
            expected);
    }
  }
}

TEST_CASE("conjugation-closed generators give conjugation-closed slices") {
  const auto gens = symmetric_closure(uv_gens());
  CHECK(gens.conjugation_closed());
  const auto s = slice(gens, 2);
  for (const auto& f : s.all()) {
    for (const auto& sigma : Permutation::all(3)) {
      CHECK(contains(s, conjugate(f, sigma)));
    }
  }
}

TEST_CASE("conservative generators give conservative slices") {
  for (int m = 1; m <= 2; ++m) {
    for (const auto& f : slice(symmetric_closure(uv_gens()), m).all()) {
      CHECK(classify_function(f).is_conservative);
    }
  }
}

TEST_CASE("membership requires closure at the arity") {
  const auto s2 = slice(xor3_gens(), 2);
  CHECK_THROWS_AS(contains(s2, FiniteFunction(2, 3, {0, 0, 0, 1, 0, 1, 1, 1})),
                  std::invalid_argument);
  const auto s3 = slice(xor3_gens(), 3);
  CHECK_FALSE(contains(s3, FiniteFunction(2, 3, {0, 0, 0, 1, 0, 1, 1, 1})));
  const auto [u, v] = uv_pair(3);
  CHECK(contains(slice(uv_gens(), 2), u));
}

TEST_CASE("symmetric closure") {
  SUBCASE("projection generators are already closed") {
    const GeneratorSet gens(3, {FiniteFunction::projection(3, 2, 0)});
    CHECK(symmetric_closure(gens) == gens);
  }
  SUBCASE("contains every conjugate, and nothing else") {
    const auto [u, v] = uv_pair(3);
    const auto closed = symmetric_closure(GeneratorSet(3, {u}));
    for (const auto& sigma : Permutation::all(3)) {
      const auto us = conjugate(u, sigma);
      CHECK(std::binary_search(closed.functions().begin(),
                               closed.functions().end(), us));
    }
    for (const auto& f : closed.functions()) {
      bool is_conjugate = false;
      for (const auto& sigma : Permutation::all(3)) {
        is_conjugate |= (f == conjugate(u, sigma));
      }
      CHECK(is_conjugate);
    }
  }
  SUBCASE("idempotent on closed sets") {
    const auto once = symmetric_closure(uv_gens());
    CHECK(symmetric_closure(once) == once);
  }
}

TEST_CASE("carrier restriction") {
  const std::vector<Value> b01{0, 1};
  SUBCASE("binary conservative slice restricts onto the Boolean one") {
    const auto all3 = conservative_slice(3, 2);
    const auto restricted = restrict_carrier(all3, b01);
    // 4 distinct Boolean conservative binary functions survive.
    CHECK(tables_of(restricted, 2).size() == 4);
  }
  SUBCASE("projections restrict to projections") {
    const FunctionSet ps(3,
                         {FiniteFunction::projection(3, 2, 0),
                          FiniteFunction::projection(3, 2, 1)},
                         std::nullopt);
    const auto restricted = restrict_carrier(ps, b01);
    CHECK(contains(FunctionSet(2, restricted.all(), 2),
                   FiniteFunction::projection(2, 2, 0)));
  }
  SUBCASE("the two distinguished tables restrict to the lattice pair") {
    const auto [u, v] = uv_pair(3);
    CHECK(restrict_to_subset(u, b01) == FiniteFunction(2, 2, {0, 1, 1, 1}));
    CHECK(restrict_to_subset(v, b01) == FiniteFunction(2, 2, {0, 0, 0, 1}));
  }
  SUBCASE("functions leaving the subset are rejected") {
    const FiniteFunction constant2(3, 1, {2, 2, 2});
    CHECK_THROWS_AS(restrict_to_subset(constant2, b01), std::invalid_argument);
  }
}

TEST_CASE("minimal non-projection arity") {
  CHECK(min_nonprojection_arity(uv_gens(), 3) == ArityVerdict::Finite(2));
  CHECK(min_nonprojection_arity(majority_gens(), 3) == ArityVerdict::Finite(3));
  CHECK(min_nonprojection_arity(GeneratorSet(3), 4) == ArityVerdict::AtLeast(5));
  CHECK(min_nonprojection_arity(GeneratorSet(3, all_minority_functions(3)), 3) ==
        ArityVerdict::Finite(3));
}

TEST_CASE("conservative slices") {
  CHECK(conservative_slice(2, 2).total_size() == 4);
  CHECK(conservative_slice(3, 2).total_size() == 64);
  const auto unary = conservative_slice(3, 1);
  CHECK(unary.total_size() == 1);
  for (const auto& f : conservative_slice(3, 2).all()) {
    CHECK(classify_function(f).is_conservative);
  }
}

TEST_CASE("natural isomorphism checking") {
  const auto d2 = slice(majority_gens(), 3);
  FunctionSet d2_all(2, {}, 3);
  {
    std::vector<FiniteFunction> members;
    for (int n = 1; n <= 3; ++n) {
      auto part = slice(majority_gens(), n).all();
      members.insert(members.end(), part.begin(), part.end());
    }
    d2_all = FunctionSet(2, std::move(members), 3);
  }
  SUBCASE("identity on itself") {
    const std::vector<Value> id{0, 1};
    CHECK(is_natural_isomorphism(id, d2_all, d2_all, 3));
  }
  SUBCASE("relabeled transport") {
    const std::vector<Value> flip{1, 0};
    std::vector<FiniteFunction> flipped;
    for (const auto& f : d2_all.all()) {
      flipped.push_back(conjugate(f, Permutation(2, {1, 0})));
    }
    const FunctionSet relabeled(2, std::move(flipped), 3);
    CHECK(is_natural_isomorphism(flip, d2_all, relabeled, 3));
  }
  SUBCASE("majority and parity clones are not isomorphic") {
    std::vector<FiniteFunction> members;
    for (int n = 1; n <= 3; ++n) {
      auto part = slice(xor3_gens(), n).all();
      members.insert(members.end(), part.begin(), part.end());
    }
    const FunctionSet l4_all(2, std::move(members), 3);
    CHECK_FALSE(is_natural_isomorphism(std::vector<Value>{0, 1}, d2_all,
                                       l4_all, 3));
    CHECK_FALSE(is_natural_isomorphism(std::vector<Value>{1, 0}, d2_all,
                                       l4_all, 3));
  }
}

TEST_CASE("capacity failures are loud and carry the arity") {
  try {
    slice(GeneratorSet(3, conservative_slice(3, 2).all()), 2, 10);
    FAIL("expected a capacity failure");
  } catch (const CapacityError& e) {
    CHECK(e.arity() == 2);
    CHECK(e.size_reached() > 0);
  }
}
