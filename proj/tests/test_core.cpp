#include <doctest.h>

#include <random>

#include "clonelab/conditions.hpp"
#include "clonelab/core.hpp"
#include "oracle.hpp"

using namespace clonelab;

namespace {

FiniteFunction bool_majority() {
  return FiniteFunction(2, 3, {0, 0, 0, 1, 0, 1, 1, 1});
}

FiniteFunction bool_xor3() {
  return FiniteFunction(2, 3, {0, 1, 1, 0, 1, 0, 0, 1});
}

FiniteFunction random_function(std::mt19937_64& rng, int k, int n) {
  std::vector<Value> table(pow_checked(k, n));
  for (auto& v : table) v = static_cast<Value>(rng() % k);
  return FiniteFunction(k, n, std::move(table));
}

}  // namespace

TEST_CASE("tuple codec matches the positional formula") {
  CHECK(encode_tuple(Tuple{2, 0, 1}, 3) == 19);
  CHECK(encode_tuple(Tuple{0, 0, 0}, 2) == 0);
  CHECK(encode_tuple(Tuple{3}, 4) == 3);
  CHECK(decode_tuple(19, 3, 3) == Tuple{2, 0, 1});
  CHECK(decode_tuple(0, 2, 2) == Tuple{0, 0});
  CHECK(decode_tuple(5, 2, 3) == Tuple{1, 2});
  CHECK_THROWS_AS(encode_tuple(Tuple{3}, 3), std::invalid_argument);
  CHECK_THROWS_AS(decode_tuple(9, 2, 3), std::invalid_argument);
}

TEST_CASE("tuple codec round-trips for n <= 5, k <= 4") {
  for (int k = 2; k <= 4; ++k) {
    for (int n = 1; n <= 5; ++n) {
      const std::uint64_t size = pow_checked(k, n);
      for (std::uint64_t idx = 0; idx < size; ++idx) {
        CHECK(encode_tuple(decode_tuple(idx, n, k), k) == idx);
      }
    }
  }
}

TEST_CASE("tuple rank counts distinct entries") {
  CHECK(tuple_rank(Tuple{0, 0, 0}) == 1);
  CHECK(tuple_rank(Tuple{0, 1, 0}) == 2);
  CHECK(tuple_rank(Tuple{2, 0, 1}) == 3);
}

TEST_CASE("projections unroll under the codec") {
  CHECK(FiniteFunction::projection(2, 2, 1).table() ==
        std::vector<Value>{0, 1, 0, 1});
  CHECK(FiniteFunction::projection(3, 1, 0).table() ==
        std::vector<Value>{0, 1, 2});
  CHECK(FiniteFunction::projection(3, 2, 0).table() ==
        std::vector<Value>{0, 0, 0, 1, 1, 1, 2, 2, 2});
  CHECK_THROWS_AS(FiniteFunction::projection(3, 2, 2), std::invalid_argument);
}

TEST_CASE("table validation") {
  CHECK_THROWS_AS(FiniteFunction(3, 2, {0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteFunction(3, 2, std::vector<Value>(9, 3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(FiniteFunction(1, 1, {0}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteFunction(2, 0, {0}), std::invalid_argument);
}

TEST_CASE("application reads the distinguished binary tables") {
  const auto [u, v] = uv_pair(3);
  CHECK(u(Tuple{0, 2}) == 0);
  CHECK(v(Tuple{1, 2}) == 1);
  for (int n = 1; n <= 3; ++n) {
    for (int i = 0; i < n; ++i) {
      const auto e = FiniteFunction::projection(3, n, i);
      for (std::uint64_t c = 0; c < e.table().size(); ++c) {
        const Tuple cell = decode_tuple(c, n, 3);
        CHECK(e(cell) == cell[static_cast<std::size_t>(i)]);
      }
    }
  }
}

TEST_CASE("composition is cellwise term application") {
  const auto [u, v] = uv_pair(3);
  // v(v(u(x0,x1), u(x0,x2)), u(x1,x2)) at (0,1,2): the inner values are
  // u(0,1)=1, u(0,2)=0, v(1,0)=0, u(1,2)=2, then v(0,2)=2.
  const auto e0 = FiniteFunction::projection(3, 3, 0);
  const auto e1 = FiniteFunction::projection(3, 3, 1);
  const auto e2 = FiniteFunction::projection(3, 3, 2);
  const auto u01 = compose(u, std::vector<FiniteFunction>{e0, e1});
  const auto u02 = compose(u, std::vector<FiniteFunction>{e0, e2});
  const auto u12 = compose(u, std::vector<FiniteFunction>{e1, e2});
  const auto inner = compose(v, std::vector<FiniteFunction>{u01, u02});
  const auto f = compose(v, std::vector<FiniteFunction>{inner, u12});
  CHECK(f(Tuple{0, 1, 2}) == 2);

  SUBCASE("projection absorbs") {
    std::mt19937_64 rng(7);
    const auto g = random_function(rng, 3, 2);
    const auto h = random_function(rng, 3, 2);
    CHECK(compose(FiniteFunction::projection(3, 2, 0),
                  std::vector<FiniteFunction>{g, h}) == g);
  }
  SUBCASE("identity composition") {
    CHECK(compose(u, std::vector<FiniteFunction>{
                         FiniteFunction::projection(3, 2, 0),
                         FiniteFunction::projection(3, 2, 1)}) == u);
  }
  SUBCASE("arity mismatch is rejected") {
    CHECK_THROWS_AS(compose(u, std::vector<FiniteFunction>{e0}),
                    std::invalid_argument);
  }
}

TEST_CASE("composition agrees with direct term evaluation on seeded instances") {
  std::mt19937_64 rng(20260809);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 2 + static_cast<int>(rng() % 3);
    const int n = 1 + static_cast<int>(rng() % 3);
    const int m = 1 + static_cast<int>(rng() % 3);
    const auto f = random_function(rng, k, n);
    std::vector<FiniteFunction> gs;
    for (int i = 0; i < n; ++i) gs.push_back(random_function(rng, k, m));
    const auto composed = compose(f, gs);
    for (std::uint64_t c = 0; c < composed.table().size(); ++c) {
      const Tuple x = decode_tuple(c, m, k);
      CHECK(composed.at_cell(c) == oracle::term_eval(f, gs, x));
    }
  }
}

TEST_CASE("conjugation") {
  const auto [u, v] = uv_pair(3);
  const auto swap01 = Permutation::transposition(3, 0, 1);

  SUBCASE("projections commute with relabeling") {
    for (const auto& sigma : Permutation::all(3)) {
      CHECK(conjugate(FiniteFunction::projection(3, 2, 1), sigma) ==
            FiniteFunction::projection(3, 2, 1));
    }
  }
  SUBCASE("cellwise recomputation") {
    const auto us = conjugate(u, swap01);
    for (std::uint64_t c = 0; c < 9; ++c) {
      const Tuple cell = decode_tuple(c, 2, 3);
      const Tuple mapped{swap01(cell[0]), swap01(cell[1])};
      CHECK(us.at_cell(c) == swap01.inverse()(u(mapped)));
    }
  }
  SUBCASE("identity conjugation") {
    CHECK(conjugate(v, Permutation::identity(3)) == v);
  }
  SUBCASE("double conjugation undoes") {
    CHECK(conjugate(conjugate(u, swap01), swap01.inverse()) == u);
  }
  SUBCASE("conjugation is a composition homomorphism") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
      const int k = 2 + static_cast<int>(rng() % 3);
      const auto perms = Permutation::all(k);
      const auto& sigma = perms[rng() % perms.size()];
      const auto f = random_function(rng, k, 2);
      std::vector<FiniteFunction> gs{random_function(rng, k, 2),
                                     random_function(rng, k, 2)};
      std::vector<FiniteFunction> conj_gs{conjugate(gs[0], sigma),
                                          conjugate(gs[1], sigma)};
      CHECK(conjugate(compose(f, gs), sigma) ==
            compose(conjugate(f, sigma), conj_gs));
    }
  }
}

TEST_CASE("variable identification") {
  const auto [u, v] = uv_pair(3);
  SUBCASE("binary diagonal") {
    const auto diag = identify_vars(u, std::vector<int>{0, 0}, 1);
    CHECK(diag.arity() == 1);
    for (Value x = 0; x < 3; ++x) CHECK(diag(Tuple{x}) == u(Tuple{x, x}));
  }
  SUBCASE("majority collapses to its repeated argument") {
    const auto g = identify_vars(bool_majority(), std::vector<int>{0, 0, 1}, 2);
    CHECK(g == FiniteFunction::projection(2, 2, 0));
  }
  SUBCASE("identity map leaves the function alone") {
    CHECK(identify_vars(v, std::vector<int>{0, 1}, 2) == v);
  }
  SUBCASE("equals composition with selected projections") {
    const auto direct = identify_vars(u, std::vector<int>{1, 0}, 2);
    const auto via_compose =
        compose(u, std::vector<FiniteFunction>{
                       FiniteFunction::projection(3, 2, 1),
                       FiniteFunction::projection(3, 2, 0)});
    CHECK(direct == via_compose);
  }
  CHECK_THROWS_AS(identify_vars(u, std::vector<int>{0, 2}, 2),
                  std::invalid_argument);
}

TEST_CASE("shape report") {
  SUBCASE("majority") {
    const auto shape = classify_function(bool_majority());
    CHECK(shape.is_conservative);
    CHECK(shape.is_idempotent);
    CHECK(shape.is_d_function);
    CHECK_FALSE(shape.is_l_function);
    CHECK_FALSE(shape.is_projection);
  }
  SUBCASE("parity") {
    const auto shape = classify_function(bool_xor3());
    CHECK(shape.is_conservative);
    CHECK(shape.is_idempotent);
    CHECK(shape.is_l_function);
    CHECK_FALSE(shape.is_d_function);
  }
  SUBCASE("projection") {
    const auto shape = classify_function(FiniteFunction::projection(3, 3, 1));
    CHECK(shape.is_projection);
    CHECK(shape.projection_index == 1);
    CHECK(shape.is_conservative);
    CHECK(shape.is_idempotent);
    CHECK_FALSE(shape.is_d_function);
    CHECK_FALSE(shape.is_l_function);
  }
  SUBCASE("pattern flags equal the direct identity scan") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
      const int k = 2 + static_cast<int>(rng() % 2);
      const auto f = random_function(rng, k, 3);
      bool is_d = true, is_l = true;
      for (Value x = 0; x < k; ++x) {
        for (Value y = 0; y < k; ++y) {
          is_d = is_d && f(Tuple{x, x, y}) == x && f(Tuple{x, y, x}) == x &&
                 f(Tuple{y, x, x}) == x;
          is_l = is_l && f(Tuple{x, y, y}) == x && f(Tuple{y, x, y}) == x &&
                 f(Tuple{y, y, x}) == x;
        }
      }
      const auto shape = classify_function(f);
      CHECK(shape.is_d_function == is_d);
      CHECK(shape.is_l_function == is_l);
    }
  }
}

TEST_CASE("majority and minority cell values") {
  CHECK(majority_value(0, 0, 2) == 0);
  CHECK(majority_value(1, 2, 1) == 1);
  CHECK(minority_value(0, 1, 1) == 0);
  CHECK(minority_value(1, 1, 2) == 2);
  CHECK(minority_value(2, 2, 2) == 2);
  CHECK_THROWS_AS(majority_value(0, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(minority_value(0, 1, 2), std::invalid_argument);
}

TEST_CASE("permutations") {
  CHECK_THROWS_AS(Permutation(3, {0, 0, 1}), std::invalid_argument);
  CHECK(Permutation::all(3).size() == 6);
  const auto p = Permutation(3, {1, 2, 0});
  CHECK(p.inverse().then(p) == Permutation::identity(3));
}
