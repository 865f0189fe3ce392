#include <doctest.h>

#include <random>

#include "clonelab/catalog.hpp"
#include "clonelab/conditions.hpp"
#include "clonelab/galois.hpp"
#include "clonelab/verify.hpp"
#include "oracle.hpp"

using namespace clonelab;

namespace {

const FiniteFunction kMaj(2, 3, {0, 0, 0, 1, 0, 1, 1, 1});
const FiniteFunction kXor3(2, 3, {0, 1, 1, 0, 1, 0, 0, 1});

QSet parity_qset() {
  return QSet::from_tuples(2, 3, {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
}

}  // namespace

TEST_CASE("row sets are canonical and validated") {
  const auto h = QSet::from_tuples(2, 2, {{1, 0}, {0, 1}, {1, 0}});
  CHECK(h.size() == 2);
  CHECK(h.rows() == std::vector<std::uint64_t>{1, 2});
  CHECK(h.row_tuple(0) == Tuple{0, 1});
  CHECK_THROWS_AS(QSet(2, 2, {}), std::invalid_argument);
  CHECK_THROWS_AS(QSet(2, 2, {4}), std::invalid_argument);
  const auto cols = parity_qset().columns();
  for (const auto& col : cols) CHECK(col == std::vector<Value>{0, 1});
}

TEST_CASE("preservation for the parity code") {
  const auto h = parity_qset();
  CHECK(preserves(kXor3, h));
  CHECK_FALSE(preserves(kMaj, h));
  CHECK(preserves(kMaj, QSet::full_cube(2, 3)));
  CHECK(preserves(kXor3, QSet::full_cube(2, 3)));
}

TEST_CASE("invariance membership via the generator fixpoint") {
  const auto h = parity_qset();
  CHECK(in_inv(GeneratorSet(2, {kXor3}), h));
  CHECK_FALSE(in_inv(GeneratorSet(2, {kMaj}), h));
  CHECK(in_inv(GeneratorSet(2, {kMaj}), QSet::full_cube(2, 3)));
  CHECK(in_inv(GeneratorSet(2), h));
}

TEST_CASE("invariant closure") {
  const GeneratorSet maj(2, {kMaj});
  SUBCASE("the three-row seed closes by adding one row") {
    const auto h0 = QSet::from_tuples(2, 3, {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}});
    const auto closed = invariant_closure(maj, h0);
    CHECK(closed ==
          QSet::from_tuples(2, 3,
                            {{0, 0, 0}, {0, 0, 1}, {0, 1, 1}, {1, 0, 1}}));
    CHECK(in_inv(maj, closed));
  }
  SUBCASE("closure is idempotent and monotone in the seed") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
      const auto seeds = sample_qsets(2, 3, 2, rng());
      const auto closed = invariant_closure(maj, seeds[0]);
      CHECK(invariant_closure(maj, closed) == closed);
    }
  }
  SUBCASE("single rows are fixed by conservative generators") {
    const auto row = QSet::from_tuples(3, 2, {{1, 2}});
    const auto uv = GeneratorSet(3, {uv_pair(3).first, uv_pair(3).second});
    CHECK(invariant_closure(uv, row) == row);
  }
  SUBCASE("no generators, no growth") {
    const auto h0 = QSet::from_tuples(2, 3, {{0, 0, 1}, {1, 1, 0}});
    CHECK(invariant_closure(GeneratorSet(2), h0) == h0);
  }
}

TEST_CASE("enumerating the invariant sets") {
  CHECK(enumerate_inv(GeneratorSet(2, {kMaj}), 2).size() == 15);
  CHECK(enumerate_inv(GeneratorSet(2, {kXor3}), 2).size() == 11);
  CHECK(enumerate_inv(GeneratorSet(2), 1).size() == 3);
  CHECK_THROWS_AS(enumerate_inv(GeneratorSet(2, {kMaj}), 5), CapacityError);
  SUBCASE("every enumerated set is preserved by every slice member") {
    for (const auto& h : enumerate_inv(GeneratorSet(2, {kMaj}), 2)) {
      for (int n = 1; n <= 3; ++n) {
        for (const auto& f : slice(GeneratorSet(2, {kMaj}), n).all()) {
          CHECK(preserves(f, h));
        }
      }
    }
  }
}

TEST_CASE("bounded polymorphism enumeration") {
  SUBCASE("the parity code admits the parity function but not majority") {
    const std::vector<QSet> hs{parity_qset()};
    const auto pol = pol_bounded(hs, 2, 3);
    CHECK(contains(pol, kXor3));
    CHECK_FALSE(contains(pol, kMaj));
  }
  SUBCASE("unary singletons cut out exactly the conservative functions") {
    std::vector<QSet> singletons;
    for (Value a = 0; a < 3; ++a) {
      singletons.push_back(QSet::from_tuples(3, 1, {{a}}));
    }
    const auto pol = pol_bounded(singletons, 3, 2);
    CHECK(pol.at_arity(2) == conservative_slice(3, 2).at_arity(2));
  }
  SUBCASE("no constraints, every function") {
    const auto pol = pol_bounded({}, 2, 2);
    CHECK(pol.total_size() == 2 + 16);
  }
  SUBCASE("antitone in the constraint set") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
      const auto hs = sample_qsets(2, 2, 2, rng());
      const std::vector<QSet> small{hs[0]};
      const std::vector<QSet> large{hs[0], hs[1]};
      const auto pol_small = pol_bounded(small, 2, 2);
      const auto pol_large = pol_bounded(large, 2, 2);
      for (const auto& f : pol_large.all()) {
        CHECK(contains(pol_small, f));
      }
    }
  }
}

TEST_CASE("reindexing, restriction and extension") {
  const auto h = parity_qset();
  SUBCASE("identity map") {
    CHECK(reindex(h, std::vector<int>{0, 1, 2}) == h);
  }
  SUBCASE("projection of the parity code is the full square") {
    CHECK(reindex(h, std::vector<int>{0, 1}) == QSet::full_cube(2, 2));
    CHECK(restrict_qset(h, std::vector<int>{0, 1}) == QSet::full_cube(2, 2));
  }
  SUBCASE("constant maps extract a column") {
    const auto col = reindex(h, std::vector<int>{2, 2});
    CHECK(col == QSet::from_tuples(2, 2, {{0, 0}, {1, 1}}));
  }
  SUBCASE("single position restriction is the column") {
    CHECK(restrict_qset(h, std::vector<int>{1}) ==
          QSet::from_tuples(2, 1, {{0}, {1}}));
  }
  SUBCASE("cylinders") {
    const auto hp = QSet::from_tuples(2, 1, {{0}});
    CHECK(extend_qset(hp, std::vector<int>{0}, 2) ==
          QSet::from_tuples(2, 2, {{0, 0}, {0, 1}}));
    CHECK(extend_qset(QSet::full_cube(2, 2), std::vector<int>{0, 1}, 3) ==
          QSet::full_cube(2, 3));
    CHECK(extend_qset(h, std::vector<int>{0, 1, 2}, 3) == h);
  }
  SUBCASE("invariance transports along all three operations") {
    const GeneratorSet maj(2, {kMaj});
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
      const auto h0 = sample_qsets(2, 3, 1, rng())[0];
      const auto inv = invariant_closure(maj, h0);
      std::vector<int> map{static_cast<int>(rng() % 3),
                           static_cast<int>(rng() % 3)};
      CHECK(in_inv(maj, reindex(inv, map)));
      CHECK(in_inv(maj, restrict_qset(inv, std::vector<int>{1, 2})));
      CHECK(in_inv(maj, extend_qset(inv, std::vector<int>{0, 1, 2}, 4)));
    }
  }
}

TEST_CASE("fixpoint membership agrees with the definitional oracle") {
  SUBCASE("exhaustive on the Boolean square") {
    for (const auto& gens :
         {GeneratorSet(2, {kMaj}), GeneratorSet(2, {kXor3})}) {
      for (std::uint64_t mask = 1; mask < 16; ++mask) {
        std::vector<std::uint64_t> rows;
        for (std::uint64_t r = 0; r < 4; ++r) {
          if (mask & (std::uint64_t{1} << r)) rows.push_back(r);
        }
        const QSet h(2, 2, std::move(rows));
        CHECK(in_inv(gens, h) == oracle_in_inv(gens, h));
      }
    }
  }
  SUBCASE("seeded three-element instances") {
    const auto uv = symmetric_closure(
        GeneratorSet(3, {uv_pair(3).first, uv_pair(3).second}));
    std::mt19937_64 rng(404);
    for (const auto& h : sample_qsets(3, 2, 200, rng())) {
      CHECK(in_inv(uv, h) == oracle_in_inv(uv, h));
    }
  }
}

TEST_CASE("slices are invariant over their own cells") {
  const GeneratorSet maj(2, {kMaj});
  for (int n = 2; n <= 3; ++n) {
    std::vector<std::uint64_t> rows;
    for (const auto& f : slice(maj, n).all()) {
      rows.push_back(encode_tuple(f.table(), 2));
    }
    const QSet h(2, static_cast<int>(pow_checked(2, n)), std::move(rows));
    CHECK(in_inv(maj, h));
  }
}
