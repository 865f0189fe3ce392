#include <doctest.h>

#include "clonelab/catalog.hpp"
#include "clonelab/conditions.hpp"
#include "clonelab/post_classes.hpp"

using namespace clonelab;

namespace {

const std::vector<PostTag> kNamed = {PostTag::O1, PostTag::D1, PostTag::D2,
                                     PostTag::L4, PostTag::A4, PostTag::C4};

FunctionSet clone_slices(const GeneratorSet& gens, int bound = 3) {
  std::vector<FiniteFunction> members;
  for (int n = 1; n <= bound; ++n) {
    auto part = slice(gens, n).all();
    members.insert(members.end(), part.begin(), part.end());
  }
  return FunctionSet(gens.k(), std::move(members), bound);
}

const FiniteFunction kMaj(2, 3, {0, 0, 0, 1, 0, 1, 1, 1});
const FiniteFunction kXor3(2, 3, {0, 1, 1, 0, 1, 0, 0, 1});
// (not x and y) or (not x and z) or (y and z)
const FiniteFunction kD1Gen(2, 3, {0, 1, 1, 1, 0, 0, 0, 1});

}  // namespace

TEST_CASE("boolean predicates") {
  CHECK(preserves_zero_one(kMaj));
  CHECK(is_self_dual(kMaj));
  CHECK(is_monotone(kMaj));
  CHECK_FALSE(is_linear(kMaj));
  CHECK(is_linear(kXor3));
  CHECK(is_self_dual(kXor3));
  CHECK_FALSE(is_monotone(kXor3));
  CHECK(is_self_dual(kD1Gen));
  CHECK(preserves_zero_one(kD1Gen));
  CHECK_FALSE(is_monotone(kD1Gen));
  CHECK_FALSE(is_linear(kD1Gen));
}

TEST_CASE("semantic slice sizes at each arity") {
  CHECK(semantic_members(PostTag::O1, 3).size() == 3);
  CHECK(semantic_members(PostTag::L4, 3).size() == 4);
  CHECK(semantic_members(PostTag::D2, 3).size() == 4);
  CHECK(semantic_members(PostTag::D1, 3).size() == 8);
  CHECK(semantic_members(PostTag::A4, 3).size() == 18);
  CHECK(semantic_members(PostTag::C4, 3).size() == 64);
  CHECK(semantic_members(PostTag::A4, 2).size() == 4);
  CHECK(semantic_members(PostTag::C4, 2).size() == 4);
  CHECK(semantic_members(PostTag::D1, 2).size() == 2);
}

TEST_CASE("the six slices are pairwise distinct at arity <= 3") {
  for (std::size_t i = 0; i < kNamed.size(); ++i) {
    for (std::size_t j = i + 1; j < kNamed.size(); ++j) {
      CHECK_FALSE(semantic_slice(kNamed[i], 3) == semantic_slice(kNamed[j], 3));
    }
  }
}

TEST_CASE("inclusions between the six classes") {
  auto subset_of = [](PostTag small, PostTag large) {
    for (int n = 1; n <= 3; ++n) {
      const auto small_members = semantic_members(small, n);
      const auto large_members = semantic_members(large, n);
      for (const auto& f : small_members) {
        if (!std::binary_search(large_members.begin(), large_members.end(),
                                f)) {
          return false;
        }
      }
    }
    return true;
  };
  CHECK(subset_of(PostTag::L4, PostTag::D1));
  CHECK(subset_of(PostTag::D2, PostTag::D1));
  CHECK(subset_of(PostTag::D2, PostTag::A4));
  for (PostTag tag : kNamed) {
    CHECK(subset_of(PostTag::O1, tag));
    CHECK(subset_of(tag, PostTag::C4));
  }
}

TEST_CASE("each class is closed under duality") {
  for (PostTag tag : kNamed) {
    for (int n = 1; n <= 3; ++n) {
      const auto members = semantic_members(tag, n);
      for (const auto& f : members) {
        CHECK(std::binary_search(members.begin(), members.end(), dualize(f)));
      }
    }
  }
}

TEST_CASE("duality map") {
  CHECK(dualize(kMaj) == kMaj);
  CHECK(dualize(FiniteFunction(2, 2, {0, 0, 0, 1})) ==
        FiniteFunction(2, 2, {0, 1, 1, 1}));
  for (const auto& f : semantic_members(PostTag::C4, 2)) {
    CHECK(dualize(dualize(f)) == f);
  }
}

TEST_CASE("generator-driven identification") {
  CHECK(identify_post_class(clone_slices(GeneratorSet(2, {kMaj}))).tag() ==
        PostTag::D2);
  CHECK(identify_post_class(clone_slices(GeneratorSet(2, {kXor3}))).tag() ==
        PostTag::L4);
  CHECK(identify_post_class(clone_slices(GeneratorSet(2, {kD1Gen}))).tag() ==
        PostTag::D1);
  CHECK(identify_post_class(clone_slices(GeneratorSet(2))).tag() ==
        PostTag::O1);
  const auto and_or = GeneratorSet(2, {FiniteFunction(2, 2, {0, 0, 0, 1}),
                                       FiniteFunction(2, 2, {0, 1, 1, 1})});
  CHECK(identify_post_class(clone_slices(and_or)).tag() == PostTag::A4);
}

TEST_CASE("identification is labeling-independent for the named classes") {
  for (PostTag tag : kNamed) {
    const auto straight = semantic_slice(tag, 3);
    std::vector<FiniteFunction> flipped;
    for (const auto& f : straight.all()) flipped.push_back(dualize(f));
    const FunctionSet swapped(2, std::move(flipped), 3);
    CHECK(identify_post_class(straight).tag() == tag);
    CHECK(identify_post_class(swapped).tag() == tag);
  }
}

TEST_CASE("unknown clones fall back to a fingerprint") {
  // All Boolean functions of arity <= 3 preserve nothing in particular; the
  // full clone is not among the six conservative duality-closed classes.
  std::vector<FiniteFunction> all;
  for (int n = 1; n <= 3; ++n) {
    const std::uint64_t cells = pow_checked(2, n);
    std::vector<Value> table(cells, 0);
    while (true) {
      all.emplace_back(2, n, table);
      std::uint64_t c = 0;
      for (; c < cells; ++c) {
        if (++table[c] < 2) break;
        table[c] = 0;
      }
      if (c == cells) break;
    }
  }
  const FunctionSet everything(2, std::move(all), 3);
  CHECK_THROWS_AS(identify_post_class(everything), std::invalid_argument);
}

TEST_CASE("restriction families") {
  SUBCASE("the symmetric binary pair restricts to the same class at every pair") {
    const auto [u, v] = uv_pair(3);
    const auto gens = symmetric_closure(GeneratorSet(3, {u, v}));
    const auto fam = pi_family(gens);
    REQUIRE(fam.entries.size() == 3);
    for (const auto& e : fam.entries) {
      CHECK(e.cls == fam.entries.front().cls);
    }
    // The restricted binary slice is the lattice pair, whose clone consists
    // of the monotone functions preserving both constants.
    CHECK(pi_zero(fam).tag() == PostTag::A4);
  }
  SUBCASE("minority-pattern generators restrict to the linear class") {
    const auto fam = pi_family(GeneratorSet(3, all_minority_functions(3)));
    CHECK(pi_zero(fam).tag() == PostTag::L4);
  }
  SUBCASE("no generators, projection class everywhere") {
    const auto fam = pi_family(GeneratorSet(3));
    CHECK(pi_zero(fam).tag() == PostTag::O1);
  }
  SUBCASE("mixed families are reported with the offending pairs") {
    PiFamily mixed;
    mixed.k = 3;
    mixed.bound = 3;
    mixed.entries.push_back({0, 1, PostClassId::named(PostTag::D2), false});
    mixed.entries.push_back({0, 2, PostClassId::named(PostTag::L4), false});
    try {
      pi_zero(mixed);
      FAIL("expected a mismatch error");
    } catch (const PiMismatchError& e) {
      CHECK(e.first() == std::pair<Value, Value>{0, 1});
      CHECK(e.second() == std::pair<Value, Value>{0, 2});
    }
  }
  SUBCASE("non-conservative generators are rejected") {
    const FiniteFunction negation(2, 1, {1, 0});
    CHECK_THROWS_AS(pi_family(GeneratorSet(2, {negation})),
                    std::invalid_argument);
  }
}
