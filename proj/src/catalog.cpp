#include "clonelab/catalog.hpp"

#include <algorithm>
#include <array>

#include "clonelab/conditions.hpp"
#include "clonelab/post_classes.hpp"

namespace clonelab {

FiniteFunction majority_pattern_first(int k) {
  if (k != 3) throw std::invalid_argument("built for k = 3");
  const std::uint64_t size = pow_checked(k, 3);
  std::vector<Value> table(size);
  for (std::uint64_t c = 0; c < size; ++c) {
    const Tuple t = decode_tuple(c, 3, k);
    table[c] = tuple_rank(t) <= 2 ? majority_value(t[0], t[1], t[2]) : t[0];
  }
  return FiniteFunction(k, 3, std::move(table));
}

FiniteFunction rank4_selector(int k) {
  if (k != 4) throw std::invalid_argument("built for k = 4");
  const std::uint64_t size = pow_checked(k, 4);
  std::vector<Value> table(size);
  for (std::uint64_t c = 0; c < size; ++c) {
    const Tuple t = decode_tuple(c, 4, k);
    table[c] = tuple_rank(t) == 4 ? t[1] : t[0];
  }
  return FiniteFunction(k, 4, std::move(table));
}

std::vector<FiniteFunction> all_minority_functions(int k) {
  if (k != 3) throw std::invalid_argument("built for k = 3");
  const std::uint64_t size = pow_checked(k, 3);
  std::vector<std::uint64_t> free_cells;  // the six rank-3 cells
  std::vector<Value> base(size);
  for (std::uint64_t c = 0; c < size; ++c) {
    const Tuple t = decode_tuple(c, 3, k);
    if (tuple_rank(t) == 3) {
      free_cells.push_back(c);
    } else {
      base[c] = minority_value(t[0], t[1], t[2]);
    }
  }
  std::vector<FiniteFunction> out;
  std::vector<Value> pick(free_cells.size(), 0);
  while (true) {
    std::vector<Value> table = base;
    for (std::size_t i = 0; i < free_cells.size(); ++i) {
      table[free_cells[i]] = pick[i];
    }
    out.emplace_back(k, 3, std::move(table));
    std::size_t i = 0;
    for (; i < pick.size(); ++i) {
      if (++pick[i] < k) break;
      pick[i] = 0;
    }
    if (i == pick.size()) break;
  }
  return out;
}

std::vector<FiniteFunction> klein_binary_functions(int k) {
  if (k != 4) throw std::invalid_argument("built for k = 4");
  // Per subset orbit an independent slot choice; rank-1 cells are forced.
  std::vector<FiniteFunction> out;
  for (int o0 = 0; o0 < 2; ++o0) {
    for (int o1 = 0; o1 < 2; ++o1) {
      for (int o2 = 0; o2 < 2; ++o2) {
        const std::array<int, 3> slot = {o0, o1, o2};
        std::vector<Value> table(16);
        for (std::uint64_t c = 0; c < 16; ++c) {
          const Tuple t = decode_tuple(c, 2, k);
          table[c] = t[0] == t[1]
                         ? t[0]
                         : t[static_cast<std::size_t>(
                               slot[klein_orbit_of(t[0], t[1])])];
        }
        out.emplace_back(k, 2, std::move(table));
      }
    }
  }
  return out;
}

namespace {

CloneCatalogEntry entry(std::string name, GeneratorSet gens, int expected_case,
                        DeltaExpectation expected) {
  return CloneCatalogEntry{std::move(name), std::move(gens), expected_case,
                           expected};
}

DeltaExpectation expects_none() { return {std::nullopt, false, false}; }
DeltaExpectation expects_partial() { return {std::nullopt, true, false}; }
DeltaExpectation expects_two() { return {std::nullopt, false, true}; }
DeltaExpectation expects_slot(int n) { return {n, false, false}; }

std::vector<CloneCatalogEntry> catalog2() {
  std::vector<CloneCatalogEntry> out;
  const struct {
    PostTag tag;
    int expected_case;
    DeltaExpectation delta;
  } rows[] = {
      {PostTag::O1, 1, expects_none()},
      {PostTag::D1, 2, expects_partial()},
      {PostTag::D2, 2, expects_partial()},
      {PostTag::L4, 3, expects_slot(3)},
      {PostTag::A4, 4, expects_two()},
      {PostTag::C4, 4, expects_two()},
  };
  for (const auto& row : rows) {
    out.push_back(entry("post-" + to_string(row.tag),
                        GeneratorSet(2, semantic_slice(row.tag, 3).all()),
                        row.expected_case, row.delta));
  }
  return out;
}

std::vector<CloneCatalogEntry> catalog3() {
  std::vector<CloneCatalogEntry> out;
  out.push_back(entry("projections", GeneratorSet(3), 1, expects_none()));
  out.push_back(entry("binary-conservative",
                      GeneratorSet(3, conservative_slice(3, 2).all()), 4,
                      expects_two()));
  const auto [u, v] = uv_pair(3);
  out.push_back(entry("uv-symmetric",
                      symmetric_closure(GeneratorSet(3, {u, v})), 6,
                      expects_partial()));
  out.push_back(entry("minority-all",
                      GeneratorSet(3, all_minority_functions(3)), 3,
                      expects_slot(3)));
  out.push_back(entry("majority-pattern",
                      symmetric_closure(GeneratorSet(3, {majority_pattern_first(3)})),
                      2, expects_partial()));
  return out;
}

std::vector<CloneCatalogEntry> catalog4() {
  std::vector<CloneCatalogEntry> out;
  out.push_back(entry("klein-binary",
                      GeneratorSet(4, klein_binary_functions(4)), 5,
                      expects_slot(3)));
  out.push_back(entry("rigid-fourth",
                      symmetric_closure(GeneratorSet(4, {rank4_selector(4)})),
                      1, expects_slot(4)));
  out.push_back(entry("binary-conservative-4",
                      GeneratorSet(4, conservative_slice(4, 2).all()), 4,
                      expects_two()));
  return out;
}

}  // namespace

std::vector<CloneCatalogEntry> builtin_catalog(int k) {
  switch (k) {
    case 2: return catalog2();
    case 3: return catalog3();
    case 4: return catalog4();
    default:
      throw std::invalid_argument("catalog entries exist for k in {2, 3, 4}");
  }
}

const CloneCatalogEntry& catalog_entry(
    const std::vector<CloneCatalogEntry>& entries, const std::string& name) {
  for (const auto& e : entries) {
    if (e.name == name) return e;
  }
  throw std::invalid_argument("no catalog entry named " + name);
}

}  // namespace clonelab
