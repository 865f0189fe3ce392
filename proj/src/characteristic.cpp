#include "clonelab/characteristic.hpp"

#include <algorithm>
#include <set>

namespace clonelab {

bool NTupleRelation::contains(std::uint64_t a, std::uint64_t b) const {
  return std::binary_search(pairs.begin(), pairs.end(), std::pair{a, b});
}

BinaryPairRelation NTupleRelation::rank2_part() const {
  if (n != 2) throw std::invalid_argument("rank-2 part is defined at n = 2");
  BinaryPairRelation rel;
  rel.k = k;
  for (const auto& [a, b] : pairs) {
    const Tuple ta = decode_tuple(a, 2, k), tb = decode_tuple(b, 2, k);
    if (tuple_rank(ta) == 2 && tuple_rank(tb) == 2) rel.pairs.emplace_back(a, b);
  }
  return rel;
}

namespace {

// Realized value pairs {(f(a), f(b))} over the n-ary slice, from the
// two-cell projected closure.
std::set<std::pair<Value, Value>> value_pairs(const GeneratorSet& gens, int n,
                                              std::uint64_t ca,
                                              std::uint64_t cb,
                                              std::uint64_t cap) {
  std::vector<std::uint64_t> cells{ca};
  if (cb != ca) cells.push_back(cb);
  const TraceSet traces = slice_on_cells(gens, n, cells, cap);
  const std::size_t pa = ca <= cb ? 0 : 1;
  const std::size_t pb = cells.size() == 1 ? pa : 1 - pa;
  std::set<std::pair<Value, Value>> out;
  for (const auto& t : traces.traces) out.insert({t[pa], t[pb]});
  return out;
}

bool injective_partial_map(const std::set<std::pair<Value, Value>>& vp, int k) {
  std::vector<int> forward(static_cast<std::size_t>(k), -1);
  std::vector<int> backward(static_cast<std::size_t>(k), -1);
  for (const auto& [x, y] : vp) {
    if (forward[x] == -1) forward[x] = y;
    if (forward[x] != y) return false;
    if (backward[y] == -1) backward[y] = x;
    if (backward[y] != x) return false;
  }
  return true;
}

bool anchored_value_set(const std::set<std::pair<Value, Value>>& vp, int k) {
  for (Value a = 0; a < k; ++a) {
    for (Value b = 0; b < k; ++b) {
      bool ok = true;
      for (const auto& [x, y] : vp) {
        if (x != a && y != b) {
          ok = false;
          break;
        }
      }
      if (ok) return true;
    }
  }
  return false;
}

}  // namespace

NTupleRelation relation_R(const GeneratorSet& gens, int n, std::uint64_t cap) {
  NTupleRelation rel;
  rel.k = gens.k();
  rel.n = n;
  const std::uint64_t size = pow_checked(gens.k(), n);
  for (std::uint64_t a = 0; a < size; ++a) {
    for (std::uint64_t b = 0; b < size; ++b) {
      if (injective_partial_map(value_pairs(gens, n, a, b, cap), gens.k())) {
        rel.pairs.emplace_back(a, b);
      }
    }
  }
  return rel;
}

NTupleRelation relation_D(const GeneratorSet& gens, int n, std::uint64_t cap) {
  NTupleRelation rel;
  rel.k = gens.k();
  rel.n = n;
  const std::uint64_t size = pow_checked(gens.k(), n);
  for (std::uint64_t a = 0; a < size; ++a) {
    for (std::uint64_t b = 0; b < size; ++b) {
      if (anchored_value_set(value_pairs(gens, n, a, b, cap), gens.k())) {
        rel.pairs.emplace_back(a, b);
      }
    }
  }
  return rel;
}

Characteristic characteristic(const GeneratorSet& gens, int bound,
                              std::uint64_t cap) {
  if (bound < 3) throw std::invalid_argument("bound must be at least 3");
  if (!gens.all_conservative()) {
    throw std::invalid_argument("generators must be conservative");
  }
  Characteristic chi;
  chi.k = gens.k();
  chi.bound = bound;
  chi.r = min_nonprojection_arity(gens, bound, cap);
  for (int n = 2; n <= bound; ++n) {
    NTupleRelation r_rel, d_rel;
    r_rel.k = d_rel.k = gens.k();
    r_rel.n = d_rel.n = n;
    const std::uint64_t size = pow_checked(gens.k(), n);
    for (std::uint64_t a = 0; a < size; ++a) {
      for (std::uint64_t b = 0; b < size; ++b) {
        const auto vp = value_pairs(gens, n, a, b, cap);
        if (injective_partial_map(vp, gens.k())) r_rel.pairs.emplace_back(a, b);
        if (anchored_value_set(vp, gens.k())) d_rel.pairs.emplace_back(a, b);
      }
    }
    chi.linkage.emplace(n, std::move(r_rel));
    chi.anchored.emplace(n, std::move(d_rel));
  }
  chi.pi = pi_family(gens, bound);
  return chi;
}

bool chi_equal(const Characteristic& a, const Characteristic& b) {
  if (a.k != b.k || a.bound != b.bound) {
    throw std::invalid_argument("characteristics have different carriers or bounds");
  }
  if (!(a.r == b.r)) return false;
  if (a.linkage != b.linkage || a.anchored != b.anchored) return false;
  if (a.pi.entries.size() != b.pi.entries.size()) return false;
  for (std::size_t i = 0; i < a.pi.entries.size(); ++i) {
    // The class map is the comparable part; the labeling choice is a
    // serialization detail.
    if (!(a.pi.entries[i].cls == b.pi.entries[i].cls)) return false;
  }
  return true;
}

int classify_case(const Characteristic& chi) {
  int r_value;
  if (chi.r.finite) {
    r_value = chi.r.value;
  } else {
    if (chi.r.value < 4) {
      throw std::invalid_argument(
          "verdict is open below 4; raise the bound to classify");
    }
    r_value = chi.r.value;  // at least 4: the first case applies
  }
  if (r_value >= 4) return 1;
  if (r_value == 3) {
    const PostClassId pi0 = pi_zero(chi.pi);
    return (pi0.is_named() && pi0.tag() == PostTag::L4) ? 3 : 2;
  }
  if (r_value != 2) {
    throw std::invalid_argument("minimal non-projection arity below 2");
  }
  const auto r2 = chi.linkage.at(2).rank2_part();
  if (chi.k == 4 && r2 == special_relation(SpecialRelationKind::PlusMinus, 4)) {
    return 5;
  }
  if (chi.k == 3 && r2 == special_relation(SpecialRelationKind::UpArrow, 3)) {
    return 6;
  }
  return 4;
}

}  // namespace clonelab
