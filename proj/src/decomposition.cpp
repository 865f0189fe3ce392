#include "clonelab/decomposition.hpp"

#include <algorithm>
#include <unordered_set>

namespace clonelab {

SubsetFamily::SubsetFamily(int m, std::vector<std::vector<int>> sets,
                           bool allow_empty)
    : m_(m) {
  if (m < 1) throw std::invalid_argument("position count must be at least 1");
  for (auto& s : sets) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.empty() && !allow_empty) {
      throw std::invalid_argument("empty subset in family");
    }
    if (!s.empty() && (s.front() < 0 || s.back() >= m)) {
      throw std::invalid_argument("subset position out of range");
    }
  }
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  sets_ = std::move(sets);
}

DecompositionResult decomposition_apply(const QSet& h,
                                        const SubsetFamily& fam) {
  if (fam.empty()) throw std::invalid_argument("decomposition family is empty");
  if (fam.m() != h.m()) throw std::invalid_argument("position count mismatch");
  const std::uint64_t universe = pow_checked(h.k(), h.m());
  if (universe > kDefaultSliceCap) {
    throw CapacityError("row universe too large for cylinder intersection",
                        h.m(), universe);
  }

  // Per family member, the set of restricted row patterns.
  std::vector<std::unordered_set<std::uint64_t>> patterns;
  patterns.reserve(fam.sets().size());
  const auto rows = h.row_tuples();
  for (const auto& r : fam.sets()) {
    std::unordered_set<std::uint64_t> pat;
    Tuple restricted(r.size());
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) restricted[i] = row[r[i]];
      pat.insert(encode_tuple(restricted, h.k()));
    }
    patterns.push_back(std::move(pat));
  }

  std::vector<std::vector<std::uint64_t>> cylinder_rows(fam.sets().size());
  std::vector<std::uint64_t> meet_rows;
  Tuple row;
  for (std::uint64_t enc = 0; enc < universe; ++enc) {
    row = decode_tuple(enc, h.m(), h.k());
    bool in_all = true;
    for (std::size_t fi = 0; fi < fam.sets().size(); ++fi) {
      const auto& r = fam.sets()[fi];
      Tuple restricted(r.size());
      for (std::size_t i = 0; i < r.size(); ++i) restricted[i] = row[r[i]];
      const bool in_cyl =
          patterns[fi].count(encode_tuple(restricted, h.k())) > 0;
      if (in_cyl) cylinder_rows[fi].push_back(enc);
      in_all &= in_cyl;
    }
    if (in_all) meet_rows.push_back(enc);
  }

  DecompositionResult out{.cylinders = {},
                          .intersection = QSet(h.k(), h.m(), meet_rows)};
  out.cylinders.reserve(fam.sets().size());
  for (auto& rows_fi : cylinder_rows) {
    out.cylinders.emplace_back(h.k(), h.m(), std::move(rows_fi));
  }
  return out;
}

bool is_decomposable(const QSet& h, const SubsetFamily& fam) {
  return decomposition_apply(h, fam).intersection == h;
}

namespace {

// The column relation {(h(p), h(q))} is the graph of an injective partial map
// iff it extends to a permutation of the carrier.
bool permutation_linked(const std::vector<Tuple>& rows, int p, int q, int k) {
  std::vector<int> forward(static_cast<std::size_t>(k), -1);
  std::vector<int> backward(static_cast<std::size_t>(k), -1);
  for (const auto& row : rows) {
    const Value a = row[p], b = row[q];
    if (forward[a] == -1) forward[a] = b;
    if (forward[a] != b) return false;
    if (backward[b] == -1) backward[b] = a;
    if (backward[b] != a) return false;
  }
  return true;
}

bool equal_linked(const std::vector<Tuple>& rows, int p, int q) {
  for (const auto& row : rows) {
    if (row[p] != row[q]) return false;
  }
  return true;
}

bool anchored(const std::vector<Tuple>& rows, int p, int q, int k) {
  for (Value a = 0; a < k; ++a) {
    for (Value b = 0; b < k; ++b) {
      bool ok = true;
      for (const auto& row : rows) {
        if (row[p] != a && row[q] != b) {
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

IndexFamilies index_families(const QSet& h, int n,
                             std::optional<std::pair<Value, Value>> b) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  IndexFamilies out;
  const auto rows = h.row_tuples();
  const auto cols = h.columns();
  const int k = h.k();

  for (int p = 0; p < h.m(); ++p) {
    for (int q = p + 1; q < h.m(); ++q) {
      if (permutation_linked(rows, p, q, k)) {
        out.perm_linked_pairs.emplace_back(p, q);
      }
      if (equal_linked(rows, p, q)) out.equal_pairs.emplace_back(p, q);
      if (anchored(rows, p, q, k)) out.anchored_pairs.emplace_back(p, q);
    }
  }

  for (int q = 0; q < h.m(); ++q) {
    if (static_cast<int>(cols[q].size()) < n) out.small_columns.push_back(q);
  }

  auto columns_in = [&](Value lo, Value hi) {
    std::vector<int> qs;
    for (int q = 0; q < h.m(); ++q) {
      bool inside = true;
      for (Value v : cols[q]) inside &= (v == lo || v == hi);
      if (inside) qs.push_back(q);
    }
    return qs;
  };

  if (b) {
    auto [lo, hi] = *b;
    if (lo > hi) std::swap(lo, hi);
    if (lo == hi || hi >= k) {
      throw std::invalid_argument("carrier subset must be a 2-element set");
    }
    out.columns_within[{lo, hi}] = columns_in(lo, hi);
  } else {
    for (Value lo = 0; lo < k; ++lo) {
      for (Value hi = static_cast<Value>(lo + 1); hi < k; ++hi) {
        out.columns_within[{lo, hi}] = columns_in(lo, hi);
      }
    }
  }
  return out;
}

std::optional<SeparationWitness> weakly_separates(const QSet& h, int p, int q,
                                                  Value a) {
  if (p < 0 || q < 0 || p >= h.m() || q >= h.m()) {
    throw std::invalid_argument("position out of range");
  }
  const auto rows = h.row_tuples();
  bool a_in_column = false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i][p] != a) continue;
    a_in_column = true;
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      if (rows[j][p] == a && rows[j][q] != rows[i][q]) {
        return SeparationWitness{p, q, a, i, j};
      }
    }
  }
  if (!a_in_column) {
    throw std::invalid_argument("value a does not occur in column p");
  }
  return std::nullopt;
}

bool strongly_separates(const QSet& h, int p, int q, Value a) {
  if (p < 0 || q < 0 || p >= h.m() || q >= h.m()) {
    throw std::invalid_argument("position out of range");
  }
  const auto rows = h.row_tuples();
  const auto cols = h.columns();
  bool a_in_column = false;
  for (const auto& row : rows) a_in_column |= (row[p] == a);
  if (!a_in_column) {
    throw std::invalid_argument("value a does not occur in column p");
  }
  for (Value bval : cols[q]) {
    bool realized = false;
    for (const auto& row : rows) {
      if (row[p] == a && row[q] == bval) {
        realized = true;
        break;
      }
    }
    if (!realized) return false;
  }
  return true;
}

}  // namespace clonelab
