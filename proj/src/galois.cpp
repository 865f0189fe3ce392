#include "clonelab/galois.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

#include "clonelab/detail/gen_groups.hpp"

namespace clonelab {

QSet::QSet(int k, int m, std::vector<std::uint64_t> rows)
    : k_(k), m_(m), rows_(std::move(rows)) {
  check_carrier(k);
  if (m < 1) throw std::invalid_argument("position count must be at least 1");
  const std::uint64_t universe = pow_checked(k, m);
  std::sort(rows_.begin(), rows_.end());
  rows_.erase(std::unique(rows_.begin(), rows_.end()), rows_.end());
  if (rows_.empty()) throw std::invalid_argument("row set must be nonempty");
  if (rows_.back() >= universe) {
    throw std::invalid_argument("row index out of range");
  }
}

QSet QSet::from_tuples(int k, int m, const std::vector<Tuple>& rows) {
  std::vector<std::uint64_t> encoded;
  encoded.reserve(rows.size());
  for (const auto& r : rows) {
    if (r.size() != static_cast<std::size_t>(m)) {
      throw std::invalid_argument("row length must equal m");
    }
    encoded.push_back(encode_tuple(r, k));
  }
  return QSet(k, m, std::move(encoded));
}

QSet QSet::full_cube(int k, int m) {
  std::vector<std::uint64_t> rows(pow_checked(k, m));
  for (std::uint64_t r = 0; r < rows.size(); ++r) rows[r] = r;
  return QSet(k, m, std::move(rows));
}

bool QSet::contains_row(std::uint64_t row) const {
  return std::binary_search(rows_.begin(), rows_.end(), row);
}

Tuple QSet::row_tuple(std::size_t i) const {
  return decode_tuple(rows_[i], m_, k_);
}

std::vector<Tuple> QSet::row_tuples() const {
  std::vector<Tuple> out;
  out.reserve(rows_.size());
  for (std::uint64_t r : rows_) out.push_back(decode_tuple(r, m_, k_));
  return out;
}

std::vector<std::vector<Value>> QSet::columns() const {
  std::vector<std::vector<Value>> cols(static_cast<std::size_t>(m_));
  for (std::uint64_t r : rows_) {
    const Tuple t = decode_tuple(r, m_, k_);
    for (int q = 0; q < m_; ++q) cols[q].push_back(t[q]);
  }
  for (auto& col : cols) {
    std::sort(col.begin(), col.end());
    col.erase(std::unique(col.begin(), col.end()), col.end());
  }
  return cols;
}

bool QSet::operator<(const QSet& other) const {
  if (k_ != other.k_) return k_ < other.k_;
  if (m_ != other.m_) return m_ < other.m_;
  return rows_ < other.rows_;
}

bool preserves(const FiniteFunction& f, const QSet& h) {
  if (f.k() != h.k()) throw std::invalid_argument("carrier mismatch");
  const int n = f.arity();
  const auto rows = h.row_tuples();
  const std::size_t count = rows.size();
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  Tuple vals(static_cast<std::size_t>(n));
  Tuple out(static_cast<std::size_t>(h.m()));
  while (true) {
    for (int q = 0; q < h.m(); ++q) {
      for (std::size_t j = 0; j < idx.size(); ++j) vals[j] = rows[idx[j]][q];
      out[q] = f(vals);
    }
    if (!h.contains_row(encode_tuple(out, h.k()))) return false;
    std::size_t j = 0;
    for (; j < idx.size(); ++j) {
      if (++idx[j] < count) break;
      idx[j] = 0;
    }
    if (j == idx.size()) return true;
  }
}

// ---------------------------------------------------------------------------
// RowClosureEngine

struct RowClosureEngine::Impl {
  GeneratorSet gens;
  int m = 0;
  std::uint64_t universe = 0;
  std::vector<detail::ArityGroup> groups;  // pointers into gens
  // Mask mode only: per group, result mask per member tuple (or empty when the
  // tuple space is too large to precompute).
  std::vector<std::vector<std::uint64_t>> tables;
  std::vector<Tuple> universe_tuples;  // decoded rows, mask mode only

  static constexpr std::uint64_t kPrecomputeLimit = std::uint64_t{1} << 20;

  Impl(GeneratorSet g, int m_in, bool precompute)
      : gens(std::move(g)), m(m_in) {
    if (m < 1) throw std::invalid_argument("position count must be at least 1");
    universe = pow_checked(gens.k(), m);
    groups = detail::group_generators(gens);
    if (mask_mode()) {
      universe_tuples.reserve(universe);
      for (std::uint64_t r = 0; r < universe; ++r) {
        universe_tuples.push_back(decode_tuple(r, m, gens.k()));
      }
      if (precompute) {
        tables.resize(groups.size());
        for (std::size_t gi = 0; gi < groups.size(); ++gi) {
          precompute_group(gi);
        }
      }
    }
  }

  bool mask_mode() const { return universe <= 64; }

  void precompute_group(std::size_t gi) {
    const auto& group = groups[gi];
    std::uint64_t space = 1;
    for (int j = 0; j < group.arity; ++j) {
      if (space > kPrecomputeLimit / universe) return;  // leave on-the-fly
      space *= universe;
    }
    auto& table = tables[gi];
    table.assign(space, 0);
    const std::size_t ncells = static_cast<std::size_t>(m);
    Tuple vals(static_cast<std::size_t>(group.arity));
    Tuple out(ncells);
    std::vector<std::uint64_t> val_cells(ncells);
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(group.arity), 0);
    for (std::uint64_t t = 0; t < space; ++t) {
      // t encodes the member tuple base-universe, position 0 most significant.
      std::uint64_t rest = t;
      for (int j = group.arity - 1; j >= 0; --j) {
        rows[static_cast<std::size_t>(j)] = rest % universe;
        rest /= universe;
      }
      for (std::size_t c = 0; c < ncells; ++c) {
        for (std::size_t j = 0; j < rows.size(); ++j)
          vals[j] = universe_tuples[rows[j]][c];
        val_cells[c] = encode_tuple(vals, gens.k());
      }
      std::uint64_t mask = 0;
      detail::apply_group(group, val_cells, out, [&](std::span<Value> o) {
        mask |= std::uint64_t{1} << encode_tuple(o, gens.k());
        return false;
      });
      table[t] = mask;
    }
  }

  // Union of all generator applications to tuples drawn from `members` whose
  // maximal index equals `top`.
  std::uint64_t results_with_top(const std::vector<std::uint64_t>& members,
                                 std::size_t top) const {
    std::uint64_t result = 0;
    const std::size_t ncells = static_cast<std::size_t>(m);
    Tuple vals;
    Tuple out(ncells);
    std::vector<std::uint64_t> val_cells(ncells);
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      const auto& group = groups[gi];
      const auto* table =
          (gi < tables.size() && !tables[gi].empty()) ? &tables[gi] : nullptr;
      vals.resize(static_cast<std::size_t>(group.arity));
      detail::for_each_tuple_with_max(
          group.arity, top, [&](std::span<const std::size_t> idx) {
            if (table) {
              std::uint64_t t = 0;
              for (std::size_t j = 0; j < idx.size(); ++j)
                t = t * universe + members[idx[j]];
              result |= (*table)[t];
            } else {
              for (std::size_t c = 0; c < ncells; ++c) {
                for (std::size_t j = 0; j < idx.size(); ++j)
                  vals[j] = universe_tuples[members[idx[j]]][c];
                val_cells[c] = encode_tuple(vals, gens.k());
              }
              detail::apply_group(group, val_cells, out,
                                  [&](std::span<Value> o) {
                                    result |= std::uint64_t{1}
                                              << encode_tuple(o, gens.k());
                                    return false;
                                  });
            }
            return false;
          });
    }
    return result;
  }

  std::uint64_t close_mask(std::uint64_t rows) const {
    std::uint64_t mask = rows;
    std::vector<std::uint64_t> members;
    for (std::uint64_t r = 0; r < universe; ++r) {
      if (mask & (std::uint64_t{1} << r)) members.push_back(r);
    }
    for (std::size_t top = 0; top < members.size(); ++top) {
      std::uint64_t fresh = results_with_top(members, top) & ~mask;
      while (fresh) {
        const int r = std::countr_zero(fresh);
        fresh &= fresh - 1;
        mask |= std::uint64_t{1} << r;
        members.push_back(static_cast<std::uint64_t>(r));
      }
    }
    return mask;
  }

  bool is_invariant_mask(std::uint64_t rows) const {
    // H is invariant iff no generator application leaves H; no fixpoint needed.
    std::vector<std::uint64_t> members;
    for (std::uint64_t r = 0; r < universe; ++r) {
      if (rows & (std::uint64_t{1} << r)) members.push_back(r);
    }
    for (std::size_t top = 0; top < members.size(); ++top) {
      if (results_with_top(members, top) & ~rows) return false;
    }
    return true;
  }

  // Generic (large universe) closure over encoded rows. With check_only set,
  // stops at the first row outside the start set and reports it via *escaped.
  std::vector<std::uint64_t> close_generic(
      const std::vector<std::uint64_t>& start, bool check_only,
      bool* escaped) const {
    std::unordered_set<std::uint64_t> seen(start.begin(), start.end());
    std::vector<std::uint64_t> members(start.begin(), start.end());
    std::vector<Tuple> decoded;
    decoded.reserve(members.size());
    for (std::uint64_t r : members) decoded.push_back(decode_tuple(r, m, gens.k()));

    const std::size_t ncells = static_cast<std::size_t>(m);
    Tuple vals;
    Tuple out(ncells);
    std::vector<std::uint64_t> val_cells(ncells);
    if (escaped) *escaped = false;

    for (std::size_t top = 0; top < members.size(); ++top) {
      for (const auto& group : groups) {
        vals.resize(static_cast<std::size_t>(group.arity));
        const bool stop = detail::for_each_tuple_with_max(
            group.arity, top, [&](std::span<const std::size_t> idx) {
              for (std::size_t c = 0; c < ncells; ++c) {
                for (std::size_t j = 0; j < idx.size(); ++j)
                  vals[j] = decoded[idx[j]][c];
                val_cells[c] = encode_tuple(vals, gens.k());
              }
              return detail::apply_group(
                  group, val_cells, out, [&](std::span<Value> o) {
                    const std::uint64_t row =
                        encode_tuple({o.data(), o.size()}, gens.k());
                    if (seen.insert(row).second) {
                      if (check_only) {
                        if (escaped) *escaped = true;
                        return true;
                      }
                      members.push_back(row);
                      decoded.push_back(Tuple(o.begin(), o.end()));
                    }
                    return false;
                  });
            });
        if (stop) return members;
      }
    }
    return members;
  }
};

RowClosureEngine::RowClosureEngine(GeneratorSet gens, int m, bool precompute)
    : impl_(std::make_unique<Impl>(std::move(gens), m, precompute)) {}
RowClosureEngine::~RowClosureEngine() = default;
RowClosureEngine::RowClosureEngine(RowClosureEngine&&) noexcept = default;
RowClosureEngine& RowClosureEngine::operator=(RowClosureEngine&&) noexcept =
    default;

int RowClosureEngine::m() const noexcept { return impl_->m; }
std::uint64_t RowClosureEngine::universe() const noexcept {
  return impl_->universe;
}
bool RowClosureEngine::mask_mode() const noexcept { return impl_->mask_mode(); }

std::uint64_t RowClosureEngine::close_mask(std::uint64_t rows) const {
  if (!mask_mode()) throw std::invalid_argument("universe exceeds mask mode");
  return impl_->close_mask(rows);
}

bool RowClosureEngine::is_invariant_mask(std::uint64_t rows) const {
  if (!mask_mode()) throw std::invalid_argument("universe exceeds mask mode");
  return impl_->is_invariant_mask(rows);
}

namespace {

std::uint64_t qset_to_mask(const QSet& h) {
  std::uint64_t mask = 0;
  for (std::uint64_t r : h.rows()) mask |= std::uint64_t{1} << r;
  return mask;
}

QSet mask_to_qset(int k, int m, std::uint64_t mask) {
  std::vector<std::uint64_t> rows;
  while (mask) {
    rows.push_back(static_cast<std::uint64_t>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return QSet(k, m, std::move(rows));
}

}  // namespace

QSet RowClosureEngine::close(const QSet& h0) const {
  if (h0.m() != impl_->m) throw std::invalid_argument("position count mismatch");
  if (mask_mode()) {
    return mask_to_qset(h0.k(), h0.m(), impl_->close_mask(qset_to_mask(h0)));
  }
  auto rows = impl_->close_generic(h0.rows(), false, nullptr);
  return QSet(h0.k(), h0.m(), std::move(rows));
}

bool RowClosureEngine::is_invariant(const QSet& h) const {
  if (h.m() != impl_->m) throw std::invalid_argument("position count mismatch");
  if (mask_mode()) return impl_->is_invariant_mask(qset_to_mask(h));
  bool escaped = false;
  impl_->close_generic(h.rows(), true, &escaped);
  return !escaped;
}

bool in_inv(const GeneratorSet& gens, const QSet& h) {
  if (gens.k() != h.k()) throw std::invalid_argument("carrier mismatch");
  RowClosureEngine engine(gens, h.m(), false);
  return engine.is_invariant(h);
}

QSet invariant_closure(const GeneratorSet& gens, const QSet& h0) {
  if (gens.k() != h0.k()) throw std::invalid_argument("carrier mismatch");
  RowClosureEngine engine(gens, h0.m(), false);
  return engine.close(h0);
}

std::vector<QSet> enumerate_inv(const GeneratorSet& gens, int m,
                                std::uint64_t cell_cap) {
  const std::uint64_t universe = pow_checked(gens.k(), m);
  if (universe > cell_cap || universe > 63) {
    throw CapacityError(
        "invariant-set enumeration needs k^m <= " + std::to_string(cell_cap) +
            "; consider sampling instead",
        m, universe);
  }
  RowClosureEngine engine(GeneratorSet(gens), m, true);
  std::vector<std::uint64_t> fixpoints;
  const std::uint64_t subsets = std::uint64_t{1} << universe;
  for (std::uint64_t s = 1; s < subsets; ++s) {
    fixpoints.push_back(engine.close_mask(s));
  }
  std::sort(fixpoints.begin(), fixpoints.end());
  fixpoints.erase(std::unique(fixpoints.begin(), fixpoints.end()),
                  fixpoints.end());
  std::vector<QSet> out;
  out.reserve(fixpoints.size());
  for (std::uint64_t mask : fixpoints) {
    out.push_back(mask_to_qset(gens.k(), m, mask));
  }
  std::sort(out.begin(), out.end());
  return out;
}

FunctionSet pol_bounded(std::span<const QSet> hs, int k, int max_arity,
                        std::uint64_t cap) {
  check_carrier(k);
  for (const auto& h : hs) {
    if (h.k() != k) throw std::invalid_argument("carrier mismatch in QSet list");
  }
  std::vector<FiniteFunction> members;
  for (int n = 1; n <= max_arity; ++n) {
    const std::uint64_t cells = pow_checked(k, n);
    if (cells > 63) {
      throw CapacityError("function enumeration too large", n, cells);
    }
    std::uint64_t count = 1;
    for (std::uint64_t c = 0; c < cells; ++c) {
      if (count > cap / (k * cells)) {
        throw CapacityError("function enumeration exceeds capacity", n, count);
      }
      count *= static_cast<std::uint64_t>(k);
    }
    std::vector<Value> table(cells, 0);
    while (true) {
      FiniteFunction f(k, n, table);
      bool ok = true;
      for (const auto& h : hs) {
        if (!preserves(f, h)) {
          ok = false;
          break;
        }
      }
      if (ok) members.push_back(std::move(f));
      std::uint64_t c = 0;
      for (; c < cells; ++c) {
        if (++table[c] < k) break;
        table[c] = 0;
      }
      if (c == cells) break;
    }
  }
  return FunctionSet(k, std::move(members), max_arity);
}

QSet reindex(const QSet& h, std::span<const int> position_map) {
  if (position_map.empty()) {
    throw std::invalid_argument("position map must be nonempty");
  }
  for (int q : position_map) {
    if (q < 0 || q >= h.m()) {
      throw std::invalid_argument("position map value out of range");
    }
  }
  std::vector<std::uint64_t> rows;
  rows.reserve(h.size());
  Tuple out(position_map.size());
  for (const auto& row : h.row_tuples()) {
    for (std::size_t p = 0; p < position_map.size(); ++p) {
      out[p] = row[position_map[p]];
    }
    rows.push_back(encode_tuple(out, h.k()));
  }
  return QSet(h.k(), static_cast<int>(position_map.size()), std::move(rows));
}

QSet restrict_qset(const QSet& h, std::span<const int> positions) {
  for (std::size_t i = 1; i < positions.size(); ++i) {
    if (positions[i] <= positions[i - 1]) {
      throw std::invalid_argument("positions must be strictly increasing");
    }
  }
  std::vector<int> map(positions.begin(), positions.end());
  return reindex(h, map);
}

QSet extend_qset(const QSet& hp, std::span<const int> positions, int q_size) {
  if (positions.size() != static_cast<std::size_t>(hp.m())) {
    throw std::invalid_argument("position count must match the restricted set");
  }
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (positions[i] < 0 || positions[i] >= q_size ||
        (i > 0 && positions[i] <= positions[i - 1])) {
      throw std::invalid_argument("positions must be strictly increasing in Q");
    }
  }
  std::vector<int> free_positions;
  {
    std::vector<bool> fixed(static_cast<std::size_t>(q_size), false);
    for (int p : positions) fixed[static_cast<std::size_t>(p)] = true;
    for (int q = 0; q < q_size; ++q) {
      if (!fixed[static_cast<std::size_t>(q)]) free_positions.push_back(q);
    }
  }
  const std::uint64_t fills = pow_checked(hp.k(), static_cast<int>(free_positions.size()));
  std::vector<std::uint64_t> rows;
  rows.reserve(hp.size() * fills);
  Tuple out(static_cast<std::size_t>(q_size));
  for (const auto& base : hp.row_tuples()) {
    for (std::uint64_t fill = 0; fill < fills; ++fill) {
      for (std::size_t p = 0; p < positions.size(); ++p) {
        out[positions[p]] = base[p];
      }
      const Tuple free_vals =
          decode_tuple(fill, static_cast<int>(free_positions.size()), hp.k());
      for (std::size_t p = 0; p < free_positions.size(); ++p) {
        out[free_positions[p]] = free_vals[p];
      }
      rows.push_back(encode_tuple(out, hp.k()));
    }
  }
  return QSet(hp.k(), q_size, std::move(rows));
}

}  // namespace clonelab
