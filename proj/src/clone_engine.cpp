#include "clonelab/clone_engine.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

#include "clonelab/detail/gen_groups.hpp"

namespace clonelab {

namespace {

struct TupleHash {
  std::size_t operator()(const Tuple& t) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Value v : t) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return h;
  }
};

// Worklist fixpoint over traces (member values on a fixed cell list), starting
// from the m-ary projections. `on_new` may signal early termination.
struct TraceClosure {
  int k = 0;
  int m = 0;
  std::vector<Tuple> cell_tuples;
  std::vector<Tuple> traces;
  std::unordered_set<Tuple, TupleHash> seen;
  std::uint64_t cap = kDefaultSliceCap;
  bool stopped = false;

  bool add(const Tuple& trace, const std::function<bool(const Tuple&)>& on_new) {
    if (seen.insert(trace).second) {
      traces.push_back(trace);
      if (static_cast<std::uint64_t>(traces.size()) *
              std::max<std::size_t>(1, cell_tuples.size()) >
          cap) {
        throw CapacityError("slice exceeds capacity at arity " +
                                std::to_string(m) + " with " +
                                std::to_string(traces.size()) + " members",
                            m, traces.size());
      }
      if (on_new && on_new(traces.back())) {
        stopped = true;
        return true;
      }
    }
    return false;
  }
};

TraceClosure close_traces(const GeneratorSet& gens, int m,
                          const std::vector<std::uint64_t>& cells,
                          std::uint64_t cap,
                          const std::function<bool(const Tuple&)>& on_new) {
  if (m < 1) throw std::invalid_argument("slice arity must be at least 1");
  TraceClosure cl;
  cl.k = gens.k();
  cl.m = m;
  cl.cap = cap;
  const std::uint64_t full = pow_checked(gens.k(), m);
  cl.cell_tuples.reserve(cells.size());
  for (std::uint64_t c : cells) {
    if (c >= full) throw std::invalid_argument("cell index out of range");
    cl.cell_tuples.push_back(decode_tuple(c, m, gens.k()));
  }

  for (int i = 0; i < m && !cl.stopped; ++i) {
    Tuple trace(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c)
      trace[c] = cl.cell_tuples[c][static_cast<std::size_t>(i)];
    cl.add(trace, on_new);
  }
  if (cl.stopped) return cl;

  const auto groups = detail::group_generators(gens);
  const std::size_t ncells = cl.cell_tuples.size();
  Tuple vals;
  Tuple out(ncells);
  std::vector<std::uint64_t> val_cells(ncells);

  for (std::size_t top = 0; top < cl.traces.size() && !cl.stopped; ++top) {
    for (const auto& group : groups) {
      vals.resize(static_cast<std::size_t>(group.arity));
      const bool stop = detail::for_each_tuple_with_max(
          group.arity, top, [&](std::span<const std::size_t> idx) {
            for (std::size_t c = 0; c < ncells; ++c) {
              for (std::size_t j = 0; j < idx.size(); ++j)
                vals[j] = cl.traces[idx[j]][c];
              val_cells[c] = encode_tuple(vals, cl.k);
            }
            return detail::apply_group(group, val_cells, out,
                                       [&](std::span<Value>) {
                                         return cl.add(out, on_new);
                                       });
          });
      if (stop) break;
    }
  }
  return cl;
}

std::vector<std::uint64_t> all_cells(int k, int m) {
  std::vector<std::uint64_t> cells(pow_checked(k, m));
  for (std::uint64_t c = 0; c < cells.size(); ++c) cells[c] = c;
  return cells;
}

}  // namespace

GeneratorSet::GeneratorSet(int k, std::vector<FiniteFunction> fns) : k_(k) {
  check_carrier(k);
  for (const auto& f : fns) {
    if (f.k() != k) throw std::invalid_argument("generator carrier mismatch");
  }
  std::sort(fns.begin(), fns.end());
  fns.erase(std::unique(fns.begin(), fns.end()), fns.end());
  fns_ = std::move(fns);
}

int GeneratorSet::max_arity() const {
  int m = 0;
  for (const auto& f : fns_) m = std::max(m, f.arity());
  return m;
}

bool GeneratorSet::all_conservative() const {
  for (const auto& f : fns_) {
    if (!classify_function(f).is_conservative) return false;
  }
  return true;
}

bool GeneratorSet::conjugation_closed() const {
  for (const auto& sigma : Permutation::all(k_)) {
    for (const auto& f : fns_) {
      if (!std::binary_search(fns_.begin(), fns_.end(), conjugate(f, sigma))) {
        return false;
      }
    }
  }
  return true;
}

FunctionSet::FunctionSet(int k, std::vector<FiniteFunction> fns,
                         std::optional<int> closed_up_to)
    : k_(k), closed_up_to_(closed_up_to) {
  check_carrier(k);
  for (auto& f : fns) {
    if (f.k() != k) throw std::invalid_argument("member carrier mismatch");
    const std::size_t n = static_cast<std::size_t>(f.arity());
    if (by_arity_.size() <= n) by_arity_.resize(n + 1);
    by_arity_[n].push_back(std::move(f));
  }
  for (auto& bucket : by_arity_) {
    std::sort(bucket.begin(), bucket.end());
    bucket.erase(std::unique(bucket.begin(), bucket.end()), bucket.end());
  }
}

const std::vector<FiniteFunction>& FunctionSet::at_arity(int n) const {
  static const std::vector<FiniteFunction> empty;
  if (n < 1 || static_cast<std::size_t>(n) >= by_arity_.size()) return empty;
  return by_arity_[static_cast<std::size_t>(n)];
}

std::vector<int> FunctionSet::arities() const {
  std::vector<int> out;
  for (std::size_t n = 1; n < by_arity_.size(); ++n) {
    if (!by_arity_[n].empty()) out.push_back(static_cast<int>(n));
  }
  return out;
}

std::vector<FiniteFunction> FunctionSet::all() const {
  std::vector<FiniteFunction> out;
  for (const auto& bucket : by_arity_) {
    out.insert(out.end(), bucket.begin(), bucket.end());
  }
  return out;
}

std::size_t FunctionSet::total_size() const {
  std::size_t n = 0;
  for (const auto& bucket : by_arity_) n += bucket.size();
  return n;
}

bool TraceSet::contains(const Tuple& trace) const {
  return std::binary_search(traces.begin(), traces.end(), trace);
}

FunctionSet slice(const GeneratorSet& gens, int m, std::uint64_t cap) {
  auto cl = close_traces(gens, m, all_cells(gens.k(), m), cap, nullptr);
  std::vector<FiniteFunction> fns;
  fns.reserve(cl.traces.size());
  for (auto& t : cl.traces) fns.emplace_back(gens.k(), m, std::move(t));
  return FunctionSet(gens.k(), std::move(fns), m);
}

TraceSet slice_on_cells(const GeneratorSet& gens, int m,
                        std::vector<std::uint64_t> cells, std::uint64_t cap) {
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  auto cl = close_traces(gens, m, cells, cap, nullptr);
  TraceSet out;
  out.k = gens.k();
  out.arity = m;
  out.cells = std::move(cells);
  out.traces = std::move(cl.traces);
  std::sort(out.traces.begin(), out.traces.end());
  return out;
}

bool contains(const FunctionSet& set, const FiniteFunction& f) {
  if (!set.closed_up_to() || *set.closed_up_to() < f.arity()) {
    throw std::invalid_argument("set is not closed at arity " +
                                std::to_string(f.arity()));
  }
  const auto& bucket = set.at_arity(f.arity());
  return std::binary_search(bucket.begin(), bucket.end(), f);
}

GeneratorSet symmetric_closure(const GeneratorSet& gens) {
  std::vector<FiniteFunction> out;
  for (const auto& sigma : Permutation::all(gens.k())) {
    for (const auto& f : gens.functions()) out.push_back(conjugate(f, sigma));
  }
  return GeneratorSet(gens.k(), std::move(out));
}

namespace {

std::vector<Value> check_subset(int k, std::span<const Value> b) {
  std::vector<Value> sorted(b.begin(), b.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.size() != b.size() || sorted.size() < 2) {
    throw std::invalid_argument(
        "carrier subset must have >= 2 distinct elements");
  }
  if (sorted.back() >= k) {
    throw std::invalid_argument("carrier subset element out of range");
  }
  return sorted;
}

FiniteFunction restrict_function(const FiniteFunction& f,
                                 const std::vector<Value>& b) {
  const int kb = static_cast<int>(b.size());
  const int n = f.arity();
  const std::uint64_t size = pow_checked(kb, n);
  std::vector<Value> table(size);
  Tuple small(static_cast<std::size_t>(n)), big(static_cast<std::size_t>(n));
  for (std::uint64_t c = 0; c < size; ++c) {
    small = decode_tuple(c, n, kb);
    for (int i = 0; i < n; ++i) big[i] = b[small[i]];
    const Value out = f(big);
    const auto pos = std::lower_bound(b.begin(), b.end(), out) - b.begin();
    if (static_cast<std::size_t>(pos) == b.size() || b[pos] != out) {
      throw std::invalid_argument(
          "function leaves the carrier subset at a cell of arity " +
          std::to_string(n));
    }
    table[c] = static_cast<Value>(pos);
  }
  return FiniteFunction(kb, n, std::move(table));
}

// Is this full-table trace the table of some m-ary projection?
bool is_projection_table(const Tuple& table, int k, int m) {
  for (int i = 0; i < m; ++i) {
    const std::uint64_t period = pow_checked(k, m - 1 - i);
    bool match = true;
    for (std::uint64_t c = 0; c < table.size() && match; ++c) {
      match = table[c] ==
              static_cast<Value>((c / period) % static_cast<std::uint64_t>(k));
    }
    if (match) return true;
  }
  return false;
}

}  // namespace

FunctionSet restrict_carrier(const FunctionSet& set, std::span<const Value> b) {
  const auto sorted = check_subset(set.k(), b);
  std::vector<FiniteFunction> out;
  for (const auto& f : set.all()) out.push_back(restrict_function(f, sorted));
  return FunctionSet(static_cast<int>(sorted.size()), std::move(out),
                     set.closed_up_to());
}

GeneratorSet restrict_generators(const GeneratorSet& gens,
                                 std::span<const Value> b) {
  const auto sorted = check_subset(gens.k(), b);
  std::vector<FiniteFunction> out;
  for (const auto& f : gens.functions())
    out.push_back(restrict_function(f, sorted));
  return GeneratorSet(static_cast<int>(sorted.size()), std::move(out));
}

FiniteFunction restrict_to_subset(const FiniteFunction& f,
                                  std::span<const Value> b) {
  return restrict_function(f, check_subset(f.k(), b));
}

ArityVerdict min_nonprojection_arity(const GeneratorSet& gens, int bound,
                                     std::uint64_t cap) {
  if (bound < 2) throw std::invalid_argument("bound must be at least 2");
  for (int r = 1; r <= bound; ++r) {
    bool found = false;
    auto stop = [&](const Tuple& trace) {
      if (!is_projection_table(trace, gens.k(), r)) {
        found = true;
        return true;
      }
      return false;
    };
    close_traces(gens, r, all_cells(gens.k(), r), cap, stop);
    if (found) {
      if (r == 1) {
        throw std::invalid_argument(
            "unary slice contains a non-projection; the minimal-arity "
            "parameter is only defined for clones with r >= 2");
      }
      return ArityVerdict::Finite(r);
    }
  }
  return ArityVerdict::AtLeast(bound + 1);
}

FunctionSet conservative_slice(int k, int m, std::uint64_t cap) {
  check_carrier(k);
  const std::uint64_t size = pow_checked(k, m);
  std::uint64_t count = 1;
  std::vector<std::vector<Value>> choices(size);
  for (std::uint64_t c = 0; c < size; ++c) {
    Tuple cell = decode_tuple(c, m, k);
    std::vector<Value> vals(cell.begin(), cell.end());
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    choices[c] = std::move(vals);
    if (count > cap / std::max<std::uint64_t>(1, choices[c].size() * size)) {
      throw CapacityError("conservative slice exceeds capacity", m, count);
    }
    count *= choices[c].size();
  }
  std::vector<FiniteFunction> fns;
  fns.reserve(count);
  std::vector<std::size_t> pick(size, 0);
  while (true) {
    std::vector<Value> table(size);
    for (std::uint64_t c = 0; c < size; ++c) table[c] = choices[c][pick[c]];
    fns.emplace_back(k, m, std::move(table));
    std::uint64_t c = 0;
    for (; c < size; ++c) {
      if (++pick[c] < choices[c].size()) break;
      pick[c] = 0;
    }
    if (c == size) break;
  }
  return FunctionSet(k, std::move(fns), std::nullopt);
}

bool is_natural_isomorphism(std::span<const Value> sigma,
                            const FunctionSet& f_set, const FunctionSet& g_set,
                            int bound) {
  if (!f_set.closed_up_to() || !g_set.closed_up_to() ||
      *f_set.closed_up_to() < bound || *g_set.closed_up_to() < bound) {
    throw std::invalid_argument("both sets must be closed up to the bound");
  }
  if (f_set.k() != g_set.k() ||
      sigma.size() != static_cast<std::size_t>(f_set.k())) {
    throw std::invalid_argument("sigma must be a bijection between carriers");
  }
  Permutation perm(f_set.k(), std::vector<Value>(sigma.begin(), sigma.end()));
  const auto inv = perm.inverse();
  for (int n = 1; n <= bound; ++n) {
    const auto& fs = f_set.at_arity(n);
    const auto& gs = g_set.at_arity(n);
    if (fs.size() != gs.size()) return false;
    std::vector<FiniteFunction> transported;
    transported.reserve(fs.size());
    for (const auto& f : fs) {
      // tau(f)(x) = sigma(f(sigma^-1(x))) is conjugation by sigma^-1.
      transported.push_back(conjugate(f, inv));
    }
    std::sort(transported.begin(), transported.end());
    if (!std::equal(transported.begin(), transported.end(), gs.begin(),
                    gs.end())) {
      return false;
    }
  }
  return true;
}

}  // namespace clonelab
