#include "clonelab/conditions.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace clonelab {

std::string to_string(DeltaKind kind) {
  switch (kind) {
    case DeltaKind::S: return "s";
    case DeltaKind::Partial: return "partial";
    case DeltaKind::Two: return "two";
  }
  return "s";
}

namespace {

std::vector<std::uint64_t> cells_of_rank_below(int k, int n, int bound) {
  std::vector<std::uint64_t> out;
  const std::uint64_t size = pow_checked(k, n);
  for (std::uint64_t c = 0; c < size; ++c) {
    const Tuple t = decode_tuple(c, n, k);
    if (tuple_rank(t) < bound) out.push_back(c);
  }
  return out;
}

std::vector<std::uint64_t> cells_of_rank(int k, int n, int rank) {
  std::vector<std::uint64_t> out;
  const std::uint64_t size = pow_checked(k, n);
  for (std::uint64_t c = 0; c < size; ++c) {
    const Tuple t = decode_tuple(c, n, k);
    if (tuple_rank(t) == rank) out.push_back(c);
  }
  return out;
}

std::vector<Value> range_of(const Tuple& t) {
  std::vector<Value> vals(t.begin(), t.end());
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}

}  // namespace

DeltaReport delta_s(const GeneratorSet& gens, int n, std::uint64_t cap) {
  if (n < 2) throw std::invalid_argument("the slot condition needs n >= 2");
  const int k = gens.k();
  DeltaReport report;
  report.kind = DeltaKind::S;
  report.n = n;
  if (k < n) {
    report.holds = true;
    report.vacuous = true;
    return report;
  }

  const auto low = cells_of_rank_below(k, n, n);
  std::vector<std::uint64_t> demand_cells;
  if (gens.conjugation_closed()) {
    // All rank-n n-tuples form one orbit under value relabeling, and
    // conjugation transports witnesses without moving the slot i.
    Tuple identity_tuple(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) identity_tuple[j] = static_cast<Value>(j);
    demand_cells.push_back(encode_tuple(identity_tuple, k));
  } else {
    demand_cells = cells_of_rank(k, n, n);
  }

  // realized_per_slot[i] collects, per demand, the values hit at the demand
  // cell by traces agreeing with the i-th projection on every rank-<n cell.
  std::vector<std::vector<std::set<Value>>> realized(
      static_cast<std::size_t>(n),
      std::vector<std::set<Value>>(demand_cells.size()));
  std::vector<std::vector<std::vector<std::pair<Value, Tuple>>>> found_traces(
      static_cast<std::size_t>(n),
      std::vector<std::vector<std::pair<Value, Tuple>>>(demand_cells.size()));
  std::vector<std::vector<std::uint64_t>> demand_cell_lists(demand_cells.size());

  for (std::size_t d = 0; d < demand_cells.size(); ++d) {
    std::vector<std::uint64_t> cells = low;
    cells.push_back(demand_cells[d]);
    const TraceSet traces = slice_on_cells(gens, n, cells, cap);
    demand_cell_lists[d] = traces.cells;
    const auto demand_pos =
        std::lower_bound(traces.cells.begin(), traces.cells.end(),
                         demand_cells[d]) -
        traces.cells.begin();
    for (int i = 0; i < n; ++i) {
      for (const auto& trace : traces.traces) {
        bool matches = true;
        for (std::size_t c = 0; c < traces.cells.size() && matches; ++c) {
          if (c == static_cast<std::size_t>(demand_pos)) continue;
          const Tuple cell = decode_tuple(traces.cells[c], n, k);
          matches = trace[c] == cell[static_cast<std::size_t>(i)];
        }
        if (matches) {
          const Value hit = trace[static_cast<std::size_t>(demand_pos)];
          if (realized[i][d].insert(hit).second) {
            found_traces[i][d].emplace_back(hit, trace);
          }
        }
      }
    }
  }

  int best_i = 0;
  std::size_t best_score = 0;
  for (int i = 0; i < n; ++i) {
    std::size_t score = 0;
    bool all = true;
    for (std::size_t d = 0; d < demand_cells.size(); ++d) {
      const Tuple cell = decode_tuple(demand_cells[d], n, k);
      for (Value a : range_of(cell)) {
        if (realized[i][d].count(a)) {
          ++score;
        } else {
          all = false;
        }
      }
    }
    if (score > best_score) {
      best_score = score;
      best_i = i;
    }
    if (all) {
      report.holds = true;
      report.witness_index = i;
      for (std::size_t d = 0; d < demand_cells.size(); ++d) {
        const Tuple cell = decode_tuple(demand_cells[d], n, k);
        for (const auto& [hit, trace] : found_traces[i][d]) {
          report.witnesses.push_back(DeltaWitness{
              cell, hit, {}, 0, demand_cell_lists[d], trace});
        }
      }
      return report;
    }
  }

  report.holds = false;
  report.witness_index = best_i;
  for (std::size_t d = 0; d < demand_cells.size(); ++d) {
    const Tuple cell = decode_tuple(demand_cells[d], n, k);
    for (Value a : range_of(cell)) {
      if (!realized[best_i][d].count(a)) {
        report.counterexample =
            DeltaWitness{cell, a, {}, 0, demand_cell_lists[d], {}};
        return report;
      }
    }
  }
  return report;
}

DeltaReport delta_partial(const GeneratorSet& gens, std::uint64_t cap) {
  const int k = gens.k();
  DeltaReport report;
  report.kind = DeltaKind::Partial;
  report.n = 3;
  if (k < 3) {
    report.holds = true;
    report.vacuous = true;
    return report;
  }

  const auto low = cells_of_rank_below(k, 3, 3);
  std::vector<std::uint64_t> demand_cells;
  if (gens.conjugation_closed()) {
    demand_cells.push_back(encode_tuple(Tuple{0, 1, 2}, k));
  } else {
    demand_cells = cells_of_rank(k, 3, 3);
  }

  report.holds = true;
  for (std::uint64_t demand : demand_cells) {
    std::vector<std::uint64_t> cells = low;
    cells.push_back(demand);
    const TraceSet traces = slice_on_cells(gens, 3, cells, cap);
    const auto demand_pos =
        std::lower_bound(traces.cells.begin(), traces.cells.end(), demand) -
        traces.cells.begin();
    const Tuple demand_tuple = decode_tuple(demand, 3, k);

    std::set<Value> realized;
    std::vector<std::pair<Value, Tuple>> found;
    for (const auto& trace : traces.traces) {
      bool majority_pattern = true;
      for (std::size_t c = 0; c < traces.cells.size() && majority_pattern;
           ++c) {
        if (c == static_cast<std::size_t>(demand_pos)) continue;
        const Tuple cell = decode_tuple(traces.cells[c], 3, k);
        majority_pattern =
            trace[c] == majority_value(cell[0], cell[1], cell[2]);
      }
      if (majority_pattern) {
        if (realized.insert(trace[static_cast<std::size_t>(demand_pos)])
                .second) {
          found.emplace_back(trace[static_cast<std::size_t>(demand_pos)],
                             trace);
        }
      }
    }
    for (Value a : range_of(demand_tuple)) {
      if (!realized.count(a)) {
        report.holds = false;
        report.counterexample =
            DeltaWitness{demand_tuple, a, {}, 0, traces.cells, {}};
        return report;
      }
    }
    for (const auto& [hit, trace] : found) {
      report.witnesses.push_back(
          DeltaWitness{demand_tuple, hit, {}, 0, traces.cells, trace});
    }
  }
  return report;
}

namespace {

// Canonical representative of (a, b) under simultaneous value relabeling.
std::pair<std::uint64_t, std::uint64_t> canonical_pair(
    const Tuple& a, const Tuple& b, const std::vector<Permutation>& perms,
    int k) {
  std::pair<std::uint64_t, std::uint64_t> best{~0ull, ~0ull};
  Tuple ia(a.size()), ib(b.size());
  for (const auto& sigma : perms) {
    for (std::size_t i = 0; i < a.size(); ++i) ia[i] = sigma(a[i]);
    for (std::size_t i = 0; i < b.size(); ++i) ib[i] = sigma(b[i]);
    best = std::min(best, {encode_tuple(ia, k), encode_tuple(ib, k)});
  }
  return best;
}

}  // namespace

DeltaReport delta_2(const GeneratorSet& gens, std::uint64_t cap) {
  const int k = gens.k();
  DeltaReport report;
  report.kind = DeltaKind::Two;
  report.n = 2;

  const auto rank2 = cells_of_rank(k, 2, 2);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> demands;
  for (std::uint64_t ca : rank2) {
    for (std::uint64_t cb : rank2) {
      const Tuple a = decode_tuple(ca, 2, k);
      const Tuple b = decode_tuple(cb, 2, k);
      if (range_of(a) != range_of(b)) demands.emplace_back(ca, cb);
    }
  }
  if (demands.empty()) {
    report.holds = true;
    report.vacuous = true;
    return report;
  }
  if (gens.conjugation_closed()) {
    const auto perms = Permutation::all(k);
    std::set<std::pair<std::uint64_t, std::uint64_t>> reps;
    for (const auto& [ca, cb] : demands) {
      reps.insert(canonical_pair(decode_tuple(ca, 2, k),
                                 decode_tuple(cb, 2, k), perms, k));
    }
    demands.assign(reps.begin(), reps.end());
  }

  std::vector<std::uint64_t> diag;
  for (Value x = 0; x < k; ++x) diag.push_back(encode_tuple(Tuple{x, x}, k));

  report.holds = true;
  for (const auto& [ca, cb] : demands) {
    std::vector<std::uint64_t> cells = diag;
    cells.push_back(ca);
    if (cb != ca) cells.push_back(cb);
    const TraceSet traces = slice_on_cells(gens, 2, cells, cap);
    const auto pos_of = [&](std::uint64_t cell) {
      return static_cast<std::size_t>(
          std::lower_bound(traces.cells.begin(), traces.cells.end(), cell) -
          traces.cells.begin());
    };
    const std::size_t pa = pos_of(ca), pb = pos_of(cb);
    const Tuple ta = decode_tuple(ca, 2, k), tb = decode_tuple(cb, 2, k);

    std::set<std::pair<Value, Value>> realized;
    std::vector<std::pair<std::pair<Value, Value>, Tuple>> found;
    for (const auto& trace : traces.traces) {
      bool idempotent = true;
      for (std::size_t c = 0; c < traces.cells.size() && idempotent; ++c) {
        const Tuple cell = decode_tuple(traces.cells[c], 2, k);
        if (cell[0] == cell[1]) idempotent = trace[c] == cell[0];
      }
      if (idempotent) {
        const std::pair<Value, Value> hit{trace[pa], trace[pb]};
        if (realized.insert(hit).second) found.emplace_back(hit, trace);
      }
    }
    for (Value a : range_of(ta)) {
      for (Value b : range_of(tb)) {
        if (!realized.count({a, b})) {
          report.holds = false;
          report.counterexample =
              DeltaWitness{ta, a, tb, b, traces.cells, {}};
          return report;
        }
      }
    }
    for (const auto& [hit, trace] : found) {
      report.witnesses.push_back(
          DeltaWitness{ta, hit.first, tb, hit.second, traces.cells, trace});
    }
  }
  return report;
}

bool BinaryPairRelation::contains(std::uint64_t a, std::uint64_t b) const {
  return std::binary_search(pairs.begin(), pairs.end(), std::pair{a, b});
}

BinaryPairRelation special_relation(SpecialRelationKind kind, int k) {
  if (kind == SpecialRelationKind::UpArrow && k != 3) {
    throw std::invalid_argument("the up-arrow relation is defined for k = 3");
  }
  if (kind == SpecialRelationKind::PlusMinus && k != 4) {
    throw std::invalid_argument("the plus-minus relation is defined for k = 4");
  }
  BinaryPairRelation rel;
  rel.k = k;
  const auto rank2 = cells_of_rank(k, 2, 2);
  for (std::uint64_t ca : rank2) {
    for (std::uint64_t cb : rank2) {
      const Tuple x = decode_tuple(ca, 2, k), y = decode_tuple(cb, 2, k);
      bool in = false;
      if (kind == SpecialRelationKind::UpArrow) {
        const Value a = x[0], b = x[1], c = y[0], d = y[1];
        in = (ca == cb) || (b == c && a != d) || (a == d && b != c);
      } else {
        const auto rx = range_of(x), ry = range_of(y);
        std::vector<Value> meet;
        std::set_intersection(rx.begin(), rx.end(), ry.begin(), ry.end(),
                              std::back_inserter(meet));
        in = (rx == ry) || meet.empty();
      }
      if (in) rel.pairs.emplace_back(ca, cb);
    }
  }
  std::sort(rel.pairs.begin(), rel.pairs.end());
  return rel;
}

std::string to_string(PairType t) {
  switch (t) {
    case PairType::T0: return "0";
    case PairType::T1: return "1";
    case PairType::T00: return "00";
    case PairType::T01: return "01";
    case PairType::T10: return "10";
    case PairType::T11: return "11";
    case PairType::T2: return "2";
  }
  return "0";
}

PairType pair_type(std::pair<Value, Value> a, std::pair<Value, Value> b) {
  if (a.first == a.second || b.first == b.second) {
    throw std::invalid_argument("pair type is defined on rank-2 pairs");
  }
  if (a == b) return PairType::T0;
  if (a.first == b.second && a.second == b.first) return PairType::T1;
  if (a.first == b.first && a.second != b.second) return PairType::T00;
  if (a.first == b.second && a.second != b.first) return PairType::T01;
  if (a.second == b.first && a.first != b.second) return PairType::T10;
  if (a.second == b.second && a.first != b.first) return PairType::T11;
  return PairType::T2;
}

BinaryPairRelation triangle_rel(const GeneratorSet& gens, int i,
                                std::uint64_t cap) {
  if (i != 0 && i != 1) throw std::invalid_argument("slot must be 0 or 1");
  const int k = gens.k();
  BinaryPairRelation rel;
  rel.k = k;
  const auto rank2 = cells_of_rank(k, 2, 2);
  for (std::uint64_t ca : rank2) {
    for (std::uint64_t cb : rank2) {
      std::vector<std::uint64_t> cells{ca};
      if (cb != ca) cells.push_back(cb);
      const TraceSet traces = slice_on_cells(gens, 2, cells, cap);
      const auto pos_of = [&](std::uint64_t cell) {
        return static_cast<std::size_t>(
            std::lower_bound(traces.cells.begin(), traces.cells.end(), cell) -
            traces.cells.begin());
      };
      const std::size_t pa = pos_of(ca), pb = pos_of(cb);
      const Tuple ta = decode_tuple(ca, 2, k), tb = decode_tuple(cb, 2, k);
      bool related = true;
      for (const auto& trace : traces.traces) {
        if (trace[pa] == ta[static_cast<std::size_t>(i)] &&
            trace[pb] != tb[static_cast<std::size_t>(i)]) {
          related = false;
          break;
        }
      }
      if (related) rel.pairs.emplace_back(ca, cb);
    }
  }
  std::sort(rel.pairs.begin(), rel.pairs.end());
  return rel;
}

std::pair<FiniteFunction, FiniteFunction> uv_pair(int k) {
  if (k != 3) throw std::invalid_argument("the u/v tables live on k = 3");
  FiniteFunction u(3, 2, {0, 1, 0, 1, 1, 2, 0, 2, 2});
  FiniteFunction v(3, 2, {0, 0, 2, 0, 1, 1, 2, 1, 2});
  return {std::move(u), std::move(v)};
}

std::vector<Permutation> klein_group(int k) {
  if (k != 4) throw std::invalid_argument("the four-group lives on k = 4");
  return {Permutation(4, {0, 1, 2, 3}), Permutation(4, {1, 0, 3, 2}),
          Permutation(4, {2, 3, 0, 1}), Permutation(4, {3, 2, 1, 0})};
}

int klein_orbit_of(Value a, Value b) {
  if (a == b || a > 3 || b > 3) {
    throw std::invalid_argument("need two distinct elements of 0..3");
  }
  const Value lo = std::min(a, b), hi = std::max(a, b);
  if ((lo == 0 && hi == 1) || (lo == 2 && hi == 3)) return 0;
  if ((lo == 0 && hi == 2) || (lo == 1 && hi == 3)) return 1;
  return 2;
}

bool is_klein_P_function(const FiniteFunction& f, const PostClassId& p) {
  if (f.k() != 4) throw std::invalid_argument("carrier must be 4");
  if (!p.is_named()) {
    throw std::invalid_argument(
        "only the duality-closed named classes give a well-defined family");
  }
  const int n = f.arity();
  if (n > 4) {
    throw std::invalid_argument("supported up to arity 4");
  }

  // Restriction to every 2-element subset lies in the matching class. The
  // named classes are duality-closed, so the labeling does not matter.
  const auto members = semantic_members(p.tag(), n);
  for (Value lo = 0; lo < 4; ++lo) {
    for (Value hi = static_cast<Value>(lo + 1); hi < 4; ++hi) {
      const std::array<Value, 2> b = {lo, hi};
      FiniteFunction restricted = restrict_to_subset(f, b);
      if (!std::binary_search(members.begin(), members.end(), restricted)) {
        return false;
      }
    }
  }

  // Equivariance on rank-2 tuples under the four-group.
  const auto group = klein_group(4);
  const std::uint64_t size = f.table().size();
  Tuple mapped(static_cast<std::size_t>(n));
  for (std::uint64_t c = 0; c < size; ++c) {
    const Tuple cell = decode_tuple(c, n, 4);
    if (tuple_rank(cell) != 2) continue;
    for (const auto& sigma : group) {
      for (int j = 0; j < n; ++j) mapped[j] = sigma(cell[j]);
      if (sigma(f.at_cell(c)) != f.at_cell(encode_tuple(mapped, 4))) {
        return false;
      }
    }
  }
  return true;
}

KleinTraceSet klein_rank2_slice(const PostClassId& p, int n) {
  if (!p.is_named()) {
    throw std::invalid_argument(
        "only the duality-closed named classes give a well-defined family");
  }
  if (n < 1 || n > 4) throw std::invalid_argument("supported up to arity 4");

  KleinTraceSet out;
  out.n = n;
  const std::uint64_t size = pow_checked(4, n);
  std::vector<Tuple> cell_tuples;
  for (std::uint64_t c = 0; c < size; ++c) {
    Tuple t = decode_tuple(c, n, 4);
    if (tuple_rank(t) <= 2) {
      out.cells.push_back(c);
      cell_tuples.push_back(std::move(t));
    }
  }

  std::vector<FiniteFunction> self_dual;
  for (auto& g : semantic_members(p.tag(), n)) {
    if (is_self_dual(g)) self_dual.push_back(std::move(g));
  }

  // One self-dual member per subset orbit; rank-1 cells are forced and a
  // rank-2 cell follows the orbit's member through the lo->0, hi->1 labeling.
  Tuple boolean_cell(static_cast<std::size_t>(n));
  for (const auto& g0 : self_dual) {
    for (const auto& g1 : self_dual) {
      for (const auto& g2 : self_dual) {
        const std::array<const FiniteFunction*, 3> pick = {&g0, &g1, &g2};
        Tuple trace(out.cells.size());
        for (std::size_t c = 0; c < out.cells.size(); ++c) {
          const Tuple& cell = cell_tuples[c];
          if (tuple_rank(cell) == 1) {
            trace[c] = cell[0];
            continue;
          }
          Value lo = cell[0], hi = cell[0];
          for (Value v : cell) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
          }
          for (int j = 0; j < n; ++j) {
            boolean_cell[j] = cell[j] == hi ? Value{1} : Value{0};
          }
          const Value bit = (*pick[klein_orbit_of(lo, hi)])(boolean_cell);
          trace[c] = bit ? hi : lo;
        }
        out.traces.push_back(std::move(trace));
      }
    }
  }
  std::sort(out.traces.begin(), out.traces.end());
  out.traces.erase(std::unique(out.traces.begin(), out.traces.end()),
                   out.traces.end());
  return out;
}

}  // namespace clonelab
