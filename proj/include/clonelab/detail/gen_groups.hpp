// Internal: generators grouped by arity, with detection of "saturated"
// families. A group is saturated when its tables realize every combination of
// the per-cell value sets exactly once; applying such a group to a member
// tuple then enumerates independent choices per distinct value tuple (cells
// sharing a value tuple must take equal values) instead of looping over each
// generator. This is what keeps closures under the 729 minority-pattern
// generators and the 2^|cells| conservative generator families tractable.
#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "clonelab/clone_engine.hpp"
#include "clonelab/core.hpp"

namespace clonelab::detail {

struct ArityGroup {
  int arity = 0;
  std::vector<const FiniteFunction*> gens;
  bool saturated = false;
  std::vector<std::vector<Value>> realized;  // per generator-table cell
};

inline std::vector<ArityGroup> group_generators(const GeneratorSet& gens) {
  std::vector<ArityGroup> groups;
  for (const auto& g : gens.functions()) {
    if (groups.empty() || groups.back().arity != g.arity()) {
      groups.push_back({g.arity(), {}, false, {}});
    }
    groups.back().gens.push_back(&g);
  }
  for (auto& group : groups) {
    const std::size_t table_size = group.gens.front()->table().size();
    group.realized.assign(table_size, {});
    for (std::size_t c = 0; c < table_size; ++c) {
      std::vector<Value> vals;
      vals.reserve(group.gens.size());
      for (const auto* g : group.gens) vals.push_back(g->at_cell(c));
      std::sort(vals.begin(), vals.end());
      vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
      group.realized[c] = std::move(vals);
    }
    std::uint64_t product = 1;
    for (const auto& vals : group.realized) {
      product *= vals.size();
      if (product > group.gens.size()) break;
    }
    group.saturated = (product == group.gens.size());
  }
  return groups;
}

// Applies every generator of `group` to one member tuple. `val_cells` holds,
// per output position, the encoded value tuple gathered from the members.
// Results are written into `out` (same length) and emitted through
// sink(out); sink returns true to stop early. Returns true when stopped.
template <typename Sink>
bool apply_group(const ArityGroup& group,
                 std::span<const std::uint64_t> val_cells,
                 std::span<Value> out, Sink&& sink) {
  const std::size_t ncells = val_cells.size();
  if (group.saturated) {
    std::vector<std::uint64_t> distinct;
    for (std::uint64_t vc : val_cells) {
      if (group.realized[vc].size() > 1) distinct.push_back(vc);
    }
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()),
                   distinct.end());
    std::vector<std::size_t> choice(distinct.size(), 0);
    while (true) {
      for (std::size_t c = 0; c < ncells; ++c) {
        const auto& vals = group.realized[val_cells[c]];
        if (vals.size() == 1) {
          out[c] = vals[0];
        } else {
          const auto pos =
              std::lower_bound(distinct.begin(), distinct.end(), val_cells[c]) -
              distinct.begin();
          out[c] = vals[choice[static_cast<std::size_t>(pos)]];
        }
      }
      if (sink(out)) return true;
      std::size_t d = 0;
      for (; d < choice.size(); ++d) {
        if (++choice[d] < group.realized[distinct[d]].size()) break;
        choice[d] = 0;
      }
      if (d == choice.size()) break;
    }
  } else {
    for (const auto* g : group.gens) {
      for (std::size_t c = 0; c < ncells; ++c) out[c] = g->at_cell(val_cells[c]);
      if (sink(out)) return true;
    }
  }
  return false;
}

// Odometer over all index tuples of length `arity` drawn from 0..top whose
// maximum equals top; body(idx) returns true to stop. Returns true if stopped.
template <typename Body>
bool for_each_tuple_with_max(int arity, std::size_t top, Body&& body) {
  std::vector<std::size_t> idx(static_cast<std::size_t>(arity), 0);
  while (true) {
    bool has_top = false;
    for (std::size_t v : idx) has_top |= (v == top);
    if (has_top && body(std::span<const std::size_t>(idx))) return true;
    std::size_t j = 0;
    for (; j < idx.size(); ++j) {
      if (++idx[j] <= top) break;
      idx[j] = 0;
    }
    if (j == idx.size()) return false;
  }
}

}  // namespace clonelab::detail
