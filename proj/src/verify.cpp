#include "clonelab/verify.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "clonelab/conditions.hpp"
#include "clonelab/post_classes.hpp"

namespace clonelab {

std::string to_string(VerifyStatus status) {
  switch (status) {
    case VerifyStatus::Passed: return "passed";
    case VerifyStatus::Failed: return "failed";
    case VerifyStatus::PremiseFailed: return "premise-failed";
    case VerifyStatus::PremiseVacuous: return "premise-vacuous";
  }
  return "failed";
}

std::string to_string(TheoremKind which) {
  switch (which) {
    case TheoremKind::Partial: return "partial";
    case TheoremKind::S3: return "s3";
    case TheoremKind::D2: return "d2";
  }
  return "d2";
}

// ---------------------------------------------------------------------------
// Definitional oracle: naive slices, direct preservation. Kept deliberately
// separate from the worklist engine it cross-checks.

namespace {

std::vector<std::vector<Value>> naive_slice_tables(const GeneratorSet& gens,
                                                   int n, std::uint64_t cap) {
  const int k = gens.k();
  const std::uint64_t ncells = pow_checked(k, n);
  std::set<std::vector<Value>> members;
  for (int i = 0; i < n; ++i) {
    std::vector<Value> table(ncells);
    for (std::uint64_t c = 0; c < ncells; ++c) {
      table[c] = decode_tuple(c, n, k)[static_cast<std::size_t>(i)];
    }
    members.insert(std::move(table));
  }
  // Round-based: re-apply every generator to every tuple until stable.
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<Value>> snapshot(members.begin(), members.end());
    for (const auto& g : gens.functions()) {
      const int t = g.arity();
      std::vector<std::size_t> idx(static_cast<std::size_t>(t), 0);
      while (true) {
        std::vector<Value> table(ncells);
        Tuple vals(static_cast<std::size_t>(t));
        for (std::uint64_t c = 0; c < ncells; ++c) {
          for (int j = 0; j < t; ++j) vals[j] = snapshot[idx[j]][c];
          table[c] = g(vals);
        }
        if (members.insert(std::move(table)).second) {
          grew = true;
          if (members.size() * ncells > cap) {
            throw CapacityError("oracle slice exceeds capacity", n,
                                members.size());
          }
        }
        std::size_t j = 0;
        for (; j < idx.size(); ++j) {
          if (++idx[j] < snapshot.size()) break;
          idx[j] = 0;
        }
        if (j == idx.size()) break;
      }
    }
  }
  return {members.begin(), members.end()};
}

}  // namespace

bool oracle_in_inv(const GeneratorSet& gens, const QSet& h, std::uint64_t cap) {
  const int top = static_cast<int>(std::min<std::size_t>(h.size(), 3));
  for (int n = 1; n <= top; ++n) {
    for (auto& table : naive_slice_tables(gens, n, cap)) {
      if (!preserves(FiniteFunction(gens.k(), n, std::move(table)), h)) {
        return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Sampling

std::vector<QSet> sample_qsets(int k, int m, std::uint64_t samples,
                               std::uint64_t seed) {
  const std::uint64_t universe = pow_checked(k, m);
  if (universe > 1'000'000) {
    throw CapacityError("sampling universe too large", m, universe);
  }
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> sizes;
  for (std::uint64_t s : {std::uint64_t{1}, std::uint64_t{2},
                          (universe + 1) / 2, universe - 1}) {
    if (s >= 1 && s <= universe) sizes.push_back(s);
  }
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  std::uniform_int_distribution<std::uint64_t> size_dist(1, universe);
  while (sizes.size() < samples) sizes.push_back(size_dist(rng));
  sizes.resize(samples);

  std::vector<QSet> out;
  out.reserve(samples);
  std::vector<std::uint64_t> pool(universe);
  for (std::uint64_t r = 0; r < universe; ++r) pool[r] = r;
  for (std::uint64_t size : sizes) {
    // Partial Fisher-Yates draw without replacement.
    for (std::uint64_t i = 0; i < size; ++i) {
      std::uniform_int_distribution<std::uint64_t> pick(i, universe - 1);
      std::swap(pool[i], pool[pick(rng)]);
    }
    out.push_back(
        QSet(k, m, std::vector<std::uint64_t>(pool.begin(),
                                              pool.begin() + size)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Shared machinery for the iff verifiers

namespace {

std::string rows_brief(const QSet& h) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < h.size() && i < 8; ++i) {
    if (i) os << ",";
    for (Value v : h.row_tuple(i)) os << int(v);
  }
  if (h.size() > 8) os << ",...";
  os << "}";
  return os.str();
}

struct IffContext {
  const GeneratorSet& gens;
  std::map<int, RowClosureEngine> engines;

  explicit IffContext(const GeneratorSet& g) : gens(g) {}

  RowClosureEngine& engine(int m) {
    auto it = engines.find(m);
    if (it == engines.end()) {
      const std::uint64_t universe = pow_checked(gens.k(), m);
      const bool precompute = universe <= 64;
      it = engines
               .emplace(m, RowClosureEngine(GeneratorSet(gens), m, precompute))
               .first;
    }
    return it->second;
  }

  bool restriction_invariant(const QSet& h, const std::vector<int>& positions) {
    if (positions.empty()) return true;  // restriction to nothing is trivial
    return engine(static_cast<int>(positions.size()))
        .is_invariant(restrict_qset(h, positions));
  }
};

std::vector<std::vector<int>> singleton_sets(int m) {
  std::vector<std::vector<int>> out;
  for (int q = 0; q < m; ++q) out.push_back({q});
  return out;
}

void add_pairs(std::vector<std::vector<int>>& sets,
               const std::vector<std::pair<int, int>>& pairs) {
  for (const auto& [p, q] : pairs) sets.push_back({p, q});
}

struct RhsOutcome {
  bool ok = true;
  std::string why;
};

RhsOutcome fail(std::string why) { return {false, std::move(why)}; }

// Decomposition law under the majority-pattern condition, and the
// classification cases 2 and 6: restrictions to singletons (law only),
// permutation-linked pairs and anchored pairs are invariant, and H decomposes
// over those families.
RhsOutcome rhs_pairs_law(IffContext& ctx, const QSet& h,
                         bool include_singleton_invariance) {
  const auto families = index_families(h, 2);
  std::vector<std::vector<int>> sets = singleton_sets(h.m());
  add_pairs(sets, families.perm_linked_pairs);
  add_pairs(sets, families.anchored_pairs);
  if (include_singleton_invariance) {
    for (int q = 0; q < h.m(); ++q) {
      if (!ctx.restriction_invariant(h, {q})) {
        return fail("column " + std::to_string(q) + " not invariant");
      }
    }
  }
  for (const auto& [p, q] : families.perm_linked_pairs) {
    if (!ctx.restriction_invariant(h, {p, q})) {
      return fail("permutation-linked pair restriction not invariant");
    }
  }
  for (const auto& [p, q] : families.anchored_pairs) {
    if (!ctx.restriction_invariant(h, {p, q})) {
      return fail("anchored pair restriction not invariant");
    }
  }
  if (!is_decomposable(h, SubsetFamily(h.m(), std::move(sets)))) {
    return fail("not decomposable over singletons + linked/anchored pairs");
  }
  return {};
}

// Decomposition law under the slot condition at arity n, and the
// classification case 1 (with n = the minimal non-projection arity): small
// columns join the family instead of anchored pairs.
RhsOutcome rhs_slot_law(IffContext& ctx, const QSet& h, int n,
                        bool include_singleton_invariance) {
  const auto families = index_families(h, n);
  std::vector<std::vector<int>> sets = singleton_sets(h.m());
  add_pairs(sets, families.perm_linked_pairs);
  if (!families.small_columns.empty()) sets.push_back(families.small_columns);
  if (include_singleton_invariance) {
    for (int q = 0; q < h.m(); ++q) {
      if (!ctx.restriction_invariant(h, {q})) {
        return fail("column " + std::to_string(q) + " not invariant");
      }
    }
  }
  for (const auto& [p, q] : families.perm_linked_pairs) {
    if (!ctx.restriction_invariant(h, {p, q})) {
      return fail("permutation-linked pair restriction not invariant");
    }
  }
  if (!ctx.restriction_invariant(h, families.small_columns)) {
    return fail("small-column restriction not invariant");
  }
  if (!is_decomposable(h, SubsetFamily(h.m(), std::move(sets)))) {
    return fail("not decomposable over singletons + linked pairs + small columns");
  }
  return {};
}

// Decomposition law under the idempotent-pair condition, and classification
// case 4: per 2-element carrier subset, the columns staying within it.
RhsOutcome rhs_idempotent_law(IffContext& ctx, const QSet& h) {
  const auto families = index_families(h, 2);
  std::vector<std::vector<int>> sets = singleton_sets(h.m());
  add_pairs(sets, families.equal_pairs);
  for (const auto& [b, positions] : families.columns_within) {
    if (!positions.empty()) sets.push_back(positions);
  }
  for (int q = 0; q < h.m(); ++q) {
    if (!ctx.restriction_invariant(h, {q})) {
      return fail("column " + std::to_string(q) + " not invariant");
    }
  }
  for (const auto& [b, positions] : families.columns_within) {
    if (!ctx.restriction_invariant(h, positions)) {
      return fail("columns within {" + std::to_string(int(b.first)) + "," +
                  std::to_string(int(b.second)) + "} not invariant");
    }
  }
  if (!is_decomposable(h, SubsetFamily(h.m(), std::move(sets)))) {
    return fail("not decomposable over singletons + equal pairs + within-subset columns");
  }
  return {};
}

// H restricted to its small columns is closed under the pointwise minority
// pattern (every column there has at most 2 values, so cell values are
// forced; membership for triples decides preservation by a minority-pattern
// function).
bool preserved_by_minority(const QSet& h) {
  const auto rows = h.row_tuples();
  Tuple out(static_cast<std::size_t>(h.m()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) {
      for (std::size_t l = 0; l < rows.size(); ++l) {
        for (int q = 0; q < h.m(); ++q) {
          out[q] = minority_value(rows[i][q], rows[j][q], rows[l][q]);
        }
        if (!h.contains_row(encode_tuple(out, h.k()))) return false;
      }
    }
  }
  return true;
}

// Preservation by every conservative equivariant P-function, decided on the
// rank-<=2 traces at arities up to min(|H|, 4); identification of repeated
// rows reduces higher arities to these.
bool preserved_by_klein_traces(const QSet& h, PostTag p) {
  const auto rows = h.row_tuples();
  const int max_t = static_cast<int>(std::min<std::size_t>(rows.size(), 4));
  Tuple cell(0);
  for (int t = 2; t <= max_t; ++t) {
    const KleinTraceSet traces = klein_rank2_slice(PostClassId::named(p), t);
    cell.resize(static_cast<std::size_t>(t));
    std::vector<std::size_t> idx(static_cast<std::size_t>(t), 0);
    std::vector<std::size_t> cell_pos(static_cast<std::size_t>(h.m()));
    Tuple out(static_cast<std::size_t>(h.m()));
    while (true) {
      for (int q = 0; q < h.m(); ++q) {
        for (int j = 0; j < t; ++j) cell[j] = rows[idx[j]][q];
        const std::uint64_t enc = encode_tuple(cell, h.k());
        const auto it = std::lower_bound(traces.cells.begin(),
                                         traces.cells.end(), enc);
        if (it == traces.cells.end() || *it != enc) {
          throw std::logic_error("cell of rank > 2 in a small-column set");
        }
        cell_pos[q] = static_cast<std::size_t>(it - traces.cells.begin());
      }
      for (const auto& trace : traces.traces) {
        for (int q = 0; q < h.m(); ++q) out[q] = trace[cell_pos[q]];
        if (!h.contains_row(encode_tuple(out, h.k()))) return false;
      }
      std::size_t j = 0;
      for (; j < idx.size(); ++j) {
        if (++idx[j] < rows.size()) break;
        idx[j] = 0;
      }
      if (j == idx.size()) break;
    }
  }
  return true;
}

// Classification case 3: linked pairs invariant, small columns preserved by
// the minority pattern, and decomposition over singletons + linked pairs +
// the small-column block.
RhsOutcome rhs_case3(IffContext& ctx, const QSet& h) {
  const auto families = index_families(h, 3);
  for (const auto& [p, q] : families.perm_linked_pairs) {
    if (!ctx.restriction_invariant(h, {p, q})) {
      return fail("permutation-linked pair restriction not invariant");
    }
  }
  if (!families.small_columns.empty() &&
      !preserved_by_minority(restrict_qset(h, families.small_columns))) {
    return fail("small columns not closed under the minority pattern");
  }
  std::vector<std::vector<int>> sets = singleton_sets(h.m());
  add_pairs(sets, families.perm_linked_pairs);
  if (!families.small_columns.empty()) sets.push_back(families.small_columns);
  if (!is_decomposable(h, SubsetFamily(h.m(), std::move(sets)))) {
    return fail("not decomposable over singletons + linked pairs + small columns");
  }
  return {};
}

// Classification case 5: as case 3 but the small columns must be preserved by
// the equivariant family of the restricted class.
RhsOutcome rhs_case5(IffContext& ctx, const QSet& h, PostTag pi0) {
  const auto families = index_families(h, 3);
  for (const auto& [p, q] : families.perm_linked_pairs) {
    if (!ctx.restriction_invariant(h, {p, q})) {
      return fail("permutation-linked pair restriction not invariant");
    }
  }
  if (!families.small_columns.empty() &&
      !preserved_by_klein_traces(restrict_qset(h, families.small_columns),
                                 pi0)) {
    return fail("small columns not preserved by the equivariant family");
  }
  std::vector<std::vector<int>> sets = singleton_sets(h.m());
  add_pairs(sets, families.perm_linked_pairs);
  if (!families.small_columns.empty()) sets.push_back(families.small_columns);
  if (!is_decomposable(h, SubsetFamily(h.m(), std::move(sets)))) {
    return fail("not decomposable over singletons + linked pairs + small columns");
  }
  return {};
}

// Classification case 1: linked pairs invariant and decomposition over
// singletons + linked pairs + columns with fewer than r values.
RhsOutcome rhs_case1(IffContext& ctx, const QSet& h, int r_effective) {
  return rhs_slot_law(ctx, h, r_effective, false);
}

// Classification case 4: per carrier pair, the within-subset columns carry an
// invariant restriction (of the restricted clone, equivalently of the whole
// clone since the rows stay inside the subset), plus the idempotent-law
// decomposition family.
RhsOutcome rhs_case4(IffContext& ctx, const QSet& h) {
  const auto families = index_families(h, 2);
  for (const auto& [b, positions] : families.columns_within) {
    if (!positions.empty() && !ctx.restriction_invariant(h, positions)) {
      return fail("columns within {" + std::to_string(int(b.first)) + "," +
                  std::to_string(int(b.second)) + "} not invariant");
    }
  }
  std::vector<std::vector<int>> sets = singleton_sets(h.m());
  add_pairs(sets, families.equal_pairs);
  for (const auto& [b, positions] : families.columns_within) {
    if (!positions.empty()) sets.push_back(positions);
  }
  if (!is_decomposable(h, SubsetFamily(h.m(), std::move(sets)))) {
    return fail("not decomposable over singletons + equal pairs + within-subset columns");
  }
  return {};
}

// Runs the iff over every instance in scope and collects mismatches.
template <typename Rhs, typename Scope>
void run_iff(VerificationReport& report, IffContext& ctx, int m,
             const VerifyMode& mode, Rhs&& rhs, Scope&& in_scope) {
  const int k = ctx.gens.k();
  auto test_one = [&](const QSet& h) {
    if (!in_scope(h)) return;
    ++report.instances;
    const bool lhs = ctx.engine(m).is_invariant(h);
    const RhsOutcome out = rhs(h);
    if (lhs && !out.ok) {
      report.failures.push_back(
          FailureBundle{"invariant H fails conditions: " + out.why + " at " +
                            rows_brief(h),
                        h, "only-if", false});
    } else if (!lhs && out.ok) {
      report.failures.push_back(FailureBundle{
          "conditions hold but H is not invariant at " + rows_brief(h), h,
          "if", true});
    }
  };

  if (mode.exhaustive) {
    const std::uint64_t universe = pow_checked(k, m);
    if (universe > 20) {
      throw CapacityError(
          "exhaustive verification needs k^m <= 20; use sampling", m,
          universe);
    }
    report.exhaustive = true;
    const std::uint64_t subsets = std::uint64_t{1} << universe;
    for (std::uint64_t mask = 1; mask < subsets; ++mask) {
      std::vector<std::uint64_t> rows;
      for (std::uint64_t r = 0; r < universe; ++r) {
        if (mask & (std::uint64_t{1} << r)) rows.push_back(r);
      }
      test_one(QSet(k, m, std::move(rows)));
    }
  } else {
    report.exhaustive = false;
    report.seed = mode.seed;
    for (const auto& h : sample_qsets(k, m, mode.samples, mode.seed)) {
      test_one(h);
    }
  }
  if (!report.failures.empty()) report.status = VerifyStatus::Failed;
}

}  // namespace

// ---------------------------------------------------------------------------
// Decomposition-law verifier

VerificationReport verify_decomposition_theorem(TheoremKind which,
                                                const GeneratorSet& gens,
                                                int m, const VerifyMode& mode) {
  VerificationReport report;
  report.statement = "decomposition-iff-" + to_string(which);
  IffContext ctx(gens);

  auto all_in_scope = [](const QSet&) { return true; };

  switch (which) {
    case TheoremKind::D2: {
      const DeltaReport premise = delta_2(gens);
      if (!premise.holds) {
        report.status = VerifyStatus::PremiseFailed;
        report.note = "idempotent-pair condition fails; refusing to verify";
        return report;
      }
      if (premise.vacuous) {
        report.status = VerifyStatus::PremiseVacuous;
        report.note = "idempotent-pair condition is vacuous on this carrier";
        return report;
      }
      run_iff(report, ctx, m, mode,
              [&](const QSet& h) { return rhs_idempotent_law(ctx, h); },
              all_in_scope);
      return report;
    }
    case TheoremKind::Partial: {
      const DeltaReport premise = delta_partial(gens);
      if (premise.holds && !premise.vacuous) {
        run_iff(report, ctx, m, mode,
                [&](const QSet& h) { return rhs_pairs_law(ctx, h, true); },
                all_in_scope);
        return report;
      }
      if (premise.vacuous) {
        report.status = VerifyStatus::PremiseVacuous;
        report.note = "majority-pattern condition is vacuous on this carrier";
        return report;
      }
      // Variant premise: a majority-pattern member exists and the scope is
      // limited to H with every column of at most 2 values.
      std::vector<std::uint64_t> low;
      const std::uint64_t cells = pow_checked(gens.k(), 3);
      for (std::uint64_t c = 0; c < cells; ++c) {
        if (tuple_rank(decode_tuple(c, 3, gens.k())) <= 2) low.push_back(c);
      }
      const TraceSet traces = slice_on_cells(gens, 3, low);
      bool has_majority_member = false;
      for (const auto& trace : traces.traces) {
        bool all_majority = true;
        for (std::size_t c = 0; c < traces.cells.size() && all_majority; ++c) {
          const Tuple cell = decode_tuple(traces.cells[c], 3, gens.k());
          all_majority = trace[c] == majority_value(cell[0], cell[1], cell[2]);
        }
        if (all_majority) {
          has_majority_member = true;
          break;
        }
      }
      if (!has_majority_member) {
        report.status = VerifyStatus::PremiseFailed;
        report.note =
            "majority-pattern condition fails and no majority-pattern member "
            "exists; refusing to verify";
        return report;
      }
      report.note = "variant premise: scope limited to columns of <= 2 values";
      auto narrow_scope = [](const QSet& h) {
        for (const auto& col : h.columns()) {
          if (col.size() > 2) return false;
        }
        return true;
      };
      run_iff(report, ctx, m, mode,
              [&](const QSet& h) { return rhs_pairs_law(ctx, h, true); },
              narrow_scope);
      return report;
    }
    case TheoremKind::S3: {
      int n = 0;
      for (int candidate = 3; candidate <= gens.k(); ++candidate) {
        const DeltaReport premise = delta_s(gens, candidate);
        if (premise.holds && !premise.vacuous) {
          n = candidate;
          break;
        }
      }
      if (n == 0) {
        if (gens.k() < 3) {
          report.status = VerifyStatus::PremiseVacuous;
          report.note = "slot condition is vacuous below three elements";
        } else {
          report.status = VerifyStatus::PremiseFailed;
          report.note = "slot condition fails at every n in 3..k";
        }
        return report;
      }
      report.note = "slot condition holds at n = " + std::to_string(n);
      run_iff(report, ctx, m, mode,
              [&, n](const QSet& h) { return rhs_slot_law(ctx, h, n, true); },
              all_in_scope);
      return report;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Classification-law verifier

VerificationReport verify_main(const CloneCatalogEntry& entry, int m,
                               const VerifyMode& mode) {
  VerificationReport report;
  report.clone_name = entry.name;
  IffContext ctx(entry.gens);

  const Characteristic chi = characteristic(entry.gens, 3);
  const int found_case = classify_case(chi);
  report.statement = "classification-case-" + std::to_string(found_case);
  if (found_case != entry.expected_case) {
    report.status = VerifyStatus::PremiseFailed;
    report.note = "expected case " + std::to_string(entry.expected_case) +
                  " but classified as " + std::to_string(found_case);
    return report;
  }

  auto all_in_scope = [](const QSet&) { return true; };
  switch (found_case) {
    case 1: {
      const int r_eff = chi.r.finite ? chi.r.value : entry.gens.k() + 1;
      run_iff(report, ctx, m, mode,
              [&, r_eff](const QSet& h) { return rhs_case1(ctx, h, r_eff); },
              all_in_scope);
      break;
    }
    case 2:
    case 6:
      run_iff(report, ctx, m, mode,
              [&](const QSet& h) { return rhs_pairs_law(ctx, h, false); },
              all_in_scope);
      break;
    case 3:
      run_iff(report, ctx, m, mode,
              [&](const QSet& h) { return rhs_case3(ctx, h); }, all_in_scope);
      break;
    case 4:
      run_iff(report, ctx, m, mode,
              [&](const QSet& h) { return rhs_case4(ctx, h); }, all_in_scope);
      break;
    case 5: {
      const PostClassId pi0 = pi_zero(chi.pi);
      if (!pi0.is_named()) {
        report.status = VerifyStatus::PremiseFailed;
        report.note = "restricted class is unnamed; equivariant family undefined";
        return report;
      }
      run_iff(report, ctx, m, mode,
              [&](const QSet& h) { return rhs_case5(ctx, h, pi0.tag()); },
              all_in_scope);
      break;
    }
    default:
      throw std::logic_error("unreachable case tag");
  }
  return report;
}

// ---------------------------------------------------------------------------
// Lemma suites

namespace {

VerificationReport make_report(std::string statement, std::string clone) {
  VerificationReport r;
  r.statement = std::move(statement);
  r.clone_name = std::move(clone);
  return r;
}

void record_failure(VerificationReport& report, std::string detail,
                    std::optional<QSet> h = std::nullopt) {
  report.failures.push_back(FailureBundle{std::move(detail), std::move(h), "",
                                          false});
  report.status = VerifyStatus::Failed;
}

// Invariance transport: reindexing, restriction, extension and pairwise
// intersection of invariant sets stay invariant.
VerificationReport transport_suite(const CloneCatalogEntry& entry,
                                   std::uint64_t seed, int samples) {
  auto report = make_report("invariance-transport", entry.name);
  report.exhaustive = false;
  report.seed = seed;
  const int k = entry.gens.k();
  std::mt19937_64 rng(seed);
  IffContext ctx(entry.gens);

  for (int s = 0; s < samples; ++s) {
    const int m = 2 + static_cast<int>(rng() % 2);
    const auto base = sample_qsets(k, m, 1, rng())[0];
    const QSet h = ctx.engine(m).close(base);
    ++report.instances;

    // Reindex along a random map.
    const int p_size = 1 + static_cast<int>(rng() % 3);
    std::vector<int> map(static_cast<std::size_t>(p_size));
    for (auto& q : map) q = static_cast<int>(rng() % m);
    if (!ctx.engine(p_size).is_invariant(reindex(h, map))) {
      record_failure(report, "reindexed image of an invariant set escaped", h);
      continue;
    }

    // Restrict to a random nonempty position set.
    std::vector<int> positions;
    for (int q = 0; q < m; ++q) {
      if (rng() % 2) positions.push_back(q);
    }
    if (positions.empty()) positions.push_back(static_cast<int>(rng() % m));
    if (!ctx.engine(static_cast<int>(positions.size()))
             .is_invariant(restrict_qset(h, positions))) {
      record_failure(report, "restriction of an invariant set escaped", h);
      continue;
    }

    // Extend by one fresh position.
    std::vector<int> embed(static_cast<std::size_t>(m));
    const int fresh = static_cast<int>(rng() % (m + 1));
    for (int q = 0, at = 0; q < m + 1; ++q) {
      if (q != fresh) embed[at++] = q;
    }
    if (!ctx.engine(m + 1).is_invariant(extend_qset(h, embed, m + 1))) {
      record_failure(report, "cylinder over an invariant set escaped", h);
      continue;
    }

    // Intersect with a second invariant set (skip when empty).
    const QSet h2 = ctx.engine(m).close(sample_qsets(k, m, 1, rng())[0]);
    std::vector<std::uint64_t> meet;
    std::set_intersection(h.rows().begin(), h.rows().end(), h2.rows().begin(),
                          h2.rows().end(), std::back_inserter(meet));
    if (!meet.empty() &&
        !ctx.engine(m).is_invariant(QSet(k, m, std::move(meet)))) {
      record_failure(report, "intersection of invariant sets escaped", h);
    }
  }
  return report;
}

// Cylinder-intersection laws: H is inside the intersection of its cylinders,
// and the intersection restricted to any family member matches H there.
VerificationReport cylinder_suite(int k, std::uint64_t seed, int samples) {
  auto report = make_report("cylinder-intersection", "");
  report.exhaustive = false;
  report.seed = seed;
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    const int m = 2 + static_cast<int>(rng() % 2);
    const QSet h = sample_qsets(k, m, 1, rng())[0];
    std::vector<std::vector<int>> sets;
    const int fam_size = 1 + static_cast<int>(rng() % 4);
    for (int f = 0; f < fam_size; ++f) {
      std::vector<int> r;
      for (int q = 0; q < m; ++q) {
        if (rng() % 2) r.push_back(q);
      }
      if (r.empty()) r.push_back(static_cast<int>(rng() % m));
      sets.push_back(std::move(r));
    }
    const SubsetFamily fam(m, std::move(sets));
    const auto result = decomposition_apply(h, fam);
    ++report.instances;
    bool contained = true;
    for (std::uint64_t row : h.rows()) {
      contained &= result.intersection.contains_row(row);
    }
    if (!contained) {
      record_failure(report, "H escapes the intersection of its cylinders", h);
      continue;
    }
    for (const auto& r : fam.sets()) {
      if (!(restrict_qset(result.intersection, r) == restrict_qset(h, r))) {
        record_failure(report,
                       "intersection and H differ on a family member", h);
        break;
      }
    }
  }
  return report;
}

std::vector<QSet> invariant_sets_m2(const CloneCatalogEntry& entry) {
  return enumerate_inv(entry.gens, 2, 16);
}

// Weak separation implies strong separation, under either richness premise.
VerificationReport separation_suite(const CloneCatalogEntry& entry) {
  auto report = make_report("weak-to-strong-separation", entry.name);
  std::optional<int> guard_n;  // slot condition needs |H(q)| >= n
  if (entry.expected_delta.partial) {
    guard_n = std::nullopt;
  } else if (entry.expected_delta.slot_n) {
    guard_n = entry.expected_delta.slot_n;
  } else {
    report.note = "no applicable premise; skipped";
    return report;
  }
  for (const QSet& h : invariant_sets_m2(entry)) {
    const auto cols = h.columns();
    for (int p = 0; p < h.m(); ++p) {
      for (int q = 0; q < h.m(); ++q) {
        if (p == q) continue;
        if (guard_n &&
            static_cast<int>(cols[q].size()) < *guard_n) {
          continue;
        }
        for (Value a : cols[p]) {
          ++report.instances;
          if (weakly_separates(h, p, q, a) && !strongly_separates(h, p, q, a)) {
            record_failure(report,
                           "weak separation without strong separation at " +
                               rows_brief(h),
                           h);
          }
        }
      }
    }
  }
  return report;
}

// Every pair restriction of an invariant set is a box, a permutation graph,
// or an anchored box.
VerificationReport trichotomy_suite(const CloneCatalogEntry& entry) {
  auto report = make_report("pair-restriction-trichotomy", entry.name);
  if (!entry.expected_delta.partial) {
    report.note = "no majority-pattern premise; skipped";
    return report;
  }
  for (const QSet& h : invariant_sets_m2(entry)) {
    ++report.instances;
    const auto cols = h.columns();
    const bool box = h.size() == cols[0].size() * cols[1].size();
    const auto families = index_families(h, 2);
    const bool perm_graph = !families.perm_linked_pairs.empty();
    bool anchored_box = false;
    for (Value a = 0; a < h.k() && !anchored_box; ++a) {
      for (Value b = 0; b < h.k() && !anchored_box; ++b) {
        std::vector<std::uint64_t> expect;
        for (Value x : cols[0]) {
          for (Value y : cols[1]) {
            if (x == a || y == b) {
              expect.push_back(encode_tuple(Tuple{x, y}, h.k()));
            }
          }
        }
        std::sort(expect.begin(), expect.end());
        anchored_box = expect == h.rows();
      }
    }
    if (!box && !perm_graph && !anchored_box) {
      record_failure(report,
                     "pair restriction matches no expected shape at " +
                         rows_brief(h),
                     h);
    }
  }
  return report;
}

// The slot condition, once it holds for one slot, holds for every slot.
VerificationReport slot_transfer_suite(const CloneCatalogEntry& entry) {
  auto report = make_report("slot-for-every-index", entry.name);
  if (!entry.expected_delta.slot_n) {
    report.note = "no slot premise; skipped";
    return report;
  }
  const int n = *entry.expected_delta.slot_n;
  const int k = entry.gens.k();
  if (k < n) {
    report.note = "vacuous on this carrier";
    return report;
  }
  std::vector<std::uint64_t> cells;
  const std::uint64_t size = pow_checked(k, n);
  for (std::uint64_t c = 0; c < size; ++c) {
    if (tuple_rank(decode_tuple(c, n, k)) < n) cells.push_back(c);
  }
  Tuple rep(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) rep[j] = static_cast<Value>(j);
  const std::uint64_t demand = encode_tuple(rep, k);
  cells.push_back(demand);
  const TraceSet traces = slice_on_cells(entry.gens, n, cells);
  const auto demand_pos = static_cast<std::size_t>(
      std::lower_bound(traces.cells.begin(), traces.cells.end(), demand) -
      traces.cells.begin());

  for (int j = 0; j < n; ++j) {
    std::set<Value> realized;
    for (const auto& trace : traces.traces) {
      bool matches = true;
      for (std::size_t c = 0; c < traces.cells.size() && matches; ++c) {
        if (c == demand_pos) continue;
        const Tuple cell = decode_tuple(traces.cells[c], n, k);
        matches = trace[c] == cell[static_cast<std::size_t>(j)];
      }
      if (matches) realized.insert(trace[demand_pos]);
    }
    ++report.instances;
    if (static_cast<int>(realized.size()) != n) {
      record_failure(report, "slot " + std::to_string(j) +
                                 " misses a demanded value");
    }
  }
  return report;
}

// The two value-transfer relations agree with each other and with the binary
// linkage relation, and the realized type set is one of the five case shapes.
VerificationReport value_transfer_suite(const CloneCatalogEntry& entry) {
  auto report = make_report("value-transfer-linkage", entry.name);
  const auto verdict = min_nonprojection_arity(entry.gens, 3);
  if (!verdict.finite || verdict.value != 2) {
    report.note = "minimal non-projection arity is not 2; skipped";
    return report;
  }
  const auto t0 = triangle_rel(entry.gens, 0);
  const auto t1 = triangle_rel(entry.gens, 1);
  const auto r2 = relation_R(entry.gens, 2).rank2_part();
  ++report.instances;
  if (!(t0 == t1)) {
    record_failure(report, "the two value-transfer relations differ");
    return report;
  }
  if (!(t0 == r2)) {
    record_failure(report, "value transfer differs from the binary linkage");
    return report;
  }

  // Relatedness must be a union of pair-type classes, matching one of the
  // five admissible type sets.
  const int k = entry.gens.k();
  std::set<PairType> related_types, unrelated_types;
  for (const auto& [ca, cb] : t0.pairs) {
    const Tuple a = decode_tuple(ca, 2, k), b = decode_tuple(cb, 2, k);
    related_types.insert(pair_type({a[0], a[1]}, {b[0], b[1]}));
  }
  const std::uint64_t size = pow_checked(k, 2);
  for (std::uint64_t ca = 0; ca < size; ++ca) {
    const Tuple a = decode_tuple(ca, 2, k);
    if (tuple_rank(a) != 2) continue;
    for (std::uint64_t cb = 0; cb < size; ++cb) {
      const Tuple b = decode_tuple(cb, 2, k);
      if (tuple_rank(b) != 2) continue;
      if (!t0.contains(ca, cb)) {
        unrelated_types.insert(pair_type({a[0], a[1]}, {b[0], b[1]}));
      }
    }
  }
  ++report.instances;
  for (PairType t : related_types) {
    if (unrelated_types.count(t)) {
      record_failure(report, "relatedness is not type-uniform");
      return report;
    }
  }
  using PT = PairType;
  const std::vector<std::set<PT>> admissible = {
      {PT::T0, PT::T1, PT::T00, PT::T01, PT::T10, PT::T11, PT::T2},
      {PT::T0, PT::T1, PT::T00, PT::T01, PT::T10, PT::T11},
      {PT::T0},
      {PT::T0, PT::T1},
      {PT::T0, PT::T1, PT::T2},
      {PT::T0, PT::T01, PT::T10},
  };
  // On small carriers some types have no witnesses; compare against each
  // admissible set intersected with the realizable types.
  std::set<PT> realizable = related_types;
  for (PT t : unrelated_types) realizable.insert(t);
  ++report.instances;
  bool matched = false;
  for (const auto& s : admissible) {
    std::set<PT> expect;
    for (PT t : s) {
      if (realizable.count(t)) expect.insert(t);
    }
    matched |= (expect == related_types);
  }
  if (!matched) {
    record_failure(report, "realized type set matches no admissible case");
  }
  return report;
}

// Slices, viewed as row sets over the cells of their own arity, are invariant.
VerificationReport slice_invariance_suite(const CloneCatalogEntry& entry) {
  auto report = make_report("slice-self-invariance", entry.name);
  const int k = entry.gens.k();
  for (int n = 2; n <= 3; ++n) {
    const FunctionSet fn = slice(entry.gens, n);
    std::vector<std::uint64_t> rows;
    for (const auto& f : fn.all()) {
      rows.push_back(encode_tuple(f.table(), k));
    }
    const QSet h(k, static_cast<int>(pow_checked(k, n)), std::move(rows));
    ++report.instances;
    if (!in_inv(entry.gens, h)) {
      record_failure(report,
                     "the arity-" + std::to_string(n) +
                         " slice is not invariant over its own cells");
    }
  }
  return report;
}

// The richness condition matching the classified case holds.
VerificationReport case_richness_suite(const CloneCatalogEntry& entry) {
  auto report = make_report("per-case-richness", entry.name);
  const Characteristic chi = characteristic(entry.gens, 3);
  const int found_case = classify_case(chi);
  if (found_case != entry.expected_case) {
    report.status = VerifyStatus::PremiseFailed;
    report.note = "classified as case " + std::to_string(found_case);
    return report;
  }
  auto expect = [&](bool ok, const std::string& what) {
    ++report.instances;
    if (!ok) record_failure(report, what);
  };
  switch (found_case) {
    case 1:
      if (chi.r.finite) {
        expect(delta_s(entry.gens, chi.r.value).holds,
               "slot condition fails at the minimal non-projection arity");
      } else {
        report.note = "open verdict; no finite arity to test";
      }
      break;
    case 2:
    case 6:
      expect(delta_partial(entry.gens).holds,
             "majority-pattern condition fails");
      break;
    case 3:
      expect(delta_s(entry.gens, 3).holds, "slot condition fails at 3");
      break;
    case 4:
      expect(delta_2(entry.gens).holds, "idempotent-pair condition fails");
      break;
    case 5: {
      expect(delta_s(entry.gens, 3).holds, "slot condition fails at 3");
      // Every 3-element restriction satisfies the idempotent-pair condition.
      for (Value skip = 0; skip < 4; ++skip) {
        std::vector<Value> b;
        for (Value v = 0; v < 4; ++v) {
          if (v != skip) b.push_back(v);
        }
        const auto restricted = restrict_generators(entry.gens, b);
        expect(delta_2(restricted).holds,
               "idempotent-pair condition fails on a 3-element restriction");
      }
      break;
    }
    default: break;
  }
  return report;
}

// Values on low-rank cells commute with every carrier self-map when the
// minimal non-projection arity is 3 (checked on the catalog's k=3 entries).
VerificationReport rigidity_suite(const CloneCatalogEntry& entry) {
  auto report = make_report("relabeling-rigidity", entry.name);
  const auto verdict = min_nonprojection_arity(entry.gens, 3);
  if (!verdict.finite || verdict.value != 3) {
    report.note = "minimal non-projection arity is not 3; skipped";
    return report;
  }
  const int k = entry.gens.k();
  // All carrier self-maps.
  std::vector<std::vector<Value>> maps;
  {
    std::vector<Value> cur(static_cast<std::size_t>(k), 0);
    while (true) {
      maps.push_back(cur);
      int i = 0;
      for (; i < k; ++i) {
        if (++cur[i] < k) break;
        cur[i] = 0;
      }
      if (i == k) break;
    }
  }

  // Arities 1 and 2: full tables; every cell has rank < 3.
  for (int n = 1; n <= 2; ++n) {
    const FunctionSet fn = slice(entry.gens, n);
    for (const auto& f : fn.all()) {
      for (const auto& sigma : maps) {
        const std::uint64_t size = f.table().size();
        Tuple mapped(static_cast<std::size_t>(n));
        for (std::uint64_t c = 0; c < size; ++c) {
          const Tuple cell = decode_tuple(c, n, k);
          for (int j = 0; j < n; ++j) mapped[j] = sigma[cell[j]];
          ++report.instances;
          if (f(mapped) != sigma[f.at_cell(c)]) {
            record_failure(report, "low-rank value moved under a self-map");
            return report;
          }
        }
      }
    }
  }

  // Arity 3 on the rank-<=2 trace set.
  std::vector<std::uint64_t> cells;
  const std::uint64_t size = pow_checked(k, 3);
  for (std::uint64_t c = 0; c < size; ++c) {
    if (tuple_rank(decode_tuple(c, 3, k)) <= 2) cells.push_back(c);
  }
  const TraceSet traces = slice_on_cells(entry.gens, 3, cells);
  auto pos_of = [&](std::uint64_t cell) {
    return static_cast<std::size_t>(
        std::lower_bound(traces.cells.begin(), traces.cells.end(), cell) -
        traces.cells.begin());
  };
  Tuple mapped(3);
  for (const auto& trace : traces.traces) {
    for (const auto& sigma : maps) {
      for (std::size_t c = 0; c < traces.cells.size(); ++c) {
        const Tuple cell = decode_tuple(traces.cells[c], 3, k);
        for (int j = 0; j < 3; ++j) mapped[j] = sigma[cell[j]];
        ++report.instances;
        if (trace[pos_of(encode_tuple(mapped, k))] != sigma[trace[c]]) {
          record_failure(report, "low-rank value moved under a self-map");
          return report;
        }
      }
    }
  }
  return report;
}

// With minimal non-projection arity 4, every member of the slices up to
// arity 4 coincides with a projection on all

// cells of rank < 4, and the restricted family is the projection class.
VerificationReport low_rank_projection_suite(const CloneCatalogEntry& entry) {
  auto report = make_report("projection-on-low-rank", entry.name);
  const auto verdict = min_nonprojection_arity(entry.gens, 4);
  if (!verdict.finite || verdict.value != 4) {
    report.note = "minimal non-projection arity is not 4; skipped";
    return report;
  }
  const int k = entry.gens.k();
  for (int n = 1; n <= 4; ++n) {
    const FunctionSet fn = slice(entry.gens, n);
    for (const auto& f : fn.all()) {
      ++report.instances;
      bool some_projection = false;
      for (int i = 0; i < n && !some_projection; ++i) {
        bool match = true;
        const std::uint64_t size = f.table().size();
        for (std::uint64_t c = 0; c < size && match; ++c) {
          const Tuple cell = decode_tuple(c, n, k);
          if (tuple_rank(cell) >= 4) continue;
          match = f.at_cell(c) == cell[static_cast<std::size_t>(i)];
        }
        some_projection = match;
      }
      if (!some_projection) {
        record_failure(report,
                       "a member of the arity-" + std::to_string(n) +
                           " slice follows no projection on low-rank cells");
      }
    }
  }
  const PostClassId pi0 = pi_zero(pi_family(entry.gens, 3));
  ++report.instances;
  if (!(pi0.is_named() && pi0.tag() == PostTag::O1)) {
    record_failure(report, "restricted family is not the projection class");
  }
  return report;
}

}  // namespace

std::vector<VerificationReport> verify_lemma_suite(
    std::span<const CloneCatalogEntry> catalog, std::uint64_t seed,
    int samples) {
  std::vector<VerificationReport> reports;
  if (catalog.empty()) return reports;
  const int k = catalog.front().gens.k();

  for (const auto& entry : catalog) {
    reports.push_back(transport_suite(entry, seed ^ std::hash<std::string>{}(
                                                       entry.name),
                                      samples));
  }
  reports.push_back(cylinder_suite(k, seed + 1, std::max(samples, 200)));
  for (const auto& entry : catalog) {
    if (k == 3) {
      reports.push_back(separation_suite(entry));
      reports.push_back(trichotomy_suite(entry));
    }
    reports.push_back(slot_transfer_suite(entry));
    reports.push_back(value_transfer_suite(entry));
    if (k <= 3) reports.push_back(slice_invariance_suite(entry));
    reports.push_back(case_richness_suite(entry));
    if (k == 3) reports.push_back(rigidity_suite(entry));
    if (k == 4) reports.push_back(low_rank_projection_suite(entry));
  }
  return reports;
}

// ---------------------------------------------------------------------------
// Characteristic injectivity

VerificationReport chi_injectivity_check(
    std::span<const CloneCatalogEntry> catalog, int bound) {
  VerificationReport report;
  report.statement = "characteristic-injectivity";
  std::vector<Characteristic> chis;
  chis.reserve(catalog.size());
  for (const auto& entry : catalog) {
    chis.push_back(characteristic(entry.gens, bound));
  }
  std::size_t skipped = 0;
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    for (std::size_t j = i + 1; j < catalog.size(); ++j) {
      ++report.instances;
      if (!chi_equal(chis[i], chis[j])) continue;
      // Equal characteristics: acceptable only for identical bounded slices.
      bool same_slices = true;
      for (int n = 1; n <= bound && same_slices; ++n) {
        same_slices = slice(catalog[i].gens, n) == slice(catalog[j].gens, n);
      }
      if (same_slices) {
        ++skipped;
      } else {
        report.failures.push_back(FailureBundle{
            "distinct clones share a bounded characteristic: " +
                catalog[i].name + " vs " + catalog[j].name,
            std::nullopt, "", false});
        report.status = VerifyStatus::Failed;
      }
    }
  }
  if (skipped) {
    report.note = std::to_string(skipped) +
                  " identical-slice pair(s) skipped";
  }
  return report;
}

}  // namespace clonelab
