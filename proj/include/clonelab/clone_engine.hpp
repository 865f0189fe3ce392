// Per-arity clone slices generated from a finite generator set, computed as a
// worklist fixpoint of generator application on m-ary members. Every subterm
// of an m-ary term over the generators is itself m-ary, so the m-ary slice is
// exactly this fixpoint; with a cell list given, members are represented by
// their values on those cells only (generator application acts cellwise, so
// the projected closure is exact).
#pragma once

#include <optional>
#include <vector>

#include "clonelab/core.hpp"

namespace clonelab {

inline constexpr std::uint64_t kDefaultSliceCap = 2'000'000;

class GeneratorSet {
 public:
  explicit GeneratorSet(int k) : k_(k) { check_carrier(k); }
  GeneratorSet(int k, std::vector<FiniteFunction> fns);

  int k() const noexcept { return k_; }
  const std::vector<FiniteFunction>& functions() const noexcept { return fns_; }
  bool empty() const noexcept { return fns_.empty(); }
  std::size_t size() const noexcept { return fns_.size(); }
  int max_arity() const;

  bool all_conservative() const;
  // True when {conjugate(g, sigma)} = gens for every permutation sigma.
  bool conjugation_closed() const;

  bool operator==(const GeneratorSet&) const = default;

 private:
  int k_;
  std::vector<FiniteFunction> fns_;  // deduplicated, ordered by (arity, table)
};

// Arity-graded, canonically ordered set of finite functions.
class FunctionSet {
 public:
  explicit FunctionSet(int k) : k_(k) { check_carrier(k); }
  FunctionSet(int k, std::vector<FiniteFunction> fns,
              std::optional<int> closed_up_to);

  int k() const noexcept { return k_; }
  std::optional<int> closed_up_to() const noexcept { return closed_up_to_; }
  const std::vector<FiniteFunction>& at_arity(int n) const;
  std::vector<int> arities() const;
  std::vector<FiniteFunction> all() const;
  std::size_t total_size() const;
  bool operator==(const FunctionSet&) const = default;

 private:
  int k_;
  std::optional<int> closed_up_to_;
  std::vector<std::vector<FiniteFunction>> by_arity_;  // index = arity
};

// Members of an m-ary slice recorded only by their values on selected cells.
struct TraceSet {
  int k = 0;
  int arity = 0;
  std::vector<std::uint64_t> cells;  // encoded m-tuples, strictly increasing
  std::vector<Tuple> traces;         // sorted, deduplicated

  bool contains(const Tuple& trace) const;
};

// Exact m-ary slice of the clone generated by gens.
FunctionSet slice(const GeneratorSet& gens, int m,
                  std::uint64_t cap = kDefaultSliceCap);

// Slice projected to the given cells (deduplicated on that projection).
TraceSet slice_on_cells(const GeneratorSet& gens, int m,
                        std::vector<std::uint64_t> cells,
                        std::uint64_t cap = kDefaultSliceCap);

// Membership under canonical table equality; requires closure at arity(f).
bool contains(const FunctionSet& set, const FiniteFunction& f);

// gens together with every conjugate g_sigma; the generated clone is symmetric.
GeneratorSet symmetric_closure(const GeneratorSet& gens);

// Tables re-indexed along the order-preserving bijection B -> 0..|B|-1.
// Every member must map B^n into B (always true for conservative members).
FunctionSet restrict_carrier(const FunctionSet& set,
                             std::span<const Value> b);
GeneratorSet restrict_generators(const GeneratorSet& gens,
                                 std::span<const Value> b);
FiniteFunction restrict_to_subset(const FiniteFunction& f,
                                  std::span<const Value> b);

// Minimal arity of a non-projection member, searched up to `bound`.
struct ArityVerdict {
  bool finite = false;
  int value = 0;  // Finite(r) when finite, otherwise AtLeast(value)

  static ArityVerdict Finite(int r) { return {true, r}; }
  static ArityVerdict AtLeast(int b) { return {false, b}; }
  bool operator==(const ArityVerdict&) const = default;
};

ArityVerdict min_nonprojection_arity(const GeneratorSet& gens, int bound,
                                     std::uint64_t cap = kDefaultSliceCap);

// All m-ary functions with f(a) in ran a for every cell.
FunctionSet conservative_slice(int k, int m,
                               std::uint64_t cap = kDefaultSliceCap);

// Does f |-> sigma o f o sigma^-1 (componentwise) map F_[n] onto G_[n] for all
// n <= bound? sigma is a bijection between the carriers, given by its image.
bool is_natural_isomorphism(std::span<const Value> sigma,
                            const FunctionSet& f_set, const FunctionSet& g_set,
                            int bound);

}  // namespace clonelab
