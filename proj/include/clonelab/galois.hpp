// The functional Galois connection between clones and sets of rows H within
// A^Q: preservation, invariance membership, invariant closure, bounded
// enumeration of invariant sets, and the reindex/restrict/extend transforms.
//
// Invariance under the whole (infinite) clone is decided by a generator
// fixpoint: a clone member is a term over the generators and term application
// to rows is a sequence of cellwise generator applications, so H is closed
// under the clone iff it is closed under the generators.
#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "clonelab/clone_engine.hpp"
#include "clonelab/core.hpp"

namespace clonelab {

// A nonempty subset of A^Q for Q = {0..m-1}, stored as encoded rows.
class QSet {
 public:
  QSet(int k, int m, std::vector<std::uint64_t> rows);
  static QSet from_tuples(int k, int m, const std::vector<Tuple>& rows);
  static QSet full_cube(int k, int m);

  int k() const noexcept { return k_; }
  int m() const noexcept { return m_; }
  const std::vector<std::uint64_t>& rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return rows_.size(); }
  bool contains_row(std::uint64_t row) const;
  Tuple row_tuple(std::size_t i) const;
  std::vector<Tuple> row_tuples() const;

  // Column H(q) per position, each sorted.
  std::vector<std::vector<Value>> columns() const;

  bool operator==(const QSet&) const = default;
  bool operator<(const QSet& other) const;

 private:
  int k_;
  int m_;
  std::vector<std::uint64_t> rows_;  // sorted, deduplicated
};

bool preserves(const FiniteFunction& f, const QSet& h);
bool in_inv(const GeneratorSet& gens, const QSet& h);
QSet invariant_closure(const GeneratorSet& gens, const QSet& h0);

// All nonempty invariant H within A^m, by closing every nonempty subset and
// deduplicating the fixpoints. Guarded by k^m <= cell_cap.
std::vector<QSet> enumerate_inv(const GeneratorSet& gens, int m,
                                std::uint64_t cell_cap = 16);

// All functions of arity <= max_arity preserving every H in hs.
FunctionSet pol_bounded(std::span<const QSet> hs, int k, int max_arity,
                        std::uint64_t cap = kDefaultSliceCap);

// Rows {h o f} for f: P -> Q given by position_map (length = |P|).
QSet reindex(const QSet& h, std::span<const int> position_map);

// Rows {h|_P} for P a strictly increasing subset of 0..m-1.
QSet restrict_qset(const QSet& h, std::span<const int> positions);

// The cylinder: all rows over 0..q_size-1 whose restriction to `positions`
// is a row of hp.
QSet extend_qset(const QSet& hp, std::span<const int> positions, int q_size);

// Reusable fixpoint machinery for one (generators, m) pair. When the row
// universe k^m fits in 64 bits of mask, closures run over bitmasks, and
// per-tuple result masks can be precomputed once and shared across many H.
class RowClosureEngine {
 public:
  RowClosureEngine(GeneratorSet gens, int m, bool precompute = false);
  ~RowClosureEngine();
  RowClosureEngine(RowClosureEngine&&) noexcept;
  RowClosureEngine& operator=(RowClosureEngine&&) noexcept;

  int m() const noexcept;
  std::uint64_t universe() const noexcept;  // k^m
  bool mask_mode() const noexcept;          // universe <= 64

  QSet close(const QSet& h0) const;
  bool is_invariant(const QSet& h) const;

  // Mask-level interface, valid only in mask mode.
  std::uint64_t close_mask(std::uint64_t rows) const;
  bool is_invariant_mask(std::uint64_t rows) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace clonelab
