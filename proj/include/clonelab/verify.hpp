// Executable cross-checks of the library's structural laws against
// independent oracles: the decomposition laws for the three richness
// conditions, the six-case classification law, the supporting invariance and
// separation properties, and injectivity of the bounded characteristic over
// a clone catalog. Every check is exact; sampled modes are seeded.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clonelab/catalog.hpp"
#include "clonelab/characteristic.hpp"
#include "clonelab/decomposition.hpp"
#include "clonelab/galois.hpp"

namespace clonelab {

enum class VerifyStatus { Passed, Failed, PremiseFailed, PremiseVacuous };

std::string to_string(VerifyStatus status);

struct FailureBundle {
  std::string detail;
  std::optional<QSet> h;  // the offending instance, replayable
  // "only-if": invariant H violating the structural conditions.
  // "if": conditions met but H not invariant; that direction is forced by
  // the invariance transport laws, so such a failure flags an internal bug.
  std::string side;
  bool internal_bug_suspected = false;
};

struct VerificationReport {
  std::string statement;
  std::string clone_name;
  VerifyStatus status = VerifyStatus::Passed;
  std::uint64_t instances = 0;
  bool exhaustive = true;
  std::uint64_t seed = 0;
  std::vector<FailureBundle> failures;
  std::string note;

  bool passed() const {
    return status == VerifyStatus::Passed && failures.empty();
  }
};

struct VerifyMode {
  bool exhaustive = true;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  static VerifyMode Exhaustive() { return {true, 0, 0}; }
  static VerifyMode Sampled(std::uint64_t samples, std::uint64_t seed) {
    return {false, samples, seed};
  }
};

// Definitional invariance check, independent of the fixpoint path: naive
// unprojected slices at arities <= min(|H|, 3), then direct preservation.
bool oracle_in_inv(const GeneratorSet& gens, const QSet& h,
                   std::uint64_t cap = kDefaultSliceCap);

enum class TheoremKind { Partial, S3, D2 };

std::string to_string(TheoremKind which);

// The decomposition law matching the given richness condition, tested as an
// iff for every nonempty H within A^m in scope. The premise is verified
// first and a vacuous premise refuses rather than reporting vacuous success.
VerificationReport verify_decomposition_theorem(TheoremKind which,
                                                const GeneratorSet& gens,
                                                int m, const VerifyMode& mode);

// The case-specific iff of the classification law for this catalog entry.
VerificationReport verify_main(const CloneCatalogEntry& entry, int m,
                               const VerifyMode& mode);

// The bundled property suites (invariance transport, cylinder intersection,
// separation, rigidity, slot transfer, slice invariance, per-case richness).
std::vector<VerificationReport> verify_lemma_suite(
    std::span<const CloneCatalogEntry> catalog, std::uint64_t seed,
    int samples);

// Pairwise distinct bounded characteristics across the catalog; entries with
// equal characteristics are compared slice-wise and skipped when identical.
VerificationReport chi_injectivity_check(
    std::span<const CloneCatalogEntry> catalog, int bound);

// Seeded, size-stratified row-set sampler: sizes 1, 2, ceil(U/2), U-1 are
// guaranteed in every batch (U = k^m), the rest drawn uniformly.
std::vector<QSet> sample_qsets(int k, int m, std::uint64_t samples,
                               std::uint64_t seed);

}  // namespace clonelab
