// Identification of conservative Boolean clones among the six duality-closed
// classes of functions preserving 0 and 1, the duality map, and the family of
// per-pair restrictions of a conservative clone to 2-element carrier subsets.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clonelab/clone_engine.hpp"
#include "clonelab/core.hpp"

namespace clonelab {

enum class PostTag { O1, D1, D2, L4, A4, C4, Other };

std::string to_string(PostTag tag);
std::optional<PostTag> post_tag_from_string(const std::string& name);

// Canonical listing of a Boolean clone's slices at arities 1..3.
struct Fingerprint {
  std::vector<std::pair<int, Tuple>> functions;  // (arity, table), sorted

  auto operator<=>(const Fingerprint&) const = default;
};

class PostClassId {
 public:
  static PostClassId named(PostTag tag);
  static PostClassId other(Fingerprint fp);

  PostTag tag() const noexcept { return tag_; }
  bool is_named() const noexcept { return tag_ != PostTag::Other; }
  const Fingerprint& fingerprint() const;

  bool operator==(const PostClassId&) const = default;

 private:
  PostTag tag_ = PostTag::Other;
  std::optional<Fingerprint> fingerprint_;
};

// Predicates deciding the semantic profiles, carrier 2 only.
bool preserves_zero_one(const FiniteFunction& f);
bool is_self_dual(const FiniteFunction& f);
bool is_monotone(const FiniteFunction& f);
bool is_linear(const FiniteFunction& f);

// The n-ary members of a named class, by predicate profile. Used with n <= 4.
std::vector<FiniteFunction> semantic_members(PostTag tag, int n);

// Slices at arities 1..max_arity (max_arity <= 3).
FunctionSet semantic_slice(PostTag tag, int max_arity);

// f*(x) = not f(not x0, ..., not x_{n-1}); an involution whose fixed points
// are the self-dual functions.
FiniteFunction dualize(const FiniteFunction& f);

// The unique named tag whose slices match f2 at arities 1..3, else Other with
// the canonical fingerprint. Requires closure up to 3.
PostClassId identify_post_class(const FunctionSet& f2, int bound = 3);

Fingerprint fingerprint_of(const FunctionSet& f2);

struct PiEntry {
  Value lo = 0, hi = 0;          // the 2-element carrier subset {lo < hi}
  PostClassId cls;
  bool swapped_labeling = false;  // which bijection B -> {0,1} was kept
};

struct PiFamily {
  int k = 0;
  int bound = 0;
  std::vector<PiEntry> entries;  // one per 2-subset, ordered by (lo, hi)

  const PiEntry& at(Value lo, Value hi) const;
  bool operator==(const PiFamily&) const = default;
};

// Restrict the generated clone to each 2-element subset, transport along both
// labelings, identify, and keep the labeling with the canonically smaller
// transported fingerprint. Generators must be conservative.
PiFamily pi_family(const GeneratorSet& gens, int bound = 3);

// The common class of a constant family.
class PiMismatchError : public std::runtime_error {
 public:
  PiMismatchError(const std::string& what, std::pair<Value, Value> first,
                  std::pair<Value, Value> second)
      : std::runtime_error(what), first_(first), second_(second) {}
  std::pair<Value, Value> first() const { return first_; }
  std::pair<Value, Value> second() const { return second_; }

 private:
  std::pair<Value, Value> first_, second_;
};

PostClassId pi_zero(const PiFamily& fam);

}  // namespace clonelab
