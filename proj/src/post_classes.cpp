#include "clonelab/post_classes.hpp"

#include <algorithm>
#include <array>
#include <bit>

namespace clonelab {

std::string to_string(PostTag tag) {
  switch (tag) {
    case PostTag::O1: return "O1";
    case PostTag::D1: return "D1";
    case PostTag::D2: return "D2";
    case PostTag::L4: return "L4";
    case PostTag::A4: return "A4";
    case PostTag::C4: return "C4";
    case PostTag::Other: return "Other";
  }
  return "Other";
}

std::optional<PostTag> post_tag_from_string(const std::string& name) {
  static const std::array<PostTag, 7> tags = {
      PostTag::O1, PostTag::D1, PostTag::D2, PostTag::L4,
      PostTag::A4, PostTag::C4, PostTag::Other};
  for (PostTag t : tags) {
    if (to_string(t) == name) return t;
  }
  return std::nullopt;
}

PostClassId PostClassId::named(PostTag tag) {
  if (tag == PostTag::Other) {
    throw std::invalid_argument("named class id needs a non-Other tag");
  }
  PostClassId id;
  id.tag_ = tag;
  return id;
}

PostClassId PostClassId::other(Fingerprint fp) {
  PostClassId id;
  id.tag_ = PostTag::Other;
  id.fingerprint_ = std::move(fp);
  return id;
}

const Fingerprint& PostClassId::fingerprint() const {
  if (!fingerprint_) {
    throw std::logic_error("only Other class ids carry a fingerprint");
  }
  return *fingerprint_;
}

namespace {

void require_boolean(const FiniteFunction& f) {
  if (f.k() != 2) throw std::invalid_argument("carrier must be 2");
}

}  // namespace

bool preserves_zero_one(const FiniteFunction& f) {
  require_boolean(f);
  return f.table().front() == 0 && f.table().back() == 1;
}

bool is_self_dual(const FiniteFunction& f) {
  require_boolean(f);
  const auto& t = f.table();
  const std::size_t size = t.size();
  for (std::size_t c = 0; c < size; ++c) {
    // Complementing every argument reflects the cell index.
    if (t[c] == t[size - 1 - c]) return false;
  }
  return true;
}

bool is_monotone(const FiniteFunction& f) {
  require_boolean(f);
  const auto& t = f.table();
  const int n = f.arity();
  for (std::size_t c = 0; c < t.size(); ++c) {
    for (int i = 0; i < n; ++i) {
      const std::size_t bit = std::size_t{1} << (n - 1 - i);
      if (!(c & bit) && t[c] > t[c | bit]) return false;
    }
  }
  return true;
}

bool is_linear(const FiniteFunction& f) {
  require_boolean(f);
  // Moebius transform: linear iff no monomial of degree >= 2 survives.
  std::vector<Value> anf(f.table().begin(), f.table().end());
  const int n = f.arity();
  for (int i = 0; i < n; ++i) {
    const std::size_t bit = std::size_t{1} << (n - 1 - i);
    for (std::size_t c = 0; c < anf.size(); ++c) {
      if (c & bit) anf[c] = anf[c] ^ anf[c & ~bit];
    }
  }
  for (std::size_t c = 0; c < anf.size(); ++c) {
    if (anf[c] && std::popcount(c) >= 2) return false;
  }
  return true;
}

std::vector<FiniteFunction> semantic_members(PostTag tag, int n) {
  if (tag == PostTag::Other) {
    throw std::invalid_argument("semantic members exist only for named classes");
  }
  if (n < 1 || n > 4) {
    throw std::invalid_argument("semantic member enumeration supports n <= 4");
  }
  std::vector<FiniteFunction> out;
  const std::uint64_t cells = pow_checked(2, n);
  std::vector<Value> table(cells, 0);
  while (true) {
    FiniteFunction f(2, n, table);
    bool keep = false;
    switch (tag) {
      case PostTag::O1:
        keep = classify_function(f).is_projection;
        break;
      case PostTag::L4:
        keep = is_linear(f) && is_self_dual(f) && preserves_zero_one(f);
        break;
      case PostTag::D2:
        keep = is_monotone(f) && is_self_dual(f) && preserves_zero_one(f);
        break;
      case PostTag::D1:
        keep = is_self_dual(f) && preserves_zero_one(f);
        break;
      case PostTag::A4:
        keep = is_monotone(f) && preserves_zero_one(f);
        break;
      case PostTag::C4:
        keep = preserves_zero_one(f);
        break;
      case PostTag::Other:
        break;
    }
    if (keep) out.push_back(std::move(f));
    std::uint64_t c = 0;
    for (; c < cells; ++c) {
      if (++table[c] < 2) break;
      table[c] = 0;
    }
    if (c == cells) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

FunctionSet semantic_slice(PostTag tag, int max_arity) {
  if (max_arity < 1 || max_arity > 3) {
    throw std::invalid_argument("semantic slices are provided for arity <= 3");
  }
  std::vector<FiniteFunction> members;
  for (int n = 1; n <= max_arity; ++n) {
    auto part = semantic_members(tag, n);
    members.insert(members.end(), part.begin(), part.end());
  }
  return FunctionSet(2, std::move(members), max_arity);
}

FiniteFunction dualize(const FiniteFunction& f) {
  require_boolean(f);
  const auto& t = f.table();
  std::vector<Value> table(t.size());
  for (std::size_t c = 0; c < t.size(); ++c) {
    table[c] = static_cast<Value>(1 - t[t.size() - 1 - c]);
  }
  return FiniteFunction(2, f.arity(), std::move(table));
}

Fingerprint fingerprint_of(const FunctionSet& f2) {
  if (f2.k() != 2) throw std::invalid_argument("carrier must be 2");
  Fingerprint fp;
  for (int n = 1; n <= 3; ++n) {
    for (const auto& f : f2.at_arity(n)) {
      fp.functions.emplace_back(n, f.table());
    }
  }
  std::sort(fp.functions.begin(), fp.functions.end());
  return fp;
}

PostClassId identify_post_class(const FunctionSet& f2, int bound) {
  if (bound < 3) {
    throw std::invalid_argument(
        "identification needs arity 3; the six classes coincide below it");
  }
  if (!f2.closed_up_to() || *f2.closed_up_to() < 3) {
    throw std::invalid_argument("set must be closed up to arity 3");
  }
  for (const auto& f : f2.all()) {
    if (!classify_function(f).is_conservative) {
      throw std::invalid_argument(
          "member fails to preserve 0 and 1; not a conservative Boolean clone");
    }
  }
  static const std::array<PostTag, 6> named = {PostTag::O1, PostTag::L4,
                                               PostTag::D2, PostTag::D1,
                                               PostTag::A4, PostTag::C4};
  for (PostTag tag : named) {
    bool match = true;
    for (int n = 1; n <= 3 && match; ++n) {
      const auto expected = semantic_members(tag, n);
      const auto& got = f2.at_arity(n);
      match = std::equal(expected.begin(), expected.end(), got.begin(),
                         got.end());
      match = match && expected.size() == got.size();
    }
    if (match) return PostClassId::named(tag);
  }
  return PostClassId::other(fingerprint_of(f2));
}

const PiEntry& PiFamily::at(Value lo, Value hi) const {
  for (const auto& e : entries) {
    if (e.lo == lo && e.hi == hi) return e;
  }
  throw std::invalid_argument("no entry for that carrier pair");
}

PiFamily pi_family(const GeneratorSet& gens, int bound) {
  if (!gens.all_conservative()) {
    throw std::invalid_argument("generators must be conservative");
  }
  if (bound < 3) throw std::invalid_argument("bound must be at least 3");
  PiFamily fam;
  fam.k = gens.k();
  fam.bound = bound;
  for (Value lo = 0; lo < gens.k(); ++lo) {
    for (Value hi = static_cast<Value>(lo + 1); hi < gens.k(); ++hi) {
      // The clone restricted to {lo, hi} is generated by the restricted
      // generators: every term restricts termwise on a conservative clone.
      const std::array<Value, 2> b = {lo, hi};
      const GeneratorSet restricted = restrict_generators(gens, b);
      std::vector<FiniteFunction> members;
      for (int n = 1; n <= bound; ++n) {
        auto part = slice(restricted, n).all();
        members.insert(members.end(), part.begin(), part.end());
      }
      FunctionSet identity_labeled(2, members, bound);
      // The swapped labeling transports along the carrier flip.
      std::vector<FiniteFunction> flipped;
      flipped.reserve(members.size());
      for (const auto& f : members) flipped.push_back(dualize(f));
      FunctionSet swapped_labeled(2, std::move(flipped), bound);

      const auto fp_id = fingerprint_of(identity_labeled);
      const auto fp_sw = fingerprint_of(swapped_labeled);
      const bool swap = fp_sw < fp_id;
      const auto& chosen = swap ? swapped_labeled : identity_labeled;
      fam.entries.push_back(
          PiEntry{lo, hi, identify_post_class(chosen, 3), swap});
    }
  }
  return fam;
}

PostClassId pi_zero(const PiFamily& fam) {
  if (fam.entries.empty()) throw std::invalid_argument("empty family");
  for (std::size_t i = 1; i < fam.entries.size(); ++i) {
    if (!(fam.entries[i].cls == fam.entries[0].cls)) {
      throw PiMismatchError(
          "restricted classes differ between carrier pairs {" +
              std::to_string(int(fam.entries[0].lo)) + "," +
              std::to_string(int(fam.entries[0].hi)) + "} and {" +
              std::to_string(int(fam.entries[i].lo)) + "," +
              std::to_string(int(fam.entries[i].hi)) + "}",
          {fam.entries[0].lo, fam.entries[0].hi},
          {fam.entries[i].lo, fam.entries[i].hi});
    }
  }
  return fam.entries[0].cls;
}

}  // namespace clonelab
