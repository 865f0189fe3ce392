// Value-table representation of finite functions over a carrier {0..k-1}:
// tuple codec, projections, composition, conjugation, variable identification,
// and the basic shape predicates (projection / conservative / idempotent /
// majority-pattern / minority-pattern).
#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace clonelab {

using Value = std::uint8_t;
using Tuple = std::vector<Value>;

// Thrown when a closure or enumeration would exceed its size cap.
// Carries the arity and the set size reached so failures are loud and precise.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& what, int arity, std::uint64_t size_reached)
      : std::runtime_error(what), arity_(arity), size_reached_(size_reached) {}
  int arity() const noexcept { return arity_; }
  std::uint64_t size_reached() const noexcept { return size_reached_; }

 private:
  int arity_;
  std::uint64_t size_reached_;
};

void check_carrier(int k);  // k >= 2

// k^n, throwing CapacityError on uint64 overflow.
std::uint64_t pow_checked(int k, int n);

// Big-endian positional codec: index = sum a_i * k^(n-1-i), position 0 most
// significant. This fixes the bit-exact table layout and the file format.
std::uint64_t encode_tuple(std::span<const Value> t, int k);
Tuple decode_tuple(std::uint64_t index, int n, int k);

// |ran a|, the number of distinct entries.
int tuple_rank(std::span<const Value> t);

class Permutation {
 public:
  Permutation(int k, std::vector<Value> image);
  static Permutation identity(int k);
  static std::vector<Permutation> all(int k);
  // Transposition (a b), identity elsewhere.
  static Permutation transposition(int k, Value a, Value b);

  int k() const noexcept { return k_; }
  Value operator()(Value v) const { return image_[v]; }
  const std::vector<Value>& image() const noexcept { return image_; }
  Permutation inverse() const;
  Permutation then(const Permutation& next) const;  // apply *this, then next

  bool operator==(const Permutation&) const = default;

 private:
  int k_;
  std::vector<Value> image_;
};

// A total function {0..k-1}^n -> {0..k-1} stored as a value table of length
// k^n under the codec above. Arity 0 is excluded from the data model.
class FiniteFunction {
 public:
  FiniteFunction(int k, int arity, std::vector<Value> table);
  static FiniteFunction projection(int k, int n, int i);

  int k() const noexcept { return k_; }
  int arity() const noexcept { return arity_; }
  const std::vector<Value>& table() const noexcept { return table_; }

  Value operator()(std::span<const Value> args) const;
  Value at_cell(std::uint64_t cell) const { return table_[cell]; }

  bool operator==(const FiniteFunction&) const = default;
  // Canonical order: (arity, table); carriers are equal within any one set.
  bool operator<(const FiniteFunction& other) const;

 private:
  int k_;
  int arity_;
  std::vector<Value> table_;
};

// f(g_0,...,g_{n-1}) evaluated cellwise; all gs share carrier and arity.
FiniteFunction compose(const FiniteFunction& f,
                       std::span<const FiniteFunction> gs);

// f_sigma(a) = sigma^-1(f(sigma(a))), sigma applied componentwise.
FiniteFunction conjugate(const FiniteFunction& f, const Permutation& sigma);

// g(c) = f(c o xi): result arity m, xi maps argument slots of f to slots of g.
FiniteFunction identify_vars(const FiniteFunction& f, std::span<const int> xi,
                             int m);

struct FunctionShape {
  bool is_projection = false;
  int projection_index = -1;  // valid when is_projection
  bool is_conservative = false;
  bool is_idempotent = false;
  bool is_d_function = false;  // ternary majority pattern d(xxy)=d(xyx)=d(yxx)=x
  bool is_l_function = false;  // ternary minority pattern l(xyy)=l(yxy)=l(yyx)=x
};

// One table scan serves all flags.
FunctionShape classify_function(const FiniteFunction& f);

// Majority / minority value of a rank-<=2 triple (the forced cell values of
// d- and l-functions). Throws on rank-3 input.
Value majority_value(Value x, Value y, Value z);
Value minority_value(Value x, Value y, Value z);

}  // namespace clonelab
