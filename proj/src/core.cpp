#include "clonelab/core.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>

namespace clonelab {

void check_carrier(int k) {
  if (k < 2) {
    throw std::invalid_argument("carrier size must be at least 2, got " +
                                std::to_string(k));
  }
}

std::uint64_t pow_checked(int k, int n) {
  std::uint64_t result = 1;
  for (int i = 0; i < n; ++i) {
    if (result > std::numeric_limits<std::uint64_t>::max() /
                     static_cast<std::uint64_t>(k)) {
      throw CapacityError("table size k^n overflows 64 bits", n, 0);
    }
    result *= static_cast<std::uint64_t>(k);
  }
  return result;
}

std::uint64_t encode_tuple(std::span<const Value> t, int k) {
  std::uint64_t index = 0;
  for (Value v : t) {
    if (v >= k) {
      throw std::invalid_argument("tuple entry " + std::to_string(int(v)) +
                                  " out of carrier range " + std::to_string(k));
    }
    index = index * static_cast<std::uint64_t>(k) + v;
  }
  return index;
}

Tuple decode_tuple(std::uint64_t index, int n, int k) {
  if (index >= pow_checked(k, n)) {
    throw std::invalid_argument("tuple index out of range");
  }
  Tuple t(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    t[static_cast<std::size_t>(i)] = static_cast<Value>(index % k);
    index /= static_cast<std::uint64_t>(k);
  }
  return t;
}

int tuple_rank(std::span<const Value> t) {
  std::uint64_t seen[4] = {0, 0, 0, 0};
  for (Value v : t) seen[v >> 6] |= std::uint64_t{1} << (v & 63);
  return std::popcount(seen[0]) + std::popcount(seen[1]) +
         std::popcount(seen[2]) + std::popcount(seen[3]);
}

Permutation::Permutation(int k, std::vector<Value> image)
    : k_(k), image_(std::move(image)) {
  check_carrier(k);
  if (image_.size() != static_cast<std::size_t>(k)) {
    throw std::invalid_argument("permutation image length must equal k");
  }
  std::vector<bool> seen(static_cast<std::size_t>(k), false);
  for (Value v : image_) {
    if (v >= k || seen[v]) {
      throw std::invalid_argument("permutation image is not a bijection");
    }
    seen[v] = true;
  }
}

Permutation Permutation::identity(int k) {
  std::vector<Value> image(static_cast<std::size_t>(k));
  std::iota(image.begin(), image.end(), Value{0});
  return Permutation(k, std::move(image));
}

std::vector<Permutation> Permutation::all(int k) {
  std::vector<Value> image(static_cast<std::size_t>(k));
  std::iota(image.begin(), image.end(), Value{0});
  std::vector<Permutation> out;
  do {
    out.emplace_back(k, image);
  } while (std::next_permutation(image.begin(), image.end()));
  return out;
}

Permutation Permutation::transposition(int k, Value a, Value b) {
  auto p = identity(k);
  std::swap(p.image_[a], p.image_[b]);
  return p;
}

Permutation Permutation::inverse() const {
  std::vector<Value> inv(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) {
    inv[image_[i]] = static_cast<Value>(i);
  }
  return Permutation(k_, std::move(inv));
}

Permutation Permutation::then(const Permutation& next) const {
  if (next.k_ != k_) throw std::invalid_argument("carrier mismatch");
  std::vector<Value> image(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) {
    image[i] = next.image_[image_[i]];
  }
  return Permutation(k_, std::move(image));
}

FiniteFunction::FiniteFunction(int k, int arity, std::vector<Value> table)
    : k_(k), arity_(arity), table_(std::move(table)) {
  check_carrier(k);
  if (arity < 1) {
    throw std::invalid_argument("arity must be at least 1");
  }
  if (table_.size() != pow_checked(k, arity)) {
    throw std::invalid_argument("table length must be exactly k^n");
  }
  for (Value v : table_) {
    if (v >= k) throw std::invalid_argument("table value out of carrier range");
  }
}

FiniteFunction FiniteFunction::projection(int k, int n, int i) {
  check_carrier(k);
  if (i < 0 || i >= n) {
    throw std::invalid_argument("projection index must satisfy i < n");
  }
  const std::uint64_t size = pow_checked(k, n);
  std::vector<Value> table(size);
  // Under the big-endian codec, coordinate i of cell c cycles with period
  // k^(n-1-i).
  const std::uint64_t period = pow_checked(k, n - 1 - i);
  for (std::uint64_t c = 0; c < size; ++c) {
    table[c] = static_cast<Value>((c / period) % static_cast<std::uint64_t>(k));
  }
  return FiniteFunction(k, n, std::move(table));
}

Value FiniteFunction::operator()(std::span<const Value> args) const {
  if (args.size() != static_cast<std::size_t>(arity_)) {
    throw std::invalid_argument("argument count does not match arity");
  }
  return table_[encode_tuple(args, k_)];
}

bool FiniteFunction::operator<(const FiniteFunction& other) const {
  if (k_ != other.k_) return k_ < other.k_;
  if (arity_ != other.arity_) return arity_ < other.arity_;
  return table_ < other.table_;
}

FiniteFunction compose(const FiniteFunction& f,
                       std::span<const FiniteFunction> gs) {
  if (gs.size() != static_cast<std::size_t>(f.arity())) {
    throw std::invalid_argument("composition needs arity(f) inner functions");
  }
  const int m = gs.empty() ? 0 : gs.front().arity();
  for (const auto& g : gs) {
    if (g.k() != f.k() || g.arity() != m) {
      throw std::invalid_argument("inner functions must share carrier and arity");
    }
  }
  const std::uint64_t size = pow_checked(f.k(), m);
  std::vector<Value> table(size);
  Tuple vals(gs.size());
  for (std::uint64_t c = 0; c < size; ++c) {
    for (std::size_t i = 0; i < gs.size(); ++i) vals[i] = gs[i].at_cell(c);
    table[c] = f.at_cell(encode_tuple(vals, f.k()));
  }
  return FiniteFunction(f.k(), m, std::move(table));
}

FiniteFunction conjugate(const FiniteFunction& f, const Permutation& sigma) {
  if (sigma.k() != f.k()) throw std::invalid_argument("carrier mismatch");
  const auto inv = sigma.inverse();
  const std::uint64_t size = f.table().size();
  std::vector<Value> table(size);
  const int n = f.arity();
  Tuple cell(static_cast<std::size_t>(n));
  Tuple mapped(static_cast<std::size_t>(n));
  for (std::uint64_t c = 0; c < size; ++c) {
    cell = decode_tuple(c, n, f.k());
    for (int i = 0; i < n; ++i) mapped[i] = sigma(cell[i]);
    table[c] = inv(f.at_cell(encode_tuple(mapped, f.k())));
  }
  return FiniteFunction(f.k(), n, std::move(table));
}

FiniteFunction identify_vars(const FiniteFunction& f, std::span<const int> xi,
                             int m) {
  if (xi.size() != static_cast<std::size_t>(f.arity())) {
    throw std::invalid_argument("xi must be total on the arity of f");
  }
  for (int slot : xi) {
    if (slot < 0 || slot >= m) {
      throw std::invalid_argument("xi value out of target arity range");
    }
  }
  const std::uint64_t size = pow_checked(f.k(), m);
  std::vector<Value> table(size);
  Tuple cell(static_cast<std::size_t>(m));
  Tuple pulled(xi.size());
  for (std::uint64_t c = 0; c < size; ++c) {
    cell = decode_tuple(c, m, f.k());
    for (std::size_t i = 0; i < xi.size(); ++i) pulled[i] = cell[xi[i]];
    table[c] = f.at_cell(encode_tuple(pulled, f.k()));
  }
  return FiniteFunction(f.k(), m, std::move(table));
}

Value majority_value(Value x, Value y, Value z) {
  if (x == y || x == z) return x;
  if (y == z) return y;
  throw std::invalid_argument("majority is only defined on rank-<=2 triples");
}

Value minority_value(Value x, Value y, Value z) {
  // l(a,a,a)=a, l(x,y,y)=x, l(y,x,y)=x, l(y,y,x)=x.
  if (x == y && y == z) return x;
  if (y == z) return x;
  if (x == z) return y;
  if (x == y) return z;
  throw std::invalid_argument("minority is only defined on rank-<=2 triples");
}

FunctionShape classify_function(const FiniteFunction& f) {
  FunctionShape shape;
  const int n = f.arity();
  const int k = f.k();
  const std::uint64_t size = f.table().size();

  shape.is_conservative = true;
  shape.is_idempotent = true;
  shape.is_d_function = (n == 3);
  shape.is_l_function = (n == 3);
  std::vector<bool> could_be_projection(static_cast<std::size_t>(n), true);

  Tuple cell(static_cast<std::size_t>(n));
  for (std::uint64_t c = 0; c < size; ++c) {
    cell = decode_tuple(c, n, k);
    const Value out = f.at_cell(c);

    bool in_range = false;
    for (Value v : cell) in_range |= (v == out);
    if (!in_range) shape.is_conservative = false;

    const int rank = tuple_rank(cell);
    if (rank == 1 && out != cell[0]) shape.is_idempotent = false;
    if (n == 3 && rank <= 2) {
      if (out != majority_value(cell[0], cell[1], cell[2]))
        shape.is_d_function = false;
      if (out != minority_value(cell[0], cell[1], cell[2]))
        shape.is_l_function = false;
    }
    for (int i = 0; i < n; ++i) {
      if (cell[i] != out) could_be_projection[i] = false;
    }
  }

  for (int i = 0; i < n; ++i) {
    if (could_be_projection[i]) {
      shape.is_projection = true;
      shape.projection_index = i;
      break;
    }
  }
  return shape;
}

}  // namespace clonelab
