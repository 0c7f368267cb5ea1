#pragma once

// Monomials with packed 8-bit exponents, graded rings with positive integer
// weights, and graded monomial orders (degrevlex, optionally refined by a
// block weight for elimination).

#include "podforge/field.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <memory>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace podforge {

static_assert(std::endian::native == std::endian::little, "packed monomials assume little-endian words");

inline constexpr std::size_t kMaxVars = 32;
inline constexpr int kMaxExponent = 127;

/// Exponent vector plus the two order keys (grading weight and block weight).
/// Both keys are additive under multiplication, so ring-free arithmetic works.
struct Monomial {
  std::array<std::uint8_t, kMaxVars> exp{};
  std::int32_t degree = 0;  // weighted degree
  std::int32_t block = 0;   // elimination-block weighted degree

  int operator[](std::size_t i) const { return exp[i]; }

  std::uint64_t word(std::size_t w) const {
    std::uint64_t x;
    std::memcpy(&x, exp.data() + 8 * w, 8);
    return x;
  }

  bool is_one() const { return degree == 0 && block == 0 && word(0) == 0 && word(1) == 0 && word(2) == 0 && word(3) == 0; }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.degree == b.degree && std::memcmp(a.exp.data(), b.exp.data(), kMaxVars) == 0;
  }
};

namespace detail {
inline constexpr std::uint64_t kHighBits = 0x8080808080808080ULL;
}

/// a | b
inline bool divides(const Monomial& a, const Monomial& b) {
  if (a.degree > b.degree) return false;
  for (std::size_t w = 0; w < 4; ++w) {
    if ((((b.word(w) | detail::kHighBits) - a.word(w)) & detail::kHighBits) != detail::kHighBits) return false;
  }
  return true;
}

inline Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t w = 0; w < 4; ++w) {
    const std::uint64_t s = a.word(w) + b.word(w);
    if (s & detail::kHighBits) throw std::overflow_error("monomial: exponent exceeds 127");
    std::memcpy(r.exp.data() + 8 * w, &s, 8);
  }
  r.degree = a.degree + b.degree;
  r.block = a.block + b.block;
  return r;
}

/// b / a, assuming a | b.
inline Monomial quotient(const Monomial& b, const Monomial& a) {
  Monomial r;
  for (std::size_t w = 0; w < 4; ++w) {
    const std::uint64_t s = b.word(w) - a.word(w);
    std::memcpy(r.exp.data() + 8 * w, &s, 8);
  }
  r.degree = b.degree - a.degree;
  r.block = b.block - a.block;
  return r;
}

/// Graded order: weighted degree, then block degree, then reverse lexicographic
/// on the declared variable order. Returns >0 if a > b.
inline int compare(const Monomial& a, const Monomial& b) {
  if (a.degree != b.degree) return a.degree > b.degree ? 1 : -1;
  if (a.block != b.block) return a.block > b.block ? 1 : -1;
  for (int w = 3; w >= 0; --w) {
    const std::uint64_t x = a.word(w) ^ b.word(w);
    if (x != 0) {
      const int byte = (63 - std::countl_zero(x)) / 8;
      const int idx = 8 * w + byte;
      return a.exp[idx] < b.exp[idx] ? 1 : -1;
    }
  }
  return 0;
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const {
    std::uint64_t h = 0x9E3779B97F4A7C15ULL;
    for (std::size_t w = 0; w < 4; ++w) {
      h ^= m.word(w) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

/// Monomial order descriptor. An empty block vector is plain (weighted)
/// degrevlex; a nonzero block vector refines the grading so that monomials
/// with more weight in the block come first, which eliminates the block
/// variables from homogeneous ideals.
struct MonomialOrder {
  std::vector<int> block;

  static MonomialOrder degrevlex() { return {}; }

  bool is_degrevlex() const {
    return std::all_of(block.begin(), block.end(), [](int b) { return b == 0; });
  }

  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) {
    if (a.is_degrevlex() && b.is_degrevlex()) return true;
    return a.block == b.block;
  }

  std::string key() const {
    if (is_degrevlex()) return "degrevlex";
    std::string k = "block";
    for (int b : block) k += ":" + std::to_string(b);
    return k;
  }
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// Polynomial ring context: ordered variable names, positive grading weights,
/// coefficient field and monomial order.
class Ring {
 public:
  static RingPtr make(std::vector<std::string> names, Field field, std::vector<int> weights = {},
                      MonomialOrder order = MonomialOrder::degrevlex()) {
    return std::make_shared<const Ring>(Private{}, std::move(names), field, std::move(weights), std::move(order));
  }

  struct Private {};
  Ring(Private, std::vector<std::string> names, Field field, std::vector<int> weights, MonomialOrder order)
      : names_(std::move(names)), weights_(std::move(weights)), order_(std::move(order)), field_(field) {
    if (names_.size() > kMaxVars) throw std::invalid_argument("ring: more than 32 variables");
    if (weights_.empty()) weights_.assign(names_.size(), 1);
    if (weights_.size() != names_.size()) throw std::invalid_argument("ring: weight count mismatch");
    for (int w : weights_) {
      if (w <= 0) throw std::invalid_argument("ring: weights must be positive");
    }
    if (order_.block.empty()) order_.block.assign(names_.size(), 0);
    if (order_.block.size() != names_.size()) throw std::invalid_argument("ring: order block size mismatch");
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (!index_.emplace(names_[i], static_cast<int>(i)).second) {
        throw std::invalid_argument("ring: duplicate variable '" + names_[i] + "'");
      }
    }
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<int>& weights() const { return weights_; }
  int weight(std::size_t i) const { return weights_.at(i); }
  const MonomialOrder& order() const { return order_; }
  Field field() const { return field_; }

  bool has(const std::string& name) const { return index_.count(name) != 0; }
  int index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw std::out_of_range("ring: unknown variable '" + name + "'");
    return it->second;
  }

  bool uniform_weights() const {
    return std::all_of(weights_.begin(), weights_.end(), [](int w) { return w == 1; });
  }

  Monomial monomial(std::span<const int> exps) const {
    if (exps.size() > size()) throw std::invalid_argument("ring: too many exponents");
    Monomial m;
    for (std::size_t i = 0; i < exps.size(); ++i) {
      if (exps[i] < 0 || exps[i] > kMaxExponent) throw std::overflow_error("ring: exponent out of range");
      m.exp[i] = static_cast<std::uint8_t>(exps[i]);
      m.degree += weights_[i] * exps[i];
      m.block += order_.block[i] * exps[i];
    }
    return m;
  }

  Monomial one() const { return Monomial{}; }

  Monomial var(std::size_t i, int e = 1) const {
    std::vector<int> exps(size(), 0);
    exps.at(i) = e;
    return monomial(exps);
  }

  /// Recomputes the order keys of a monomial built for a ring with the same
  /// variables but a different order or grading.
  Monomial rekey(const Monomial& m) const {
    Monomial r;
    r.exp = m.exp;
    for (std::size_t i = 0; i < size(); ++i) {
      r.degree += weights_[i] * m.exp[i];
      r.block += order_.block[i] * m.exp[i];
    }
    return r;
  }

  RingPtr with_order(MonomialOrder order) const { return make(names_, field_, weights_, std::move(order)); }
  RingPtr with_weights(std::vector<int> weights) const { return make(names_, field_, std::move(weights), order_); }
  RingPtr with_field(Field f) const { return make(names_, f, weights_, order_); }

  /// Elimination order with the named variables in the dominant block.
  MonomialOrder elimination_order(const std::vector<std::string>& drop) const {
    MonomialOrder o;
    o.block.assign(size(), 0);
    for (const auto& n : drop) o.block[index(n)] = weights_[index(n)];
    return o;
  }

  /// Same variables, grading, field and order.
  bool same_as(const Ring& o) const {
    return this == &o ||
           (names_ == o.names_ && weights_ == o.weights_ && field_ == o.field_ && order_ == o.order_);
  }

  /// Same variables, grading and field; the order may differ.
  bool compatible(const Ring& o) const {
    return this == &o || (names_ == o.names_ && weights_ == o.weights_ && field_ == o.field_);
  }

 private:
  std::vector<std::string> names_;
  std::vector<int> weights_;
  MonomialOrder order_;
  Field field_;
  std::unordered_map<std::string, int> index_;
};

/// Convenience: ring over the given field with variables named prefix1..prefixN.
inline std::vector<std::string> indexed_names(const std::string& prefix, int count, int first = 1) {
  std::vector<std::string> v;
  for (int i = 0; i < count; ++i) v.push_back(prefix + std::to_string(first + i));
  return v;
}

}  // namespace podforge
