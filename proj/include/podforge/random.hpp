#pragma once

// Seeded deterministic randomness: integers in [-B, B] mapped into a field,
// random linear and quadratic forms.

#include "podforge/polynomial.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace podforge {

class Rng {
 public:
  explicit Rng(std::uint64_t seed, long bound = 10) : gen_(seed), bound_(bound) {}

  long bound() const { return bound_; }

  /// Uniform integer in [-B, B].
  long integer() { return integer(bound_); }
  long integer(long b) {
    const auto span = static_cast<std::uint64_t>(2 * b + 1);
    return static_cast<long>(gen_() % span) - b;
  }

  /// Uniform integer in [-B, B] without zero.
  long nonzero_integer() {
    for (;;) {
      const long v = integer();
      if (v != 0) return v;
    }
  }

  std::uint64_t raw() { return gen_(); }

  template <class K>
  K scalar_in(Field f) {
    return scalar<K>(integer(), f);
  }

  template <class K>
  std::vector<K> vector_in(std::size_t n, Field f) {
    std::vector<K> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(scalar_in<K>(f));
    return v;
  }

  /// Random homogeneous form of degree d (weight-1 ring) with coefficients in [-B, B].
  template <class K>
  Polynomial<K> form(const RingPtr& ring, int d) {
    std::vector<Term<K>> terms;
    std::vector<int> exps(ring->size(), 0);
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
      if (i + 1 == ring->size()) {
        exps[i] = left;
        const K c = scalar_in<K>(ring->field());
        terms.push_back({ring->monomial(exps), c});
        exps[i] = 0;
        return;
      }
      for (int e = left; e >= 0; --e) {
        exps[i] = e;
        self(self, i + 1, left - e);
      }
      exps[i] = 0;
    };
    rec(rec, 0, d);
    return Polynomial<K>::from_terms(ring, std::move(terms));
  }

  template <class K>
  Polynomial<K> linear_form(const RingPtr& ring) {
    return form<K>(ring, 1);
  }

 private:
  std::mt19937_64 gen_;
  long bound_;
};

}  // namespace podforge
