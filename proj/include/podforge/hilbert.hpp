#pragma once

// Hilbert series of monomial ideals (pivot recursion), and the derived
// projective invariants of homogeneous ideals: dimension, degree, Hilbert
// polynomial and arithmetic genus.

#include "podforge/groebner.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace podforge {

/// Integer polynomial in t, coefficients by increasing degree.
using IntSeries = std::vector<long long>;

namespace detail {

inline long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("hilbert: coefficient overflow");
  return r;
}

inline long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("hilbert: coefficient overflow");
  return r;
}

inline void trim(IntSeries& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline IntSeries series_mul(const IntSeries& a, const IntSeries& b) {
  if (a.empty() || b.empty()) return {};
  IntSeries r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = checked_add(r[i + j], checked_mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

using Exps = std::vector<std::vector<int>>;

inline bool mono_divides(const std::vector<int>& a, const std::vector<int>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

inline int mono_degree(const std::vector<int>& a) {
  int d = 0;
  for (int e : a) d += e;
  return d;
}

/// Drops non-minimal generators (and duplicates).
inline Exps minimalize(Exps g) {
  std::sort(g.begin(), g.end(), [](const auto& a, const auto& b) {
    const int da = mono_degree(a), db = mono_degree(b);
    return da != db ? da < db : a < b;
  });
  Exps out;
  for (auto& m : g) {
    bool redundant = false;
    for (const auto& o : out) {
      if (mono_divides(o, m)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) out.push_back(std::move(m));
  }
  return out;
}

/// Numerator N(t) of the Hilbert series N(t)/(1-t)^n of S/M for a minimal
/// monomial generating set M.
inline IntSeries hilbert_numerator(Exps gens) {
  if (gens.empty()) return {1};
  const std::size_t n = gens.front().size();
  // Base case: pairwise coprime generators.
  std::vector<int> usage(n, 0);
  bool coprime = true;
  for (const auto& m : gens) {
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i] > 0 && ++usage[i] > 1) coprime = false;
    }
  }
  if (coprime) {
    IntSeries r{1};
    for (const auto& m : gens) {
      IntSeries f(mono_degree(m) + 1, 0);
      f[0] = 1;
      f.back() = -1;
      r = series_mul(r, f);
    }
    return r;
  }
  // Pivot on the most used variable with its smallest positive exponent; by
  // minimality this pivot is never already a generator.
  const std::size_t v = static_cast<std::size_t>(std::max_element(usage.begin(), usage.end()) - usage.begin());
  std::vector<int> exps;
  for (const auto& m : gens) {
    if (m[v] > 0) exps.push_back(m[v]);
  }
  const int e = *std::min_element(exps.begin(), exps.end());
  std::vector<int> pivot(n, 0);
  pivot[v] = e;

  Exps plus = gens;
  plus.push_back(pivot);
  Exps colon;
  for (const auto& m : gens) {
    auto q = m;
    q[v] = std::max(0, q[v] - e);
    colon.push_back(std::move(q));
  }
  IntSeries a = hilbert_numerator(minimalize(std::move(plus)));
  IntSeries b = hilbert_numerator(minimalize(std::move(colon)));
  IntSeries shifted(e + b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) shifted[i + e] = b[i];
  IntSeries r(std::max(a.size(), shifted.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < shifted.size(); ++i) r[i] = checked_add(r[i], shifted[i]);
  trim(r);
  return r;
}

}  // namespace detail

struct HilbertData {
  int dimension = -1;      // projective dimension
  long long degree = 0;
  std::vector<Rational> hilbert_polynomial;  // coefficients in t, increasing degree
  bool has_genus = false;
  long long arithmetic_genus = 0;
  IntSeries numerator;  // N(t) with HS = N(t)/(1-t)^(n)
  std::size_t nvars = 0;

  /// Value of the Hilbert function at degree t (from the series).
  long long hilbert_function(int t) const {
    // Coefficient of t^k in N(t)/(1-t)^n is sum_i N_i * C(k-i+n-1, n-1).
    long long acc = 0;
    for (std::size_t i = 0; i < numerator.size() && static_cast<int>(i) <= t; ++i) {
      acc = detail::checked_add(acc, detail::checked_mul(numerator[i], binomial(t - static_cast<int>(i) + static_cast<int>(nvars) - 1, static_cast<int>(nvars) - 1)));
    }
    return acc;
  }

  Rational hilbert_polynomial_at(long t) const {
    Rational acc(0);
    Rational pw(1);
    for (const auto& c : hilbert_polynomial) {
      acc += c * pw;
      pw *= Rational(t);
    }
    return acc;
  }

  static long long binomial(int n, int k) {
    if (k < 0 || n < k) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = detail::checked_mul(r, n - k + i) / i;
    return r;
  }
};

/// Hilbert data of S/M for a monomial ideal given by exponent vectors in n variables.
inline HilbertData hilbert_from_monomials(const std::vector<std::vector<int>>& monomials, std::size_t n) {
  HilbertData h;
  h.nvars = n;
  h.numerator = detail::hilbert_numerator(detail::minimalize(monomials));
  // Divide by (1 - t) while N(1) = 0.
  IntSeries q = h.numerator;
  int krull = static_cast<int>(n);
  auto value_at_one = [](const IntSeries& p) {
    long long s = 0;
    for (long long c : p) s = detail::checked_add(s, c);
    return s;
  };
  while (!q.empty() && value_at_one(q) == 0) {
    // Synthetic division by (1 - t): q = (1 - t) * r  =>  r_i = sum_{j<=i} q_j.
    IntSeries r(q.size() - 1, 0);
    long long run = 0;
    for (std::size_t i = 0; i + 1 < q.size(); ++i) {
      run = detail::checked_add(run, q[i]);
      r[i] = run;
    }
    q = std::move(r);
    --krull;
  }
  if (q.empty()) {
    // Unit ideal: empty projective set.
    h.dimension = -1;
    h.degree = 0;
    return h;
  }
  h.dimension = krull - 1;
  h.degree = value_at_one(q);
  // HP(t) = sum_k q_k * C(t - k + D - 1, D - 1), D = krull, as a polynomial in t.
  std::vector<Rational> hp(std::max(krull, 1), Rational(0));
  if (krull == 0) {
    hp.assign(1, Rational(0));
  }
  for (std::size_t k = 0; k < q.size() && krull > 0; ++k) {
    // prod_{i=1}^{D-1} (t - k + i) / (D-1)!
    std::vector<Rational> poly{Rational(1)};
    for (int i = 1; i <= krull - 1; ++i) {
      std::vector<Rational> next(poly.size() + 1, Rational(0));
      const Rational shift(static_cast<long>(i) - static_cast<long>(k));
      for (std::size_t j = 0; j < poly.size(); ++j) {
        next[j + 1] += poly[j];
        next[j] += poly[j] * shift;
      }
      poly = std::move(next);
    }
    Rational fact(1);
    for (int i = 2; i <= krull - 1; ++i) fact *= Rational(i);
    for (std::size_t j = 0; j < poly.size(); ++j) hp[j] += poly[j] * Rational(q[k]) / fact;
  }
  while (hp.size() > 1 && hp.back().is_zero()) hp.pop_back();
  h.hilbert_polynomial = hp;
  if (h.dimension == 1) {
    h.has_genus = true;
    const Rational g = Rational(1) - hp[0];
    h.arithmetic_genus = g.value().get_num().get_si();
  }
  return h;
}

/// Invariants of a homogeneous ideal in a weight-1 ring, from the leading
/// monomials of its degrevlex Groebner basis. The zero ideal gives (n-1, 1).
template <class K>
HilbertData hilbert_data(const Ideal<K>& I) {
  const RingPtr& R = I.ring();
  if (!R->uniform_weights()) throw std::invalid_argument("hilbert_data: weighted ring");
  const Ideal<K> J = R->order().is_degrevlex() ? I : I.rebase(R->with_order(MonomialOrder::degrevlex()));
  std::vector<std::vector<int>> leads;
  for (const auto& g : J.groebner()) {
    std::vector<int> e(R->size());
    for (std::size_t i = 0; i < R->size(); ++i) e[i] = g.lead().exp[i];
    leads.push_back(std::move(e));
  }
  return hilbert_from_monomials(leads, R->size());
}

inline std::string describe(const HilbertData& h) {
  std::string s = "dim " + std::to_string(h.dimension) + " deg " + std::to_string(h.degree);
  if (h.has_genus) s += " genus " + std::to_string(h.arithmetic_genus);
  return s;
}

}  // namespace podforge
