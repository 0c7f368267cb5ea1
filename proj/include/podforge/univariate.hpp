#pragma once

// Dense univariate polynomials over Rational or Fp: Euclidean arithmetic,
// roots in F_p (distinct-degree + Cantor-Zassenhaus splitting), and exact real
// root isolation over Q with Sturm sequences.

#include "podforge/field.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace podforge {

/// Coefficients by increasing degree; trimmed (no trailing zeros). Zero is {}.
template <class K>
using UPoly = std::vector<K>;

namespace upoly {

template <class K>
void trim(UPoly<K>& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

template <class K>
int degree(const UPoly<K>& a) {
  return static_cast<int>(a.size()) - 1;
}

template <class K>
UPoly<K> add(const UPoly<K>& a, const UPoly<K>& b) {
  UPoly<K> r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] += b[i];
  }
  trim(r);
  return r;
}

template <class K>
UPoly<K> sub(const UPoly<K>& a, const UPoly<K>& b) {
  UPoly<K> r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] -= b[i];
  }
  trim(r);
  return r;
}

template <class K>
UPoly<K> mul(const UPoly<K>& a, const UPoly<K>& b) {
  if (a.empty() || b.empty()) return {};
  UPoly<K> r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

template <class K>
UPoly<K> scale(const UPoly<K>& a, const K& c) {
  UPoly<K> r = a;
  for (auto& v : r) v *= c;
  trim(r);
  return r;
}

/// (quotient, remainder).
template <class K>
std::pair<UPoly<K>, UPoly<K>> divmod(UPoly<K> a, const UPoly<K>& b) {
  if (b.empty()) throw std::domain_error("upoly: division by zero polynomial");
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  UPoly<K> q(a.size() - b.size() + 1);
  const K inv = b.back().inverse();
  for (std::size_t k = a.size(); k-- >= b.size();) {
    const K c = a[k] * inv;
    q[k - b.size() + 1] = c;
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[k - b.size() + 1 + j] -= c * b[j];
    if (k == b.size() - 1) break;
  }
  a.resize(b.size() - 1);
  trim(a);
  trim(q);
  return {q, a};
}

template <class K>
UPoly<K> rem(const UPoly<K>& a, const UPoly<K>& b) {
  return divmod(a, b).second;
}

template <class K>
UPoly<K> monic(const UPoly<K>& a) {
  if (a.empty()) return a;
  return scale(a, a.back().inverse());
}

template <class K>
UPoly<K> gcd(UPoly<K> a, UPoly<K> b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly<K> r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

template <class K>
UPoly<K> derivative(const UPoly<K>& a, Field f) {
  UPoly<K> r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * scalar<K>(static_cast<long>(i), f));
  trim(r);
  return r;
}

template <class K>
K eval(const UPoly<K>& a, const K& x, Field f) {
  K acc = scalar<K>(0, f);
  for (std::size_t i = a.size(); i-- > 0;) acc = acc * x + a[i];
  return acc;
}

/// base^e mod m.
template <class K>
UPoly<K> powmod(UPoly<K> base, unsigned long long e, const UPoly<K>& m, Field f) {
  UPoly<K> result{scalar<K>(1, f)};
  base = rem(base, m);
  while (e > 0) {
    if (e & 1ull) result = rem(mul(result, base), m);
    e >>= 1ull;
    if (e > 0) base = rem(mul(base, base), m);
  }
  return result;
}

/// Squarefree part f / gcd(f, f') (characteristic 0 or degree below p).
template <class K>
UPoly<K> squarefree_part(const UPoly<K>& a, Field f) {
  const UPoly<K> g = gcd(a, derivative(a, f));
  return monic(divmod(a, g).first);
}

}  // namespace upoly

/// Distinct roots in F_p, sorted by representative.
inline std::vector<Fp> roots_fp(const UPoly<Fp>& poly, Field field, std::uint64_t seed = 1) {
  using namespace upoly;
  UPoly<Fp> f = monic(poly);
  if (degree(f) <= 0) return {};
  const std::uint32_t p = field.characteristic();
  // g = gcd(f, x^p - x) is the product of the distinct linear factors.
  UPoly<Fp> x{Fp(0, p), Fp(1, p)};
  UPoly<Fp> xp = powmod(x, p, f, field);
  UPoly<Fp> g = gcd(f, sub(xp, x));
  std::vector<Fp> roots;
  std::vector<UPoly<Fp>> stack{g};
  std::mt19937_64 rng(seed);
  while (!stack.empty()) {
    UPoly<Fp> h = stack.back();
    stack.pop_back();
    const int d = degree(h);
    if (d <= 0) continue;
    if (d == 1) {
      roots.push_back(-h[0] * h[1].inverse());
      continue;
    }
    // Split with gcd(h, (x + a)^((p-1)/2) - 1).
    for (int attempt = 0; attempt < 200; ++attempt) {
      const Fp a(static_cast<std::int64_t>(rng() % p), p);
      UPoly<Fp> t = powmod(UPoly<Fp>{a, Fp(1, p)}, (p - 1) / 2, h, field);
      t = sub(t, UPoly<Fp>{Fp(1, p)});
      UPoly<Fp> s = gcd(h, t);
      if (degree(s) > 0 && degree(s) < d) {
        stack.push_back(s);
        stack.push_back(monic(divmod(h, s).first));
        break;
      }
    }
  }
  std::sort(roots.begin(), roots.end(), [](const Fp& a, const Fp& b) { return a.value() < b.value(); });
  return roots;
}

// ---------------------------------------------------------------------------
// Real roots over Q.

/// Isolating interval [lo, hi] containing exactly one real root; lo == hi when exact.
struct RootInterval {
  Rational lo;
  Rational hi;
};

namespace detail {

inline int sign_at(const UPoly<Rational>& a, const Rational& x) {
  return upoly::eval(a, x, Field::rationals()).sign();
}

inline int sign_variations(const std::vector<UPoly<Rational>>& seq, const Rational& x) {
  int count = 0, last = 0;
  for (const auto& p : seq) {
    const int s = sign_at(p, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace detail

/// Sturm sequence of a squarefree polynomial.
inline std::vector<UPoly<Rational>> sturm_sequence(const UPoly<Rational>& f) {
  using namespace upoly;
  const Field q = Field::rationals();
  std::vector<UPoly<Rational>> seq{f, derivative(f, q)};
  while (!seq.back().empty() && degree(seq.back()) > 0) {
    UPoly<Rational> r = rem(seq[seq.size() - 2], seq.back());
    if (r.empty()) break;
    // Scaling by positive constants keeps signs; normalize to keep coefficients small.
    Rational lead = r.back();
    if (lead.sign() < 0) lead = -lead;
    seq.push_back(scale(r, Rational(-1) / lead));
  }
  return seq;
}

/// Number of distinct real roots of f in (a, b].
inline int count_real_roots(const std::vector<UPoly<Rational>>& sturm, const Rational& a, const Rational& b) {
  return detail::sign_variations(sturm, a) - detail::sign_variations(sturm, b);
}

/// Isolating intervals for the distinct real roots of f (in increasing order),
/// each refined until its width is at most `width`.
inline std::vector<RootInterval> isolate_real_roots(const UPoly<Rational>& poly, const Rational& width, bool squarefree = false) {
  using namespace upoly;
  const Field q = Field::rationals();
  UPoly<Rational> f = poly;
  trim(f);
  if (degree(f) <= 0) return {};
  if (!squarefree) f = squarefree_part(f, q);
  const auto sturm = sturm_sequence(f);
  // Cauchy bound.
  Rational bound(0);
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    Rational c = f[i] / f.back();
    if (c.sign() < 0) c = -c;
    if (bound < c) bound = c;
  }
  bound += Rational(1);
  std::vector<RootInterval> out;
  std::vector<RootInterval> work{{-bound, bound}};
  while (!work.empty()) {
    RootInterval iv = work.back();
    work.pop_back();
    const int n = count_real_roots(sturm, iv.lo, iv.hi);
    if (n == 0) continue;
    if (n == 1) {
      out.push_back(iv);
      continue;
    }
    const Rational mid = (iv.lo + iv.hi) / Rational(2);
    work.push_back({mid, iv.hi});
    work.push_back({iv.lo, mid});
  }
  // Refine each (lo, hi] by bisection on sign changes of f.
  for (auto& iv : out) {
    if (detail::sign_at(f, iv.hi) == 0) {
      iv.lo = iv.hi;
      continue;
    }
    while (width < iv.hi - iv.lo) {
      const Rational mid = (iv.lo + iv.hi) / Rational(2);
      const int sm = detail::sign_at(f, mid);
      if (sm == 0) {
        iv.lo = iv.hi = mid;
        break;
      }
      if (sm == detail::sign_at(f, iv.hi)) {
        iv.hi = mid;
      } else {
        iv.lo = mid;
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
  return out;
}

}  // namespace podforge
