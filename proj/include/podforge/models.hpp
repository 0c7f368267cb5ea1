#pragma once

// Coordinate rings and defining ideals of the isometry and leg models:
// X and X_inv in the configuration P^16, Z_inv in the weighted P(1,1,1,2,...,2),
// the Segre cone Y in the leg P^16, its planar and symmetric variants, and the
// Euler-coordinate lift rho.

#include "podforge/groebner.hpp"

#include <array>
#include <string>
#include <vector>

namespace podforge {

// ---------------------------------------------------------------------------
// Coordinate names.

inline std::vector<std::string> config_names() {
  return {"m11", "m12", "m13", "m21", "m22", "m23", "m31", "m32", "m33",
          "x1",  "x2",  "x3",  "y1",  "y2",  "y3",  "r",   "h"};
}

inline std::vector<std::string> leg_names() {
  std::vector<std::string> v;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) v.push_back("z" + std::to_string(i) + std::to_string(j));
  v.push_back("l");
  return v;
}

inline std::vector<std::string> sym_leg_names() {
  return {"z11", "z22", "z33", "s12", "s13", "s23", "s01", "s02", "s03", "z00", "l"};
}

inline std::vector<std::string> planar_leg_names() {
  return {"z00", "z01", "z02", "z10", "z11", "z12", "z20", "z21", "z22", "l"};
}

inline std::vector<std::string> planar_sym_leg_names() { return {"z00", "z11", "z22", "s01", "s02", "s12", "l"}; }

inline std::vector<std::string> planar_config_names() {
  return {"m11", "m12", "m21", "m22", "x1", "x2", "y1", "y2", "r", "h"};
}

inline std::vector<std::string> planar_inv_config_names() { return {"m11", "m12", "m22", "x1", "x2", "r", "h"}; }

inline std::vector<std::string> euler_names() { return {"e1", "e2", "e3"}; }

inline std::vector<std::string> veronese_names() {
  return {"v00", "v11", "v22", "v33", "v01", "v02", "v03", "v12", "v13", "v23"};
}

inline RingPtr config_ring(Field f) { return Ring::make(config_names(), f); }
inline RingPtr leg_ring(Field f) { return Ring::make(leg_names(), f); }
inline RingPtr sym_leg_ring(Field f) { return Ring::make(sym_leg_names(), f); }
inline RingPtr planar_leg_ring(Field f) { return Ring::make(planar_leg_names(), f); }
inline RingPtr planar_sym_leg_ring(Field f) { return Ring::make(planar_sym_leg_names(), f); }
inline RingPtr euler_ring(Field f) { return Ring::make(euler_names(), f); }

/// Name of the symmetric 4x4 entry S_ij in the sym-leg coordinates (diagonal z_ii, off-diagonal s_ij).
inline std::string sym_entry_name(int i, int j) {
  if (i == j) return "z" + std::to_string(i) + std::to_string(i);
  if (i > j) std::swap(i, j);
  return "s" + std::to_string(i) + std::to_string(j);
}

// ---------------------------------------------------------------------------
// Polynomial matrices.

template <class K>
using PolyMatrix = std::vector<std::vector<Polynomial<K>>>;

/// Determinant by Laplace expansion along the first row (small matrices).
template <class K>
Polynomial<K> poly_determinant(const PolyMatrix<K>& a, const RingPtr& ring) {
  const std::size_t n = a.size();
  if (n == 0) return Polynomial<K>::constant(ring, 1);
  if (n == 1) return a[0][0];
  if (n == 2) return a[0][0] * a[1][1] - a[0][1] * a[1][0];
  Polynomial<K> acc(ring);
  for (std::size_t c = 0; c < n; ++c) {
    if (a[0][c].is_zero()) continue;
    PolyMatrix<K> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Polynomial<K>> row;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != c) row.push_back(a[r][k]);
      }
      minor.push_back(std::move(row));
    }
    const Polynomial<K> term = a[0][c] * poly_determinant(minor, ring);
    acc = (c % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

/// All k x k minors (rows and columns chosen in increasing order).
template <class K>
std::vector<Polynomial<K>> poly_minors(const PolyMatrix<K>& a, std::size_t k, const RingPtr& ring) {
  const std::size_t rows = a.size(), cols = a.empty() ? 0 : a[0].size();
  std::vector<std::vector<std::size_t>> rsets, csets;
  auto subsets = [](std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
      if (cur.size() == k) {
        out.push_back(cur);
        return;
      }
      for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        self(self, i + 1);
        cur.pop_back();
      }
    };
    rec(rec, 0);
    return out;
  };
  rsets = subsets(rows, k);
  csets = subsets(cols, k);
  std::vector<Polynomial<K>> out;
  for (const auto& rs : rsets) {
    for (const auto& cs : csets) {
      PolyMatrix<K> sub;
      for (auto r : rs) {
        std::vector<Polynomial<K>> row;
        for (auto c : cs) row.push_back(a[r][c]);
        sub.push_back(std::move(row));
      }
      Polynomial<K> d = poly_determinant(sub, ring);
      if (!d.is_zero()) out.push_back(std::move(d));
    }
  }
  return out;
}

template <class K>
Polynomial<K> var(const RingPtr& ring, const std::string& name) {
  return Polynomial<K>::variable(ring, name);
}

/// 4x4 matrix (z_ij) of leg coordinates.
template <class K>
PolyMatrix<K> leg_matrix(const RingPtr& ring) {
  PolyMatrix<K> z(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) z[i].push_back(var<K>(ring, "z" + std::to_string(i) + std::to_string(j)));
  return z;
}

/// Symmetric matrix S with S_ii = 2 z_ii and S_ij = s_ij, indices restricted to idx.
template <class K>
PolyMatrix<K> sym_leg_matrix(const RingPtr& ring, const std::vector<int>& idx) {
  PolyMatrix<K> s(idx.size());
  const K two = scalar<K>(2, ring->field());
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = 0; b < idx.size(); ++b) {
      auto v = var<K>(ring, sym_entry_name(idx[a], idx[b]));
      s[a].push_back(a == b ? v.scaled(two) : v);
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Configuration side.

/// Ideal of X: M M^t = M^t M = h^2 id, M x + h y = 0, M^t y + h x = 0,
/// r h = <x,x> = <y,y>, det M = h^3.
template <class K>
Ideal<K> ideal_X(Field f) {
  const RingPtr R = config_ring(f);
  auto m = [&](int i, int j) { return var<K>(R, "m" + std::to_string(i) + std::to_string(j)); };
  auto x = [&](int i) { return var<K>(R, "x" + std::to_string(i)); };
  auto y = [&](int i) { return var<K>(R, "y" + std::to_string(i)); };
  const auto r = var<K>(R, "r");
  const auto h = var<K>(R, "h");
  std::vector<Polynomial<K>> g;
  for (int i = 1; i <= 3; ++i) {
    for (int j = i; j <= 3; ++j) {
      Polynomial<K> mmt(R), mtm(R);
      for (int k = 1; k <= 3; ++k) {
        mmt += m(i, k) * m(j, k);
        mtm += m(k, i) * m(k, j);
      }
      if (i == j) {
        mmt -= h * h;
        mtm -= h * h;
      }
      g.push_back(mmt);
      g.push_back(mtm);
    }
  }
  for (int i = 1; i <= 3; ++i) {
    Polynomial<K> a = h * y(i), b = h * x(i);
    for (int k = 1; k <= 3; ++k) {
      a += m(i, k) * x(k);
      b += m(k, i) * y(k);
    }
    g.push_back(a);
    g.push_back(b);
  }
  Polynomial<K> xx(R), yy(R);
  for (int i = 1; i <= 3; ++i) {
    xx += x(i) * x(i);
    yy += y(i) * y(i);
  }
  g.push_back(r * h - xx);
  g.push_back(r * h - yy);
  PolyMatrix<K> M(3);
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) M[i - 1].push_back(m(i, j));
  g.push_back(poly_determinant(M, R) - h * h * h);
  return Ideal<K>(R, std::move(g));
}

/// M = M^t, x = y, m11 + m22 + m33 + h = 0.
template <class K>
std::vector<Polynomial<K>> x_inv_linear_forms(const RingPtr& R) {
  auto v = [&](const char* n) { return var<K>(R, n); };
  return {v("m12") - v("m21"), v("m13") - v("m31"), v("m23") - v("m32"), v("x1") - v("y1"),
          v("x2") - v("y2"),   v("x3") - v("y3"),   v("m11") + v("m22") + v("m33") + v("h")};
}

template <class K>
Ideal<K> ideal_X_inv(Field f) {
  const Ideal<K> X = ideal_X<K>(f);
  return X.plus(x_inv_linear_forms<K>(X.ring()));
}

/// Z_inv = <e1 p1 + e2 p2 + e3 p3, q1, q2, q3> in the weighted P(1,1,1,2,...,2).
template <class K>
Ideal<K> ideal_Z_inv(Field f) {
  const RingPtr R = Ring::make({"e1", "e2", "e3", "p1", "p2", "p3", "q1", "q2", "q3"}, f, {1, 1, 1, 2, 2, 2, 2, 2, 2});
  auto v = [&](const char* n) { return var<K>(R, n); };
  return Ideal<K>(R, {v("e1") * v("p1") + v("e2") * v("p2") + v("e3") * v("p3"), v("q1"), v("q2"), v("q3")});
}

// ---------------------------------------------------------------------------
// Leg side.

/// Cone over the Segre P^3 x P^3: 2x2 minors of (z_ij).
template <class K>
Ideal<K> ideal_Y(Field f) {
  const RingPtr R = leg_ring(f);
  return Ideal<K>(R, poly_minors(leg_matrix<K>(R), 2, R));
}

/// Planar legs: 2x2 minors of (z_ij), 0 <= i, j <= 2, in P^9.
template <class K>
Ideal<K> ideal_Y_p(Field f) {
  const RingPtr R = planar_leg_ring(f);
  PolyMatrix<K> z(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) z[i].push_back(var<K>(R, "z" + std::to_string(i) + std::to_string(j)));
  return Ideal<K>(R, poly_minors(z, 2, R));
}

/// Symmetric legs: 3x3 minors of S in P^10.
template <class K>
Ideal<K> ideal_Y_inv(Field f) {
  const RingPtr R = sym_leg_ring(f);
  return Ideal<K>(R, poly_minors(sym_leg_matrix<K>(R, {0, 1, 2, 3}), 3, R));
}

/// det of the planar 3x3 S divided by 2:
/// 4 z00 z11 z22 + s01 s02 s12 - z00 s12^2 - z11 s02^2 - z22 s01^2.
template <class K>
Polynomial<K> y_pinv_cubic(const RingPtr& R) {
  return poly_determinant(sym_leg_matrix<K>(R, {0, 1, 2}), R).scaled(scalar<K>(2, R->field()).inverse());
}

template <class K>
Ideal<K> ideal_Y_pinv(Field f) {
  const RingPtr R = planar_sym_leg_ring(f);
  return Ideal<K>(R, {y_pinv_cubic<K>(R)});
}

/// A variant with -s12^2 on every diagonal term. It is not in the kernel of
/// alpha; kept only to report that discrepancy.
template <class K>
Polynomial<K> y_pinv_printed_cubic(const RingPtr& R) {
  return Polynomial<K>::parse(R, "s01*s02*s12-s12^2*z00-s12^2*z11-s12^2*z22+4*z00*z11*z22");
}

// ---------------------------------------------------------------------------
// Maps.

/// rho: config ring -> Q[e1,e2,e3] with the half-turn rotation matrix of e,
/// x, y -> P/2, r -> U, h -> e1^2 + e2^2 + e3^2.
template <class K>
RingMap<K> euler_rho(const std::array<Polynomial<K>, 3>& P, const Polynomial<K>& U) {
  const RingPtr E = U.ring();
  for (const auto& p : P) {
    if (!p.is_zero() && (!p.is_homogeneous() || p.lead().degree != 2)) {
      throw std::invalid_argument("euler_rho: P_i must be quadratic forms");
    }
  }
  if (!U.is_zero() && (!U.is_homogeneous() || U.lead().degree != 2)) {
    throw std::invalid_argument("euler_rho: U must be a quadratic form");
  }
  const auto e1 = var<K>(E, "e1"), e2 = var<K>(E, "e2"), e3 = var<K>(E, "e3");
  const K two = scalar<K>(2, E->field());
  const K half = two.inverse();
  std::vector<Polynomial<K>> img{
      e1 * e1 - e2 * e2 - e3 * e3, (e1 * e2).scaled(two), (e1 * e3).scaled(two),
      (e1 * e2).scaled(two),       e2 * e2 - e1 * e1 - e3 * e3, (e2 * e3).scaled(two),
      (e1 * e3).scaled(two),       (e2 * e3).scaled(two),       e3 * e3 - e1 * e1 - e2 * e2,
      P[0].scaled(half),           P[1].scaled(half),           P[2].scaled(half),
      P[0].scaled(half),           P[1].scaled(half),           P[2].scaled(half),
      U,                           e1 * e1 + e2 * e2 + e3 * e3};
  return RingMap<K>(config_ring(E->field()), E, std::move(img));
}

/// Veronese P^3 -> P^9 as a ring map from the v-coordinates to Q[e0..e3].
template <class K>
RingMap<K> veronese_map(Field f) {
  const RingPtr E = Ring::make({"e0", "e1", "e2", "e3"}, f);
  const RingPtr V = Ring::make(veronese_names(), f);
  std::vector<Polynomial<K>> img;
  for (const auto& n : veronese_names()) {
    img.push_back(var<K>(E, "e" + n.substr(1, 1)) * var<K>(E, "e" + n.substr(2, 1)));
  }
  return RingMap<K>(V, E, std::move(img));
}

/// 2x2 minors of the symmetric catalecticant (v_ij), the classical ideal of the Veronese image.
template <class K>
Ideal<K> veronese_catalecticant(Field f) {
  const RingPtr V = Ring::make(veronese_names(), f);
  PolyMatrix<K> c(4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const int a = std::min(i, j), b = std::max(i, j);
      c[i].push_back(var<K>(V, "v" + std::to_string(a) + std::to_string(b)));
    }
  }
  return Ideal<K>(V, poly_minors(c, 2, V));
}

}  // namespace podforge
