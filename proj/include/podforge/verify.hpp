#pragma once

// Point sampling on curves over F_p, real configurations and legs of an
// infinity-pod, and the sphere-condition check of a pod.

#include "podforge/constructions.hpp"
#include "podforge/duality.hpp"
#include "podforge/zerodim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <string>
#include <vector>

namespace podforge {

struct CurveSample {
  std::vector<std::vector<Fp>> points;
  int slices = 0;
  bool complete = false;  // false: fewer than requested points within the slice budget
};

/// Distinct F_p points of a curve from random hyperplane slices.
inline CurveSample sample_curve_points(const Ideal<Fp>& I, std::size_t count, Rng& rng, int slice_budget = 64) {
  if (hilbert_data(I).dimension != 1) throw std::invalid_argument("sample_curve_points: ideal is not a curve");
  CurveSample out;
  std::set<std::vector<std::uint32_t>> seen;
  while (out.points.size() < count && out.slices < slice_budget) {
    ++out.slices;
    const Ideal<Fp> slice = I.plus({rng.linear_form<Fp>(I.ring())});
    std::vector<std::vector<Fp>> pts;
    try {
      pts = rational_points_fp(slice, rng);
    } catch (const std::exception&) {
      continue;  // non-transversal slice
    }
    for (auto& p : pts) {
      std::vector<std::uint32_t> key;
      for (const auto& c : p) key.push_back(static_cast<std::uint32_t>(c.value()));
      if (seen.insert(key).second && out.points.size() < count) out.points.push_back(std::move(p));
    }
  }
  out.complete = out.points.size() >= count;
  return out;
}

// ---------------------------------------------------------------------------
// Real path.

struct RealConfiguration {
  std::array<double, 3> e{};         // Euler coordinates with e3 = 1
  std::array<double, 9> M{};         // rotation, row-major
  std::array<double, 3> translation{};
  std::vector<double> point;         // 17 coordinates normalized to h = 1
};

/// Half-turn configurations over real points of F = 0 with e3 = 1, e2 on a grid
/// of step 1/16 in [-grid, grid], swept outwards from 0.
inline std::vector<RealConfiguration> real_configurations(const ConstructionSeed<Rational>& seed, std::size_t count, int grid = 8) {
  const Polynomial<Rational> F = seed.F();
  const RingMap<Rational> rho = construction_rho(seed);
  std::vector<RealConfiguration> out;
  Rational width(1);
  for (int b = 0; b < 80; ++b) width /= Rational(2);
  for (int g = 0; g <= 32 * grid && out.size() < count; ++g) {
    const long k = (g % 2 == 0) ? g / 2 : -(g + 1) / 2;
    const Rational e2 = Rational(k) / Rational(16);
    UPoly<Rational> uni(5, Rational(0));
    for (const auto& t : F.terms()) {
      Rational c = t.c;
      for (int i = 0; i < t.m.exp[1]; ++i) c *= e2;
      uni[t.m.exp[0]] += c;
    }
    upoly::trim(uni);
    for (const auto& iv : isolate_real_roots(uni, width)) {
      if (out.size() >= count) break;
      const Rational e1 = (iv.lo + iv.hi) / Rational(2);
      const std::vector<Rational> e{e1, e2, Rational(1)};
      std::vector<Rational> c;
      for (std::size_t i = 0; i < 17; ++i) c.push_back(rho.image(i).evaluate(e));
      const Rational h = c[16];
      RealConfiguration rc;
      rc.e = {e1.to_double(), e2.to_double(), 1.0};
      for (std::size_t i = 0; i < 17; ++i) rc.point.push_back((c[i] / h).to_double());
      for (int i = 0; i < 9; ++i) rc.M[i] = rc.point[i];
      for (int i = 0; i < 3; ++i) rc.translation[i] = rc.point[12 + i];
      out.push_back(std::move(rc));
    }
  }
  return out;
}

struct RealLegs {
  std::vector<FloatLeg> legs;
  std::vector<std::vector<double>> points;  // leg points normalized to z00 = 1
  std::vector<bool> realizable;             // d^2 > 0
  std::size_t slice_degree = 0;
  int slices = 0;
};

/// Real legs from random rational hyperplane slices of L~.
inline RealLegs real_legs(const Ideal<Rational>& leg_full, std::size_t count, Rng& rng, int slice_budget = 8) {
  RealLegs out;
  while (out.legs.size() < count && out.slices < slice_budget) {
    ++out.slices;
    const Ideal<Rational> slice = leg_full.plus({rng.linear_form<Rational>(leg_full.ring())});
    const ZeroDim<Rational> Z(slice);
    out.slice_degree = Z.size();
    for (const auto& p : real_points_q(slice, rng)) {
      if (out.legs.size() >= count) break;
      const double z00 = p.coords[0];
      if (std::abs(z00) < 1e-12) continue;
      std::vector<double> pt;
      for (double c : p.coords) pt.push_back(c / z00);
      FloatLeg leg;
      for (int i = 0; i < 3; ++i) {
        leg.a[i] = pt[4 * (i + 1)];
        leg.b[i] = pt[i + 1];
      }
      leg.d2 = -pt[16];
      for (int i = 0; i < 3; ++i) leg.d2 += leg.a[i] * leg.a[i] + leg.b[i] * leg.b[i];
      out.realizable.push_back(leg.d2 > 0);
      out.legs.push_back(leg);
      out.points.push_back(std::move(pt));
    }
  }
  return out;
}

inline std::vector<double> float_leg_point(const FloatLeg& leg) {
  const std::array<double, 4> at{1.0, leg.a[0], leg.a[1], leg.a[2]};
  const std::array<double, 4> bt{1.0, leg.b[0], leg.b[1], leg.b[2]};
  std::vector<double> v;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) v.push_back(at[i] * bt[j]);
  double l = -leg.d2;
  for (int i = 0; i < 3; ++i) l += leg.a[i] * leg.a[i] + leg.b[i] * leg.b[i];
  v.push_back(l);
  return v;
}

// ---------------------------------------------------------------------------
// Pod check.

struct PodReport {
  std::string pod_id;
  bool exact = true;
  double tolerance = 0.0;
  std::size_t configurations = 0;
  std::size_t legs = 0;
  std::vector<std::vector<double>> residuals;  // [config][leg]; exact mode: 0 or 1 (nonzero)
  double max_residual = 0.0;
  std::size_t failures = 0;
  std::size_t realizable_legs = 0;
  bool passed = true;
};

/// Exact check: BSC17 of every (configuration point, leg point) pair must vanish.
template <class K>
PodReport check_pod_exact(const std::vector<std::vector<K>>& configs, const std::vector<std::vector<K>>& legs, Field f,
                          const std::string& id = "") {
  const BilinearForm B = bsc17();
  PodReport r;
  r.pod_id = id;
  r.configurations = configs.size();
  r.legs = legs.size();
  for (const auto& c : configs) {
    std::vector<double> row;
    for (const auto& l : legs) {
      const bool zero = B.evaluate(c, l, f).is_zero();
      row.push_back(zero ? 0.0 : 1.0);
      if (!zero) ++r.failures;
    }
    r.residuals.push_back(std::move(row));
  }
  r.max_residual = r.failures > 0 ? 1.0 : 0.0;
  r.passed = r.failures == 0;
  return r;
}

/// Float check: |value| <= tol (1 + |l h| + |r|) with h = 1 after normalization.
inline PodReport check_pod_float(const std::vector<RealConfiguration>& configs, const std::vector<FloatLeg>& legs, double tol,
                                 const std::string& id = "") {
  const BilinearForm B = bsc17();
  PodReport r;
  r.pod_id = id;
  r.exact = false;
  r.tolerance = tol;
  r.configurations = configs.size();
  r.legs = legs.size();
  for (const auto& l : legs) r.realizable_legs += l.d2 > 0 ? 1 : 0;
  for (const auto& c : configs) {
    std::vector<double> row;
    for (const auto& l : legs) {
      const auto lp = float_leg_point(l);
      const double scale = 1.0 + std::abs(lp[16] * c.point[16]) + std::abs(c.point[15]);
      const double rel = std::abs(B.evaluate_double(c.point, lp)) / scale;
      row.push_back(rel);
      r.max_residual = std::max(r.max_residual, rel);
      if (!(rel <= tol)) ++r.failures;
    }
    r.residuals.push_back(std::move(row));
  }
  r.passed = r.failures == 0;
  return r;
}

/// Largest entry of |M M^t - id| and |det M - 1|, |trace M + 1| of a configuration.
struct HalfTurnError {
  double orthogonality = 0.0, determinant = 0.0, trace = 0.0;
};

inline HalfTurnError half_turn_error(const RealConfiguration& c) {
  HalfTurnError e;
  const auto& M = c.M;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double acc = i == j ? -1.0 : 0.0;
      for (int k = 0; k < 3; ++k) acc += M[3 * i + k] * M[3 * j + k];
      e.orthogonality = std::max(e.orthogonality, std::abs(acc));
    }
  const double det = M[0] * (M[4] * M[8] - M[5] * M[7]) - M[1] * (M[3] * M[8] - M[5] * M[6]) + M[2] * (M[3] * M[7] - M[4] * M[6]);
  e.determinant = std::abs(det - 1.0);
  e.trace = std::abs(M[0] + M[4] + M[8] + 1.0);
  return e;
}

}  // namespace podforge
