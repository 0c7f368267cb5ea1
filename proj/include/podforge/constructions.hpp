#pragma once

// Pod constructions: the line-symmetric infinity-pod from a plane quartic,
// Duporcq's sixth leg, planar hexapods with a curve of legs, products of
// conics, the line-symmetric planar cubic construction with its symmetroid,
// and the base curve of an infinity-pod.

#include "podforge/duality.hpp"
#include "podforge/hilbert.hpp"
#include "podforge/models.hpp"
#include "podforge/random.hpp"
#include "podforge/zerodim.hpp"

#include <array>
#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace podforge {

/// A construction input violating a genericity condition (CLI exit code 3).
struct DegenerateInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConstructionOptions {
  long bound = 10;
  int retries = 8;
  bool certify = true;
  bool cross_check = true;
  GroebnerOptions groebner;
};

namespace detail {

template <class K>
std::vector<Polynomial<K>> forms_from_rows(const RingPtr& R, const std::vector<std::vector<K>>& rows) {
  std::vector<Polynomial<K>> out;
  for (const auto& r : rows) out.push_back(linear_form(R, r));
  return out;
}

template <class K>
std::vector<std::vector<K>> rows_from_forms(const std::vector<Polynomial<K>>& forms) {
  std::vector<std::vector<K>> out;
  for (const auto& f : forms) out.push_back(linear_coefficients(f));
  return out;
}

/// Mutual containment of two ideals in the same ring.
template <class K>
bool same_ideal(const Ideal<K>& a, const Ideal<K>& b) {
  for (const auto& g : a.generators()) {
    if (!b.contains(g)) return false;
  }
  for (const auto& g : b.generators()) {
    if (!a.contains(g)) return false;
  }
  return true;
}

template <class K>
Ideal<K> rename_ideal(const Ideal<K>& I, const RingPtr& target) {
  std::vector<Polynomial<K>> g;
  for (const auto& f : I.generators()) g.push_back(f.rename_into(target));
  return Ideal<K>(target, std::move(g));
}

/// Same ideal with variable i renamed to the i-th variable of target.
template <class K>
Ideal<K> rename_positional(const Ideal<K>& I, const RingPtr& target) {
  std::vector<Polynomial<K>> img;
  for (std::size_t i = 0; i < target->size(); ++i) img.push_back(Polynomial<K>::variable(target, i));
  const RingMap<K> phi(I.ring(), target, std::move(img));
  std::vector<Polynomial<K>> g;
  for (const auto& f : I.generators()) g.push_back(phi(f));
  return Ideal<K>(target, std::move(g));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Infinity-pod from a plane quartic.

/// L1, L2, L3 linear and U quadratic in e1, e2, e3; V is fixed to 1.
template <class K>
struct ConstructionSeed {
  RingPtr ring;
  std::array<Polynomial<K>, 3> L;
  Polynomial<K> U;
  std::uint64_t rng_seed = 0;

  Field field() const { return ring->field(); }

  Polynomial<K> norm() const {
    Polynomial<K> n(ring);
    for (int i = 1; i <= 3; ++i) n += var<K>(ring, "e" + std::to_string(i)) * var<K>(ring, "e" + std::to_string(i));
    return n;
  }

  /// P = L1 (0, -e3, e2) + L2 (e3, 0, -e1) + L3 (-e2, e1, 0).
  std::array<Polynomial<K>, 3> P() const {
    const auto e1 = var<K>(ring, "e1"), e2 = var<K>(ring, "e2"), e3 = var<K>(ring, "e3");
    return {L[1] * e3 - L[2] * e2, L[2] * e1 - L[0] * e3, L[0] * e2 - L[1] * e1};
  }

  /// F = P1^2 + P2^2 + P3^2 - U (e1^2 + e2^2 + e3^2).
  Polynomial<K> F() const {
    const auto p = P();
    return p[0] * p[0] + p[1] * p[1] + p[2] * p[2] - U * norm();
  }

  /// Throws DegenerateInput naming the failed condition.
  void check() const {
    for (const auto& l : L) {
      if (!l.is_zero() && (!l.is_homogeneous() || l.lead().degree != 1)) throw std::invalid_argument("seed: L_i must be linear forms");
    }
    if (!U.is_zero() && (!U.is_homogeneous() || U.lead().degree != 2)) throw std::invalid_argument("seed: U must be a quadratic form");
    const auto p = P();
    if (p[0].is_zero() && p[1].is_zero() && p[2].is_zero()) throw DegenerateInput("degenerate seed: P vanishes identically");
    const auto f = F();
    if (f.is_zero()) throw DegenerateInput("degenerate seed: F vanishes identically, the whole plane lifts");
    if (normal_form(f, std::vector<Polynomial<K>>{norm().monic()}).is_zero()) {
      throw DegenerateInput("degenerate seed: F is divisible by e1^2+e2^2+e3^2");
    }
  }

  /// Whether the quartic F = 0 is smooth (its partials have no common zero).
  bool smooth_quartic() const {
    const auto f = F();
    std::vector<Polynomial<K>> d;
    for (std::size_t i = 0; i < 3; ++i) d.push_back(f.derivative(i));
    return hilbert_data(Ideal<K>(ring, d)).dimension < 0;
  }

  static ConstructionSeed draw(Rng& rng, Field f, std::uint64_t seed_value) {
    const RingPtr E = euler_ring(f);
    ConstructionSeed s{E, {rng.linear_form<K>(E), rng.linear_form<K>(E), rng.linear_form<K>(E)}, rng.form<K>(E, 2), seed_value};
    return s;
  }
};

/// rho with the r-image U/4, so that rho(r h - <x, x>) = -F/4.
template <class K>
RingMap<K> construction_rho(const ConstructionSeed<K>& s) {
  return euler_rho(s.P(), s.U.scaled(scalar<K>(4, s.field()).inverse()));
}

/// Degree-1 part of ker(rho mod F): kernel of the matrix of rho on the
/// variables against the six quadratic monomials of e (F has degree 4).
template <class K>
std::vector<Polynomial<K>> rho_linear_kernel(const RingMap<K>& rho) {
  const RingPtr& S = rho.source();
  const RingPtr& E = rho.target();
  const auto monos = standard_monomials(*E, {}, 2);
  std::vector<std::vector<K>> rows(monos.size(), std::vector<K>(S->size(), scalar<K>(0, E->field())));
  for (std::size_t j = 0; j < S->size(); ++j) {
    for (const auto& t : rho.image(j).terms()) {
      const auto it = std::find(monos.begin(), monos.end(), t.m);
      rows[static_cast<std::size_t>(it - monos.begin())][j] = t.c;
    }
  }
  return detail::forms_from_rows(S, matrix_kernel(rows, S->size(), E->field()));
}

struct InfinityCertification {
  std::size_t i_lin_dimension = 0;
  HilbertData config;     // I
  HilbertData leg_full;   // L~
  HilbertData leg_sym;    // L
  bool linear_routes_agree = false;  // kernel shortcut vs elimination
  bool sym_routes_agree = false;     // SBSC dual vs projection of L~
  bool cross_checked = false;
  bool smooth_quartic = false;
};

template <class K>
struct InfinityPodBundle {
  ConstructionSeed<K> seed;
  int attempts = 1;
  std::vector<Polynomial<K>> i_lin;  // linear forms on the configuration P^16
  Ideal<K> config_ideal;             // X_inv + I_lin
  LinearSubspace<K> l_lin;           // points of the leg P^16
  Ideal<K> leg_ideal_full;           // Y + forms cutting L_lin
  Ideal<K> leg_ideal_sym;            // Y_inv + SBSC dual forms
  InfinityCertification certification;
};

namespace detail {

/// Ring (z_ii, s_ij, t_ij, l) with z_ij = (s_ij + t_ij)/2, z_ji = (s_ij - t_ij)/2.
template <class K>
Ideal<K> symmetrize_leg_ideal(const Ideal<K>& full, const GroebnerOptions& opts) {
  const Field f = full.ring()->field();
  std::vector<std::string> names{"z00", "z11", "z22", "z33"};
  std::vector<std::string> tnames;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      names.push_back("s" + std::to_string(i) + std::to_string(j));
      tnames.push_back("t" + std::to_string(i) + std::to_string(j));
    }
  names.insert(names.end(), tnames.begin(), tnames.end());
  names.push_back("l");
  const RingPtr W = Ring::make(names, f);
  const K half = scalar<K>(2, f).inverse();
  std::map<std::string, Polynomial<K>> img;
  img.emplace("l", var<K>(W, "l"));
  for (int i = 0; i < 4; ++i) {
    const std::string d = std::to_string(i) + std::to_string(i);
    img.emplace("z" + d, var<K>(W, "z" + d));
    for (int j = i + 1; j < 4; ++j) {
      const std::string ij = std::to_string(i) + std::to_string(j), ji = std::to_string(j) + std::to_string(i);
      const auto s = var<K>(W, "s" + ij), t = var<K>(W, "t" + ij);
      img.emplace("z" + ij, (s + t).scaled(half));
      img.emplace("z" + ji, (s - t).scaled(half));
    }
  }
  const auto phi = RingMap<K>::from_names(full.ring(), W, img);
  std::vector<Polynomial<K>> g;
  for (const auto& p : full.generators()) g.push_back(phi(p));
  const Ideal<K> e = eliminate(Ideal<K>(W, std::move(g)), tnames, opts);
  return rename_ideal(Ideal<K>(e.ring(), e.groebner()), sym_leg_ring(f));
}

/// Symmetric configuration coordinates of a point of V(I_lin).
template <class K>
std::vector<K> sym_config_point(const std::vector<K>& c) {
  const auto full = config_names();
  std::vector<K> out;
  for (const auto& n : sym_config_names()) {
    out.push_back(c[static_cast<std::size_t>(std::find(full.begin(), full.end(), n) - full.begin())]);
  }
  return out;
}

}  // namespace detail

/// Builds the bundle for a fixed seed; throws DegenerateInput on a bad seed.
template <class K>
InfinityPodBundle<K> create_infinity_pod(const ConstructionSeed<K>& seed, const ConstructionOptions& opts = {}) {
  seed.check();
  const Field f = seed.field();
  const RingMap<K> rho = construction_rho(seed);
  const RingPtr C = rho.source();

  InfinityCertification cert;
  const auto i_lin = rho_linear_kernel(rho);
  cert.i_lin_dimension = i_lin.size();
  if (opts.cross_check) {
    // Preimage of <F> by elimination in the graph ring; degree 2 in the config
    // variables has weight 4, where F first enters.
    GroebnerOptions go = opts.groebner;
    go.max_degree = 4;
    const Ideal<K> pre = preimage(rho, Ideal<K>(seed.ring, {seed.F()}), go);
    const auto elim_lin = linear_part(pre);
    cert.linear_routes_agree = row_space(detail::rows_from_forms(elim_lin), C->size(), f) ==
                               row_space(detail::rows_from_forms(i_lin), C->size(), f);
    if (!cert.linear_routes_agree) throw std::logic_error("create_infinity_pod: elimination and kernel routes disagree on I_lin");
  }

  Ideal<K> config = ideal_X_inv<K>(f).plus(i_lin);

  const auto I_forms = LinearSubspace<K>::make(config_names(), SubspaceKind::Forms, f, detail::rows_from_forms(i_lin));
  const auto l_lin = dual_space(I_forms, bsc17(), Side::Left);
  const Ideal<K> Y = ideal_Y<K>(f);
  const Ideal<K> leg_full = Y.plus(detail::forms_from_rows(Y.ring(), l_lin.forms()));

  std::vector<std::vector<K>> sym_pts;
  for (const auto& p : I_forms.points()) sym_pts.push_back(detail::sym_config_point(p));
  const auto sym_span = LinearSubspace<K>::make(sym_config_names(), SubspaceKind::Points, f, sym_pts);
  const auto sym_dual = dual_space(sym_span, sbsc11(), Side::Left);
  const Ideal<K> Yi = ideal_Y_inv<K>(f);
  const Ideal<K> leg_sym = Yi.plus(detail::forms_from_rows(Yi.ring(), sym_dual.forms()));

  if (opts.certify) {
    cert.config = hilbert_data(config);
    cert.leg_full = hilbert_data(leg_full);
    cert.leg_sym = hilbert_data(leg_sym);
    cert.smooth_quartic = seed.smooth_quartic();
  }
  if (opts.cross_check) {
    const Ideal<K> projected = detail::symmetrize_leg_ideal(leg_full, opts.groebner);
    cert.sym_routes_agree = detail::same_ideal(projected, leg_sym);
    cert.cross_checked = true;
  }
  return InfinityPodBundle<K>{seed, 1, i_lin, config, l_lin, leg_full, leg_sym, cert};
}

/// Draws seeds from rng_seed until one is admissible (at most opts.retries draws).
template <class K>
InfinityPodBundle<K> create_infinity_pod(std::uint64_t rng_seed, Field f, const ConstructionOptions& opts = {}) {
  Rng rng(rng_seed, opts.bound);
  std::string last;
  for (int attempt = 1; attempt <= std::max(1, opts.retries); ++attempt) {
    const auto seed = ConstructionSeed<K>::draw(rng, f, rng_seed);
    try {
      auto b = create_infinity_pod(seed, opts);
      b.attempts = attempt;
      return b;
    } catch (const DegenerateInput& e) {
      last = e.what();
    } catch (const std::domain_error& e) {
      // Coefficients of the seed can vanish mod p in ways that break a step.
      last = e.what();
    }
  }
  throw DegenerateInput("retry budget exhausted: " + last);
}

/// Closure of the projection of L~ to the base anchors (column z_i0) or the
/// platform anchors (row z_0j), as an ideal in a0..a3.
template <class K>
Ideal<K> anchor_curve(const Ideal<K>& leg_full, bool platform, const GroebnerOptions& opts = {}) {
  std::vector<std::string> keep;
  for (int i = 0; i < 4; ++i) keep.push_back(platform ? "z0" + std::to_string(i) : "z" + std::to_string(i) + "0");
  const Ideal<K> p = project_model(leg_full, keep, opts);
  return detail::rename_positional(p, Ring::make({"a0", "a1", "a2", "a3"}, leg_full.ring()->field()));
}

template <class K>
Ideal<K> base_curve(const InfinityPodBundle<K>& b, const GroebnerOptions& opts = {}) {
  return anchor_curve(b.leg_ideal_full, false, opts);
}

template <class K>
Ideal<K> platform_curve(const InfinityPodBundle<K>& b, const GroebnerOptions& opts = {}) {
  return anchor_curve(b.leg_ideal_full, true, opts);
}

// ---------------------------------------------------------------------------
// Planar pods: Duporcq's sixth leg, hexapods with a curve of legs, conic products.

namespace detail {

template <class K>
void require_planar(const Leg<K>& leg) {
  if (!leg.a[2].is_zero() || !leg.b[2].is_zero()) throw std::invalid_argument("leg is not planar: third coordinates must vanish");
}

/// Planar leg point in planar_leg_names order.
template <class K>
std::vector<K> planar_leg_point(const Leg<K>& leg, Field f) {
  require_planar(leg);
  const std::array<K, 3> at{scalar<K>(1, f), leg.a[0], leg.a[1]};
  const std::array<K, 3> bt{scalar<K>(1, f), leg.b[0], leg.b[1]};
  std::vector<K> v;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) v.push_back(at[i] * bt[j]);
  v.push_back(corrected_length(leg));
  return v;
}

template <class K>
Leg<K> planar_point_to_leg(const std::vector<K>& pt, Field f) {
  const K& z00 = pt[0];
  if (z00.is_zero()) throw DegenerateInput("anchor at infinity");
  const K inv = z00.inverse();
  Leg<K> leg;
  leg.a = {pt[3] * inv, pt[6] * inv, scalar<K>(0, f)};
  leg.b = {pt[1] * inv, pt[2] * inv, scalar<K>(0, f)};
  K d2 = -(pt[9] * inv);
  for (int i = 0; i < 2; ++i) d2 += leg.a[i] * leg.a[i] + leg.b[i] * leg.b[i];
  leg.d2 = d2;
  return leg;
}

}  // namespace detail

template <class K>
struct DuporcqResult {
  Leg<K> leg;
  std::vector<K> point;    // planar leg point of the sixth leg
  std::vector<K> weights;  // its coordinates in the span of the five input points
};

/// The sixth point of Y_p on the P^4 spanned by five planar legs. The span is
/// parametrized by t1..t5; the 2x2 minors of sum t_k Z_k cut out six points,
/// five of them coordinate points, which saturation by each t_k removes.
template <class K>
DuporcqResult<K> duporcq_sixth_leg(const std::vector<Leg<K>>& legs, Field f, const GroebnerOptions& opts = {}) {
  if (legs.size() != 5) throw std::invalid_argument("duporcq: need five legs");
  std::vector<std::vector<K>> pts;
  for (const auto& l : legs) pts.push_back(detail::planar_leg_point(l, f));
  if (rank(Matrix<K>::from_rows(pts, 10, f)) < 5) throw DegenerateInput("special pentapod: the legs span at most a P^3");
  const RingPtr T = Ring::make(indexed_names("t", 5), f);
  PolyMatrix<K> Z(3, std::vector<Polynomial<K>>(3, Polynomial<K>(T)));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 5; ++k) Z[i][j] += Polynomial<K>::variable(T, k).scaled(pts[k][3 * i + j]);
  Ideal<K> I(T, poly_minors(Z, 2, T));
  const auto h = hilbert_data(I);
  if (h.dimension > 0) throw DegenerateInput("infinitely many legs: the span meets Y_p in a curve");
  for (std::size_t k = 0; k < 5; ++k) I = saturate(I, T->name(k), opts);
  const auto lin = linear_part(I);
  if (lin.size() != 4) throw DegenerateInput("duporcq: no residual sixth point off the coordinate hyperplanes");
  const auto ker = matrix_kernel(detail::rows_from_forms(lin), 5, f);
  std::vector<K> point(10, scalar<K>(0, f));
  for (std::size_t k = 0; k < 5; ++k)
    for (std::size_t c = 0; c < 10; ++c) point[c] += ker[0][k] * pts[k][c];
  return DuporcqResult<K>{detail::planar_point_to_leg(point, f), point, ker[0]};
}

/// Ideal of the curve (span of six planar legs) intersected with Y_p, in P^9.
template <class K>
Ideal<K> hexapod_leg_curve(const std::vector<Leg<K>>& legs, Field f) {
  if (legs.size() != 6) throw std::invalid_argument("hexapod_leg_curve: need six legs");
  std::vector<std::vector<K>> pts;
  for (const auto& l : legs) pts.push_back(detail::planar_leg_point(l, f));
  if (rank(Matrix<K>::from_rows(pts, 10, f)) != 6) throw DegenerateInput("hexapod_leg_curve: the legs do not span a P^5");
  const Ideal<K> Yp = ideal_Y_p<K>(f);
  const Ideal<K> I = Yp.plus(detail::forms_from_rows(Yp.ring(), matrix_kernel(pts, 10, f)));
  if (hilbert_data(I).dimension != 1) throw DegenerateInput("hexapod_leg_curve: the span does not meet Y_p in a curve");
  return I;
}

template <class K>
struct ConicProductResult {
  Ideal<K> leg_ideal;     // image curve in the planar leg P^9
  Ideal<K> config_ideal;  // X_p cut by the dual P^4
  std::size_t span_rank = 0;
  HilbertData leg_hilbert, config_hilbert;
};

/// Product of two conics f, g : P^1 -> P^2 (3x3 coefficient matrices on
/// s^2, s t, t^2), lifted to Y_p by l = sum c_ij z_ij.
template <class K>
ConicProductResult<K> conic_product_legs(const std::array<std::array<K, 3>, 3>& fm, const std::array<std::array<K, 3>, 3>& gm,
                                         const std::vector<K>& l_coeffs, Field f, const GroebnerOptions& opts = {}) {
  auto to_matrix = [&](const std::array<std::array<K, 3>, 3>& m) {
    std::vector<std::vector<K>> rows;
    for (const auto& r : m) rows.emplace_back(r.begin(), r.end());
    return Matrix<K>::from_rows(rows, 3, f);
  };
  if (determinant(to_matrix(fm)).is_zero() || determinant(to_matrix(gm)).is_zero()) {
    throw DegenerateInput("degenerate conic: coefficient matrix has rank below three");
  }
  if (l_coeffs.size() != 9) throw std::invalid_argument("conic_product_legs: need nine l coefficients");
  const RingPtr ST = Ring::make({"s", "t"}, f);
  const auto sv = var<K>(ST, "s"), tv = var<K>(ST, "t");
  const std::array<Polynomial<K>, 3> mono{sv * sv, sv * tv, tv * tv};
  auto param = [&](const std::array<std::array<K, 3>, 3>& m) {
    std::array<Polynomial<K>, 3> out{Polynomial<K>(ST), Polynomial<K>(ST), Polynomial<K>(ST)};
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) out[i] += mono[k].scaled(m[i][k]);
    return out;
  };
  const auto fp = param(fm), gp = param(gm);
  std::vector<Polynomial<K>> img;
  Polynomial<K> l(ST);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      img.push_back(fp[i] * gp[j]);
      l += img.back().scaled(l_coeffs[3 * i + j]);
    }
  img.push_back(l);
  const RingPtr P9 = planar_leg_ring(f);
  const RingMap<K> phi(P9, ST, img);
  // Coefficients of the images on the five quartic monomials.
  std::vector<std::vector<K>> cols(10, std::vector<K>(5, scalar<K>(0, f)));
  for (std::size_t c = 0; c < 10; ++c)
    for (const auto& term : img[c].terms()) cols[c][term.m.exp[1]] = term.c;
  std::vector<std::vector<K>> span_rows(5, std::vector<K>(10, scalar<K>(0, f)));
  for (std::size_t c = 0; c < 10; ++c)
    for (std::size_t r = 0; r < 5; ++r) span_rows[r][c] = cols[c][r];
  const auto span = LinearSubspace<K>::make(planar_leg_names(), SubspaceKind::Points, f, span_rows);
  const Ideal<K> legs = preimage(phi, Ideal<K>(ST, {}), opts);
  const auto dual = dual_space(span, bsc_planar10(), Side::Right);
  const Ideal<K> Xp = project_model(ideal_X<K>(f), planar_config_names(), opts);
  const Ideal<K> config = Xp.plus(detail::forms_from_rows(Xp.ring(), dual.forms()));
  return ConicProductResult<K>{legs, config, span.dimension(), hilbert_data(legs), hilbert_data(config)};
}

// ---------------------------------------------------------------------------
// Line-symmetric planar pods with legs on a plane cubic.

template <class K>
struct CubicResult {
  std::vector<Polynomial<K>> plane_forms;      // 4 forms on the P^6 of Y_pinv
  std::vector<std::vector<K>> plane_points;    // 3 spanning points
  std::vector<Polynomial<K>> config_forms;     // 3 forms on the planar X_pinv coordinates
  Ideal<K> leg_ideal;
  Ideal<K> config_ideal;
  HilbertData leg_hilbert, config_hilbert;
  HilbertData lift_hilbert;                    // lift to P^2 x P^2 in Segre coordinates
  std::array<long long, 2> bidegree{0, 0};     // degrees of the base and platform projections
  HilbertData base_hilbert;
  int attempts = 1;
};

namespace detail {

/// Plane cubic of the leg plane in coordinates (u, v, w) on its three spanning points.
template <class K>
Polynomial<K> plane_cubic(const std::vector<std::vector<K>>& pts, Field f) {
  const RingPtr R7 = planar_sym_leg_ring(f);
  const RingPtr UVW = Ring::make({"u", "v", "w"}, f);
  std::vector<Polynomial<K>> img;
  for (std::size_t c = 0; c < R7->size(); ++c) {
    Polynomial<K> p(UVW);
    for (std::size_t k = 0; k < 3; ++k) p += Polynomial<K>::variable(UVW, k).scaled(pts[k][c]);
    img.push_back(p);
  }
  return RingMap<K>(R7, UVW, img)(y_pinv_cubic<K>(R7));
}

}  // namespace detail

/// A random plane in the P^6 of Y_pinv meets it in a plane cubic of legs; the
/// dual P^3 under SBSC_planar7 meets X_pinv in the configuration curve.
template <class K>
CubicResult<K> cubic_line_symmetric(std::uint64_t rng_seed, Field f, const ConstructionOptions& opts = {}) {
  Rng rng(rng_seed, opts.bound);
  const RingPtr R7 = planar_sym_leg_ring(f);
  std::vector<Polynomial<K>> forms;
  std::vector<std::vector<K>> pts;
  int attempt = 0;
  for (;;) {
    if (++attempt > std::max(1, opts.retries)) throw DegenerateInput("cubic_line_symmetric: no plane with a smooth cubic within the retry budget");
    forms.clear();
    for (int k = 0; k < 4; ++k) forms.push_back(rng.linear_form<K>(R7));
    pts = matrix_kernel(detail::rows_from_forms(forms), R7->size(), f);
    if (pts.size() != 3) continue;
    const auto C = detail::plane_cubic(pts, f);
    if (C.is_zero()) continue;
    std::vector<Polynomial<K>> d;
    for (std::size_t i = 0; i < 3; ++i) d.push_back(C.derivative(i));
    if (hilbert_data(Ideal<K>(C.ring(), d)).dimension >= 0) continue;
    break;
  }
  const Ideal<K> leg = ideal_Y_pinv<K>(f).plus(forms);

  const auto plane = LinearSubspace<K>::make(planar_sym_leg_names(), SubspaceKind::Points, f, pts);
  const auto dual = dual_space(plane, sbsc_planar7(), Side::Right);
  const Ideal<K> Xpinv = project_model(ideal_X_inv<K>(f), planar_inv_config_names(), opts.groebner);
  const auto config_forms = detail::forms_from_rows(Xpinv.ring(), dual.forms());
  const Ideal<K> config = Xpinv.plus(config_forms);

  // Lift to P^2 x P^2: drop l from the plane equations, substitute s_ij = z_ij + z_ji.
  const std::size_t li = R7->index("l");
  std::vector<std::vector<K>> rows = detail::rows_from_forms(forms);
  std::vector<K> lrow;
  for (const auto& r : rows) lrow.push_back(r[li]);
  auto combos = matrix_kernel(std::vector<std::vector<K>>{lrow}, rows.size(), f);
  if (std::all_of(rows.begin(), rows.end(), [&](const auto& r) { return r[li].is_zero(); })) {
    combos.clear();
    for (std::size_t k = 0; k < rows.size(); ++k) {
      std::vector<K> e(rows.size(), scalar<K>(0, f));
      e[k] = scalar<K>(1, f);
      combos.push_back(e);
    }
  }
  std::vector<std::string> znames;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) znames.push_back("z" + std::to_string(i) + std::to_string(j));
  const RingPtr Z9 = Ring::make(znames, f);
  PolyMatrix<K> zm(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) zm[i].push_back(var<K>(Z9, "z" + std::to_string(i) + std::to_string(j)));
  std::vector<Polynomial<K>> lift = poly_minors(zm, 2, Z9);
  for (const auto& c : combos) {
    Polynomial<K> g(Z9);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      for (std::size_t v = 0; v < R7->size(); ++v) {
        const K coeff = c[k] * rows[k][v];
        if (coeff.is_zero() || v == li) continue;
        const std::string& n = R7->name(v);
        const int a = n[1] - '0', b = n[2] - '0';
        if (n[0] == 'z') {
          g += zm[a][a].scaled(coeff);
        } else {
          g += (zm[a][b] + zm[b][a]).scaled(coeff);
        }
      }
    }
    lift.push_back(g);
  }
  const Ideal<K> lifted(Z9, lift);
  const Ideal<K> base = project_model(lifted, {"z00", "z10", "z20"}, opts.groebner);
  const Ideal<K> plat = project_model(lifted, {"z00", "z01", "z02"}, opts.groebner);
  CubicResult<K> out{forms, pts, config_forms, leg, config, hilbert_data(leg), hilbert_data(config), hilbert_data(lifted), {0, 0}, {}, attempt};
  out.base_hilbert = hilbert_data(base);
  out.bidegree = {out.base_hilbert.degree, hilbert_data(plat).degree};
  return out;
}

template <class K>
struct SymmetroidPencil {
  std::array<Matrix<K>, 4> matrices;                    // E, A1, A2, A3
  std::array<std::vector<K>, 4> points;                 // the same as points of the sym leg P^10
  Polynomial<K> det_poly;                               // in w0..w3
  Polynomial<K> H;                                      // det_poly / w0
  HilbertData singular_locus;                           // of <H, dH/dw>
  long long node_count = -1;                            // degree of the singular locus when finite
  std::vector<std::vector<K>> rational_nodes;           // over F_p
};

/// Gamma = dual under SBSC11 of the span of the preimage of the configuration
/// curve in X_inv: that span is cut by the three planar forms and
/// m11 + m22 + m33 + h. E is dual to the trace form, A_k to the planar forms.
template <class K>
SymmetroidPencil<K> symmetroid_pencil(const CubicResult<K>& cubic, Field f, std::uint64_t rng_seed = 1) {
  const BilinearForm B = sbsc11();
  const Matrix<K> Bm = B.as_matrix<K>(f);
  const Matrix<K> Binv = inverse(Bm);
  const auto names = sym_config_names();
  auto dual_point = [&](const std::vector<K>& form) { return Binv.apply(form); };
  auto extend = [&](const Polynomial<K>& p) {
    std::vector<K> v(names.size(), scalar<K>(0, f));
    const auto c = linear_coefficients(p);
    for (std::size_t i = 0; i < c.size(); ++i) {
      const auto& n = p.ring()->name(i);
      v[static_cast<std::size_t>(std::find(names.begin(), names.end(), n) - names.begin())] = c[i];
    }
    return v;
  };
  std::vector<K> trace(names.size(), scalar<K>(0, f));
  for (const char* n : {"m11", "m22", "m33", "h"}) trace[static_cast<std::size_t>(std::find(names.begin(), names.end(), n) - names.begin())] = scalar<K>(1, f);

  SymmetroidPencil<K> out{};
  out.points[0] = dual_point(trace);
  for (std::size_t k = 0; k < 3; ++k) out.points[k + 1] = dual_point(extend(cubic.config_forms[k]));
  for (std::size_t k = 0; k < 4; ++k) out.matrices[k] = sym_matrix(out.points[k], f);
  // Normalize E to diag(0, 1, 1, 1).
  const K s = out.matrices[0](1, 1).inverse();
  out.matrices[0] = out.matrices[0].scaled(s);
  for (auto& c : out.points[0]) c *= s;
  for (std::size_t k = 1; k < 4; ++k) {
    for (int i = 0; i < 4; ++i) {
      if (!out.matrices[k](3, i).is_zero() || !out.matrices[k](i, 3).is_zero()) throw std::logic_error("symmetroid: A_k has a nonzero last row");
    }
  }
  const RingPtr W = Ring::make({"w0", "w1", "w2", "w3"}, f);
  PolyMatrix<K> pencil(4, std::vector<Polynomial<K>>(4, Polynomial<K>(W)));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (std::size_t k = 0; k < 4; ++k) pencil[i][j] += Polynomial<K>::variable(W, k).scaled(out.matrices[k](i, j));
  out.det_poly = poly_determinant(pencil, W);
  std::vector<Term<K>> q;
  for (const auto& t : out.det_poly.terms()) {
    if (t.m.exp[0] == 0) throw std::logic_error("symmetroid: det is not divisible by w0, term " + out.det_poly.to_string());
    q.push_back({quotient(t.m, W->var(0, 1)), t.c});
  }
  out.H = Polynomial<K>::from_terms(W, std::move(q));
  std::vector<Polynomial<K>> sing{out.H};
  for (std::size_t i = 0; i < 4; ++i) sing.push_back(out.H.derivative(i));
  const Ideal<K> S(W, sing);
  out.singular_locus = hilbert_data(S);
  if (out.singular_locus.dimension == 0) {
    out.node_count = out.singular_locus.degree;
    if constexpr (std::is_same_v<K, Fp>) {
      Rng rng(rng_seed);
      out.rational_nodes = rational_points_fp(S, rng);
    }
  } else if (out.singular_locus.dimension < 0) {
    out.node_count = 0;
  }
  return out;
}

/// Sym leg point of a pencil parameter w.
template <class K>
std::vector<K> pencil_point(const SymmetroidPencil<K>& p, const std::vector<K>& w, Field f) {
  std::vector<K> v(p.points[0].size(), scalar<K>(0, f));
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t c = 0; c < v.size(); ++c) v[c] += w[k] * p.points[k][c];
  return v;
}

}  // namespace podforge
