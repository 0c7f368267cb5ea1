#include "podforge/constructions.hpp"
#include "podforge/verify.hpp"

#include <gtest/gtest.h>

using namespace podforge;

namespace {

const Field Q = Field::rationals();
const Field F101 = Field::prime(101);

template <class K>
bool vanishes(const Ideal<K>& I, const std::vector<K>& p) {
  for (const auto& g : I.generators())
    if (!g.evaluate(p).is_zero()) return false;
  return true;
}

/// |R a + t - b|^2 - d^2 for a projective configuration point with h != 0 (dim 2 or 3).
template <class K>
K affine_sphere(const std::vector<K>& M, const std::vector<K>& y, const K& h, const Leg<K>& leg, std::size_t dim, Field f) {
  const K inv = h.inverse();
  K acc = -leg.d2;
  for (std::size_t i = 0; i < dim; ++i) {
    K v = y[i] * inv - leg.b[i];
    for (std::size_t k = 0; k < dim; ++k) v += M[dim * i + k] * inv * leg.a[k];
    acc += v * v;
  }
  (void)f;
  return acc;
}

std::vector<Leg<Fp>> random_planar_legs(Rng& rng, int n) {
  std::vector<Leg<Fp>> legs;
  for (int k = 0; k < n; ++k) {
    Leg<Fp> l;
    l.a = {rng.scalar_in<Fp>(F101), rng.scalar_in<Fp>(F101), scalar<Fp>(0, F101)};
    l.b = {rng.scalar_in<Fp>(F101), rng.scalar_in<Fp>(F101), scalar<Fp>(0, F101)};
    l.d2 = rng.scalar_in<Fp>(F101);
    legs.push_back(l);
  }
  return legs;
}

}  // namespace

TEST(Seed, SyzygyAndQuartic) {
  Rng rng(40);
  for (int t = 0; t < 10; ++t) {
    const auto s = ConstructionSeed<Rational>::draw(rng, Q, 40);
    const auto P = s.P();
    const auto e1 = var<Rational>(s.ring, "e1"), e2 = var<Rational>(s.ring, "e2"), e3 = var<Rational>(s.ring, "e3");
    EXPECT_TRUE((e1 * P[0] + e2 * P[1] + e3 * P[2]).is_zero());
    const auto F = s.F();
    EXPECT_TRUE(F.is_homogeneous());
    EXPECT_EQ(F.degree(), 4);
  }
}

TEST(Seed, DegenerateSeedsAreRejected) {
  const RingPtr E = euler_ring(Q);
  const auto e2 = var<Rational>(E, "e2"), e3 = var<Rational>(E, "e3");
  const Polynomial<Rational> zero(E);
  Rng rng(41);
  const ConstructionSeed<Rational> p_zero{E, {zero, zero, zero}, rng.form<Rational>(E, 2), 0};
  EXPECT_THROW(create_infinity_pod(p_zero), DegenerateInput);
  // L = w x e with w = (1, 0, 0) and U = |w|^2 |e|^2 - <w, e>^2 gives F = 0.
  const ConstructionSeed<Rational> flat{E, {zero, -e3, e2}, e2 * e2 + e3 * e3, 0};
  EXPECT_TRUE(flat.F().is_zero());
  EXPECT_THROW(create_infinity_pod(flat), DegenerateInput);
}

TEST(Infinity, RhoImagesReduceModuloF) {
  Rng rng(42);
  for (int t = 0; t < 3; ++t) {
    const auto s = ConstructionSeed<Rational>::draw(rng, Q, 42);
    const auto rho = construction_rho(s);
    const std::vector<Polynomial<Rational>> F{s.F()};
    const RingPtr C = rho.source();
    const auto Xi = ideal_X_inv<Rational>(Q);
    for (const auto& g : Xi.generators()) {
      EXPECT_TRUE(normal_form(rho(g.rename_into(C)), F).is_zero()) << g.to_string();
    }
    Polynomial<Rational> q = var<Rational>(C, "r") * var<Rational>(C, "h");
    for (int i = 1; i <= 3; ++i) q -= var<Rational>(C, "x" + std::to_string(i)) * var<Rational>(C, "x" + std::to_string(i));
    EXPECT_EQ(rho(q), s.F().scaled(Rational(-1, 4)));
  }
}

TEST(Infinity, LinearKernelHasDimensionEleven) {
  Rng rng(43);
  const auto s = ConstructionSeed<Rational>::draw(rng, Q, 43);
  const auto rho = construction_rho(s);
  const auto lin = rho_linear_kernel(rho);
  EXPECT_EQ(lin.size(), 11u);
  for (const auto& l : lin) EXPECT_TRUE(rho(l).is_zero());
  // The 17 images span the six quadratic monomials.
  std::vector<std::vector<Rational>> imgs;
  const auto monos = standard_monomials(*s.ring, {}, 2);
  for (std::size_t i = 0; i < 17; ++i) {
    std::vector<Rational> row(monos.size(), Rational(0));
    for (const auto& term : rho.image(i).terms())
      row[static_cast<std::size_t>(std::find(monos.begin(), monos.end(), term.m) - monos.begin())] = term.c;
    imgs.push_back(row);
  }
  EXPECT_EQ(rank(Matrix<Rational>::from_rows(imgs, monos.size(), Q)), 6u);
}

TEST(Infinity, CertificationOverFp) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto b = create_infinity_pod<Fp>(seed, F101);
    const auto& c = b.certification;
    EXPECT_EQ(c.i_lin_dimension, 11u);
    EXPECT_EQ(b.l_lin.as(SubspaceKind::Points).dimension(), 11u);
    EXPECT_EQ(c.leg_sym.dimension, 1);
    EXPECT_EQ(c.leg_sym.degree, 10);
    EXPECT_EQ(c.leg_sym.arithmetic_genus, 6);
    EXPECT_EQ(c.leg_full.dimension, 1);
    EXPECT_EQ(c.leg_full.degree, 20);
    EXPECT_EQ(c.leg_full.arithmetic_genus, 11);
    EXPECT_EQ(c.config.dimension, 1);
    EXPECT_TRUE(c.linear_routes_agree);
    EXPECT_TRUE(c.sym_routes_agree);
  }
}

TEST(Infinity, SampledPairsSatisfyTheSphereCondition) {
  const auto b = create_infinity_pod<Fp>(5, F101);
  Rng rng(44);
  const auto configs = sample_curve_points(b.config_ideal, 25, rng);
  const auto legs = sample_curve_points(b.leg_ideal_full, 25, rng);
  ASSERT_GE(configs.points.size(), 25u);
  ASSERT_GE(legs.points.size(), 25u);
  const auto report = check_pod_exact(configs.points, legs.points, F101);
  EXPECT_TRUE(report.passed);
  EXPECT_EQ(report.failures, 0u);
  // Independent check through affine isometries and anchor points.
  int affine_pairs = 0;
  for (const auto& c : configs.points) {
    const auto s = IsometryPoint<Fp>::from_coords(c);
    if (s.h.is_zero()) continue;
    EXPECT_TRUE(vanishes(ideal_X_inv<Fp>(F101), c));
    for (const auto& l : legs.points) {
      if (l[0].is_zero()) continue;
      const auto leg = point_to_leg(l, F101);
      EXPECT_TRUE(affine_sphere(std::vector<Fp>(s.M.begin(), s.M.end()), std::vector<Fp>(s.y.begin(), s.y.end()), s.h, leg, 3, F101).is_zero());
      ++affine_pairs;
    }
  }
  EXPECT_GE(affine_pairs, 25);
}

TEST(Infinity, SymmetricLegCurveSamples) {
  const auto b = create_infinity_pod<Fp>(6, F101);
  Rng rng(45);
  const auto pts = sample_curve_points(b.leg_ideal_sym, 25, rng);
  const auto Yi = ideal_Y_inv<Fp>(F101);
  for (const auto& p : pts.points) {
    EXPECT_TRUE(vanishes(Yi, p));
    EXPECT_LE(rank(sym_matrix(p, F101)), 2u);
  }
  for (int t = 0; t < 5; ++t) {
    const auto slice = b.leg_ideal_sym.plus({rng.linear_form<Fp>(b.leg_ideal_sym.ring())});
    const auto h = hilbert_data(slice);
    EXPECT_EQ(h.dimension, 0);
    EXPECT_LE(h.degree, 10);
  }
}

TEST(Infinity, BaseCurve) {
  const auto b = create_infinity_pod<Fp>(2, F101);
  const auto base = base_curve(b);
  const auto h = hilbert_data(base);
  EXPECT_EQ(h.dimension, 1);
  EXPECT_EQ(h.degree, 10);
  EXPECT_TRUE(detail::same_ideal(base, platform_curve(b)));
  Rng rng(46);
  const auto legs = sample_curve_points(b.leg_ideal_full, 25, rng);
  for (const auto& l : legs.points) EXPECT_TRUE(vanishes(base, std::vector<Fp>{l[0], l[4], l[8], l[12]}));
}

TEST(Duporcq, SixthLegOverQ) {
  Rng rng(47);
  for (int t = 0; t < 5; ++t) {
    std::vector<Leg<Rational>> legs;
    for (int k = 0; k < 5; ++k) {
      legs.push_back({{Rational(rng.integer()), Rational(rng.integer()), Rational(0)},
                      {Rational(rng.integer()), Rational(rng.integer()), Rational(0)},
                      Rational(rng.integer())});
    }
    const auto r = duporcq_sixth_leg(legs, Q);
    EXPECT_TRUE(vanishes(ideal_Y_p<Rational>(Q), r.point));
    for (const auto& w : r.weights) EXPECT_FALSE(w.is_zero());
  }
}

TEST(Duporcq, SixthLegMovesWithThePentapod) {
  Rng rng(50);
  auto legs = random_planar_legs(rng, 5);
  const auto r = duporcq_sixth_leg(legs, F101);
  legs.push_back(r.leg);
  const BilinearForm B = bsc_planar10();
  std::vector<std::vector<Fp>> pts;
  for (std::size_t k = 0; k < 5; ++k) pts.push_back(detail::planar_leg_point(legs[k], F101));
  const auto span = LinearSubspace<Fp>::make(planar_leg_names(), SubspaceKind::Points, F101, pts);
  const auto dual = dual_space(span, B, Side::Right);
  const auto Xp = project_model(ideal_X<Fp>(F101), planar_config_names());
  const auto configs = Xp.plus(detail::forms_from_rows(Xp.ring(), dual.forms()));
  ASSERT_EQ(hilbert_data(configs).dimension, 1);
  const auto sample = sample_curve_points(configs, 10, rng);
  ASSERT_GE(sample.points.size(), 10u);
  int affine = 0;
  for (const auto& c : sample.points) {
    for (const auto& l : legs) EXPECT_TRUE(B.evaluate(c, detail::planar_leg_point(l, F101), F101).is_zero());
    if (c[9].is_zero()) continue;
    ++affine;
    // Planar anchors under a spatial motion: |R a + t - b|^2 - d^2 expands to
    // |a|^2 + |b|^2 + |t|^2 - 2 x.a - 2 y.b - 2 b^t M a - d^2 with x = -R^t t, y = t.
    const Fp inv = c[9].inverse();
    for (const auto& l : legs) {
      Fp v = c[8] * inv - l.d2;
      for (int i = 0; i < 2; ++i) {
        v += l.a[i] * l.a[i] + l.b[i] * l.b[i];
        v -= scalar<Fp>(2, F101) * inv * (c[4 + i] * l.a[i] + c[6 + i] * l.b[i]);
        for (int k = 0; k < 2; ++k) v -= scalar<Fp>(2, F101) * inv * l.b[i] * c[2 * i + k] * l.a[k];
      }
      EXPECT_TRUE(v.is_zero());
    }
  }
  EXPECT_GT(affine, 0);
}

TEST(Duporcq, SharedBaseIsDegenerate) {
  Rng rng(49);
  auto legs = random_planar_legs(rng, 5);
  for (auto& l : legs) l.a = legs[0].a;
  EXPECT_THROW(duporcq_sixth_leg(legs, F101), DegenerateInput);
}

TEST(Hexapod, LegCurve) {
  Rng rng(50);
  const auto legs = random_planar_legs(rng, 6);
  const auto I = hexapod_leg_curve(legs, F101);
  const auto h = hilbert_data(I);
  EXPECT_EQ(h.dimension, 1);
  EXPECT_EQ(h.degree, 6);
  for (const auto& l : legs) EXPECT_TRUE(vanishes(I, detail::planar_leg_point(l, F101)));
  auto bent = legs;
  bent[2].a[2] = scalar<Fp>(1, F101);
  EXPECT_THROW(hexapod_leg_curve(bent, F101), std::invalid_argument);
}

TEST(ConicProduct, GenericConics) {
  Rng rng(51);
  std::array<std::array<Fp, 3>, 3> fm, gm;
  for (auto& r : fm)
    for (auto& c : r) c = rng.scalar_in<Fp>(F101);
  for (auto& r : gm)
    for (auto& c : r) c = rng.scalar_in<Fp>(F101);
  const auto res = conic_product_legs(fm, gm, rng.vector_in<Fp>(9, F101), F101);
  EXPECT_EQ(res.span_rank, 5u);
  EXPECT_EQ(res.leg_hilbert.dimension, 1);
  EXPECT_EQ(res.leg_hilbert.degree, 4);
  EXPECT_EQ(res.config_hilbert.dimension, 1);
}

TEST(ConicProduct, CoincidentConicsContainIdentity) {
  Rng rng(52);
  std::array<std::array<Fp, 3>, 3> fm;
  for (auto& r : fm)
    for (auto& c : r) c = rng.scalar_in<Fp>(F101);
  // Zero-length legs with a = b: l = |a|^2 + |b|^2 = 2 (z11 + z22).
  std::vector<Fp> l(9, scalar<Fp>(0, F101));
  l[4] = l[8] = scalar<Fp>(2, F101);
  const auto res = conic_product_legs(fm, fm, l, F101);
  std::vector<Fp> id(10, scalar<Fp>(0, F101));
  id[0] = id[3] = id[9] = scalar<Fp>(1, F101);  // m11 = m22 = h = 1
  EXPECT_TRUE(vanishes(res.config_ideal, id));
}

TEST(Cubic, InvariantsAndSphereCondition) {
  const auto c = cubic_line_symmetric<Fp>(2, F101);
  EXPECT_EQ(c.leg_hilbert.dimension, 1);
  EXPECT_EQ(c.leg_hilbert.degree, 3);
  EXPECT_EQ(c.leg_hilbert.arithmetic_genus, 1);
  EXPECT_EQ(c.config_hilbert.dimension, 1);
  EXPECT_EQ(c.config_hilbert.degree, 6);
  EXPECT_EQ(c.bidegree[0], 3);
  EXPECT_EQ(c.bidegree[1], 3);
  EXPECT_EQ(c.base_hilbert.degree, 3);
  Rng rng(53);
  const auto configs = sample_curve_points(c.config_ideal, 25, rng);
  const auto legs = sample_curve_points(c.leg_ideal, 25, rng);
  ASSERT_GE(configs.points.size(), 25u);
  ASSERT_GE(legs.points.size(), 25u);
  const BilinearForm B = sbsc_planar7();
  for (const auto& x : configs.points)
    for (const auto& l : legs.points) EXPECT_TRUE(B.evaluate(x, l, F101).is_zero());
}

TEST(Cubic, Symmetroid) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto c = cubic_line_symmetric<Fp>(seed, F101);
    const auto s = symmetroid_pencil(c, F101, seed);
    const RingPtr W = s.det_poly.ring();
    EXPECT_EQ(s.det_poly, var<Fp>(W, "w0") * s.H);
    EXPECT_EQ(s.H.degree(), 3);
    EXPECT_GE(s.node_count, 0);
    EXPECT_LE(s.node_count, 4);
    const auto Yi = ideal_Y_inv<Fp>(F101);
    for (const auto& node : s.rational_nodes) {
      const auto p = pencil_point(s, node, F101);
      EXPECT_LE(rank(sym_matrix(p, F101)), 2u);
      EXPECT_TRUE(vanishes(Yi, p));
    }
  }
}
