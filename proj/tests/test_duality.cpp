#include "podforge/constructions.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace podforge;

namespace {

const Field Q = Field::rationals();

Leg<Rational> random_leg(Rng& rng) {
  Leg<Rational> l;
  for (int i = 0; i < 3; ++i) {
    l.a[i] = Rational(rng.integer());
    l.b[i] = Rational(rng.integer());
  }
  l.d2 = Rational(rng.integer());
  return l;
}

/// |R a + t - b|^2 - d^2 computed directly.
Rational brute_sphere(const Leg<Rational>& leg, const std::array<Rational, 9>& R, const std::array<Rational, 3>& t) {
  Rational acc = -leg.d2;
  for (int i = 0; i < 3; ++i) {
    Rational v = t[i] - leg.b[i];
    for (int k = 0; k < 3; ++k) v += R[3 * i + k] * leg.a[k];
    acc += v * v;
  }
  return acc;
}

const std::array<Rational, 9> kIdentity{1, 0, 0, 0, 1, 0, 0, 0, 1};
const std::array<Rational, 3> kZero{0, 0, 0};

bool same_pair(const Leg<Rational>& got, const Leg<Rational>& want) {
  return (got.a == want.a && got.b == want.b) || (got.a == want.b && got.b == want.a);
}

}  // namespace

TEST(Duality, Bsc17IsNondegenerate) { EXPECT_FALSE(determinant(bsc17().as_matrix<Rational>(Q)).is_zero()); }

TEST(Duality, SphereValueExamples) {
  const auto id = IsometryPoint<Rational>::from_affine(kIdentity, kZero, Q);
  EXPECT_EQ(sphere_value(Leg<Rational>{{1, 0, 0}, {1, 0, 0}, 0}, id, Q), Rational(0));
  EXPECT_EQ(sphere_value(Leg<Rational>{{0, 0, 0}, {0, 0, 0}, 1}, id, Q), Rational(-1));
  // Half-turn about the axis (1, 1, 0)/sqrt2 through 0: M = 2 u u^t - id swaps e1 and e2.
  const std::array<Rational, 9> H{0, 1, 0, 1, 0, 0, 0, 0, -1};
  const auto h = IsometryPoint<Rational>::from_affine(H, kZero, Q);
  const Leg<Rational> leg{{1, 0, 0}, {0, 1, 0}, 0};
  EXPECT_EQ(brute_sphere(leg, H, kZero), Rational(0));
  EXPECT_EQ(sphere_value(leg, h, Q), Rational(0));
}

TEST(Duality, SphereValueMatchesBruteForce) {
  Rng rng(31);
  for (int t = 0; t < 300; ++t) {
    // Rational rotation from a random quaternion (w, p, q, s) normalized by its norm.
    const Rational w(rng.integer()), p(rng.integer()), q(rng.integer()), s(rng.nonzero_integer());
    const Rational n = w * w + p * p + q * q + s * s;
    const std::array<Rational, 9> R{(w * w + p * p - q * q - s * s) / n, Rational(2) * (p * q - w * s) / n, Rational(2) * (p * s + w * q) / n,
                                    Rational(2) * (p * q + w * s) / n, (w * w - p * p + q * q - s * s) / n, Rational(2) * (q * s - w * p) / n,
                                    Rational(2) * (p * s - w * q) / n, Rational(2) * (q * s + w * p) / n, (w * w - p * p - q * q + s * s) / n};
    const std::array<Rational, 3> tr{Rational(rng.integer()), Rational(rng.integer()), Rational(rng.integer())};
    const auto leg = random_leg(rng);
    EXPECT_EQ(sphere_value(leg, IsometryPoint<Rational>::from_affine(R, tr, Q), Q), brute_sphere(leg, R, tr));
  }
}

TEST(Duality, LegPointExample) {
  const auto p = leg_to_point(Leg<Rational>{{1, 0, 0}, {0, 1, 0}, 2}, Q);
  const auto names = leg_names();
  auto at = [&](const std::string& n) { return p[static_cast<std::size_t>(std::find(names.begin(), names.end(), n) - names.begin())]; };
  EXPECT_EQ(at("z00"), Rational(1));
  EXPECT_EQ(at("z01"), Rational(0));
  EXPECT_EQ(at("z10"), Rational(1));
  EXPECT_EQ(at("z02"), Rational(1));
  EXPECT_EQ(at("z11"), Rational(0));
  EXPECT_EQ(at("l"), Rational(0));
}

TEST(Duality, LegPointRoundTrip) {
  Rng rng(32);
  for (int t = 0; t < 1000; ++t) {
    const auto leg = random_leg(rng);
    const auto p = leg_to_point(leg, Q);
    std::vector<Rational> scaled;
    const Rational c(rng.nonzero_integer());
    for (const auto& v : p) scaled.push_back(v * c);
    const auto back = point_to_leg(scaled, Q);
    EXPECT_EQ(back.a, leg.a);
    EXPECT_EQ(back.b, leg.b);
    EXPECT_EQ(back.d2, leg.d2);
  }
  std::vector<Rational> at_infinity(17, Rational(0));
  at_infinity[5] = Rational(1);
  EXPECT_THROW(point_to_leg(at_infinity, Q), std::domain_error);
}

TEST(Duality, DotFormExample) {
  const BilinearForm dot{FormKind::BSC17, {"x0", "x1", "x2"}, {"y0", "y1", "y2"}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  const auto S = LinearSubspace<Rational>::make(dot.left, SubspaceKind::Points, Q, {{1, 0, 0}});
  const auto D = dual_space(S, dot, Side::Left);
  EXPECT_EQ(D.kind, SubspaceKind::Forms);
  EXPECT_EQ(D.ambient, dot.right);
  const auto pts = D.points();
  EXPECT_EQ(pts.size(), 2u);
  for (const auto& p : pts) EXPECT_TRUE(p[0].is_zero());
}

TEST(Duality, DualIsInvolutive) {
  Rng rng(33);
  for (FormKind k : {FormKind::BSC17, FormKind::SBSC11, FormKind::BSC_planar10, FormKind::SBSC_planar7}) {
    const auto B = bilinear_form(k);
    for (int t = 0; t < 25; ++t) {
      const Side side = t % 2 == 0 ? Side::Left : Side::Right;
      const auto& amb = side == Side::Left ? B.left : B.right;
      std::vector<std::vector<Rational>> rows;
      const std::size_t dim = 1 + t % (amb.size() - 1);
      for (std::size_t r = 0; r < dim; ++r) rows.push_back(rng.vector_in<Rational>(amb.size(), Q));
      const auto S = LinearSubspace<Rational>::make(amb, t % 3 == 0 ? SubspaceKind::Forms : SubspaceKind::Points, Q, rows);
      const auto D = dual_space(S, B, side);
      EXPECT_EQ(D.as(SubspaceKind::Points).dimension() + S.as(SubspaceKind::Points).dimension(), amb.size());
      const auto DD = dual_space(D, B, side == Side::Left ? Side::Right : Side::Left);
      EXPECT_EQ(DD.kind, S.kind);
      EXPECT_TRUE(DD == S) << to_string(k);
    }
  }
}

TEST(Duality, DualPairsToZero) {
  Rng rng(34);
  const auto B = bsc17();
  const auto S = LinearSubspace<Rational>::make(B.left, SubspaceKind::Points, Q,
                                                {rng.vector_in<Rational>(17, Q), rng.vector_in<Rational>(17, Q)});
  const auto D = dual_space(S, B, Side::Left).as(SubspaceKind::Points);
  for (const auto& s : S.basis)
    for (const auto& w : D.basis) EXPECT_TRUE(B.evaluate(s, w, Q).is_zero());
}

TEST(Duality, RecoverLegPairExamples) {
  const Leg<Rational> leg{{1, 0, 0}, {0, 1, 0}, 0};
  const auto r = recover_leg_pairs(leg_to_sym_point(leg, Q));
  ASSERT_TRUE(r.rational);
  EXPECT_TRUE(same_pair(r.first, leg));
  EXPECT_TRUE(same_pair(r.second, leg));
  EXPECT_EQ(r.first.a, r.second.b);

  // a = b: S = 2 a~ a~^t has rank one, the anchors coincide.
  const auto c = recover_leg_pairs(leg_to_sym_point(Leg<Rational>{{1, 2, 3}, {1, 2, 3}, 0}, Q));
  EXPECT_TRUE(c.coincident);

  // S = diag(2, 2, 0, 0) has signature (2, 0): no real anchors, reported as a complex pair.
  std::vector<Rational> d(11, Rational(0));
  d[9] = d[0] = Rational(1);  // z00 = z11 = 1
  EXPECT_THROW(recover_leg_pairs(d), std::domain_error);

  // Irrational anchors: a + b = (2, 0, 0), a - b = (sqrt2, 0, 0).
  std::vector<Rational> irr(11, Rational(0));
  irr[9] = Rational(1);                 // z00
  irr[6] = Rational(2);                 // s01 = a1 + b1
  irr[0] = Rational(1, 2);              // z11 = a1 b1 = (4 - 2) / 4
  const auto x = recover_leg_pairs(irr);
  EXPECT_FALSE(x.rational);
  EXPECT_EQ(x.discriminant, Rational(2));
}

TEST(Duality, RecoverLegPairsRoundTrip) {
  Rng rng(35);
  for (int t = 0; t < 1000; ++t) {
    auto leg = random_leg(rng);
    if (leg.a == leg.b) continue;
    auto sym = leg_to_sym_point(leg, Q);
    const Rational c(rng.nonzero_integer());
    for (auto& v : sym) v *= c;
    const auto r = recover_leg_pairs(sym);
    ASSERT_TRUE(r.rational);
    EXPECT_TRUE(same_pair(r.first, leg));
    EXPECT_EQ(r.first.d2, leg.d2);
    EXPECT_EQ(r.second.d2, leg.d2);
  }
}

TEST(Duality, RecoverLegPairsFloat) {
  Rng rng(36);
  for (int t = 0; t < 200; ++t) {
    const auto leg = random_leg(rng);
    if (leg.a == leg.b) continue;
    std::vector<double> sym;
    for (const auto& v : leg_to_sym_point(leg, Q)) sym.push_back(v.to_double());
    const auto r = recover_leg_pairs_float(sym);
    ASSERT_FALSE(r.coincident);
    auto dist = [&](const FloatLeg& l) {
      double acc = 0.0;
      for (int i = 0; i < 3; ++i) acc += std::abs(l.a[i] - leg.a[i].to_double());
      return acc;
    };
    const FloatLeg& g = dist(r.first) <= dist(r.second) ? r.first : r.second;
    for (int i = 0; i < 3; ++i) {
      EXPECT_NEAR(g.a[i], leg.a[i].to_double(), 1e-8);
      EXPECT_NEAR(g.b[i], leg.b[i].to_double(), 1e-8);
    }
    EXPECT_NEAR(g.d2, leg.d2.to_double(), 1e-7);
  }
  std::vector<double> d(11, 0.0);
  d[9] = d[0] = 1.0;
  EXPECT_THROW(recover_leg_pairs_float(d), std::domain_error);
}
