#include "podforge/verify.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace podforge;

namespace {

const Field Q = Field::rationals();
const Field F101 = Field::prime(101);

double rel_value(const Polynomial<Rational>& g, const std::vector<double>& p) {
  double scale = 0.0;
  for (const auto& t : g.terms()) {
    double m = std::abs(t.c.to_double());
    for (std::size_t i = 0; i < p.size(); ++i) m *= std::pow(std::abs(p[i]), t.m.exp[i]);
    scale += m;
  }
  return std::abs(g.evaluate_double(p)) / std::max(scale, 1.0);
}

}  // namespace

TEST(Sampling, LineOverF5) {
  const Field f5 = Field::prime(5);
  const auto I = Ideal<Fp>::parse(Ring::make({"x0", "x1", "x2", "x3"}, f5), {"x2", "x3"});
  Rng rng(60);
  const auto s = sample_curve_points(I, 10, rng);
  EXPECT_LE(s.points.size(), 6u);
  EXPECT_GE(s.points.size(), 1u);
  EXPECT_FALSE(s.complete);
  for (const auto& p : s.points) {
    EXPECT_TRUE(p[2].is_zero());
    EXPECT_TRUE(p[3].is_zero());
  }
}

TEST(Sampling, RejectsNonCurves) {
  const auto I = Ideal<Fp>::parse(Ring::make({"x", "y", "z"}, F101), {"x", "y"});
  Rng rng(61);
  EXPECT_THROW(sample_curve_points(I, 3, rng), std::invalid_argument);
}

TEST(CheckPod, PerturbedLegFails) {
  const auto b = create_infinity_pod<Fp>(3, F101);
  Rng rng(62);
  const auto configs = sample_curve_points(b.config_ideal, 5, rng).points;
  auto legs = sample_curve_points(b.leg_ideal_full, 5, rng).points;
  EXPECT_TRUE(check_pod_exact(configs, legs, F101).passed);
  // d^2 + 1 lowers l by z00.
  legs[0][16] -= legs[0][0];
  const auto r = check_pod_exact(configs, legs, F101);
  EXPECT_FALSE(r.passed);
  EXPECT_GT(r.failures, 0u);
}

TEST(CheckPod, EmptyInputsPass) {
  EXPECT_TRUE(check_pod_exact<Fp>({}, {}, F101).passed);
  EXPECT_TRUE(check_pod_float({}, {}, 1e-9).passed);
}

class RealPath : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    ConstructionOptions o;
    o.certify = false;
    o.cross_check = false;
    bundle_ = new InfinityPodBundle<Rational>(create_infinity_pod<Rational>(1, Q, o));
  }
  static void TearDownTestSuite() { delete bundle_; }
  static InfinityPodBundle<Rational>* bundle_;
};

InfinityPodBundle<Rational>* RealPath::bundle_ = nullptr;

TEST_F(RealPath, HalfTurns) {
  const auto configs = real_configurations(bundle_->seed, 6);
  ASSERT_EQ(configs.size(), 6u);
  const auto F = bundle_->seed.F();
  for (const auto& c : configs) {
    const auto e = half_turn_error(c);
    EXPECT_LE(e.orthogonality, 1e-12);
    EXPECT_LE(e.determinant, 1e-12);
    EXPECT_LE(e.trace, 1e-12);
    EXPECT_LE(rel_value(F, {c.e[0], c.e[1], c.e[2]}), 1e-12);
    // Applying the isometry twice returns a point to itself.
    const std::array<double, 3> p{0.3, -1.7, 2.2};
    std::array<double, 3> q{}, r{};
    for (int i = 0; i < 3; ++i) {
      q[i] = c.translation[i];
      for (int k = 0; k < 3; ++k) q[i] += c.M[3 * i + k] * p[k];
    }
    for (int i = 0; i < 3; ++i) {
      r[i] = c.translation[i];
      for (int k = 0; k < 3; ++k) r[i] += c.M[3 * i + k] * q[k];
    }
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(r[i], p[i], 1e-9);
  }
}

TEST_F(RealPath, LegsOnTheCurve) {
  Rng rng(63);
  const auto legs = real_legs(bundle_->leg_ideal_full, 3, rng, 2);
  ASSERT_GE(legs.legs.size(), 1u);
  EXPECT_EQ(legs.slice_degree, 20u);
  const auto Y = ideal_Y<Rational>(Q);
  const auto base = base_curve(*bundle_);
  for (const auto& p : legs.points) {
    for (const auto& g : Y.generators()) EXPECT_LE(rel_value(g, p), 1e-9);
    for (const auto& g : bundle_->leg_ideal_full.generators()) EXPECT_LE(rel_value(g, p), 1e-9);
    for (const auto& g : base.generators()) EXPECT_LE(rel_value(g, {p[0], p[4], p[8], p[12]}), 1e-9);
  }
  const auto configs = real_configurations(bundle_->seed, 4);
  const auto report = check_pod_float(configs, legs.legs, 1e-9);
  EXPECT_TRUE(report.passed) << report.max_residual;
}
