#include "podforge/constructions.hpp"
#include "podforge/univariate.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace podforge;

namespace {

const Field Q = Field::rationals();
const Field F101 = Field::prime(101);

RingPtr euler(Field f) { return euler_ring(f); }

}  // namespace

TEST(Field, PrimeArithmeticIsCanonical) {
  const Field f5 = Field::prime(5);
  const Fp a = scalar<Fp>(-3, f5);
  EXPECT_EQ(a.value(), 2u);
  EXPECT_EQ((a * scalar<Fp>(3, f5)).value(), 1u);
  EXPECT_EQ(a.inverse().value(), 3u);
  EXPECT_THROW(Field::prime(9), std::invalid_argument);
  EXPECT_THROW(Field::parse("fp:x"), std::invalid_argument);
  EXPECT_EQ(Field::parse("fp:101").to_string(), "fp:101");
  EXPECT_TRUE(Field::parse("q").is_rational());
}

TEST(Field, RationalsAreExact) {
  const Rational third(1, 3);
  EXPECT_EQ(third + third + third, Rational(1));
  EXPECT_EQ(Rational::parse("-6/4"), Rational(-3, 2));
  EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
}

TEST(Polynomial, ArithmeticExamples) {
  const RingPtr R = euler(Q);
  const auto e1 = var<Rational>(R, "e1"), e2 = var<Rational>(R, "e2");
  EXPECT_TRUE((e1 - e1).is_zero());
  EXPECT_EQ((e1 + e2) * (e1 - e2), e1 * e1 - e2 * e2);

  const RingPtr R5 = euler(Field::prime(5));
  const auto f1 = var<Fp>(R5, "e1");
  EXPECT_EQ(f1.scaled(scalar<Fp>(2, R5->field())).scaled(scalar<Fp>(3, R5->field())), f1);
}

TEST(Polynomial, ParsePrintRoundTrip) {
  const RingPtr R = euler(Q);
  const auto p = Polynomial<Rational>::parse(R, "3/2*e1^2*e3 - e2^3 + 7*e1*e2*e3");
  EXPECT_EQ(Polynomial<Rational>::parse(R, p.to_string()), p);
  EXPECT_TRUE(p.is_homogeneous());
  EXPECT_EQ(p.degree(), 3);
  EXPECT_THROW(Polynomial<Rational>::parse(R, "e4+1"), std::invalid_argument);
}

TEST(Polynomial, MixingFieldsIsRejected) {
  const auto a = var<Rational>(euler(Q), "e1");
  const auto b = var<Rational>(Ring::make({"u", "v", "w"}, Q), "u");
  EXPECT_ANY_THROW(a + b);
  EXPECT_ANY_THROW(Rational::from_int(1, F101));
}

TEST(Polynomial, WeightedDegree) {
  const RingPtr R = Ring::make({"e", "p"}, Q, {1, 2});
  const auto f = var<Rational>(R, "e") * var<Rational>(R, "e") + var<Rational>(R, "p");
  EXPECT_TRUE(f.is_homogeneous());
  EXPECT_EQ(f.degree(), 2);
}

TEST(RingMap, EulerRhoRows) {
  const RingPtr E = euler(Q);
  const auto e1 = var<Rational>(E, "e1"), e2 = var<Rational>(E, "e2"), e3 = var<Rational>(E, "e3");
  const Polynomial<Rational> zero(E);
  const auto rho = euler_rho<Rational>({zero, zero, zero}, zero);
  const RingPtr C = rho.source();
  EXPECT_EQ(rho(var<Rational>(C, "h")), e1 * e1 + e2 * e2 + e3 * e3);
  EXPECT_EQ(rho(var<Rational>(C, "m11")), e1 * e1 - e2 * e2 - e3 * e3);
  EXPECT_EQ(rho(var<Rational>(C, "m12")), (e1 * e2).scaled(Rational(2)));
}

TEST(RingMap, IsAHomomorphism) {
  const RingPtr E = euler(Q);
  Rng rng(3);
  const auto seed = ConstructionSeed<Rational>::draw(rng, Q, 3);
  const auto rho = construction_rho(seed);
  const RingPtr C = rho.source();
  for (int t = 0; t < 10; ++t) {
    const auto f = rng.form<Rational>(Ring::make({"m11", "x1", "h"}, Q), 2).rename_into(C);
    const auto g = rng.linear_form<Rational>(C);
    EXPECT_EQ(rho(f * g), rho(f) * rho(g));
    EXPECT_EQ(rho(f * g + g * g), rho(f * g) + rho(g * g));
  }
  const auto id = RingMap<Rational>::identity(E);
  const auto p = rng.form<Rational>(E, 3);
  EXPECT_EQ(id(p), p);
}

TEST(Linalg, KernelExamples) {
  EXPECT_TRUE(matrix_kernel<Rational>({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 3, Q).empty());
  const auto k = matrix_kernel<Rational>({{Rational(1), Rational(1)}}, 2, Q);
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(k[0][0], -k[0][1]);
  EXPECT_FALSE(k[0][0].is_zero());
}

TEST(Linalg, KernelVectorsAreAnnihilated) {
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    std::vector<std::vector<Fp>> rows;
    for (int r = 0; r < 4; ++r) rows.push_back(rng.vector_in<Fp>(7, F101));
    const auto ker = matrix_kernel(rows, 7, F101);
    EXPECT_EQ(ker.size(), 7u - rank(Matrix<Fp>::from_rows(rows, 7, F101)));
    for (const auto& v : ker)
      for (const auto& row : rows) {
        Fp acc = scalar<Fp>(0, F101);
        for (int j = 0; j < 7; ++j) acc += row[j] * v[j];
        EXPECT_TRUE(acc.is_zero());
      }
  }
}

TEST(Linalg, InverseAndDeterminant) {
  const auto A = Matrix<Rational>::from_rows({{2, 1, 0}, {1, 3, 1}, {0, 1, 4}}, 3, Q);
  // 2 (12 - 1) - 1 (4 - 0) = 18
  EXPECT_EQ(determinant(A), Rational(18));
  EXPECT_EQ(A * inverse(A), Matrix<Rational>::identity(3, Q));
}

TEST(Univariate, SturmIsolation) {
  // (x^2 - 2)(x - 1)(x + 5): roots -5, -sqrt2, 1, sqrt2.
  const UPoly<Rational> f = upoly::mul(upoly::mul(UPoly<Rational>{-2, 0, 1}, UPoly<Rational>{-1, 1}), UPoly<Rational>{5, 1});
  const auto iv = isolate_real_roots(f, Rational(1, 1 << 20));
  ASSERT_EQ(iv.size(), 4u);
  const double expect[] = {-5.0, -std::sqrt(2.0), 1.0, std::sqrt(2.0)};
  for (int i = 0; i < 4; ++i) {
    EXPECT_LE(iv[i].lo.to_double(), expect[i] + 1e-12);
    EXPECT_GE(iv[i].hi.to_double(), expect[i] - 1e-12);
    EXPECT_LE((iv[i].hi - iv[i].lo).to_double(), 1.0 / (1 << 20));
  }
  EXPECT_TRUE(isolate_real_roots(UPoly<Rational>{1, 0, 1}, Rational(1, 8)).empty());
}

TEST(Univariate, SturmCountMatchesSignChanges) {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    // Product of linear factors with distinct integer roots plus x^2 + c, c > 0.
    std::vector<long> roots;
    UPoly<Rational> f{1};
    for (int k = 0; k < 3; ++k) {
      long r;
      do r = rng.integer(9);
      while (std::find(roots.begin(), roots.end(), r) != roots.end());
      roots.push_back(r);
      f = upoly::mul(f, UPoly<Rational>{Rational(-r), 1});
    }
    f = upoly::mul(f, UPoly<Rational>{Rational(1 + std::abs(rng.integer(3) * rng.integer(3))), 0, 1});
    EXPECT_EQ(isolate_real_roots(f, Rational(1, 64)).size(), 3u);
  }
}

TEST(Univariate, RootsModPMatchBruteForce) {
  Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    UPoly<Fp> f;
    for (int k = 0; k < 6; ++k) f.push_back(rng.scalar_in<Fp>(F101));
    f.push_back(scalar<Fp>(1, F101));
    std::vector<std::uint32_t> brute;
    for (long x = 0; x < 101; ++x)
      if (upoly::eval(f, scalar<Fp>(x, F101), F101).is_zero()) brute.push_back(static_cast<std::uint32_t>(x));
    std::vector<std::uint32_t> got;
    for (const auto& r : roots_fp(f, F101, 1 + t)) got.push_back(r.value());
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, brute);
  }
}
