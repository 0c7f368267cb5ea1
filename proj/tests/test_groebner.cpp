#include "podforge/constructions.hpp"
#include "podforge/verify.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace podforge;

namespace {

const Field Q = Field::rationals();
const Field F101 = Field::prime(101);

template <class K>
Ideal<K> parse_ideal(std::vector<std::string> vars, Field f, std::vector<std::string> gens) {
  return Ideal<K>::parse(Ring::make(std::move(vars), f), gens);
}

/// Number of degree-d monomials in n variables not divisible by any of gens.
long long standard_count(const std::vector<std::vector<int>>& gens, std::size_t n, int d) {
  long long count = 0;
  std::vector<int> e(n, 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == n) {
      e[i] = left;
      bool divisible = false;
      for (const auto& g : gens) {
        bool div = true;
        for (std::size_t k = 0; k < n; ++k) div = div && g[k] <= e[k];
        divisible = divisible || div;
      }
      if (!divisible) ++count;
      return;
    }
    for (int a = 0; a <= left; ++a) {
      e[i] = a;
      self(self, i + 1, left - a);
    }
  };
  rec(rec, 0, d);
  return count;
}

}  // namespace

TEST(Groebner, SingleVariable) {
  const auto I = parse_ideal<Rational>({"x"}, Q, {"x"});
  ASSERT_EQ(I.groebner().size(), 1u);
  EXPECT_EQ(I.groebner()[0].to_string(), "x");
}

TEST(Groebner, TwistedCubic) {
  // 2x2 minors of [[x, y, z], [y, z, w]]: the twisted cubic, (dim 1, deg 3, genus 0).
  const auto I = parse_ideal<Rational>({"x", "y", "z", "w"}, Q, {"x*z-y^2", "x*w-y*z", "y*w-z^2"});
  const auto h = hilbert_data(I);
  EXPECT_EQ(h.dimension, 1);
  EXPECT_EQ(h.degree, 3);
  EXPECT_EQ(h.arithmetic_genus, 0);
  // Every GB element lies in the ideal and reduces to zero by hand-checked syzygies.
  for (const auto& g : I.groebner()) EXPECT_TRUE(I.contains(g));
  const RingPtr R = I.ring();
  EXPECT_TRUE(I.contains(Polynomial<Rational>::parse(R, "x*w^2-z^3")));
  EXPECT_FALSE(I.contains(Polynomial<Rational>::parse(R, "x*w")));
}

TEST(Groebner, RecomputationIsReproducible) {
  const auto a = ideal_Y<Fp>(F101);
  const auto b = ideal_Y<Fp>(F101);
  EXPECT_EQ(a.groebner(), b.groebner());
}

TEST(Groebner, NormalFormExamples) {
  const auto I = parse_ideal<Rational>({"x", "y"}, Q, {"x^2-y^2", "x*y"});
  EXPECT_TRUE(I.normal_form(I.generators()[0]).is_zero());
  const auto one = Polynomial<Rational>::constant(I.ring(), 1);
  EXPECT_EQ(I.normal_form(one), one);
}

TEST(Groebner, EliminationExamples) {
  const auto I = parse_ideal<Rational>({"x", "y"}, Q, {"x-y"});
  EXPECT_TRUE(eliminate(I, {"x"}).generators().empty());
}

TEST(Groebner, VeroneseImplicitization) {
  const auto phi = veronese_map<Rational>(Q);
  const auto img = preimage(phi, Ideal<Rational>(phi.target(), {}));
  const auto cat = veronese_catalecticant<Rational>(Q);
  EXPECT_TRUE(detail::same_ideal(img, cat));
  const auto h = hilbert_data(cat);
  EXPECT_EQ(h.dimension, 3);
  EXPECT_EQ(h.degree, 8);
}

TEST(Groebner, Saturation) {
  const auto I = parse_ideal<Rational>({"x", "y", "z"}, Q, {"x*y", "x*z"});
  const auto S = saturate(I, "x");
  EXPECT_TRUE(detail::same_ideal(S, parse_ideal<Rational>({"x", "y", "z"}, Q, {"y", "z"}).rebase(S.ring())));
}

TEST(Groebner, LinearPart) {
  const auto I = parse_ideal<Rational>({"x", "y"}, Q, {"x+y", "x^2"});
  const auto lin = linear_part(I);
  ASSERT_EQ(lin.size(), 1u);
  EXPECT_EQ(lin[0].monic().to_string(), "x+y");
}

TEST(Hilbert, LineInP3) {
  Rng rng(2);
  const RingPtr R = Ring::make({"x0", "x1", "x2", "x3"}, F101);
  const auto h = hilbert_data(Ideal<Fp>(R, {rng.linear_form<Fp>(R), rng.linear_form<Fp>(R)}));
  EXPECT_EQ(h.dimension, 1);
  EXPECT_EQ(h.degree, 1);
  EXPECT_EQ(h.arithmetic_genus, 0);
}

TEST(Hilbert, FunctionMatchesMonomialCount) {
  Rng rng(4);
  for (int t = 0; t < 25; ++t) {
    const std::size_t n = 3 + static_cast<std::size_t>(rng.raw() % 3);
    std::vector<std::vector<int>> gens;
    for (int g = 0; g < 4; ++g) {
      std::vector<int> e(n);
      for (auto& x : e) x = static_cast<int>(rng.raw() % 3);
      if (std::all_of(e.begin(), e.end(), [](int x) { return x == 0; })) e[0] = 1;
      gens.push_back(e);
    }
    const auto h = hilbert_from_monomials(gens, n);
    for (int d = 0; d <= 8; ++d) EXPECT_EQ(h.hilbert_function(d), standard_count(gens, n, d)) << "degree " << d;
    // For large degree the Hilbert polynomial agrees with the function.
    EXPECT_EQ(h.hilbert_polynomial_at(12), Rational(standard_count(gens, n, 12)));
  }
}

TEST(Hilbert, CurveGenusFromPolynomial) {
  // Plane quartic: HP(t) = 4t - 2, genus 3.
  const auto I = parse_ideal<Rational>({"x", "y", "z"}, Q, {"x^4+y^4+z^4"});
  const auto h = hilbert_data(I);
  EXPECT_EQ(h.degree, 4);
  EXPECT_EQ(h.arithmetic_genus, 3);
  EXPECT_EQ(h.hilbert_polynomial_at(10), Rational(4 * 10 - 2));
}

TEST(ZeroDim, PointsOfTwoConicsMatchEnumeration) {
  Rng rng(8);
  const RingPtr R = Ring::make({"x", "y", "z"}, F101);
  int checked = 0;
  for (int t = 0; t < 10; ++t) {
    const Ideal<Fp> I(R, {rng.form<Fp>(R, 2), rng.form<Fp>(R, 2)});
    std::vector<std::vector<Fp>> pts;
    try {
      pts = rational_points_fp(I, rng);
    } catch (const std::exception&) {
      continue;  // non-reduced or non-separating; skipped
    }
    ++checked;
    std::set<std::vector<std::uint32_t>> got, brute;
    for (const auto& p : pts) {
      std::vector<std::uint32_t> k;
      for (const auto& c : normalize_projective(p)) k.push_back(c.value());
      got.insert(k);
    }
    // Enumerate P^2(F_101) in normalized form.
    auto test = [&](std::vector<Fp> p) {
      for (const auto& g : I.generators())
        if (!g.evaluate(p).is_zero()) return;
      std::vector<std::uint32_t> k;
      for (const auto& c : p) k.push_back(c.value());
      brute.insert(k);
    };
    for (long a = 0; a < 101; ++a)
      for (long b = 0; b < 101; ++b) test({Fp(1, 101), Fp(a, 101), Fp(b, 101)});
    for (long b = 0; b < 101; ++b) test({Fp(0, 101), Fp(1, 101), Fp(b, 101)});
    test({Fp(0, 101), Fp(0, 101), Fp(1, 101)});
    EXPECT_EQ(got, brute);
  }
  EXPECT_GE(checked, 5);
}

TEST(ZeroDim, RealPointsOverQ) {
  // y^2 = 2 x^2, z = x: the two points (1 : +-sqrt2 : 1).
  const auto I = parse_ideal<Rational>({"x", "y", "z"}, Q, {"y^2-2*x^2", "z-x"});
  Rng rng(1);
  const auto pts = real_points_q(I, rng);
  ASSERT_EQ(pts.size(), 2u);
  std::vector<double> ratios;
  for (const auto& p : pts) {
    EXPECT_NEAR(p.coords[2] / p.coords[0], 1.0, 1e-12);
    ratios.push_back(p.coords[1] / p.coords[0]);
  }
  std::sort(ratios.begin(), ratios.end());
  EXPECT_NEAR(ratios[0], -std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(ratios[1], std::sqrt(2.0), 1e-12);
  // x^2 + y^2 = 0 has no real points besides the excluded origin direction.
  const auto J = parse_ideal<Rational>({"x", "y", "z"}, Q, {"x^2+y^2", "z-x"});
  EXPECT_TRUE(real_points_q(J, rng).empty());
}
