#pragma once

// The acceptance suite: each criterion recomputes a published invariant or an
// end-to-end property from scratch and reports pass/fail with a short detail.

#include "podforge/constructions.hpp"
#include "podforge/verify.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace podforge {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

namespace acceptance {

inline std::string hd(const HilbertData& h) { return "(" + describe(h) + ")"; }

inline bool is(const HilbertData& h, int dim, long long deg) { return h.dimension == dim && h.degree == deg; }

inline CriterionResult c1() {
  const auto h = hilbert_data(ideal_X<Fp>(Field::prime(101)));
  return {1, "ideal_X over fp:101 has dim 6, deg 40", is(h, 6, 40), hd(h)};
}

inline CriterionResult c2() {
  const auto h = hilbert_data(ideal_Y_inv<Fp>(Field::prime(101)));
  return {2, "ideal_Y_inv has dim 7, deg 10", is(h, 7, 10), hd(h)};
}

inline CriterionResult c3() {
  const Field f = Field::prime(101);
  const auto yp = hilbert_data(ideal_Y_p<Fp>(f));
  const auto xp = hilbert_data(project_model(ideal_X<Fp>(f), planar_config_names()));
  const auto xpinv = hilbert_data(project_model(ideal_X_inv<Fp>(f), planar_inv_config_names()));
  return {3, "Y_p (5, 6), X_p (6, 20), X_pinv (4, 6)", is(yp, 5, 6) && is(xp, 6, 20) && is(xpinv, 4, 6),
          "Y_p " + hd(yp) + ", X_p " + hd(xp) + ", X_pinv " + hd(xpinv)};
}

inline CriterionResult c4() {
  const Field f = Field::prime(101);
  int good = 0;
  std::string first_bad;
  double slowest = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto b = create_infinity_pod<Fp>(seed, f);
    slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    const auto& c = b.certification;
    const bool ok = c.i_lin_dimension == 11 && is(c.leg_sym, 1, 10) && c.leg_sym.arithmetic_genus == 6 && is(c.leg_full, 1, 20) &&
                    c.leg_full.arithmetic_genus == 11 && c.linear_routes_agree && c.sym_routes_agree;
    if (ok) {
      ++good;
    } else if (first_bad.empty()) {
      first_bad = "; seed " + std::to_string(seed) + ": I_lin " + std::to_string(c.i_lin_dimension) + ", L " + hd(c.leg_sym) + ", L~ " + hd(c.leg_full);
    }
  }
  std::ostringstream d;
  d << good << "/20 seeds give dim I_lin 11, L (1, 10, 6), L~ (1, 20, 11); slowest run " << slowest << " s" << first_bad;
  return {4, "create_infinity_pod over fp:101, 20 seeds", good == 20 && slowest <= 120.0, d.str()};
}

inline CriterionResult c5() {
  const auto b = create_infinity_pod<Fp>(1, Field::prime(101));
  const auto base = base_curve(b);
  const auto h = hilbert_data(base);
  const bool same = detail::same_ideal(base, platform_curve(b));
  return {5, "base curve has degree 10 in P^3", is(h, 1, 10),
          hd(h) + (same ? ", platform curve equal" : ", platform curve differs")};
}

inline CriterionResult c6() {
  const Field q = Field::rationals();
  ConstructionOptions o;
  o.certify = false;
  o.cross_check = false;
  const auto b = create_infinity_pod<Rational>(1, q, o);
  const auto configs = real_configurations(b.seed, 12);
  Rng rng(1);
  const auto legs = real_legs(b.leg_ideal_full, 6, rng);
  const auto report = check_pod_float(configs, legs.legs, 1e-9, "seed 1");
  double worst = 0.0;
  for (const auto& c : configs) {
    const auto e = half_turn_error(c);
    worst = std::max({worst, e.orthogonality, e.trace, e.determinant});
  }
  std::ostringstream d;
  d << legs.legs.size() << " real legs (" << report.realizable_legs << " with d^2 > 0, slice degree " << legs.slice_degree << "), "
    << configs.size() << " half-turns; max relative residual " << report.max_residual << ", max half-turn error " << worst;
  const bool ok = legs.legs.size() >= 5 && configs.size() >= 10 && report.passed && worst <= 1e-12;
  return {6, "real infinity-pod over Q: legs x half-turns satisfy the sphere condition", ok, d.str()};
}

inline CriterionResult c7() {
  const Field q = Field::rationals();
  const BilinearForm B = bsc_planar10();
  int good = 0, draws = 0;
  std::string bad;
  for (std::uint64_t s = 1; good < 20 && draws < 40; ++s) {
    ++draws;
    Rng rng(1000 + s);
    std::vector<Leg<Rational>> legs;
    for (int k = 0; k < 5; ++k) {
      legs.push_back({{Rational(rng.integer()), Rational(rng.integer()), Rational(0)},
                      {Rational(rng.integer()), Rational(rng.integer()), Rational(0)},
                      Rational(rng.integer())});
    }
    try {
      const auto six = duporcq_sixth_leg(legs, q);
      std::vector<std::vector<Rational>> pts;
      for (const auto& l : legs) pts.push_back(detail::planar_leg_point(l, q));
      const auto span5 = LinearSubspace<Rational>::make(planar_leg_names(), SubspaceKind::Points, q, pts);
      pts.push_back(detail::planar_leg_point(six.leg, q));
      const auto span6 = LinearSubspace<Rational>::make(planar_leg_names(), SubspaceKind::Points, q, pts);
      if (dual_space(span5, B, Side::Right) == dual_space(span6, B, Side::Right)) {
        ++good;
      } else if (bad.empty()) {
        bad = "; dual spans differ for draw " + std::to_string(s);
      }
    } catch (const DegenerateInput& e) {
      if (bad.empty()) bad = std::string("; draw ") + std::to_string(s) + ": " + e.what();
    }
  }
  return {7, "Duporcq: rational sixth leg with unchanged dual span", good == 20 && draws == 20,
          std::to_string(good) + "/" + std::to_string(draws) + " random pentapods" + bad};
}

inline CriterionResult c8() {
  const Field f = Field::prime(101);
  const auto c = cubic_line_symmetric<Fp>(1, f);
  const auto s = symmetroid_pencil(c, f);
  std::ostringstream d;
  d << "legs " << hd(c.leg_hilbert) << ", configurations " << hd(c.config_hilbert) << ", det = w0 H with deg H " << s.H.degree()
    << ", nodes " << s.node_count << " (" << s.rational_nodes.size() << " over fp:101)";
  const bool ok = is(c.leg_hilbert, 1, 3) && c.leg_hilbert.arithmetic_genus == 1 && c.config_hilbert.degree == 6 &&
                  c.config_hilbert.dimension == 1 && s.H.degree() == 3 && s.H.is_homogeneous() && s.node_count >= 0 && s.node_count <= 4;
  return {8, "cubic construction and symmetroid", ok, d.str()};
}

/// Rational rotation by the Cayley transform (I - A)^{-1} (I + A), A skew.
inline std::array<Rational, 9> cayley_rotation(Rng& rng) {
  const Field q = Field::rationals();
  const Rational a(rng.integer()), b(rng.integer()), c(rng.integer());
  const auto A = Matrix<Rational>::from_rows({{Rational(0), -a, b}, {a, Rational(0), -c}, {-b, c, Rational(0)}}, 3, q);
  const auto I = Matrix<Rational>::identity(3, q);
  const auto R = inverse(I + A.scaled(Rational(-1))) * (I + A);
  std::array<Rational, 9> out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[3 * i + j] = R(i, j);
  return out;
}

inline CriterionResult c9() {
  const Field q = Field::rationals();
  Rng rng(9);
  const bool nondegenerate = !determinant(bsc17().as_matrix<Rational>(q)).is_zero();
  int involutive = 0, total = 0;
  for (FormKind k : {FormKind::BSC17, FormKind::SBSC11, FormKind::BSC_planar10, FormKind::SBSC_planar7}) {
    const BilinearForm B = bilinear_form(k);
    for (int t = 0; t < 100; ++t) {
      ++total;
      const Side side = rng.integer(1) > 0 ? Side::Right : Side::Left;
      const auto& amb = side == Side::Left ? B.left : B.right;
      const std::size_t dim = 1 + static_cast<std::size_t>(rng.raw() % (amb.size() - 1));
      std::vector<std::vector<Rational>> rows;
      for (std::size_t r = 0; r < dim; ++r) rows.push_back(rng.vector_in<Rational>(amb.size(), q));
      const auto S = LinearSubspace<Rational>::make(amb, rng.integer(1) > 0 ? SubspaceKind::Points : SubspaceKind::Forms, q, rows);
      const auto D = dual_space(S, B, side);
      const auto DD = dual_space(D, B, side == Side::Left ? Side::Right : Side::Left);
      if (DD == S && DD.kind == S.kind) ++involutive;
    }
  }
  int agree = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto R = cayley_rotation(rng);
    const std::array<Rational, 3> tr{Rational(rng.integer()), Rational(rng.integer()), Rational(rng.integer())};
    const Leg<Rational> leg{{Rational(rng.integer()), Rational(rng.integer()), Rational(rng.integer())},
                            {Rational(rng.integer()), Rational(rng.integer()), Rational(rng.integer())},
                            Rational(rng.integer())};
    Rational brute = -leg.d2;
    for (int i = 0; i < 3; ++i) {
      Rational v = tr[i] - leg.b[i];
      for (int k = 0; k < 3; ++k) v += R[3 * i + k] * leg.a[k];
      brute += v * v;
    }
    if (sphere_value(leg, IsometryPoint<Rational>::from_affine(R, tr, q), q) == brute) ++agree;
  }
  std::ostringstream d;
  d << "BSC17 " << (nondegenerate ? "nondegenerate" : "DEGENERATE") << ", dual involutive on " << involutive << "/" << total
    << " subspaces, sphere_value = |sigma(a) - b|^2 - d^2 on " << agree << "/1000 pairs";
  return {9, "duality properties", nondegenerate && involutive == total && agree == 1000, d.str()};
}

inline CriterionResult c10() {
  const Field q = Field::rationals();
  const RingPtr R6 = Ring::make({"z00", "z11", "z22", "s01", "s02", "s12"}, q);
  const RingPtr AB = Ring::make({"a0", "a1", "a2", "b0", "b1", "b2"}, q);
  auto a = [&](int i) { return var<Rational>(AB, "a" + std::to_string(i)); };
  auto b = [&](int i) { return var<Rational>(AB, "b" + std::to_string(i)); };
  const RingMap<Rational> alpha(R6, AB,
                                {a(0) * b(0), a(1) * b(1), a(2) * b(2), a(0) * b(1) + a(1) * b(0), a(0) * b(2) + a(2) * b(0),
                                 a(1) * b(2) + a(2) * b(1)});
  const Ideal<Rational> ker = preimage(alpha, Ideal<Rational>(AB, {}));
  const auto gb = ker.groebner();
  const auto cubic = y_pinv_cubic<Rational>(R6);
  const auto printed = y_pinv_printed_cubic<Rational>(R6);
  const bool principal = gb.size() == 1 && gb[0].degree() == 3;
  const bool proportional = principal && (gb[0].scaled(cubic.lead_coeff()) == cubic.scaled(gb[0].lead_coeff()));
  const bool printed_in = ker.contains(printed);
  Rng rng(10);
  int sat = 0, printed_sat = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto pt = rng.vector_in<Rational>(6, q);
    std::vector<Rational> img;
    for (std::size_t i = 0; i < 6; ++i) img.push_back(alpha.image(i).evaluate(pt));
    if (cubic.evaluate(img).is_zero()) ++sat;
    if (printed.evaluate(img).is_zero()) ++printed_sat;
  }
  std::ostringstream d;
  d << "kernel of alpha is " << (principal ? "principal, generated by a cubic" : "not a principal cubic ideal")
    << (proportional ? " proportional to det/2" : " NOT proportional to det/2") << "; " << sat << "/1000 alpha-images satisfy det/2; "
    << "printed cubic " << (printed_in ? "lies in" : "is not in") << " the kernel and vanishes on " << printed_sat << "/1000 images";
  return {10, "Y_pinv cubic by implicitization", principal && proportional && sat == 1000, d.str()};
}

}  // namespace acceptance

inline std::vector<std::function<CriterionResult()>> acceptance_criteria() {
  return {acceptance::c1, acceptance::c2, acceptance::c3, acceptance::c4, acceptance::c5,
          acceptance::c6, acceptance::c7, acceptance::c8, acceptance::c9, acceptance::c10};
}

/// Thread cap from PODFORGE_THREADS (default: hardware concurrency, at least 1).
inline unsigned podforge_threads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PODFORGE_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) n = static_cast<unsigned>(v);
  }
  return n;
}

/// Runs the criteria on up to `threads` workers; results are in criterion order.
inline std::vector<CriterionResult> run_acceptance(unsigned threads, const std::function<void(const CriterionResult&)>& on_done = {}) {
  const auto crit = acceptance_criteria();
  std::vector<CriterionResult> results(crit.size());
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < crit.size(); i = next++) {
      const auto t0 = std::chrono::steady_clock::now();
      CriterionResult r;
      try {
        r = crit[i]();
      } catch (const std::exception& e) {
        r = {static_cast<int>(i + 1), "criterion " + std::to_string(i + 1), false, std::string("exception: ") + e.what()};
      }
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::lock_guard<std::mutex> lock(mu);
      results[i] = r;
      if (on_done) on_done(r);
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(crit.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return results;
}

inline std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << (r.passed ? "PASS" : "FAIL") << "  criterion " << r.id << ": " << r.title << " -- " << r.detail << " [" << r.seconds << " s]";
  return os.str();
}

}  // namespace podforge
