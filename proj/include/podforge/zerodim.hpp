#pragma once

// Points of zero-dimensional projective schemes. With a degrevlex basis and a
// degree D where the Hilbert function has stabilized at N, multiplication by
// linear forms R_D -> R_{D+1} gives N x N matrices A_u; T_u = A_v^{-1} A_u acts
// as multiplication by u/v on the points. F_p points come from eigenvalues of
// T_l in F_p, real points from the Sturm-isolated real roots of its
// characteristic polynomial and the shape representation x_k/v = g_k(l/v).

#include "podforge/hilbert.hpp"
#include "podforge/linalg.hpp"
#include "podforge/random.hpp"
#include "podforge/univariate.hpp"

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace podforge {

/// Standard monomials of weighted degree d (weight-1 ring) w.r.t. leading monomials.
inline std::vector<Monomial> standard_monomials(const Ring& ring, const std::vector<Monomial>& leads, int d) {
  std::vector<Monomial> out;
  std::vector<int> exps(ring.size(), 0);
  // Variables that are themselves leading monomials never occur.
  std::vector<bool> dead(ring.size(), false);
  for (const auto& m : leads) {
    if (m.degree == 1) {
      for (std::size_t i = 0; i < ring.size(); ++i) {
        if (m.exp[i] == 1) dead[i] = true;
      }
    }
  }
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i == ring.size()) {
      if (left != 0) return;
      const Monomial m = ring.monomial(exps);
      for (const auto& l : leads) {
        if (divides(l, m)) return;
      }
      out.push_back(m);
      return;
    }
    if (dead[i]) {
      self(self, i + 1, left);
      return;
    }
    for (int e = left; e >= 0; --e) {
      exps[i] = e;
      self(self, i + 1, left - e);
    }
    exps[i] = 0;
  };
  rec(rec, 0, d);
  return out;
}

/// Multiplication data of a zero-dimensional homogeneous ideal.
template <class K>
class ZeroDim {
 public:
  explicit ZeroDim(const Ideal<K>& ideal) : ring_(ideal.ring()) {
    if (!ring_->uniform_weights() || !ring_->order().is_degrevlex()) {
      throw std::invalid_argument("zerodim: needs a weight-1 degrevlex ring");
    }
    basis_ = ideal.groebner();
    hilbert_ = hilbert_data(ideal);
    if (hilbert_.dimension != 0) {
      throw std::invalid_argument("zerodim: ideal has projective dimension " + std::to_string(hilbert_.dimension));
    }
    N_ = static_cast<std::size_t>(hilbert_.degree);
    int top = 0;
    for (const auto& g : basis_) {
      leads_.push_back(g.lead());
      top = std::max(top, g.lead().degree);
    }
    D_ = top;
    while (hilbert_.hilbert_function(D_) != static_cast<long long>(N_) ||
           hilbert_.hilbert_function(D_ + 1) != static_cast<long long>(N_)) {
      if (++D_ > top + 64) throw std::runtime_error("zerodim: Hilbert function does not stabilize");
    }
    mono_d_ = standard_monomials(*ring_, leads_, D_);
    mono_d1_ = standard_monomials(*ring_, leads_, D_ + 1);
    for (std::size_t i = 0; i < mono_d1_.size(); ++i) index_d1_.emplace(mono_d1_[i], i);
  }

  std::size_t size() const { return N_; }
  int degree_used() const { return D_; }
  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial<K>>& basis() const { return basis_; }

  /// A_u: column j = coordinates of NF(u * m_j) in the degree D+1 standard monomials.
  Matrix<K> multiplication(const Polynomial<K>& u) const {
    Matrix<K> A(N_, N_, ring_->field());
    for (std::size_t j = 0; j < N_; ++j) {
      const auto nf = normal_form(Polynomial<K>::monomial(ring_, mono_d_[j], scalar<K>(1, ring_->field())) * u, basis_);
      for (const auto& t : nf.terms()) A(index_d1_.at(t.m), j) = t.c;
    }
    return A;
  }

  /// Chooses v with A_v invertible and returns A_v^{-1}.
  Matrix<K> chart(Rng& rng, Polynomial<K>& v) const {
    for (int attempt = 0; attempt < 32; ++attempt) {
      v = rng.linear_form<K>(ring_);
      try {
        return inverse(multiplication(v));
      } catch (const std::domain_error&) {
      }
    }
    throw std::runtime_error("zerodim: no chart found");
  }

 private:
  RingPtr ring_;
  std::vector<Polynomial<K>> basis_;
  std::vector<Monomial> leads_;
  HilbertData hilbert_;
  std::size_t N_ = 0;
  int D_ = 0;
  std::vector<Monomial> mono_d_, mono_d1_;
  std::unordered_map<Monomial, std::size_t, MonomialHash> index_d1_;
};

/// Scales a projective point so that its first nonzero coordinate is 1.
template <class K>
std::vector<K> normalize_projective(std::vector<K> p) {
  for (const auto& c : p) {
    if (!c.is_zero()) {
      const K inv = c.inverse();
      for (auto& x : p) x *= inv;
      break;
    }
  }
  return p;
}

/// F_p-rational points of a zero-dimensional homogeneous ideal whose
/// separating-form eigenvalue is simple. Each returned point satisfies every
/// generator exactly.
inline std::vector<std::vector<Fp>> rational_points_fp(const Ideal<Fp>& ideal, Rng& rng) {
  const ZeroDim<Fp> Z(ideal);
  const RingPtr& R = Z.ring();
  const Field f = R->field();
  const std::size_t N = Z.size();
  if (N == 0) return {};
  Polynomial<Fp> v;
  const Matrix<Fp> Av_inv = Z.chart(rng, v);
  const Polynomial<Fp> ell = rng.linear_form<Fp>(R);
  const Matrix<Fp> T = Av_inv * Z.multiplication(ell);
  const UPoly<Fp> chi = charpoly(T);
  const UPoly<Fp> dchi = upoly::derivative(chi, f);
  std::vector<Matrix<Fp>> coords;
  for (std::size_t k = 0; k < R->size(); ++k) coords.push_back(Z.multiplication(Polynomial<Fp>::variable(R, k)));
  std::vector<std::vector<Fp>> points;
  for (const Fp& lambda : roots_fp(chi, f, rng.raw())) {
    if (upoly::eval(dchi, lambda, f).is_zero()) continue;
    Matrix<Fp> shifted = T.transpose();
    for (std::size_t i = 0; i < N; ++i) shifted(i, i) -= lambda;
    const auto ker = kernel(shifted);
    if (ker.size() != 1) continue;
    // Row vector e with e T = lambda e; w = e A_v^{-1}; coordinate k = (w A_k)_j / e_j.
    const auto& e = ker[0];
    std::size_t j = 0;
    while (j < N && e[j].is_zero()) ++j;
    std::vector<Fp> w(N, Fp(0, f.characteristic()));
    for (std::size_t c = 0; c < N; ++c)
      for (std::size_t r = 0; r < N; ++r) w[c] += e[r] * Av_inv(r, c);
    std::vector<Fp> pt;
    const Fp inv_ej = e[j].inverse();
    for (std::size_t k = 0; k < R->size(); ++k) {
      Fp acc(0, f.characteristic());
      for (std::size_t r = 0; r < N; ++r) acc += w[r] * coords[k](r, j);
      pt.push_back(acc * inv_ej);
    }
    pt = normalize_projective(pt);
    bool ok = true;
    for (const auto& g : ideal.generators()) {
      if (!g.evaluate(pt).is_zero()) {
        ok = false;
        break;
      }
    }
    if (ok) points.push_back(std::move(pt));
  }
  return points;
}

/// A real point as doubles, with its separating-form value.
struct RealPoint {
  std::vector<double> coords;
  double parameter = 0.0;
};

namespace detail {

/// Null vector of a numerically singular square matrix (partial pivoting; the
/// smallest trailing pivot is treated as zero).
inline std::vector<mpf_class> mpf_null_vector(std::vector<std::vector<mpf_class>> a, unsigned bits) {
  const std::size_t n = a.size();
  std::vector<std::size_t> perm_col(n);
  for (std::size_t i = 0; i < n; ++i) perm_col[i] = i;
  // Full pivoting so that the free variable ends up last.
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t pr = k, pc = k;
    mpf_class best(0, bits);
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = k; j < n; ++j) {
        const mpf_class v = abs(a[i][j]);
        if (v > best) {
          best = v;
          pr = i;
          pc = j;
        }
      }
    std::swap(a[k], a[pr]);
    if (pc != k) {
      for (auto& row : a) std::swap(row[k], row[pc]);
      std::swap(perm_col[k], perm_col[pc]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const mpf_class fct = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= fct * a[k][j];
    }
  }
  std::vector<mpf_class> y(n, mpf_class(0, bits));
  y[n - 1] = 1;
  for (std::size_t k = n - 1; k-- > 0;) {
    mpf_class acc(0, bits);
    for (std::size_t j = k + 1; j < n; ++j) acc += a[k][j] * y[j];
    y[k] = -acc / a[k][k];
  }
  std::vector<mpf_class> x(n, mpf_class(0, bits));
  for (std::size_t i = 0; i < n; ++i) x[perm_col[i]] = y[i];
  return x;
}

}  // namespace detail

/// Real points of a zero-dimensional homogeneous ideal over Q. The real
/// eigenvalues of T_l are isolated exactly (Sturm), then each point is read off
/// a left eigenvector computed in `precision_bits` floating arithmetic, as in
/// the F_p case. Retries the separating form while T_l has repeated eigenvalues.
inline std::vector<RealPoint> real_points_q(const Ideal<Rational>& ideal, Rng& rng, unsigned precision_bits = 512) {
  const ZeroDim<Rational> Z(ideal);
  const RingPtr& R = Z.ring();
  const Field q = R->field();
  const std::size_t N = Z.size();
  if (N == 0) return {};
  Polynomial<Rational> v;
  const Matrix<Rational> Av_inv = Z.chart(rng, v);
  auto to_mpf = [&](const Matrix<Rational>& m) {
    std::vector<std::vector<mpf_class>> out(m.rows(), std::vector<mpf_class>(m.cols(), mpf_class(0, precision_bits)));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = mpf_class(m(i, j).value(), precision_bits);
    return out;
  };
  for (int attempt = 0; attempt < 16; ++attempt) {
    const Polynomial<Rational> ell = rng.linear_form<Rational>(R);
    const Matrix<Rational> T = Av_inv * Z.multiplication(ell);
    const UPoly<Rational> chi = charpoly(T);
    const UPoly<Rational> sqf = upoly::squarefree_part(chi, q);
    if (upoly::degree(sqf) != static_cast<int>(N)) continue;
    Rational width(1);
    for (unsigned b = 0; b < precision_bits / 2; ++b) width /= Rational(2);
    const auto roots = isolate_real_roots(sqf, width, true);
    const auto Tf = to_mpf(T.transpose());
    const auto Af = to_mpf(Av_inv);
    std::vector<std::vector<std::vector<mpf_class>>> coords;
    for (std::size_t k = 0; k < R->size(); ++k) coords.push_back(to_mpf(Z.multiplication(Polynomial<Rational>::variable(R, k))));
    std::vector<RealPoint> out;
    for (const auto& iv : roots) {
      const mpf_class lam((iv.lo.value() + iv.hi.value()) / 2, precision_bits);
      auto shifted = Tf;
      for (std::size_t i = 0; i < N; ++i) shifted[i][i] -= lam;
      const auto e = detail::mpf_null_vector(std::move(shifted), precision_bits);
      std::size_t j = 0;
      for (std::size_t i = 1; i < N; ++i) {
        if (abs(e[i]) > abs(e[j])) j = i;
      }
      std::vector<mpf_class> w(N, mpf_class(0, precision_bits));
      for (std::size_t c = 0; c < N; ++c)
        for (std::size_t r = 0; r < N; ++r) w[c] += e[r] * Af[r][c];
      RealPoint p;
      p.parameter = lam.get_d();
      for (std::size_t k = 0; k < R->size(); ++k) {
        mpf_class acc(0, precision_bits);
        for (std::size_t r = 0; r < N; ++r) acc += w[r] * coords[k][r][j];
        acc /= e[j];
        p.coords.push_back(acc.get_d());
      }
      out.push_back(std::move(p));
    }
    return out;
  }
  throw std::runtime_error("zerodim: no separating linear form with simple eigenvalues");
}

}  // namespace podforge
