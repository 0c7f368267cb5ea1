#pragma once

// Sphere-condition bilinear forms between configuration and leg coordinates,
// legs and isometries as projective points, dual subspaces, and recovery of
// leg pairs from symmetric rank-2 matrices.

#include "podforge/linalg.hpp"
#include "podforge/models.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace podforge {

enum class FormKind { BSC17, SBSC11, BSC_planar10, SBSC_planar7 };

inline std::string to_string(FormKind k) {
  switch (k) {
    case FormKind::BSC17: return "bsc17";
    case FormKind::SBSC11: return "sbsc11";
    case FormKind::BSC_planar10: return "bsc_planar10";
    case FormKind::SBSC_planar7: return "sbsc_planar7";
  }
  return "?";
}

inline FormKind parse_form_kind(const std::string& s) {
  if (s == "bsc17") return FormKind::BSC17;
  if (s == "sbsc11") return FormKind::SBSC11;
  if (s == "bsc_planar10") return FormKind::BSC_planar10;
  if (s == "sbsc_planar7") return FormKind::SBSC_planar7;
  throw std::invalid_argument("unknown bilinear form '" + s + "'");
}

/// Integer pairing matrix: value = sum_{i,j} left_i * matrix[i][j] * right_j.
struct BilinearForm {
  FormKind kind;
  std::vector<std::string> left;   // configuration coordinates
  std::vector<std::string> right;  // leg coordinates
  std::vector<std::vector<long>> matrix;

  std::size_t left_index(const std::string& n) const { return index_in(left, n); }
  std::size_t right_index(const std::string& n) const { return index_in(right, n); }

  template <class K>
  Matrix<K> as_matrix(Field f) const {
    Matrix<K> m(left.size(), right.size(), f);
    for (std::size_t i = 0; i < left.size(); ++i)
      for (std::size_t j = 0; j < right.size(); ++j) m(i, j) = scalar<K>(matrix[i][j], f);
    return m;
  }

  template <class K>
  K evaluate(const std::vector<K>& c, const std::vector<K>& w, Field f) const {
    if (c.size() != left.size() || w.size() != right.size()) throw std::invalid_argument("bilinear form: arity mismatch");
    K acc = scalar<K>(0, f);
    for (std::size_t i = 0; i < left.size(); ++i) {
      if (c[i].is_zero()) continue;
      for (std::size_t j = 0; j < right.size(); ++j) {
        if (matrix[i][j] != 0) acc += c[i] * w[j] * scalar<K>(matrix[i][j], f);
      }
    }
    return acc;
  }

  double evaluate_double(const std::vector<double>& c, const std::vector<double>& w) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < left.size(); ++i)
      for (std::size_t j = 0; j < right.size(); ++j) acc += c[i] * w[j] * static_cast<double>(matrix[i][j]);
    return acc;
  }

  /// Sum of |terms|, the natural scale of a float residual.
  double magnitude_double(const std::vector<double>& c, const std::vector<double>& w) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < left.size(); ++i)
      for (std::size_t j = 0; j < right.size(); ++j) acc += std::abs(c[i] * w[j] * static_cast<double>(matrix[i][j]));
    return acc;
  }

 private:
  static std::size_t index_in(const std::vector<std::string>& v, const std::string& n) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == n) return i;
    }
    throw std::out_of_range("bilinear form: unknown coordinate " + n);
  }
};

namespace detail {

inline BilinearForm make_form(FormKind kind, std::vector<std::string> left, std::vector<std::string> right,
                              const std::vector<std::tuple<std::string, std::string, long>>& entries) {
  BilinearForm b{kind, std::move(left), std::move(right), {}};
  b.matrix.assign(b.left.size(), std::vector<long>(b.right.size(), 0));
  for (const auto& [l, r, v] : entries) b.matrix[b.left_index(l)][b.right_index(r)] = v;
  return b;
}

}  // namespace detail

/// l h + z00 r - 2 <a, x> - 2 <b, y> - 2 <M a, b>, i.e. m_ij pairs with z_ji.
inline BilinearForm bsc17() {
  std::vector<std::tuple<std::string, std::string, long>> e{{"h", "l", 1}, {"r", "z00", 1}};
  for (int i = 1; i <= 3; ++i) {
    e.emplace_back("x" + std::to_string(i), "z" + std::to_string(i) + "0", -2);
    e.emplace_back("y" + std::to_string(i), "z0" + std::to_string(i), -2);
    for (int j = 1; j <= 3; ++j) e.emplace_back("m" + std::to_string(i) + std::to_string(j), "z" + std::to_string(j) + std::to_string(i), -2);
  }
  return detail::make_form(FormKind::BSC17, config_names(), leg_names(), e);
}

inline std::vector<std::string> sym_config_names() {
  return {"m11", "m12", "m13", "m22", "m23", "m33", "x1", "x2", "x3", "r", "h"};
}

/// Restriction of bsc17 to M = M^t, x = y in the coordinates s_ij = z_ij + z_ji.
inline BilinearForm sbsc11() {
  std::vector<std::tuple<std::string, std::string, long>> e{{"h", "l", 1}, {"r", "z00", 1}};
  for (int i = 1; i <= 3; ++i) {
    e.emplace_back("x" + std::to_string(i), "s0" + std::to_string(i), -2);
    for (int j = i; j <= 3; ++j) e.emplace_back("m" + std::to_string(i) + std::to_string(j), sym_entry_name(i, j), -2);
  }
  return detail::make_form(FormKind::SBSC11, sym_config_names(), sym_leg_names(), e);
}

inline BilinearForm bsc_planar10() {
  std::vector<std::tuple<std::string, std::string, long>> e{{"h", "l", 1}, {"r", "z00", 1}};
  for (int i = 1; i <= 2; ++i) {
    e.emplace_back("x" + std::to_string(i), "z" + std::to_string(i) + "0", -2);
    e.emplace_back("y" + std::to_string(i), "z0" + std::to_string(i), -2);
    for (int j = 1; j <= 2; ++j) e.emplace_back("m" + std::to_string(i) + std::to_string(j), "z" + std::to_string(j) + std::to_string(i), -2);
  }
  return detail::make_form(FormKind::BSC_planar10, planar_config_names(), planar_leg_names(), e);
}

inline BilinearForm sbsc_planar7() {
  std::vector<std::tuple<std::string, std::string, long>> e{
      {"h", "l", 1},      {"r", "z00", 1},    {"x1", "s01", -2}, {"x2", "s02", -2},
      {"m11", "z11", -2}, {"m22", "z22", -2}, {"m12", "s12", -2}};
  return detail::make_form(FormKind::SBSC_planar7, planar_inv_config_names(), planar_sym_leg_names(), e);
}

inline BilinearForm bilinear_form(FormKind k) {
  switch (k) {
    case FormKind::BSC17: return bsc17();
    case FormKind::SBSC11: return sbsc11();
    case FormKind::BSC_planar10: return bsc_planar10();
    case FormKind::SBSC_planar7: return sbsc_planar7();
  }
  throw std::invalid_argument("bilinear form kind");
}

// ---------------------------------------------------------------------------
// Linear subspaces.

enum class SubspaceKind { Points, Forms };

/// A projective linear subspace given either by spanning points or by the
/// linear forms cutting it out. Bases are kept in reduced echelon form.
template <class K>
struct LinearSubspace {
  std::vector<std::string> ambient;
  SubspaceKind kind = SubspaceKind::Points;
  Field field;
  std::vector<std::vector<K>> basis;

  static LinearSubspace make(std::vector<std::string> ambient, SubspaceKind kind, Field f, const std::vector<std::vector<K>>& rows) {
    LinearSubspace s{std::move(ambient), kind, f, {}};
    s.basis = row_space(rows, s.ambient.size(), f);
    return s;
  }

  std::size_t dimension() const { return basis.size(); }

  /// Spanning points of the subspace.
  std::vector<std::vector<K>> points() const {
    if (kind == SubspaceKind::Points) return basis;
    if (basis.empty()) return identity_rows();
    return kernel(Matrix<K>::from_rows(basis, ambient.size(), field));
  }

  /// Forms cutting out the subspace.
  std::vector<std::vector<K>> forms() const {
    if (kind == SubspaceKind::Forms) return basis;
    if (basis.empty()) return identity_rows();
    return kernel(Matrix<K>::from_rows(basis, ambient.size(), field));
  }

  LinearSubspace as(SubspaceKind k) const {
    if (k == kind) return *this;
    return make(ambient, k, field, k == SubspaceKind::Points ? points() : forms());
  }

  friend bool operator==(const LinearSubspace& a, const LinearSubspace& b) {
    if (a.ambient != b.ambient) return false;
    const auto pa = a.as(SubspaceKind::Points), pb = b.as(SubspaceKind::Points);
    return pa.basis == pb.basis;
  }

 private:
  std::vector<std::vector<K>> identity_rows() const {
    const auto I = Matrix<K>::identity(ambient.size(), field);
    std::vector<std::vector<K>> rows;
    for (std::size_t i = 0; i < ambient.size(); ++i) rows.push_back(I.row(i));
    return rows;
  }
};

enum class Side { Left, Right };

/// Annihilator of S under B, on the other side: {w : B(s, w) = 0 for all s in S}.
/// Points come back as forms (the functionals B(s, .)) and forms come back as
/// points ({w : B(., w) in span S}), so dual(dual(S)) == S for nondegenerate B.
template <class K>
LinearSubspace<K> dual_space(const LinearSubspace<K>& S, const BilinearForm& B, Side side) {
  const Field f = S.field;
  const auto& own = side == Side::Left ? B.left : B.right;
  const auto& other = side == Side::Left ? B.right : B.left;
  if (S.ambient != own) throw std::invalid_argument("dual_space: subspace not in the form's " + std::string(side == Side::Left ? "left" : "right") + " space");
  Matrix<K> Bm = B.as_matrix<K>(f);
  if (side == Side::Right) Bm = Bm.transpose();
  const auto pts = S.points();
  // Radical check for degenerate forms: a point of S pairing to zero with everything.
  if (rank(Bm) < std::min(Bm.rows(), Bm.cols())) {
    for (const auto& p : pts) {
      std::vector<K> row(other.size(), scalar<K>(0, f));
      for (std::size_t j = 0; j < other.size(); ++j)
        for (std::size_t i = 0; i < own.size(); ++i) row[j] += p[i] * Bm(i, j);
      if (std::all_of(row.begin(), row.end(), [](const K& v) { return v.is_zero(); })) {
        throw std::domain_error("dual_space: subspace meets the radical of a degenerate form");
      }
    }
  }
  std::vector<std::vector<K>> functionals;
  for (const auto& p : pts) {
    std::vector<K> row(other.size(), scalar<K>(0, f));
    for (std::size_t j = 0; j < other.size(); ++j)
      for (std::size_t i = 0; i < own.size(); ++i) row[j] += p[i] * Bm(i, j);
    functionals.push_back(std::move(row));
  }
  auto result = LinearSubspace<K>::make(other, SubspaceKind::Forms, f, functionals);
  return S.kind == SubspaceKind::Points ? result : result.as(SubspaceKind::Points);
}

// ---------------------------------------------------------------------------
// Legs and isometries.

template <class K>
struct Leg {
  std::array<K, 3> a;
  std::array<K, 3> b;
  K d2;
};

/// (M : x : y : r : h) in the order of config_names().
template <class K>
struct IsometryPoint {
  std::array<K, 9> M;  // row-major m11..m33
  std::array<K, 3> x, y;
  K r, h;

  std::vector<K> coords() const {
    std::vector<K> v(M.begin(), M.end());
    v.insert(v.end(), x.begin(), x.end());
    v.insert(v.end(), y.begin(), y.end());
    v.push_back(r);
    v.push_back(h);
    return v;
  }

  static IsometryPoint from_coords(const std::vector<K>& c) {
    if (c.size() != 17) throw std::invalid_argument("isometry point: need 17 coordinates");
    IsometryPoint p;
    for (int i = 0; i < 9; ++i) p.M[i] = c[i];
    for (int i = 0; i < 3; ++i) {
      p.x[i] = c[9 + i];
      p.y[i] = c[12 + i];
    }
    p.r = c[15];
    p.h = c[16];
    return p;
  }

  /// Affine isometry v -> R v + t with h = 1, x = -R^t t, r = <t, t>.
  static IsometryPoint from_affine(const std::array<K, 9>& R, const std::array<K, 3>& t, Field f) {
    IsometryPoint p;
    p.M = R;
    p.y = t;
    for (int i = 0; i < 3; ++i) {
      K acc = scalar<K>(0, f);
      for (int k = 0; k < 3; ++k) acc -= R[3 * k + i] * t[k];
      p.x[i] = acc;
    }
    p.r = t[0] * t[0] + t[1] * t[1] + t[2] * t[2];
    p.h = scalar<K>(1, f);
    return p;
  }
};

template <class K>
K corrected_length(const Leg<K>& leg) {
  K acc = -leg.d2;
  for (int i = 0; i < 3; ++i) acc += leg.a[i] * leg.a[i] + leg.b[i] * leg.b[i];
  return acc;
}

/// z_ij = a~_i b~_j with a~ = (1, a), b~ = (1, b); last coordinate l.
template <class K>
std::vector<K> leg_to_point(const Leg<K>& leg, Field f) {
  std::array<K, 4> at{scalar<K>(1, f), leg.a[0], leg.a[1], leg.a[2]};
  std::array<K, 4> bt{scalar<K>(1, f), leg.b[0], leg.b[1], leg.b[2]};
  std::vector<K> v;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) v.push_back(at[i] * bt[j]);
  v.push_back(corrected_length(leg));
  return v;
}

/// Inverse of leg_to_point on points with z00 != 0 and rank(z) = 1.
template <class K>
Leg<K> point_to_leg(const std::vector<K>& pt, Field f) {
  if (pt.size() != 17) throw std::invalid_argument("leg point: need 17 coordinates");
  auto z = [&](int i, int j) -> const K& { return pt[4 * i + j]; };
  if (z(0, 0).is_zero()) throw std::domain_error("anchor at infinity");
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = i + 1; k < 4; ++k)
        for (int m = j + 1; m < 4; ++m) {
          if (!(z(i, j) * z(k, m) - z(i, m) * z(k, j)).is_zero()) throw std::domain_error("not a leg point");
        }
  const K inv = z(0, 0).inverse();
  Leg<K> leg;
  for (int i = 0; i < 3; ++i) {
    leg.a[i] = z(i + 1, 0) * inv;
    leg.b[i] = z(0, i + 1) * inv;
  }
  const K l = pt[16] * inv;
  K d2 = -l;
  for (int i = 0; i < 3; ++i) d2 += leg.a[i] * leg.a[i] + leg.b[i] * leg.b[i];
  leg.d2 = d2;
  (void)f;
  return leg;
}

/// Sphere condition l h + r - 2<a,x> - 2<b,y> - 2<M a, b>; zero iff |sigma(a) - b|^2 = d^2.
template <class K>
K sphere_value(const Leg<K>& leg, const IsometryPoint<K>& s, Field f) {
  return bsc17().evaluate(s.coords(), leg_to_point(leg, f), f);
}

/// Symmetric coordinates (sym_leg_names order) of the unordered pair {a, b}:
/// z_ii = a_i b_i, s_ij = a_i b_j + a_j b_i, with a_0 = b_0 = 1, and l.
template <class K>
std::vector<K> leg_to_sym_point(const Leg<K>& leg, Field f) {
  std::array<K, 4> at{scalar<K>(1, f), leg.a[0], leg.a[1], leg.a[2]};
  std::array<K, 4> bt{scalar<K>(1, f), leg.b[0], leg.b[1], leg.b[2]};
  std::vector<K> v;
  for (const auto& n : sym_leg_names()) {
    if (n == "l") {
      v.push_back(corrected_length(leg));
    } else {
      const int i = n[1] - '0', j = n[2] - '0';
      v.push_back(n[0] == 'z' ? at[i] * bt[i] : at[i] * bt[j] + at[j] * bt[i]);
    }
  }
  return v;
}

/// Symmetric 4x4 matrix S of a sym-leg point: S_ii = 2 z_ii, S_ij = s_ij.
template <class K>
Matrix<K> sym_matrix(const std::vector<K>& sym, Field f) {
  const auto names = sym_leg_names();
  Matrix<K> S(4, 4, f);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const std::string n = sym_entry_name(i, j);
      const auto idx = static_cast<std::size_t>(std::find(names.begin(), names.end(), n) - names.begin());
      S(i, j) = i == j ? sym[idx] * scalar<K>(2, f) : sym[idx];
    }
  }
  return S;
}

/// Exact recovery over Q. With sigma = a + b (read off S_0i after scaling
/// S_00 = 2) and Delta = a - b, Delta Delta^t = sigma sigma^t - 2 S on the
/// 3x3 block, so Delta is rational iff one diagonal entry is a rational square.
struct ExactLegPair {
  bool rational = false;
  bool coincident = false;
  Leg<Rational> first, second;        // when rational: (a, b) and (b, a)
  std::array<Rational, 3> sum;        // a + b
  Rational discriminant;              // Delta = sqrt(discriminant) * direction
  std::array<Rational, 3> direction;
  Rational l;
};

inline std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q.sign() < 0) return std::nullopt;
  mpz_class n = q.value().get_num(), d = q.value().get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return Rational(mpq_class(rn, rd));
}

inline ExactLegPair recover_leg_pairs(const std::vector<Rational>& sym) {
  const Field q = Field::rationals();
  Matrix<Rational> S = sym_matrix(sym, q);
  if (rank(S) > 2) throw std::domain_error("not a point of Y_inv: rank of S exceeds two");
  if (S(0, 0).is_zero()) throw std::domain_error("anchor at infinity");
  const Rational scale = Rational(2) / S(0, 0);
  ExactLegPair out;
  out.l = sym.back() * scale;
  for (int i = 0; i < 3; ++i) out.sum[i] = S(0, i + 1) * scale;
  std::array<std::array<Rational, 3>, 3> D;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) D[i][j] = out.sum[i] * out.sum[j] - Rational(2) * S(i + 1, j + 1) * scale;
  int k = -1;
  for (int i = 0; i < 3; ++i) {
    if (!D[i][i].is_zero()) {
      k = i;
      break;
    }
  }
  auto make_leg = [&](const std::array<Rational, 3>& delta, int sgn) {
    Leg<Rational> leg;
    for (int i = 0; i < 3; ++i) {
      leg.a[i] = (out.sum[i] + Rational(sgn) * delta[i]) / Rational(2);
      leg.b[i] = (out.sum[i] - Rational(sgn) * delta[i]) / Rational(2);
    }
    Rational d2 = -out.l;
    for (int i = 0; i < 3; ++i) d2 += leg.a[i] * leg.a[i] + leg.b[i] * leg.b[i];
    leg.d2 = d2;
    return leg;
  };
  if (k < 0) {
    out.coincident = true;
    out.rational = true;
    out.discriminant = Rational(0);
    out.direction = {Rational(0), Rational(0), Rational(0)};
    out.first = out.second = make_leg(out.direction, 1);
    return out;
  }
  if (D[k][k].sign() < 0) throw std::domain_error("complex leg pair");
  out.discriminant = D[k][k];
  for (int i = 0; i < 3; ++i) out.direction[i] = D[i][k] / D[k][k];
  if (auto r = rational_sqrt(D[k][k])) {
    std::array<Rational, 3> delta;
    for (int i = 0; i < 3; ++i) delta[i] = out.direction[i] * *r;
    out.rational = true;
    out.first = make_leg(delta, 1);
    out.second = make_leg(delta, -1);
  }
  return out;
}

struct FloatLeg {
  std::array<double, 3> a, b;
  double d2;
};

struct FloatLegPair {
  FloatLeg first, second;
  bool coincident = false;
};

/// Float recovery by eigendecomposition of S: with eigenpairs (mu+, e+), (mu-, e-)
/// of opposite signs, a~ and b~ are (sqrt(mu+) e+ +/- sqrt(-mu-) e-) / sqrt(2).
inline FloatLegPair recover_leg_pairs_float(const std::vector<double>& sym, double tol = 1e-9) {
  const auto names = sym_leg_names();
  Eigen::Matrix4d S;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const auto idx = static_cast<std::size_t>(std::find(names.begin(), names.end(), sym_entry_name(i, j)) - names.begin());
      S(i, j) = i == j ? 2.0 * sym[idx] : sym[idx];
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(S);
  const auto& mu = es.eigenvalues();  // increasing
  const double scale = std::max(std::abs(mu(0)), std::abs(mu(3)));
  if (scale == 0.0) throw std::domain_error("not a leg point: S vanishes");
  int nonzero = 0;
  for (int i = 0; i < 4; ++i) nonzero += std::abs(mu(i)) > tol * scale ? 1 : 0;
  if (nonzero > 2) throw std::domain_error("not a point of Y_inv: rank of S exceeds two");
  Eigen::Vector4d at, bt;
  FloatLegPair out;
  double lam = 0.0;
  const bool pos = mu(3) > tol * scale, neg = mu(0) < -tol * scale;
  if (pos && neg) {
    const Eigen::Vector4d ep = es.eigenvectors().col(3), em = es.eigenvectors().col(0);
    at = (std::sqrt(mu(3)) * ep + std::sqrt(-mu(0)) * em) / std::sqrt(2.0);
    bt = (std::sqrt(mu(3)) * ep - std::sqrt(-mu(0)) * em) / std::sqrt(2.0);
    lam = at(0) * bt(0);
  } else if (nonzero == 2) {
    throw std::domain_error("complex leg pair");
  } else {
    // Rank one: S = mu v v^t = lam (2 a^ a^t) with a^ = v / v_0.
    const int k = pos ? 3 : 0;
    at = bt = es.eigenvectors().col(k);
    lam = mu(k) * at(0) * at(0) / 2.0;
    out.coincident = true;
  }
  if (std::abs(at(0)) <= tol * at.norm() || std::abs(bt(0)) <= tol * bt.norm()) throw std::domain_error("anchor at infinity");
  const double l = sym.back();
  auto leg = [&](const Eigen::Vector4d& p, const Eigen::Vector4d& q) {
    FloatLeg g;
    for (int i = 0; i < 3; ++i) {
      g.a[i] = p(i + 1) / p(0);
      g.b[i] = q(i + 1) / q(0);
    }
    g.d2 = -l / lam;
    for (int i = 0; i < 3; ++i) g.d2 += g.a[i] * g.a[i] + g.b[i] * g.b[i];
    return g;
  };
  out.first = leg(at, bt);
  out.second = leg(bt, at);
  return out;
}

}  // namespace podforge
