#pragma once

// Exact coefficient fields: the rationals (GMP-backed) and prime fields F_p.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <ostream>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>

namespace podforge {

/// Thrown when scalars or polynomials from different fields or rings meet.
class FieldMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Field descriptor: characteristic 0 means Q, otherwise F_p.
class Field {
 public:
  constexpr Field() = default;

  static constexpr Field rationals() { return Field{}; }

  static Field prime(std::uint32_t p) {
    if (p < 3 || p >= (1u << 31) || !is_prime(p)) {
      throw std::invalid_argument("field: " + std::to_string(p) + " is not an odd prime below 2^31");
    }
    return unchecked(p);
  }

  /// For moduli already validated elsewhere.
  static constexpr Field unchecked(std::uint32_t p) {
    Field f;
    f.p_ = p;
    return f;
  }

  /// Accepts "q", "Q", "fp:P".
  static Field parse(std::string_view text) {
    if (text == "q" || text == "Q" || text == "qq") return rationals();
    if (text.substr(0, 3) == "fp:") {
      const std::string digits(text.substr(3));
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
        throw std::invalid_argument("field: bad prime in '" + std::string(text) + "'");
      }
      return prime(static_cast<std::uint32_t>(std::stoul(digits)));
    }
    throw std::invalid_argument("field: expected 'q' or 'fp:P', got '" + std::string(text) + "'");
  }

  constexpr bool is_rational() const { return p_ == 0; }
  constexpr std::uint32_t characteristic() const { return p_; }

  std::string to_string() const { return p_ == 0 ? "q" : "fp:" + std::to_string(p_); }

  friend constexpr bool operator==(Field a, Field b) { return a.p_ == b.p_; }

 private:
  static bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d) {
      if (n % d == 0) return false;
    }
    return true;
  }

  std::uint32_t p_ = 0;
};

/// Rational number with arbitrary-precision numerator and denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::domain_error("rational: zero denominator");
    v_.canonicalize();
  }

  static Rational from(const mpq_class& q, Field f) {
    if (!f.is_rational()) throw FieldMismatch("rational scalar requested over " + f.to_string());
    return Rational(q);
  }
  static Rational from_int(long v, Field f) { return from(mpq_class(v), f); }

  /// Parses "n" or "n/d".
  static Rational parse(std::string_view s) {
    mpq_class q;
    if (q.set_str(std::string(s), 10) != 0 || q.get_den() == 0) {
      throw std::invalid_argument("rational: cannot parse '" + std::string(s) + "'");
    }
    q.canonicalize();
    return Rational(q);
  }

  Field field() const { return Field::rationals(); }
  const mpq_class& value() const { return v_; }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  int sign() const { return sgn(v_); }
  double to_double() const { return v_.get_d(); }

  Rational inverse() const {
    if (is_zero()) throw std::domain_error("rational: division by zero");
    return Rational(mpq_class(1) / v_);
  }

  std::string to_string() const { return v_.get_str(); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("rational: division by zero");
    v_ /= o.v_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }

 private:
  mpq_class v_;
};

/// Residue modulo an odd prime p, stored as its canonical representative in [0, p).
/// A default-constructed value is an untagged zero that adopts the modulus of
/// whatever it is combined with.
class Fp {
 public:
  Fp() = default;
  Fp(std::int64_t v, std::uint32_t p) : p_(p) {
    if (p == 0) throw FieldMismatch("fp: zero modulus");
    std::int64_t r = v % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    v_ = static_cast<std::uint32_t>(r);
  }

  static Fp from(const mpq_class& q, Field f) {
    if (f.is_rational()) throw FieldMismatch("fp scalar requested over q");
    const std::uint32_t p = f.characteristic();
    const unsigned long num = mpz_fdiv_ui(q.get_num_mpz_t(), p);
    const unsigned long den = mpz_fdiv_ui(q.get_den_mpz_t(), p);
    if (den == 0) {
      throw std::domain_error("fp: denominator of " + q.get_str() + " vanishes mod " + std::to_string(p));
    }
    return Fp(static_cast<std::int64_t>(num), p) * Fp(static_cast<std::int64_t>(den), p).inverse();
  }
  static Fp from_int(long v, Field f) { return from(mpq_class(v), f); }

  static Fp parse(std::string_view s, Field f) { return from(Rational::parse(s).value(), f); }

  Field field() const { return Field::unchecked(p_); }
  std::uint32_t modulus() const { return p_; }
  std::uint32_t value() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  Fp inverse() const {
    if (v_ == 0) throw std::domain_error("fp: division by zero");
    // Extended Euclid on (v, p).
    std::int64_t a = v_, b = p_, x0 = 1, x1 = 0;
    while (b != 0) {
      const std::int64_t q = a / b;
      std::int64_t t = a - q * b; a = b; b = t;
      t = x0 - q * x1; x0 = x1; x1 = t;
    }
    return Fp(x0, p_);
  }

  std::string to_string() const { return std::to_string(v_); }

  Fp& operator+=(const Fp& o) {
    const std::uint32_t p = join(o);
    std::uint64_t s = static_cast<std::uint64_t>(v_) + o.v_;
    if (s >= p) s -= p;
    v_ = static_cast<std::uint32_t>(s);
    p_ = p;
    return *this;
  }
  Fp& operator-=(const Fp& o) {
    const std::uint32_t p = join(o);
    v_ = v_ >= o.v_ ? v_ - o.v_ : static_cast<std::uint32_t>(static_cast<std::uint64_t>(v_) + p - o.v_);
    p_ = p;
    return *this;
  }
  Fp& operator*=(const Fp& o) {
    const std::uint32_t p = join(o);
    v_ = p == 0 ? 0 : static_cast<std::uint32_t>(static_cast<std::uint64_t>(v_) * o.v_ % p);
    p_ = p;
    return *this;
  }
  Fp& operator/=(const Fp& o) { return *this *= o.inverse(); }

  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  friend Fp operator-(const Fp& a) {
    Fp r = a;
    if (r.v_ != 0) r.v_ = r.p_ - r.v_;
    return r;
  }
  friend bool operator==(const Fp& a, const Fp& b) {
    if (a.p_ != b.p_ && a.p_ != 0 && b.p_ != 0) throw FieldMismatch("fp: comparing residues of different primes");
    return a.v_ == b.v_;
  }

 private:
  std::uint32_t join(const Fp& o) const {
    if (p_ == o.p_) return p_;
    if (p_ == 0 && v_ == 0) return o.p_;
    if (o.p_ == 0 && o.v_ == 0) return p_;
    throw FieldMismatch("fp: mixing residues mod " + std::to_string(p_) + " and " + std::to_string(o.p_));
  }

  std::uint32_t v_ = 0;
  std::uint32_t p_ = 0;
};

template <class K>
inline constexpr bool is_rational_field_v = std::is_same_v<K, Rational>;

/// Uniform scalar construction for templated code.
template <class K>
K scalar(long v, Field f) {
  return K::from_int(v, f);
}

template <class K>
K scalar(const mpq_class& q, Field f) {
  return K::from(q, f);
}

template <class K>
K parse_scalar(std::string_view s, Field f) {
  if constexpr (is_rational_field_v<K>) {
    if (!f.is_rational()) throw FieldMismatch("rational scalar requested over " + f.to_string());
    return Rational::parse(s);
  } else {
    return Fp::parse(s, f);
  }
}

/// Checks that a scalar type matches a field descriptor.
template <class K>
void require_field(Field f) {
  if (is_rational_field_v<K> != f.is_rational()) {
    throw FieldMismatch("scalar type does not match field " + f.to_string());
  }
}

inline std::ostream& operator<<(std::ostream& os, const Rational& v) { return os << v.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const Fp& v) { return os << v.to_string(); }

}  // namespace podforge
