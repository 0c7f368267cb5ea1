#pragma once

// Sparse multivariate polynomials over an exact field, ring homomorphisms,
// and the canonical text format "c*v1^a1*...*vk^ak" joined by +/-.

#include "podforge/field.hpp"
#include "podforge/ring.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace podforge {

template <class K>
struct Term {
  Monomial m;
  K c;
};

/// Sparse polynomial with terms strictly decreasing in the ring's order and no
/// zero coefficients. Values are immutable once built.
template <class K>
class Polynomial {
 public:
  using scalar_type = K;

  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) { require_field<K>(ring_->field()); }

  static Polynomial constant(RingPtr ring, const K& c) {
    Polynomial p(std::move(ring));
    if (!c.is_zero()) p.terms_.push_back({Monomial{}, c});
    return p;
  }
  static Polynomial constant(RingPtr ring, long c) {
    const Field f = ring->field();
    return constant(std::move(ring), scalar<K>(c, f));
  }

  static Polynomial variable(RingPtr ring, std::size_t i) {
    Polynomial p(ring);
    p.terms_.push_back({ring->var(i), scalar<K>(1, ring->field())});
    return p;
  }
  static Polynomial variable(RingPtr ring, const std::string& name) {
    const auto i = static_cast<std::size_t>(ring->index(name));
    return variable(std::move(ring), i);
  }

  static Polynomial monomial(RingPtr ring, const Monomial& m, const K& c) {
    Polynomial p(std::move(ring));
    if (!c.is_zero()) p.terms_.push_back({m, c});
    return p;
  }

  /// Builds from unordered terms, combining duplicates and dropping zeros.
  static Polynomial from_terms(RingPtr ring, std::vector<Term<K>> terms) {
    Polynomial p(std::move(ring));
    std::sort(terms.begin(), terms.end(), [](const Term<K>& a, const Term<K>& b) { return compare(a.m, b.m) > 0; });
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().m == t.m) {
        p.terms_.back().c += t.c;
        if (p.terms_.back().c.is_zero()) p.terms_.pop_back();
      } else if (!t.c.is_zero()) {
        p.terms_.push_back(std::move(t));
      }
    }
    return p;
  }

  /// Terms must already be sorted, distinct and nonzero.
  static Polynomial from_sorted(RingPtr ring, std::vector<Term<K>> terms) {
    Polynomial p(std::move(ring));
    p.terms_ = std::move(terms);
    return p;
  }

  static Polynomial parse(RingPtr ring, std::string_view text);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term<K>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Monomial& lead() const { return terms_.front().m; }
  const K& lead_coeff() const { return terms_.front().c; }

  int degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, t.m.degree);
    return d;
  }

  bool is_homogeneous() const {
    return std::all_of(terms_.begin(), terms_.end(), [&](const Term<K>& t) { return t.m.degree == terms_.front().m.degree; });
  }

  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.degree == 0); }

  /// Largest exponent of variable i.
  int degree_in(std::size_t i) const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.m.exp[i]));
    return d;
  }

  bool involves(std::size_t i) const { return degree_in(i) > 0; }

  Polynomial monic() const {
    if (is_zero()) return *this;
    return scaled(lead_coeff().inverse());
  }

  Polynomial scaled(const K& c) const {
    if (c.is_zero()) return Polynomial(ring_);
    Polynomial r(ring_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.m, t.c * c});
    return r;
  }

  Polynomial mul_term(const Monomial& m, const K& c) const {
    if (c.is_zero()) return Polynomial(ring_);
    Polynomial r(ring_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.m * m, t.c * c});
    return r;
  }

  /// this + c*m*g.
  Polynomial add_mul(const K& c, const Monomial& m, const Polynomial& g) const {
    check_ring(g);
    Polynomial r(ring_);
    merge_add_mul(terms_, c, m, g.terms_, r.terms_);
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    a.check_ring(b);
    Polynomial r(a.ring_);
    merge_add_mul(a.terms_, scalar<K>(1, a.ring_->field()), Monomial{}, b.terms_, r.terms_);
    return r;
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    a.check_ring(b);
    Polynomial r(a.ring_);
    merge_add_mul(a.terms_, scalar<K>(-1, a.ring_->field()), Monomial{}, b.terms_, r.terms_);
    return r;
  }
  friend Polynomial operator-(const Polynomial& a) { return a.scaled(scalar<K>(-1, a.ring_->field())); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_ring(b);
    if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_);
    const Polynomial& small = a.size() <= b.size() ? a : b;
    const Polynomial& big = a.size() <= b.size() ? b : a;
    if (small.size() <= 4) {
      Polynomial r(a.ring_);
      for (const auto& t : small.terms_) r = r.add_mul(t.c, t.m, big);
      return r;
    }
    std::unordered_map<Monomial, K, MonomialHash> acc;
    acc.reserve(a.size() * b.size());
    for (const auto& s : a.terms_) {
      for (const auto& t : b.terms_) {
        auto [it, fresh] = acc.try_emplace(s.m * t.m, s.c * t.c);
        if (!fresh) it->second += s.c * t.c;
      }
    }
    return from_accumulator(a.ring_, acc);
  }

  friend Polynomial operator*(const Polynomial& a, const K& c) { return a.scaled(c); }
  friend Polynomial operator*(const K& c, const Polynomial& a) { return a.scaled(c); }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (!(a.terms_[i].m == b.terms_[i].m) || !(a.terms_[i].c == b.terms_[i].c)) return false;
    }
    return true;
  }

  Polynomial pow(unsigned e) const {
    Polynomial result = constant(ring_, 1);
    Polynomial base = *this;
    while (e > 0) {
      if (e & 1u) result = result * base;
      e >>= 1u;
      if (e > 0) base = base * base;
    }
    return result;
  }

  /// Partial derivative with respect to variable i.
  Polynomial derivative(std::size_t i) const {
    std::vector<Term<K>> out;
    for (const auto& t : terms_) {
      const int e = t.m.exp[i];
      if (e == 0) continue;
      std::vector<int> exps(ring_->size());
      for (std::size_t k = 0; k < ring_->size(); ++k) exps[k] = t.m.exp[k];
      exps[i] -= 1;
      out.push_back({ring_->monomial(exps), t.c * scalar<K>(e, ring_->field())});
    }
    return from_terms(ring_, std::move(out));
  }

  /// Homogeneous component of weighted degree d.
  Polynomial component(int d) const {
    Polynomial r(ring_);
    for (const auto& t : terms_) {
      if (t.m.degree == d) r.terms_.push_back(t);
    }
    return r;
  }

  K evaluate(std::span<const K> point) const {
    if (point.size() != ring_->size()) throw std::invalid_argument("polynomial: evaluation point has wrong arity");
    K acc = scalar<K>(0, ring_->field());
    for (const auto& t : terms_) {
      K v = t.c;
      for (std::size_t i = 0; i < ring_->size(); ++i) {
        for (int e = 0; e < t.m.exp[i]; ++e) v *= point[i];
      }
      acc += v;
    }
    return acc;
  }

  /// Floating-point evaluation (Q only).
  double evaluate_double(std::span<const double> point) const
    requires is_rational_field_v<K>
  {
    double acc = 0.0;
    for (const auto& t : terms_) {
      double v = t.c.to_double();
      for (std::size_t i = 0; i < ring_->size(); ++i) {
        for (int e = 0; e < t.m.exp[i]; ++e) v *= point[i];
      }
      acc += v;
    }
    return acc;
  }

  /// Sum of |terms| at the point, used as a scale for relative residuals.
  double magnitude_double(std::span<const double> point) const
    requires is_rational_field_v<K>
  {
    double acc = 0.0;
    for (const auto& t : terms_) {
      double v = std::abs(t.c.to_double());
      for (std::size_t i = 0; i < ring_->size(); ++i) {
        for (int e = 0; e < t.m.exp[i]; ++e) v *= std::abs(point[i]);
      }
      acc += v;
    }
    return acc;
  }

  /// Same polynomial in a compatible ring (same variables) with another order.
  Polynomial rebase(const RingPtr& target) const {
    if (!ring_->compatible(*target)) throw FieldMismatch("polynomial: rebase into incompatible ring");
    std::vector<Term<K>> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back({target->rekey(t.m), t.c});
    return from_terms(target, std::move(out));
  }

  /// Moves into a ring that names every variable this polynomial uses.
  Polynomial rename_into(const RingPtr& target) const {
    std::vector<int> map(ring_->size(), -1);
    std::vector<Term<K>> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      std::vector<int> exps(target->size(), 0);
      for (std::size_t i = 0; i < ring_->size(); ++i) {
        if (t.m.exp[i] == 0) continue;
        if (map[i] < 0) {
          if (!target->has(ring_->name(i))) {
            throw std::invalid_argument("polynomial: target ring lacks variable '" + ring_->name(i) + "'");
          }
          map[i] = target->index(ring_->name(i));
        }
        exps[map[i]] += t.m.exp[i];
      }
      out.push_back({target->monomial(exps), t.c});
    }
    return from_terms(target, std::move(out));
  }

  std::string to_string() const;

  void check_ring(const Polynomial& o) const {
    if (!ring_ || !o.ring_ || !ring_->same_as(*o.ring_)) throw FieldMismatch("polynomial: operands live in different rings");
  }

  static Polynomial from_accumulator(const RingPtr& ring, const std::unordered_map<Monomial, K, MonomialHash>& acc) {
    std::vector<Term<K>> out;
    out.reserve(acc.size());
    for (const auto& [m, c] : acc) {
      if (!c.is_zero()) out.push_back({m, c});
    }
    std::sort(out.begin(), out.end(), [](const Term<K>& a, const Term<K>& b) { return compare(a.m, b.m) > 0; });
    return from_sorted(ring, std::move(out));
  }

  /// out = f + c*m*g, all term lists sorted.
  static void merge_add_mul(const std::vector<Term<K>>& f, const K& c, const Monomial& m, const std::vector<Term<K>>& g,
                            std::vector<Term<K>>& out) {
    out.clear();
    out.reserve(f.size() + g.size());
    std::size_t i = 0, j = 0;
    const bool shift = !m.is_one();
    while (i < f.size() && j < g.size()) {
      const Monomial gm = shift ? g[j].m * m : g[j].m;
      const int cmp = compare(f[i].m, gm);
      if (cmp > 0) {
        out.push_back(f[i++]);
      } else if (cmp < 0) {
        out.push_back({gm, g[j++].c * c});
      } else {
        K s = f[i].c + g[j].c * c;
        if (!s.is_zero()) out.push_back({gm, std::move(s)});
        ++i;
        ++j;
      }
    }
    for (; i < f.size(); ++i) out.push_back(f[i]);
    for (; j < g.size(); ++j) out.push_back({shift ? g[j].m * m : g[j].m, g[j].c * c});
  }

 private:
  RingPtr ring_;
  std::vector<Term<K>> terms_;
};

namespace detail {

template <class K>
std::string coefficient_text(const K& c, bool& negative) {
  if constexpr (is_rational_field_v<K>) {
    negative = c.sign() < 0;
    return negative ? (-c).to_string() : c.to_string();
  } else {
    negative = false;
    return c.to_string();
  }
}

}  // namespace detail

template <class K>
std::string Polynomial<K>::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    bool negative = false;
    const std::string coeff = detail::coefficient_text(t.c, negative);
    if (negative) {
      out += "-";
    } else if (!first) {
      out += "+";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < ring_->size(); ++i) {
      const int e = t.m.exp[i];
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += ring_->name(i);
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      out += coeff;
    } else if (coeff == "1") {
      out += mono;
    } else {
      out += coeff + "*" + mono;
    }
  }
  return out;
}

template <class K>
Polynomial<K> Polynomial<K>::parse(RingPtr ring, std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s.empty()) throw std::invalid_argument("polynomial: empty text");
  const Field field = ring->field();
  std::vector<Term<K>> terms;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("polynomial: " + why + " at offset " + std::to_string(pos) + " in '" + s + "'");
  };
  while (pos < s.size()) {
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
      negative = s[pos] == '-';
      ++pos;
    } else if (!terms.empty()) {
      fail("expected + or -");
    }
    K coeff = scalar<K>(negative ? -1 : 1, field);
    std::vector<int> exps(ring->size(), 0);
    bool need_factor = true;
    while (need_factor) {
      if (pos >= s.size()) fail("dangling operator");
      if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
        const std::size_t start = pos;
        while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/')) ++pos;
        coeff *= parse_scalar<K>(std::string_view(s).substr(start, pos - start), field);
      } else if (std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '_') {
        const std::size_t start = pos;
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
        const std::string name = s.substr(start, pos - start);
        if (!ring->has(name)) fail("unknown variable '" + name + "'");
        int e = 1;
        if (pos < s.size() && s[pos] == '^') {
          ++pos;
          const std::size_t es = pos;
          while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
          if (es == pos) fail("missing exponent");
          e = std::stoi(s.substr(es, pos - es));
        }
        exps[ring->index(name)] += e;
      } else {
        fail("unexpected character");
      }
      if (pos < s.size() && s[pos] == '*') {
        ++pos;
      } else {
        need_factor = false;
      }
    }
    terms.push_back({ring->monomial(exps), coeff});
  }
  return from_terms(std::move(ring), std::move(terms));
}

template <class K>
std::ostream& operator<<(std::ostream& os, const Polynomial<K>& p) {
  return os << p.to_string();
}

/// Ring homomorphism given by one image per source variable.
template <class K>
class RingMap {
 public:
  RingMap(RingPtr source, RingPtr target, std::vector<Polynomial<K>> images)
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (images_.size() != source_->size()) throw std::invalid_argument("ring map: one image per source variable required");
    if (!(source_->field() == target_->field())) throw FieldMismatch("ring map: source and target fields differ");
    for (const auto& img : images_) {
      if (!img.ring()->same_as(*target_)) throw FieldMismatch("ring map: image outside target ring");
    }
  }

  /// Images looked up by source variable name; every source variable must be covered.
  static RingMap from_names(RingPtr source, RingPtr target, const std::map<std::string, Polynomial<K>>& images) {
    std::vector<Polynomial<K>> v;
    for (const auto& n : source->names()) {
      auto it = images.find(n);
      if (it == images.end()) throw std::invalid_argument("ring map: variable '" + n + "' is not covered");
      v.push_back(it->second);
    }
    return RingMap(std::move(source), std::move(target), std::move(v));
  }

  static RingMap identity(const RingPtr& ring) {
    std::vector<Polynomial<K>> v;
    for (std::size_t i = 0; i < ring->size(); ++i) v.push_back(Polynomial<K>::variable(ring, i));
    return RingMap(ring, ring, std::move(v));
  }

  const RingPtr& source() const { return source_; }
  const RingPtr& target() const { return target_; }
  const std::vector<Polynomial<K>>& images() const { return images_; }
  const Polynomial<K>& image(std::size_t i) const { return images_.at(i); }

  /// True when every image is homogeneous of weighted degree k*weight(var).
  bool is_graded(int k) const {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      const auto& img = images_[i];
      if (img.is_zero()) continue;
      if (!img.is_homogeneous() || img.lead().degree != k * source_->weight(i)) return false;
    }
    return true;
  }

  Polynomial<K> operator()(const Polynomial<K>& f) const {
    if (!f.ring()->compatible(*source_)) throw FieldMismatch("ring map: argument outside source ring");
    std::vector<std::vector<Polynomial<K>>> powers(source_->size());
    auto power = [&](std::size_t i, int e) -> const Polynomial<K>& {
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(Polynomial<K>::constant(target_, 1));
      while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * images_[i]);
      return cache[e];
    };
    std::unordered_map<Monomial, K, MonomialHash> acc;
    for (const auto& t : f.terms()) {
      Polynomial<K> prod = Polynomial<K>::constant(target_, t.c);
      for (std::size_t i = 0; i < source_->size() && !prod.is_zero(); ++i) {
        if (t.m.exp[i] != 0) prod = prod * power(i, t.m.exp[i]);
      }
      for (const auto& u : prod.terms()) {
        auto [it, fresh] = acc.try_emplace(u.m, u.c);
        if (!fresh) it->second += u.c;
      }
    }
    return Polynomial<K>::from_accumulator(target_, acc);
  }

 private:
  RingPtr source_;
  RingPtr target_;
  std::vector<Polynomial<K>> images_;
};

}  // namespace podforge
