#pragma once

// Homogeneous Buchberger algorithm (degree by degree, Gebauer-Moeller pair
// criteria), normal forms, elimination, preimages and saturation.

#include "podforge/linalg.hpp"
#include "podforge/polynomial.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace podforge {

/// Raised when a Groebner computation exceeds its reduction-step budget.
class GroebnerBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GroebnerOptions {
  std::size_t max_steps = 0;  // 0: unlimited
  int max_degree = -1;        // truncate (homogeneous input): basis valid up to this degree
};

struct GroebnerStats {
  std::size_t pairs = 0;
  std::size_t zero_reductions = 0;
  std::size_t steps = 0;
  int max_degree = 0;
};

namespace detail {

inline std::uint32_t divmask(const Monomial& m, std::size_t n) {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (m.exp[i] != 0) mask |= 1u << i;
  }
  return mask;
}

inline Monomial lcm(const Monomial& a, const Monomial& b, const Ring& ring) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = std::max(a.exp[i], b.exp[i]);
  return ring.rekey(r);
}

inline bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t w = 0; w < 4; ++w) {
    const std::uint64_t x = a.word(w), y = b.word(w);
    // Some byte nonzero in both?
    for (int k = 0; k < 8; ++k) {
      if (((x >> (8 * k)) & 0xFF) != 0 && ((y >> (8 * k)) & 0xFF) != 0) return false;
    }
  }
  return true;
}

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
};

/// Basis elements with leading data cached for divisor search.
template <class K>
struct Reducers {
  std::size_t nvars = 0;
  std::vector<Polynomial<K>> polys;
  std::vector<Monomial> leads;
  std::vector<std::uint32_t> masks;

  void add(Polynomial<K> p) {
    leads.push_back(p.lead());
    masks.push_back(divmask(p.lead(), nvars));
    polys.push_back(std::move(p));
  }

  int find_divisor(const Monomial& m, std::uint32_t mmask) const {
    for (std::size_t i = 0; i < leads.size(); ++i) {
      if ((masks[i] & ~mmask) == 0 && divides(leads[i], m)) return static_cast<int>(i);
    }
    return -1;
  }
};

/// Full reduction of f by monic reducers. Returns the remainder; counts steps.
template <class K>
Polynomial<K> reduce_full(const Polynomial<K>& f, const Reducers<K>& g, std::size_t& steps, std::size_t max_steps) {
  if (f.is_zero()) return f;
  const RingPtr& ring = f.ring();
  std::unordered_map<Monomial, K, MonomialHash> acc;
  std::priority_queue<Monomial, std::vector<Monomial>, MonomialLess> heap;
  acc.reserve(f.size() * 4);
  for (const auto& t : f.terms()) {
    acc.emplace(t.m, t.c);
    heap.push(t.m);
  }
  std::vector<Term<K>> out;
  while (!heap.empty()) {
    const Monomial m = heap.top();
    heap.pop();
    while (!heap.empty() && heap.top() == m) heap.pop();
    auto it = acc.find(m);
    if (it == acc.end()) continue;
    K c = std::move(it->second);
    acc.erase(it);
    if (c.is_zero()) continue;
    const int d = g.find_divisor(m, divmask(m, g.nvars));
    if (d < 0) {
      out.push_back({m, std::move(c)});
      continue;
    }
    if (max_steps != 0 && ++steps > max_steps) {
      throw GroebnerBudgetExceeded("groebner: reduction step budget of " + std::to_string(max_steps) + " exhausted");
    }
    const Monomial q = quotient(m, g.leads[d]);
    const auto& terms = g.polys[d].terms();
    const K neg = -c;
    for (std::size_t k = 1; k < terms.size(); ++k) {
      const Monomial mm = terms[k].m * q;
      auto [jt, fresh] = acc.try_emplace(mm, terms[k].c * neg);
      if (fresh) {
        heap.push(mm);
      } else {
        jt->second += terms[k].c * neg;
      }
    }
  }
  return Polynomial<K>::from_sorted(ring, std::move(out));
}

}  // namespace detail

/// Normal form of f modulo a Groebner basis G (same ring).
template <class K>
Polynomial<K> normal_form(const Polynomial<K>& f, const std::vector<Polynomial<K>>& basis) {
  detail::Reducers<K> red;
  red.nvars = f.ring()->size();
  for (const auto& g : basis) {
    f.check_ring(g);
    red.add(g.monic());
  }
  std::size_t steps = 0;
  return detail::reduce_full(f, red, steps, 0);
}

/// Reduced Groebner basis of homogeneous polynomials in their ring's order.
/// Output is monic and sorted by increasing leading monomial.
template <class K>
std::vector<Polynomial<K>> buchberger(const std::vector<Polynomial<K>>& input, const GroebnerOptions& opts = {},
                                      GroebnerStats* stats = nullptr) {
  std::vector<Polynomial<K>> gens;
  for (const auto& f : input) {
    if (f.is_zero()) continue;
    if (!f.is_homogeneous()) throw std::invalid_argument("groebner: generator is not homogeneous: " + f.to_string());
    gens.push_back(f);
  }
  if (gens.empty()) return {};
  const RingPtr ring = gens.front().ring();
  for (const auto& f : gens) gens.front().check_ring(f);
  const Ring& R = *ring;
  std::stable_sort(gens.begin(), gens.end(), [](const auto& a, const auto& b) { return a.lead().degree < b.lead().degree; });

  struct Pair {
    std::size_t i, j;
    Monomial lcm;
  };
  detail::Reducers<K> G;
  G.nvars = R.size();
  std::vector<Pair> pairs;
  GroebnerStats local;
  std::size_t next_gen = 0;
  std::size_t steps = 0;

  auto insert = [&](Polynomial<K> h) {
    const std::size_t hi = G.polys.size();
    const Monomial lh = h.lead();
    // Chain criterion on existing pairs.
    std::vector<Pair> kept;
    kept.reserve(pairs.size());
    for (auto& p : pairs) {
      if (divides(lh, p.lcm) && !(detail::lcm(G.leads[p.i], lh, R) == p.lcm) &&
          !(detail::lcm(G.leads[p.j], lh, R) == p.lcm)) {
        continue;
      }
      kept.push_back(std::move(p));
    }
    pairs = std::move(kept);
    // New pairs with M and F criteria, then product criterion.
    std::vector<Pair> fresh;
    std::vector<bool> cop;
    for (std::size_t i = 0; i < hi; ++i) {
      fresh.push_back({i, hi, detail::lcm(G.leads[i], lh, R)});
      cop.push_back(detail::coprime(G.leads[i], lh));
    }
    const std::size_t n = fresh.size();
    std::vector<bool> drop(n, false);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n && !drop[a]; ++b) {
        if (a == b || drop[b]) continue;
        if (divides(fresh[b].lcm, fresh[a].lcm)) {
          if (!(fresh[b].lcm == fresh[a].lcm)) {
            drop[a] = true;
          } else if (b < a) {
            // Equal lcm: keep one representative, preferring a coprime pair.
            if (cop[a]) cop[b] = true;
            drop[a] = true;
          }
        }
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      if (!drop[a] && !cop[a]) pairs.push_back(fresh[a]);
    }
    G.add(std::move(h));
  };

  while (next_gen < gens.size() || !pairs.empty()) {
    int d = std::numeric_limits<int>::max();
    if (next_gen < gens.size()) d = gens[next_gen].lead().degree;
    for (const auto& p : pairs) d = std::min(d, p.lcm.degree);
    if (opts.max_degree >= 0 && d > opts.max_degree) break;
    local.max_degree = std::max(local.max_degree, d);

    std::vector<Pair> batch;
    std::vector<Pair> rest;
    for (auto& p : pairs) (p.lcm.degree == d ? batch : rest).push_back(std::move(p));
    pairs = std::move(rest);
    std::sort(batch.begin(), batch.end(), [](const Pair& a, const Pair& b) {
      const int c = compare(a.lcm, b.lcm);
      if (c != 0) return c < 0;
      return std::make_pair(a.i, a.j) < std::make_pair(b.i, b.j);
    });

    std::vector<Polynomial<K>> todo;
    for (const auto& p : batch) {
      const auto& f = G.polys[p.i];
      const auto& g = G.polys[p.j];
      Polynomial<K> s = f.mul_term(quotient(p.lcm, G.leads[p.i]), scalar<K>(1, R.field()));
      s = s.add_mul(scalar<K>(-1, R.field()), quotient(p.lcm, G.leads[p.j]), g);
      todo.push_back(std::move(s));
    }
    while (next_gen < gens.size() && gens[next_gen].lead().degree == d) todo.push_back(gens[next_gen++]);
    local.pairs += batch.size();

    const std::size_t first_new = G.polys.size();
    for (const auto& s : todo) {
      Polynomial<K> h = detail::reduce_full(s, G, steps, opts.max_steps);
      if (h.is_zero()) {
        ++local.zero_reductions;
        continue;
      }
      insert(h.monic());
    }
    // Interreduce tails of this degree's new elements against each other.
    for (std::size_t k = first_new; k < G.polys.size(); ++k) {
      const auto& p = G.polys[k];
      std::vector<Term<K>> tail(p.terms().begin() + 1, p.terms().end());
      if (tail.empty()) continue;
      detail::Reducers<K> others;
      others.nvars = G.nvars;
      for (std::size_t o = first_new; o < G.polys.size(); ++o) {
        if (o != k) others.add(G.polys[o]);
      }
      Polynomial<K> t = detail::reduce_full(Polynomial<K>::from_sorted(ring, tail), others, steps, opts.max_steps);
      std::vector<Term<K>> all{p.terms().front()};
      all.insert(all.end(), t.terms().begin(), t.terms().end());
      G.polys[k] = Polynomial<K>::from_sorted(ring, std::move(all));
    }
  }
  local.steps = steps;
  if (stats) *stats = local;
  std::vector<Polynomial<K>> out = std::move(G.polys);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return compare(a.lead(), b.lead()) < 0; });
  return out;
}

/// Homogeneous ideal with a lazily computed, shared reduced Groebner basis.
template <class K>
class Ideal {
 public:
  Ideal() = default;
  Ideal(RingPtr ring, std::vector<Polynomial<K>> gens) : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
    require_field<K>(ring_->field());
    for (auto& g : gens) {
      if (!g.ring()->same_as(*ring_)) throw FieldMismatch("ideal: generator from another ring");
      if (g.is_zero()) continue;
      if (!g.is_homogeneous()) throw std::invalid_argument("ideal: generator is not homogeneous: " + g.to_string());
      gens_.push_back(std::move(g));
    }
  }

  /// Parses generator strings in the ring.
  static Ideal parse(RingPtr ring, const std::vector<std::string>& gens) {
    std::vector<Polynomial<K>> v;
    for (const auto& s : gens) v.push_back(Polynomial<K>::parse(ring, s));
    return Ideal(std::move(ring), std::move(v));
  }

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial<K>>& generators() const { return gens_; }

  /// Reduced Groebner basis in the ring's order (cached; thread-safe).
  const std::vector<Polynomial<K>>& groebner(const GroebnerOptions& opts = {}) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (!cache_->basis) {
      cache_->basis = std::make_shared<const std::vector<Polynomial<K>>>(buchberger(gens_, opts));
    }
    return *cache_->basis;
  }

  bool has_groebner() const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    return cache_->basis != nullptr;
  }

  Polynomial<K> normal_form(const Polynomial<K>& f) const { return podforge::normal_form(f, groebner()); }
  bool contains(const Polynomial<K>& f) const { return normal_form(f).is_zero(); }

  Ideal plus(const std::vector<Polynomial<K>>& more) const {
    auto g = gens_;
    g.insert(g.end(), more.begin(), more.end());
    return Ideal(ring_, std::move(g));
  }
  Ideal plus(const Ideal& other) const { return plus(other.gens_); }

  /// Same generators in a compatible ring with another order.
  Ideal rebase(const RingPtr& target) const {
    std::vector<Polynomial<K>> g;
    for (const auto& f : gens_) g.push_back(f.rebase(target));
    return Ideal(target, std::move(g));
  }

 private:
  struct Cache {
    std::mutex mu;
    std::shared_ptr<const std::vector<Polynomial<K>>> basis;
  };
  RingPtr ring_;
  std::vector<Polynomial<K>> gens_;
  std::shared_ptr<Cache> cache_;
};

/// I intersected with the subring on the kept variables, via a block order.
/// The result lives in a degrevlex ring on the kept variables (same weights).
template <class K>
Ideal<K> eliminate(const Ideal<K>& I, const std::vector<std::string>& drop, const GroebnerOptions& opts = {}) {
  const RingPtr& R = I.ring();
  std::vector<std::string> keep;
  std::vector<int> weights;
  for (std::size_t i = 0; i < R->size(); ++i) {
    if (std::find(drop.begin(), drop.end(), R->name(i)) == drop.end()) {
      keep.push_back(R->name(i));
      weights.push_back(R->weight(i));
    }
  }
  for (const auto& d : drop) (void)R->index(d);
  const RingPtr sub = Ring::make(keep, R->field(), weights);
  const RingPtr blocked = R->with_order(R->elimination_order(drop));
  const auto gb = buchberger(I.rebase(blocked).generators(), opts);
  std::vector<Polynomial<K>> out;
  for (const auto& g : gb) {
    if (g.lead().block != 0) continue;
    out.push_back(g.rename_into(sub));
  }
  return Ideal<K>(sub, std::move(out));
}

/// Closure of the coordinate projection onto the kept variables (in the given order).
template <class K>
Ideal<K> project_model(const Ideal<K>& I, const std::vector<std::string>& keep, const GroebnerOptions& opts = {}) {
  const RingPtr& R = I.ring();
  std::vector<std::string> drop;
  for (const auto& n : R->names()) {
    if (std::find(keep.begin(), keep.end(), n) == keep.end()) drop.push_back(n);
  }
  for (const auto& k : keep) (void)R->index(k);
  Ideal<K> e = eliminate(I, drop, opts);
  std::vector<int> weights;
  for (const auto& k : keep) weights.push_back(R->weight(R->index(k)));
  const RingPtr target = Ring::make(keep, R->field(), weights);
  std::vector<Polynomial<K>> g;
  for (const auto& f : e.groebner()) g.push_back(f.rename_into(target));
  return Ideal<K>(target, std::move(g));
}

/// Preimage phi^{-1}(J) for a graded ring map phi: S -> T and an ideal J of T,
/// by elimination in the graph ideal. Source and target names must be disjoint.
template <class K>
Ideal<K> preimage(const RingMap<K>& phi, const Ideal<K>& J, const GroebnerOptions& opts = {}) {
  const RingPtr& S = phi.source();
  const RingPtr& T = phi.target();
  if (!J.ring()->same_as(*T)) throw FieldMismatch("preimage: ideal outside the target ring");
  int k = 0;
  for (std::size_t i = 0; i < S->size() && k == 0; ++i) {
    const auto& img = phi.image(i);
    if (!img.is_zero()) {
      if (img.lead().degree % S->weight(i) != 0) throw std::invalid_argument("preimage: map is not graded");
      k = img.lead().degree / S->weight(i);
    }
  }
  if (k <= 0) k = 1;
  if (!phi.is_graded(k)) throw std::invalid_argument("preimage: map is not graded");
  std::vector<std::string> names = T->names();
  std::vector<int> weights = T->weights();
  for (std::size_t i = 0; i < S->size(); ++i) {
    if (T->has(S->name(i))) throw std::invalid_argument("preimage: source and target share variable " + S->name(i));
    names.push_back(S->name(i));
    weights.push_back(k * S->weight(i));
  }
  const RingPtr graph = Ring::make(names, T->field(), weights);
  std::vector<Polynomial<K>> gens;
  for (const auto& f : J.generators()) gens.push_back(f.rename_into(graph));
  for (std::size_t i = 0; i < S->size(); ++i) {
    gens.push_back(Polynomial<K>::variable(graph, S->name(i)) - phi.image(i).rename_into(graph));
  }
  Ideal<K> e = eliminate(Ideal<K>(graph, gens), T->names(), opts);
  std::vector<Polynomial<K>> out;
  for (const auto& f : e.groebner()) out.push_back(f.rename_into(S));
  return Ideal<K>(S, std::move(out));
}

/// I : v^infinity, using degrevlex with v as the last variable.
template <class K>
Ideal<K> saturate(const Ideal<K>& I, const std::string& v, const GroebnerOptions& opts = {}) {
  const RingPtr& R = I.ring();
  const int vi = R->index(v);
  std::vector<std::string> names;
  std::vector<int> weights;
  for (std::size_t i = 0; i < R->size(); ++i) {
    if (static_cast<int>(i) == vi) continue;
    names.push_back(R->name(i));
    weights.push_back(R->weight(i));
  }
  names.push_back(v);
  weights.push_back(R->weight(vi));
  const RingPtr perm = Ring::make(names, R->field(), weights);
  std::vector<Polynomial<K>> gens;
  for (const auto& f : I.generators()) gens.push_back(f.rename_into(perm));
  const auto gb = buchberger(gens, opts);
  const std::size_t last = names.size() - 1;
  std::vector<Polynomial<K>> out;
  for (const auto& g : gb) {
    int e = 127;
    for (const auto& t : g.terms()) e = std::min(e, static_cast<int>(t.m.exp[last]));
    Polynomial<K> h = g;
    if (e > 0) {
      std::vector<Term<K>> terms;
      for (const auto& t : g.terms()) terms.push_back({quotient(t.m, perm->var(last, e)), t.c});
      h = Polynomial<K>::from_sorted(perm, std::move(terms));
    }
    out.push_back(h.rename_into(R));
  }
  return Ideal<K>(R, std::move(out));
}

/// Coefficient vector of a linear form on the ring's variables.
template <class K>
std::vector<K> linear_coefficients(const Polynomial<K>& f) {
  const RingPtr& R = f.ring();
  std::vector<K> v(R->size(), scalar<K>(0, R->field()));
  for (const auto& t : f.terms()) {
    int idx = -1;
    for (std::size_t i = 0; i < R->size(); ++i) {
      if (t.m.exp[i] == 1 && idx < 0) {
        idx = static_cast<int>(i);
      } else if (t.m.exp[i] != 0) {
        idx = -2;
      }
    }
    if (idx < 0 || t.m.degree != R->weight(idx)) throw std::invalid_argument("not a linear form: " + f.to_string());
    v[idx] = t.c;
  }
  return v;
}

template <class K>
Polynomial<K> linear_form(const RingPtr& R, const std::vector<K>& coeffs) {
  std::vector<Term<K>> terms;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (!coeffs[i].is_zero()) terms.push_back({R->var(i), coeffs[i]});
  }
  return Polynomial<K>::from_terms(R, std::move(terms));
}

/// Basis (reduced echelon) of the degree-1 piece of a homogeneous ideal in a
/// weight-1 ring. Only degree-1 generators contribute, so no full basis is needed.
template <class K>
std::vector<Polynomial<K>> linear_part(const Ideal<K>& I) {
  const RingPtr& R = I.ring();
  if (!R->uniform_weights()) throw std::invalid_argument("linear_part: weighted ring");
  std::vector<std::vector<K>> rows;
  for (const auto& g : I.generators()) {
    if (g.lead().degree == 1) rows.push_back(linear_coefficients(g));
  }
  std::vector<Polynomial<K>> out;
  for (const auto& r : row_space(rows, R->size(), R->field())) out.push_back(linear_form(R, r));
  return out;
}

}  // namespace podforge
