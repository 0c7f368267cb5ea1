#pragma once

// JSON formats: ideals, linear subspaces, pods (leg lists), infinity-pod
// bundles and pod reports. Polynomials are stored in their canonical text form.

#include "podforge/constructions.hpp"
#include "podforge/verify.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace podforge {

using json = nlohmann::json;

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  json j;
  in >> j;
  return j;
}

inline void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Rings and ideals.

inline json ring_to_json(const Ring& R) {
  return json{{"vars", R.names()}, {"weights", R.weights()}, {"field", R.field().to_string()}};
}

inline RingPtr ring_from_json(const json& j) {
  const auto names = j.at("vars").get<std::vector<std::string>>();
  const Field f = Field::parse(j.value("field", std::string("q")));
  std::vector<int> weights = j.contains("weights") ? j.at("weights").get<std::vector<int>>() : std::vector<int>(names.size(), 1);
  return Ring::make(names, f, weights);
}

template <class K>
json ideal_to_json(const Ideal<K>& I) {
  std::vector<std::string> gens;
  for (const auto& g : I.generators()) gens.push_back(g.to_string());
  return json{{"ring", ring_to_json(*I.ring())}, {"generators", gens}};
}

template <class K>
Ideal<K> ideal_from_json(const json& j) {
  const RingPtr R = ring_from_json(j.at("ring"));
  std::vector<Polynomial<K>> gens;
  for (const auto& s : j.at("generators")) gens.push_back(Polynomial<K>::parse(R, s.get<std::string>()));
  return Ideal<K>(R, std::move(gens));
}

inline json hilbert_to_json(const HilbertData& h) {
  json j{{"dim", h.dimension}, {"deg", h.degree}};
  if (h.has_genus) j["genus"] = h.arithmetic_genus;
  return j;
}

// ---------------------------------------------------------------------------
// Subspaces.

template <class K>
json subspace_to_json(const LinearSubspace<K>& S) {
  json basis = json::array();
  for (const auto& row : S.basis) {
    std::vector<std::string> r;
    for (const auto& c : row) r.push_back(c.to_string());
    basis.push_back(r);
  }
  return json{{"ambient", S.ambient},
              {"kind", S.kind == SubspaceKind::Points ? "points" : "forms"},
              {"field", S.field.to_string()},
              {"basis", basis}};
}

template <class K>
LinearSubspace<K> subspace_from_json(const json& j, Field f) {
  const auto ambient = j.at("ambient").get<std::vector<std::string>>();
  const std::string kind = j.at("kind").get<std::string>();
  if (kind != "points" && kind != "forms") throw std::invalid_argument("subspace kind must be points or forms");
  std::vector<std::vector<K>> rows;
  for (const auto& r : j.at("basis")) {
    std::vector<K> row;
    for (const auto& c : r) row.push_back(parse_scalar<K>(c.get<std::string>(), f));
    if (row.size() != ambient.size()) throw std::invalid_argument("subspace: basis vector of wrong length");
    rows.push_back(std::move(row));
  }
  return LinearSubspace<K>::make(ambient, kind == "points" ? SubspaceKind::Points : SubspaceKind::Forms, f, rows);
}

// ---------------------------------------------------------------------------
// Pods: {base: [[x,y,z]...], platform: [...], lengths_squared: [...]}.

template <class K>
json pod_to_json(const std::vector<Leg<K>>& legs) {
  json base = json::array(), plat = json::array(), d2 = json::array();
  for (const auto& l : legs) {
    base.push_back({l.a[0].to_string(), l.a[1].to_string(), l.a[2].to_string()});
    plat.push_back({l.b[0].to_string(), l.b[1].to_string(), l.b[2].to_string()});
    d2.push_back(l.d2.to_string());
  }
  return json{{"base", base}, {"platform", plat}, {"lengths_squared", d2}};
}

template <class K>
std::vector<Leg<K>> pod_from_json(const json& j, Field f) {
  const auto& base = j.at("base");
  const auto& plat = j.at("platform");
  const auto& d2 = j.at("lengths_squared");
  if (base.size() != plat.size() || base.size() != d2.size()) throw std::invalid_argument("pod: base, platform and lengths differ in size");
  auto scalar_of = [&](const json& v) {
    return v.is_string() ? parse_scalar<K>(v.get<std::string>(), f) : scalar<K>(v.get<long>(), f);
  };
  std::vector<Leg<K>> legs;
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (base[i].size() != 3 || plat[i].size() != 3) throw std::invalid_argument("pod: anchor points need three coordinates");
    Leg<K> l;
    for (int k = 0; k < 3; ++k) {
      l.a[k] = scalar_of(base[i][k]);
      l.b[k] = scalar_of(plat[i][k]);
    }
    l.d2 = scalar_of(d2[i]);
    legs.push_back(l);
  }
  return legs;
}

inline json float_pod_to_json(const std::vector<FloatLeg>& legs) {
  json base = json::array(), plat = json::array(), d2 = json::array();
  for (const auto& l : legs) {
    base.push_back({l.a[0], l.a[1], l.a[2]});
    plat.push_back({l.b[0], l.b[1], l.b[2]});
    d2.push_back(l.d2);
  }
  return json{{"base", base}, {"platform", plat}, {"lengths_squared", d2}};
}

// ---------------------------------------------------------------------------
// Bundles.

template <class K>
json bundle_to_json(const InfinityPodBundle<K>& b, long bound) {
  const auto& c = b.certification;
  std::vector<std::string> L, ilin;
  for (const auto& l : b.seed.L) L.push_back(l.to_string());
  for (const auto& f : b.i_lin) ilin.push_back(f.to_string());
  json seed{{"rng_seed", b.seed.rng_seed},
            {"bound", bound},
            {"attempts", b.attempts},
            {"field", b.seed.field().to_string()},
            {"L", L},
            {"U", b.seed.U.to_string()},
            {"V", "1"},
            {"F", b.seed.F().to_string()}};
  json cert{{"i_lin_dimension", c.i_lin_dimension},
            {"config", hilbert_to_json(c.config)},
            {"leg_full", hilbert_to_json(c.leg_full)},
            {"leg_sym", hilbert_to_json(c.leg_sym)},
            {"linear_routes_agree", c.linear_routes_agree},
            {"sym_routes_agree", c.sym_routes_agree},
            {"smooth_quartic", c.smooth_quartic}};
  return json{{"seed", seed},
              {"ideals",
               {{"i_lin", ilin},
                {"config", ideal_to_json(b.config_ideal)},
                {"leg_full", ideal_to_json(b.leg_ideal_full)},
                {"leg_sym", ideal_to_json(b.leg_ideal_sym)}}},
              {"certification", cert}};
}

inline json report_to_json(const PodReport& r) {
  return json{{"pod_id", r.pod_id},
              {"mode", r.exact ? "exact" : "float"},
              {"tolerance", r.tolerance},
              {"configurations", r.configurations},
              {"legs", r.legs},
              {"max_residual", r.max_residual},
              {"failures", r.failures},
              {"realizable_legs", r.realizable_legs},
              {"passed", r.passed},
              {"residuals", r.residuals}};
}

inline std::string report_table(const PodReport& r) {
  std::ostringstream os;
  os << "pod " << (r.pod_id.empty() ? "-" : r.pod_id) << " (" << (r.exact ? "exact" : "float") << ")\n";
  os << "  configurations " << r.configurations << ", legs " << r.legs;
  if (!r.exact) os << ", realizable legs " << r.realizable_legs << ", tolerance " << r.tolerance;
  os << "\n  max residual " << r.max_residual << ", failures " << r.failures << "\n";
  os << "  " << (r.passed ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace podforge
