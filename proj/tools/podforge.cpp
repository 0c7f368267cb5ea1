// podforge: models, invariants, constructions, duals, pod verification and the
// acceptance suite from the command line.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 degenerate input.

#include "podforge/podforge.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

using namespace podforge;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string field = "fp:101";
  std::uint64_t seed = 1;
  long bound = 10;
  int retries = 8;
  std::size_t samples = 0;  // 0: mode default
  double tol = 1e-9;
  std::string out;
  std::string in;
};

template <class F>
auto with_field(Field f, F&& fn) {
  if (f.is_rational()) return fn(Rational{});
  return fn(Fp{});
}

std::string normalize_model(std::string s) {
  s.erase(std::remove(s.begin(), s.end(), '_'), s.end());
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

template <class K>
Ideal<K> model_ideal(const std::string& name, Field f) {
  const std::string n = normalize_model(name);
  if (n == "x") return ideal_X<K>(f);
  if (n == "xinv") return ideal_X_inv<K>(f);
  if (n == "zinv") return ideal_Z_inv<K>(f);
  if (n == "y") return ideal_Y<K>(f);
  if (n == "yp") return ideal_Y_p<K>(f);
  if (n == "yinv") return ideal_Y_inv<K>(f);
  if (n == "ypinv") return ideal_Y_pinv<K>(f);
  if (n == "xp") return project_model(ideal_X<K>(f), planar_config_names());
  if (n == "xpinv") return project_model(ideal_X_inv<K>(f), planar_inv_config_names());
  if (n == "veronese") return veronese_catalecticant<K>(f);
  throw UsageError("unknown model '" + name + "' (X, X_inv, Z_inv, Y, Y_p, Y_inv, Y_pinv, X_p, X_pinv, veronese)");
}

ConstructionOptions construction_options(const RunConfig& rc) {
  ConstructionOptions o;
  o.bound = rc.bound;
  o.retries = rc.retries;
  return o;
}

int cmd_model(const RunConfig& rc, const std::string& name) {
  const Field f = Field::parse(rc.field);
  with_field(f, [&](auto k) {
    using K = decltype(k);
    write_text(rc.out, dump(ideal_to_json(model_ideal<K>(name, f))));
    return 0;
  });
  return 0;
}

int cmd_invariants(const RunConfig& rc, const std::string& model) {
  if (model.empty() == rc.in.empty()) throw UsageError("invariants: give exactly one of --model or --in");
  HilbertData h;
  if (!model.empty()) {
    const Field f = Field::parse(rc.field);
    h = with_field(f, [&](auto k) {
      using K = decltype(k);
      return hilbert_data(model_ideal<K>(model, f));
    });
  } else {
    const json j = read_json_file(rc.in);
    const Field f = Field::parse(j.at("ring").value("field", std::string("q")));
    h = with_field(f, [&](auto k) {
      using K = decltype(k);
      return hilbert_data(ideal_from_json<K>(j));
    });
  }
  write_text(rc.out, describe(h) + "\n");
  return 0;
}

template <class K>
json cubic_to_json(const CubicResult<K>& c, const SymmetroidPencil<K>& s) {
  json forms = json::array(), cforms = json::array();
  for (const auto& p : c.plane_forms) forms.push_back(p.to_string());
  for (const auto& p : c.config_forms) cforms.push_back(p.to_string());
  return json{{"plane_forms", forms},
              {"config_forms", cforms},
              {"attempts", c.attempts},
              {"ideals", {{"legs", ideal_to_json(c.leg_ideal)}, {"config", ideal_to_json(c.config_ideal)}}},
              {"certification",
               {{"legs", hilbert_to_json(c.leg_hilbert)},
                {"config", hilbert_to_json(c.config_hilbert)},
                {"lift", hilbert_to_json(c.lift_hilbert)},
                {"bidegree", c.bidegree},
                {"base", hilbert_to_json(c.base_hilbert)}}},
              {"symmetroid",
               {{"det", s.det_poly.to_string()},
                {"H", s.H.to_string()},
                {"node_count", s.node_count},
                {"rational_nodes", s.rational_nodes.size()}}}};
}

int cmd_construct(const RunConfig& rc, const std::string& what, const std::string& legs_path) {
  const Field f = Field::parse(rc.field);
  const ConstructionOptions opts = construction_options(rc);
  if (what == "infinity") {
    return with_field(f, [&](auto k) {
      using K = decltype(k);
      const auto b = create_infinity_pod<K>(rc.seed, f, opts);
      write_text(rc.out, dump(bundle_to_json(b, rc.bound)));
      return 0;
    });
  }
  if (what == "duporcq") {
    const std::string path = !legs_path.empty() ? legs_path : rc.in;
    if (path.empty()) throw UsageError("construct duporcq: --legs legs.json is required");
    const json j = read_json_file(path);
    return with_field(f, [&](auto k) {
      using K = decltype(k);
      auto legs = pod_from_json<K>(j, f);
      const auto r = duporcq_sixth_leg(legs, f, opts.groebner);
      legs.push_back(r.leg);
      std::vector<std::string> w;
      for (const auto& c : r.weights) w.push_back(c.to_string());
      json out = pod_to_json(legs);
      out["field"] = f.to_string();
      out["sixth_leg_weights"] = w;
      write_text(rc.out, dump(out));
      return 0;
    });
  }
  if (what == "cubic") {
    return with_field(f, [&](auto k) {
      using K = decltype(k);
      const auto c = cubic_line_symmetric<K>(rc.seed, f, opts);
      const auto s = symmetroid_pencil(c, f, rc.seed);
      json out = cubic_to_json(c, s);
      out["rng_seed"] = rc.seed;
      out["field"] = f.to_string();
      write_text(rc.out, dump(out));
      return 0;
    });
  }
  throw UsageError("construct: unknown construction '" + what + "' (infinity, duporcq, cubic)");
}

int cmd_dual(const RunConfig& rc, const std::string& form, const std::string& side_name) {
  if (rc.in.empty()) throw UsageError("dual: --in subspace.json is required");
  const BilinearForm B = bilinear_form(parse_form_kind(form));
  const json j = read_json_file(rc.in);
  const Field f = Field::parse(j.value("field", rc.field));
  const auto ambient = j.at("ambient").get<std::vector<std::string>>();
  Side side;
  if (side_name == "left") {
    side = Side::Left;
  } else if (side_name == "right") {
    side = Side::Right;
  } else if (side_name.empty()) {
    if (ambient == B.left) {
      side = Side::Left;
    } else if (ambient == B.right) {
      side = Side::Right;
    } else {
      throw UsageError("dual: subspace ambient matches neither side of " + form);
    }
  } else {
    throw UsageError("dual: --side must be left or right");
  }
  return with_field(f, [&](auto k) {
    using K = decltype(k);
    const auto S = subspace_from_json<K>(j, f);
    write_text(rc.out, dump(subspace_to_json(dual_space(S, B, side))));
    return 0;
  });
}

void emit_report(const RunConfig& rc, const PodReport& r) {
  std::cerr << report_table(r);
  write_text(rc.out, dump(report_to_json(r)));
}

int cmd_verify(const RunConfig& rc, const std::string& bundle_path, const std::string& mode) {
  const std::string path = !bundle_path.empty() ? bundle_path : rc.in;
  if (path.empty()) throw UsageError("verify: bundle path required");
  const json j = read_json_file(path);
  const json& seed = j.at("seed");
  const Field f = Field::parse(seed.at("field").get<std::string>());
  const std::string id = path + " seed " + std::to_string(seed.at("rng_seed").get<std::uint64_t>());
  if (mode == "exact") {
    if (f.is_rational()) throw UsageError("verify: exact mode needs a bundle over fp:P; use --mode float for bundles over q");
    const std::size_t n = rc.samples == 0 ? 25 : rc.samples;
    const Ideal<Fp> config = ideal_from_json<Fp>(j.at("ideals").at("config"));
    const Ideal<Fp> legs = ideal_from_json<Fp>(j.at("ideals").at("leg_full"));
    Rng rng(rc.seed);
    const auto cs = sample_curve_points(config, n, rng);
    const auto ls = sample_curve_points(legs, n, rng);
    if (!cs.complete || !ls.complete) {
      std::cerr << "warning: sampled " << cs.points.size() << " configurations and " << ls.points.size() << " legs of " << n
                << " requested\n";
    }
    for (const auto& [I, pts] : {std::pair{&config, &cs.points}, std::pair{&legs, &ls.points}}) {
      for (const auto& p : *pts)
        for (const auto& g : I->generators())
          if (!g.evaluate(p).is_zero()) throw std::logic_error("verify: sampled point off its curve");
    }
    const auto r = check_pod_exact(cs.points, ls.points, f, id);
    emit_report(rc, r);
    return r.passed && !cs.points.empty() && !ls.points.empty() ? 0 : 1;
  }
  if (mode == "float") {
    const std::size_t n = rc.samples == 0 ? 12 : rc.samples;
    // The seed is redrawn over Q from its recorded rng seed, bound and attempt count.
    const Field q = Field::rationals();
    Rng rng(seed.at("rng_seed").get<std::uint64_t>(), seed.at("bound").get<long>());
    std::optional<ConstructionSeed<Rational>> s;
    for (int a = 0; a < seed.at("attempts").get<int>(); ++a) s = ConstructionSeed<Rational>::draw(rng, q, seed.at("rng_seed").get<std::uint64_t>());
    if (!s) throw UsageError("verify: bundle records no attempts");
    ConstructionOptions o;
    o.certify = false;
    o.cross_check = false;
    const auto b = create_infinity_pod(*s, o);
    const auto configs = real_configurations(b.seed, n);
    if (configs.empty()) std::cerr << "warning: no real points of F on the e3 = 1 grid; the quartic may have no real locus\n";
    Rng slice_rng(rc.seed);
    const auto legs = real_legs(b.leg_ideal_full, std::max<std::size_t>(5, n / 2), slice_rng);
    const auto r = check_pod_float(configs, legs.legs, rc.tol, id);
    emit_report(rc, r);
    return r.passed && !configs.empty() && !legs.legs.empty() ? 0 : 1;
  }
  throw UsageError("verify: --mode must be exact or float");
}

int cmd_reproduce(const RunConfig& rc) {
  const auto results = run_acceptance(podforge_threads());
  json arr = json::array();
  int failed = 0;
  for (const auto& r : results) {
    std::cerr << format_result(r) << "\n";
    arr.push_back({{"criterion", r.id}, {"claim", r.title}, {"passed", r.passed}, {"detail", r.detail}});
    if (!r.passed) ++failed;
  }
  std::cerr << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
  if (!rc.out.empty()) write_text(rc.out, dump(arr));
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"podforge: mobile pods via bond-theoretic duality"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig rc;
  app.add_option("--field", rc.field, "q or fp:P")->capture_default_str();
  app.add_option("--seed", rc.seed, "rng seed")->capture_default_str();
  app.add_option("--bound", rc.bound, "coefficient bound B")->capture_default_str();
  app.add_option("--retries", rc.retries, "retry budget")->capture_default_str();
  app.add_option("--samples", rc.samples, "sample count");
  app.add_option("--tol", rc.tol, "float tolerance")->capture_default_str();
  app.add_option("--out", rc.out, "output path (stdout if absent)");
  app.add_option("--in", rc.in, "input path");

  std::string model_name, inv_model, construct_kind, legs_path, form = "bsc17", side, bundle, mode = "exact";
  auto* model = app.add_subcommand("model", "write a model ideal as JSON");
  model->add_option("name", model_name, "X, X_inv, Z_inv, Y, Y_p, Y_inv, Y_pinv, X_p, X_pinv, veronese")->required();
  auto* inv = app.add_subcommand("invariants", "print dimension and degree of a model or ideal");
  inv->add_option("--model", inv_model);
  auto* construct = app.add_subcommand("construct", "run a pod construction");
  construct->add_option("kind", construct_kind, "infinity, duporcq or cubic")->required();
  construct->add_option("--legs", legs_path, "pod JSON with five legs (duporcq)");
  auto* dual = app.add_subcommand("dual", "dual space of a linear subspace");
  dual->add_option("--form", form, "bsc17, sbsc11, bsc_planar10, sbsc_planar7")->capture_default_str();
  dual->add_option("--side", side, "left or right (inferred from the ambient if absent)");
  auto* verify = app.add_subcommand("verify", "check a bundle's legs against its configurations");
  verify->add_option("bundle", bundle);
  verify->add_option("--mode", mode, "exact or float")->capture_default_str();
  auto* reproduce = app.add_subcommand("reproduce", "run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*model) return cmd_model(rc, model_name);
    if (*inv) return cmd_invariants(rc, inv_model);
    if (*construct) return cmd_construct(rc, construct_kind, legs_path);
    if (*dual) return cmd_dual(rc, form, side);
    if (*verify) return cmd_verify(rc, bundle, mode);
    if (*reproduce) return cmd_reproduce(rc);
  } catch (const DegenerateInput& e) {
    std::cerr << "degenerate input: " << e.what() << "\n";
    return 3;
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "invalid JSON: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
