// mixlink: command line front end. Every subcommand prints a report document
// (with --json) or a short text summary. Exit codes: 0 ok, 2 usage or
// malformed input, 3 numeric failure.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "mixlink/degeneration.hpp"
#include "mixlink/io.hpp"
#include "mixlink/linking.hpp"
#include "mixlink/milnor.hpp"
#include "mixlink/simd/kernels.hpp"
#include "mixlink/slice_solver.hpp"
#include "mixlink/svg.hpp"

using namespace mixlink;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string weights = "2,3";
  double tol = 0.0;
  int grid = 0;
  std::uint64_t seed = 0x5eed;
  bool json = false;
  bool timing = false;
};

WeightSystem parse_weights(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw UsageError("--weights expects p,q");
  try {
    return WeightSystem(std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1)));
  } catch (const std::invalid_argument&) {
    throw UsageError("--weights expects two integers p,q");
  }
}

std::string read_source(const std::string& src) {
  if (src == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(src);
  if (!in) throw UsageError("cannot open polynomial file '" + src + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Runner {
  Common common;
  std::string command;
  Json inputs = Json::object();
  Json results = Json::object();
  std::string text;  // plain-text summary when --json is absent
  std::string raw;   // non-JSON payload (svg) written verbatim
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  WeightSystem weights() const { return parse_weights(common.weights); }

  SolverOptions solver() const {
    SolverOptions o = default_solver_options();
    if (common.tol > 0.0) o.newton_tol = common.tol;
    if (common.grid > 0) o.grid_resolution = common.grid;
    return o;
  }

  Json diagnostics() const {
    const auto o = solver();
    Json d{{"solver",
            {{"grid_resolution", o.grid_resolution},
             {"newton_tol", o.newton_tol},
             {"max_newton_steps", o.max_newton_steps},
             {"dedup_radius", o.dedup_radius},
             {"degenerate_threshold", o.degenerate_threshold},
             {"winding_radius", o.winding_radius}}},
           {"seed", common.seed},
           {"backend", std::string(simd::to_string(simd::active_backend()))}};
    if (common.timing) {
      d["runtime_s"] =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    return d;
  }

  void base_inputs() {
    inputs["weights"] = {weights().p(), weights().q()};
    inputs["seed"] = common.seed;
  }
};

std::string fmt(cplx z) { return format_complex(z); }

std::string summary(const LinkReport& r) {
  std::ostringstream os;
  os << "components " << r.components() << " (positive " << r.n_pos << ", negative " << r.n_neg
     << "), signed total " << r.signed_total << (r.degenerate ? ", degenerate" : "") << "\n";
  for (const auto& s : r.solutions) {
    os << "  u = " << fmt(s.u) << "  chart " << fmt(s.u_chart) << "  degree " << s.degree
       << "  multiplicity " << s.multiplicity << (s.simple ? "" : "  (cluster)") << "\n";
  }
  return os.str();
}

LinkConfiguration config_from(const WeightSystem& w, const std::string& orbits) {
  if (orbits.empty()) throw UsageError("--orbits is required");
  return LinkConfiguration{w, parse_orbits(orbits)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Links of strongly polar weighted homogeneous mixed polynomials"};
  app.require_subcommand(1);
  app.fallthrough();
  Runner run;
  auto& c = run.common;
  app.add_option("--weights", c.weights, "weights p,q")->capture_default_str();
  app.add_option("--tol", c.tol, "Newton tolerance (0 keeps the profile default)");
  app.add_option("--grid", c.grid, "seed grid resolution (0 keeps the profile default)");
  app.add_option("--seed", c.seed, "seed for every random choice")->capture_default_str();
  app.add_flag("--json", c.json, "print the JSON report document");
  app.add_flag("--timing", c.timing, "include runtimes in the diagnostics");

  std::string poly_src, orbits, out = "json", mode = "both", from = "-3.5", to = "-2.5",
                                t_str = "-3", z1_str, z2_str, t_out = "-3.5", t_in = "-2.5";
  int s = -1, steps = 200, d = 1, r = 0, samples = 1024;
  double radius = std::sqrt(2.0);
  bool all = false;

  auto* analyze = app.add_subcommand("analyze", "degree report and equivariance residual");
  analyze->add_option("--poly", poly_src, "polynomial file (JSON or text), - for stdin")->required();
  analyze->add_option("--samples", samples, "equivariance samples")->capture_default_str();

  auto* construct = app.add_subcommand("construct", "defining polynomial of an orbit configuration");
  construct->add_option("--orbits", orbits, "\"u:+,u:-\"")->required();
  construct->add_option("--s", s, "radial budget (default r)");

  auto* solve = app.add_subcommand("solve", "solve the link of a polynomial");
  solve->add_option("--poly", poly_src, "polynomial file (JSON or text), - for stdin")->required();

  auto* sigma = app.add_subcommand("sigma", "trace the degeneration locus");
  sigma->add_option("--samples", samples, "curve samples")->capture_default_str();
  sigma->add_option("--out", out, "svg or json")->check(CLI::IsMember({"svg", "json"}));
  sigma->add_option("--t", t_str, "parameter to classify");

  auto* sweep_cmd = app.add_subcommand("sweep", "root counts along a parameter segment");
  sweep_cmd->add_option("--from", from, "start parameter")->capture_default_str();
  sweep_cmd->add_option("--to", to, "end parameter")->capture_default_str();
  sweep_cmd->add_option("--steps", steps, "number of steps")->capture_default_str();
  sweep_cmd->add_option("--radius", radius, "certificate sphere radius");

  auto* euler = app.add_subcommand("euler", "Euler characteristic of the Milnor fiber");
  euler->add_option("--d", d, "d")->required();
  euler->add_option("--r", r, "r")->required();
  euler->add_option("--mode", mode, "paper, covering or both")
      ->check(CLI::IsMember({"paper", "covering", "both"}));

  auto* fiber = app.add_subcommand("fiber-count", "Milnor fiber counts and monodromy");
  fiber->add_option("--poly", poly_src, "polynomial file (JSON or text), - for stdin")->required();
  fiber->add_option("--z1", z1_str, "base point first coordinate");
  fiber->add_option("--z2", z2_str, "base point second coordinate");

  auto* linking = app.add_subcommand("linking", "linking number of two oriented orbits");
  linking->add_option("--orbits", orbits, "\"u:+,u:-\" with exactly two entries")->required();
  linking->add_option("--samples", samples, "initial samples per orbit");

  auto* rank = app.add_subcommand("rank-check", "smoothness certificate of the model family");
  rank->add_option("--t", t_str, "parameter")->capture_default_str();
  rank->add_option("--radius", radius, "sphere radius");
  rank->add_option("--z1", z1_str, "point first coordinate");
  rank->add_option("--z2", z2_str, "point second coordinate");

  auto* elim = app.add_subcommand("eliminate", "cancel a positive/negative pair of orbits");
  elim->add_option("--orbits", orbits, "\"u:+,u:-\"")->required();
  elim->add_option("--t-out", t_out, "start parameter")->capture_default_str();
  elim->add_option("--t-in", t_in, "end parameter")->capture_default_str();
  elim->add_option("--steps", steps, "sweep steps");
  elim->add_flag("--all", all, "repeat until no negative orbit is left");

  auto* project = app.add_subcommand("project", "stereographic projection of orbits");
  project->add_option("--orbits", orbits, "\"u:+,u:-\"");
  project->add_option("--poly", poly_src, "solve this polynomial and project its components");
  project->add_option("--samples", samples, "points per orbit");
  project->add_option("--out", out, "svg or json")->check(CLI::IsMember({"svg", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  auto* sub = app.get_subcommands().front();
  run.command = sub->get_name();
  try {
    run.base_inputs();
    const WeightSystem w = run.weights();
    const SolverOptions opts = run.solver();
    auto load = [&] {
      run.inputs["poly_source"] = poly_src;
      auto f = load_poly(read_source(poly_src));
      run.inputs["poly"] = serialize_poly(f);
      return f;
    };

    if (sub == analyze) {
      const auto f = load();
      const auto deg = degree_report(f, w);
      run.results["degree_report"] = to_json(deg);
      std::ostringstream os;
      os << "radial degree "
         << (deg.radial_degree ? std::to_string(*deg.radial_degree) : "none") << ", polar degree "
         << (deg.polar_degree ? std::to_string(*deg.polar_degree) : "none")
         << (deg.is_convenient ? ", convenient" : ", not convenient") << "\n";
      if (deg.strongly_polar_homogeneous()) {
        const double res = verify_equivariance(f, w, samples, c.seed);
        run.results["equivariance_residual"] = res;
        os << "equivariance residual " << res << "\n";
      } else {
        run.results["equivariance_residual"] = nullptr;
      }
      run.text = os.str();
    } else if (sub == construct) {
      auto cfg = config_from(w, orbits);
      run.inputs["orbits"] = orbits;
      const auto valid = validate_config(cfg);
      if (!valid.ok()) throw Error(ErrorCode::InvalidConfiguration, valid.violations.front().detail);
      if (s < 0) s = cfg.r();
      run.inputs["s"] = s;
      const auto f = defining_polynomial(cfg, s);
      run.results["configuration"] = to_json(cfg);
      run.results["polynomial"] = poly_to_json(f);
      run.results["text"] = serialize_poly(f);
      run.results["degree_report"] = to_json(degree_report(f, w));
      run.text = serialize_poly(f) + "\n";
    } else if (sub == solve) {
      const auto f = load();
      const auto rep = solve_link(f, w, opts);
      const auto check = signed_count(rep, w, f);
      run.results["link"] = to_json(rep);
      run.results["signed_count"] = {{"pass", check.pass},
                                     {"signed_total", check.signed_total},
                                     {"expected", check.expected}};
      run.text = summary(rep);
    } else if (sub == sigma) {
      const auto curve = trace_sigma(samples);
      run.inputs["samples"] = samples;
      if (out == "svg") {
        run.raw = emit_svg(curve);
      } else {
        const cplx t = parse_complex(t_str);
        run.inputs["t"] = to_json(t);
        run.results["curve"] = to_json(curve);
        run.results["region"] = std::string(to_string(classify_region(t, curve, 1e-2)));
        run.text = "t = " + fmt(t) + " is " + std::string(to_string(classify_region(t, curve, 1e-2))) + "\n";
      }
    } else if (sub == sweep_cmd) {
      const cplx a = parse_complex(from), b = parse_complex(to);
      run.inputs["from"] = to_json(a);
      run.inputs["to"] = to_json(b);
      run.inputs["steps"] = steps;
      const auto res = sweep(w, linear_path(a, b, steps), opts, radius);
      run.results = to_json(res);
      std::ostringstream os;
      os << res.events.size() << " event(s)\n";
      for (const auto& e : res.events) {
        os << "  " << to_string(e.kind) << " at t* = " << fmt(e.t_star) << ", collision u = "
           << fmt(e.collision_point) << ", degrees " << e.merging_roots[0].degree << " "
           << e.merging_roots[1].degree << ", rank " << e.certificate.rank << "\n";
      }
      run.text = os.str();
    } else if (sub == euler) {
      run.inputs["d"] = d;
      run.inputs["r"] = r;
      run.inputs["mode"] = mode;
      std::ostringstream os;
      std::optional<int> paper, covering;
      if (mode != "covering") {
        paper = chi_paper(d, r, w.p(), w.q());
        run.results["chi_paper"] = *paper;
        os << "chi_paper " << *paper << "\n";
      }
      if (mode != "paper") {
        const auto f = defining_polynomial(canonical_config(w, d, r), r);
        const int c1 = measure_fiber_count(f, w, C2{1.0, 0.0});
        const int c2 = measure_fiber_count(f, w, C2{0.0, 1.0});
        covering = chi_covering(d, r, w.p(), w.q(), c1, c2);
        run.results["axis1_fiber_count"] = c1;
        run.results["axis2_fiber_count"] = c2;
        run.results["chi_covering"] = *covering;
        os << "chi_covering " << *covering << " (axis counts " << c1 << ", " << c2 << ")\n";
      }
      if (paper && covering) run.results["agree"] = *paper == *covering;
      run.text = os.str();
    } else if (sub == fiber) {
      const auto f = load();
      const auto rep = milnor_report(f, w, std::nullopt, c.seed);
      run.results["milnor"] = to_json(rep);
      std::ostringstream os;
      os << "generic " << rep.generic_fiber_count << ", axis counts " << rep.axis1_fiber_count
         << " " << rep.axis2_fiber_count << ", monodromy order " << rep.monodromy_order
         << ", chi_paper " << rep.chi_paper << ", chi_covering " << rep.chi_covering << "\n";
      if (!z1_str.empty() || !z2_str.empty()) {
        C2 z{parse_complex(z1_str.empty() ? "0" : z1_str), parse_complex(z2_str.empty() ? "0" : z2_str)};
        run.inputs["point"] = to_json(z);
        const int n = measure_fiber_count(f, w, z);
        run.results["point_fiber_count"] = n;
        os << "at the given point " << n << "\n";
      }
      run.text = os.str();
    } else if (sub == linking) {
      const auto cfg = config_from(w, orbits);
      if (cfg.orbits.size() != 2) throw UsageError("--orbits needs exactly two entries");
      run.inputs["orbits"] = orbits;
      run.inputs["samples"] = samples;
      const auto lk = orbit_linking(w, cfg.orbits[0], cfg.orbits[1], samples, c.seed);
      run.results = to_json(lk);
      run.results["expected"] = cfg.orbits[0].sign * cfg.orbits[1].sign * w.pq();
      std::ostringstream os;
      os.precision(10);
      os << "linking " << lk.value << " -> " << lk.snapped << " (" << lk.samples << " samples)\n";
      run.text = os.str();
    } else if (sub == rank) {
      const cplx t = parse_complex(t_str);
      run.inputs["t"] = to_json(t);
      run.inputs["radius"] = radius;
      C2 z;
      if (!z1_str.empty() || !z2_str.empty()) {
        z = {parse_complex(z1_str.empty() ? "0" : z1_str), parse_complex(z2_str.empty() ? "0" : z2_str)};
      } else {
        const auto roots = solve_chart(t, opts);
        if (roots.empty()) throw Error(ErrorCode::NotOnVariety, "no chart root at this parameter");
        auto pick = std::find_if(roots.begin(), roots.end(), [](const ChartRoot& x) { return !x.simple; });
        z = lift_chart_point(w, (pick != roots.end() ? *pick : roots.front()).u, radius);
      }
      run.inputs["point"] = to_json(z);
      const auto rep = rank_check(model_family(w), z, t, radius);
      run.results = to_json(rep);
      std::ostringstream os;
      os << "rank " << rep.rank << ", singular values " << rep.singular_values[0] << " "
         << rep.singular_values[1] << " " << rep.singular_values[2] << "\n";
      run.text = os.str();
    } else if (sub == elim) {
      const auto cfg = config_from(w, orbits);
      run.inputs["orbits"] = orbits;
      EliminationOptions eo;
      eo.t_out = parse_complex(t_out);
      eo.t_in = parse_complex(t_in);
      if (steps > 0 && elim->count("--steps")) eo.sweep_steps = steps;
      run.inputs["t_out"] = to_json(eo.t_out);
      run.inputs["t_in"] = to_json(eo.t_in);
      run.inputs["sweep_steps"] = eo.sweep_steps;
      run.inputs["all"] = all;
      if (all) {
        const auto res = eliminate_all(cfg, eo, opts);
        Json stages = Json::array();
        for (const auto& st : res.stages) stages.push_back(to_json(st));
        run.results["stages"] = stages;
        run.results["final_report"] = to_json(res.final_report);
        run.results["final_config"] = to_json(res.final_config);
        run.text = std::to_string(res.stages.size()) + " stage(s); final link:\n" + summary(res.final_report);
      } else {
        const auto res = run_elimination(cfg, std::nullopt, eo, opts);
        run.results = to_json(res);
        run.text = "final link:\n" + summary(res.final_report);
      }
    } else if (sub == project) {
      LinkConfiguration cfg{w, {}};
      if (!poly_src.empty()) {
        const auto rep = solve_link(load(), w, opts);
        for (const auto& sol : rep.solutions) cfg.orbits.push_back({OrbitId(sol.u), sol.degree < 0 ? -1 : 1});
      } else {
        cfg = config_from(w, orbits);
        run.inputs["orbits"] = orbits;
      }
      if (cfg.orbits.empty()) throw Error(ErrorCode::EmptyData, "nothing to project");
      run.inputs["samples"] = samples;
      std::vector<std::vector<C2>> curves;
      for (const auto& o : cfg.orbits) curves.push_back(sample_orbit(w, o.id, std::max(samples, 8)));
      const C2 pole = find_pole(curves, c.seed);
      const Stereographic proj(pole);
      std::vector<SignedPolyline> comps;
      for (const auto& o : cfg.orbits) comps.push_back({project_orbit(w, o, std::max(samples, 8), proj), o.sign});
      if (out == "svg") {
        run.raw = emit_svg(comps);
      } else {
        Json arr = Json::array();
        for (const auto& cp : comps) {
          Json j = to_json(cp.line);
          j["sign"] = cp.sign;
          arr.push_back(j);
        }
        run.results["pole"] = to_json(pole);
        run.results["components"] = arr;
        run.text = std::to_string(comps.size()) + " component(s) projected\n";
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    if (c.json) std::cout << dump(make_error_report(run.command, run.inputs, e));
    else std::cerr << e.what() << "\n";
    // Malformed input is a usage problem, everything else a numeric failure.
    const bool usage = e.code() == ErrorCode::SyntaxError || e.code() == ErrorCode::ExponentOverflow ||
                       e.code() == ErrorCode::InvalidWeights;
    return usage ? 2 : 3;
  }

  if (!run.raw.empty()) {
    std::cout << run.raw;
  } else if (c.json) {
    std::cout << dump(make_report(run.command, run.inputs, run.results, run.diagnostics()));
  } else {
    std::cout << run.text;
  }
  return 0;
}
