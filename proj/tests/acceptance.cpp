// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Every suite builds a report document; criterion 9 reruns
// the suites with the same seed and compares the documents byte for byte.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <string>

#include "mixlink/degeneration.hpp"
#include "mixlink/io.hpp"
#include "mixlink/linking.hpp"
#include "mixlink/milnor.hpp"
#include "mixlink/slice_solver.hpp"

using namespace mixlink;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
  bool pass = true;
  std::string detail;
  Json doc = Json::object();

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail = what;
      pass = false;
    }
  }
};

// Reports collected by suites 1-4 for the conservation check.
struct Collected {
  std::vector<std::pair<LinkReport, MixedPolynomial>> reports;
  std::vector<MixedPolynomial> constructed;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1 -------------------------------------------------------------------------
Outcome degeneration_counts(Collected& col) {
  Outcome o;
  const WeightSystem w(2, 3);
  Json reports = Json::object();
  const std::pair<double, int> expected[] = {{0.0, 1}, {-2.5, 1}, {4.0, 3}, {-3.5, 3}};
  for (auto [t, n] : expected) {
    const auto f = family_poly(w, t);
    const auto rep = solve_link(f, w);
    col.reports.emplace_back(rep, f);
    reports[format_complex(t)] = to_json(rep);
    o.require(rep.components() == n && !rep.degenerate,
              "t = " + format_complex(t) + ": " + std::to_string(rep.components()) + " components");
  }
  const auto f3 = family_poly(w, -3.0);
  const auto rep = solve_link(f3, w);
  col.reports.emplace_back(rep, f3);
  reports["t=-3"] = to_json(rep);
  bool half = false, fold = false;
  for (const auto& s : rep.solutions) {
    if (std::abs(s.u_chart - 0.5) < 1e-6 && s.simple && s.degree == 1) half = true;
    if (std::abs(s.u_chart + 1.0) < 1e-6 && !s.simple && s.multiplicity == 2) fold = true;
  }
  o.require(rep.components() == 2 && half && fold, "t = -3 root set differs from {1/2, -1 (x2)}");
  o.doc = reports;
  return o;
}

// 2 -------------------------------------------------------------------------
Outcome sigma_regions() {
  Outcome o;
  o.require(std::abs(sigma_point(std::numbers::pi) - cplx(-3.0, 0.0)) < 1e-12, "sigma(pi) != -3");
  const auto curve = trace_sigma(4096);
  o.require(classify_region(0.0, curve, 1e-3) == Region::Inside, "t = 0 not inside");
  o.require(classify_region(4.0, curve, 1e-3) == Region::Outside, "t = 4 not outside");
  o.require(classify_region(-3.0, curve, 1e-3) == Region::OnCurve, "t = -3 not on the curve");
  int cells = 0, agree = 0, skipped = 0;
  Json mismatches = Json::array();
  std::vector<cplx> seeds;
  for (int i = 0; i < 40; ++i) {
    for (int j = 0; j < 40; ++j) {
      const cplx t(-4.0 + 8.0 * (i + 0.5) / 40.0, -4.0 + 8.0 * (j + 0.5) / 40.0);
      const Region reg = classify_region(t, curve, 1e-2);
      if (reg == Region::OnCurve) {
        ++skipped;
        continue;
      }
      ++cells;
      const auto roots = solve_chart(t);
      const int n = chart_count(roots);
      const bool ok = (reg == Region::Inside && n == 1) || (reg == Region::Outside && n == 3);
      if (ok) ++agree;
      else mismatches.push_back(Json{{"t", to_json(t)}, {"region", std::string(to_string(reg))}, {"count", n}});
    }
  }
  o.require(agree == cells, std::to_string(cells - agree) + " of " + std::to_string(cells) + " cells disagree");
  o.doc = Json{{"cells", cells}, {"agree", agree}, {"band_skipped", skipped}, {"mismatches", mismatches}};
  return o;
}

// 3 -------------------------------------------------------------------------
Outcome pair_elimination() {
  Outcome o;
  Json per_weight = Json::array();
  for (auto [p, q] : {std::pair{1, 1}, {2, 3}, {3, 5}}) {
    const WeightSystem w(p, q);
    const auto res = sweep(w, linear_path(-3.5, -2.5, 100));
    const std::string tag = "P=(" + std::to_string(p) + "," + std::to_string(q) + ")";
    o.require(res.events.size() == 1, tag + ": " + std::to_string(res.events.size()) + " events");
    if (res.events.size() == 1) {
      const auto& e = res.events[0];
      const std::multiset<int> degs{e.merging_roots[0].degree, e.merging_roots[1].degree};
      o.require(e.kind == SweepEvent::Kind::PairElimination, tag + ": not an elimination");
      o.require(std::abs(e.t_star + 3.0) < 1e-3, tag + ": t* off");
      o.require(degs == std::multiset<int>{-1, 1}, tag + ": merging degrees not {+1,-1}");
      o.require(std::abs(e.collision_point + 1.0) < 1e-3, tag + ": collision off");
    }
    const C2 z{1.0, std::polar(1.0, std::numbers::pi / p)};
    const auto cert = rank_check(model_family(w), z, -3.0, std::sqrt(2.0));
    o.require(cert.rank == 3 && cert.singular_values[2] > 1e-6 * cert.singular_values[0],
              tag + ": rank " + std::to_string(cert.rank));
    per_weight.push_back(Json{{"weights", {p, q}}, {"sweep", to_json(res)}, {"fold_point", to_json(cert)}});
  }
  o.doc = per_weight;
  return o;
}

// 4 -------------------------------------------------------------------------
LinkConfiguration random_config(std::mt19937_64& rng, WeightSystem w) {
  std::uniform_int_distribution<int> nd(1, 6);
  std::uniform_real_distribution<double> rad(0.1, 0.9), ang(0.0, 2.0 * std::numbers::pi);
  for (;;) {
    const int n = nd(rng);
    const int r = std::uniform_int_distribution<int>(0, (n - 1) / 2)(rng);
    LinkConfiguration cfg{w, {}};
    int guard = 0;
    while (static_cast<int>(cfg.orbits.size()) < n && guard++ < 1000) {
      const cplx u = std::polar(rad(rng), ang(rng));
      bool clear = true;
      for (const auto& x : cfg.orbits) clear = clear && std::abs(x.id.value() - u) >= 0.1;
      if (clear) cfg.orbits.push_back({OrbitId(u), static_cast<int>(cfg.orbits.size()) < n - r ? 1 : -1});
    }
    if (static_cast<int>(cfg.orbits.size()) == n) {
      std::shuffle(cfg.orbits.begin(), cfg.orbits.end(), rng);
      return cfg;
    }
  }
}

Outcome round_trip(Collected& col) {
  Outcome o;
  std::mt19937_64 rng(kSeed);
  const WeightSystem weights[] = {{1, 1}, {1, 2}, {2, 3}, {3, 5}};
  int recovered = 0;
  double worst = 0.0;
  Json cases = Json::array();
  for (int k = 0; k < 100; ++k) {
    const WeightSystem w = weights[k % 4];
    const auto cfg = random_config(rng, w);
    const int s = cfg.r() + std::uniform_int_distribution<int>(0, 1)(rng);
    const auto f = defining_polynomial(cfg, s);
    col.constructed.push_back(f);
    bool ok = false;
    Json entry{{"config", to_json(cfg)}, {"s", s}};
    try {
      const auto rep = solve_link(f, w);
      col.reports.emplace_back(rep, f);
      entry["report"] = to_json(rep);
      // Exact multiset match: every orbit found once, with its sign, no extras.
      ok = rep.components() == static_cast<int>(cfg.orbits.size());
      std::vector<bool> used(rep.solutions.size(), false);
      for (const auto& orb : cfg.orbits) {
        bool hit = false;
        for (std::size_t j = 0; j < rep.solutions.size() && !hit; ++j) {
          const double err = std::abs(rep.solutions[j].u - orb.id.value());
          if (!used[j] && err < 1e-6 && rep.solutions[j].degree == orb.sign && rep.solutions[j].simple) {
            used[j] = hit = true;
            worst = std::max(worst, err);
          }
        }
        ok = ok && hit;
      }
    } catch (const Error& e) {
      entry["error"] = e.what();
    }
    if (ok) ++recovered;
    else o.require(false, "case " + std::to_string(k) + " not recovered");
    cases.push_back(entry);
  }
  o.require(recovered == 100, std::to_string(recovered) + "/100 recovered");
  if (o.pass) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "100/100, worst id error %.2e", worst);
    o.detail = buf;
  }
  o.doc = Json{{"recovered", recovered}, {"cases", cases}};
  return o;
}

// 5 -------------------------------------------------------------------------
Outcome conservation(const Collected& col) {
  Outcome o;
  int checked = 0;
  for (const auto& [rep, f] : col.reports) {
    if (rep.degenerate) continue;
    const auto chk = signed_count(rep, rep.weights, f);
    o.require(chk.pass, "signed total " + std::to_string(chk.signed_total) + " != " + std::to_string(chk.expected));
    ++checked;
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < col.constructed.size(); ++k) {
    const WeightSystem weights[] = {{1, 1}, {1, 2}, {2, 3}, {3, 5}};
    worst = std::max(worst, verify_equivariance(col.constructed[k], weights[k % 4], 32, kSeed + k));
  }
  o.require(worst < 1e-9, "equivariance residual " + std::to_string(worst));
  o.doc = Json{{"signed_checks", checked}, {"max_equivariance_residual", worst}};
  return o;
}

// 6 -------------------------------------------------------------------------
Outcome milnor_invariants() {
  Outcome o;
  std::mt19937_64 rng(kSeed + 6);
  std::uniform_real_distribution<double> rad(0.1, 0.95), ang(0.0, 2.0 * std::numbers::pi);
  const WeightSystem weights[] = {{1, 1}, {1, 2}, {2, 3}, {3, 5}};
  // Corpus: constructed polynomials for several (d, r) plus the model family.
  std::vector<std::pair<MixedPolynomial, WeightSystem>> corpus;
  for (int k = 0; k < 24; ++k) {
    const WeightSystem w = weights[k % 4];
    corpus.emplace_back(defining_polynomial(random_config(rng, w), 2 + k % 2), w);
  }
  for (double t : {0.0, 4.0, -3.5, -2.5}) corpus.emplace_back(family_poly(WeightSystem(2, 3), t), WeightSystem(2, 3));
  int measured = 0;
  for (const auto& [f, w] : corpus) {
    const int dp = *degree_report(f, w).polar_degree;
    const int d = dp / w.pq();
    for (int k = 0; k < 10; ++k) {
      const double a = rad(rng);
      const C2 z{std::sqrt(1.0 - a * a), std::polar(a, ang(rng))};
      try {
        o.require(measure_fiber_count(f, w, z) == dp, "generic fiber count differs from d_p");
        ++measured;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::OnLink) throw;  // base point on the link: not a regular fiber
      }
    }
    o.require(measure_fiber_count(f, w, C2{1.0, 0.0}) == d * w.q(), "z2 = 0 axis count differs from dq");
    o.require(measure_fiber_count(f, w, C2{0.0, 1.0}) == d * w.p(), "z1 = 0 axis count differs from dp");
  }
  const auto topo = topology_enumeration(WeightSystem(2, 3), 1, 1);
  o.require(chi_paper(1, 0, 2, 3) == -1 && topo[0].chi_covering == -1, "chi(1,0,2,3)");
  o.require(chi_paper(1, 1, 2, 3) == -13 && topo[1].chi_covering == -13, "chi(1,1,2,3)");
  Json torus = Json::array();
  for (auto [p, q] : {std::pair{1, 1}, {2, 3}, {1, 2}}) {
    const WeightSystem w(p, q);
    for (int d = 1; d <= 3; ++d) {
      const auto rep = milnor_report(torus_model(w, d), w, 0, kSeed);
      const std::string tag = "torus P=(" + std::to_string(p) + "," + std::to_string(q) + ") d=" + std::to_string(d);
      o.require(rep.chi_covering == 1 - (p * d - 1) * (q * d - 1), tag + ": chi_covering");
      o.require(rep.agree == (d == 1), tag + ": agree flag");
      o.require(rep.monodromy_order == d * p * q, tag + ": monodromy order");
      torus.push_back(to_json(rep));
    }
  }
  o.doc = Json{{"corpus", corpus.size()}, {"generic_measurements", measured}, {"torus", torus}};
  return o;
}

// 7 -------------------------------------------------------------------------
Outcome linking_numbers() {
  Outcome o;
  std::mt19937_64 rng(kSeed + 7);
  std::uniform_real_distribution<double> rad(0.1, 0.9), ang(0.0, 2.0 * std::numbers::pi);
  Json pairs = Json::array();
  const auto hopf = orbit_linking(WeightSystem(1, 1), {OrbitId(0.3), 1}, {OrbitId(0.6), 1}, 512, kSeed);
  o.require(hopf.snapped == 1 && std::abs(hopf.value - 1.0) < 0.05, "Hopf link");
  pairs.push_back(to_json(hopf));
  for (auto [p, q] : {std::pair{1, 1}, {2, 3}, {3, 5}}) {
    const WeightSystem w(p, q);
    for (int k = 0; k < 8; ++k) {
      const cplx a = std::polar(rad(rng), ang(rng));
      cplx b = a;
      while (std::abs(b - a) < 0.2) b = std::polar(rad(rng), ang(rng));
      const int sa = (k & 1) ? -1 : 1, sb = (k & 2) ? -1 : 1;
      const auto lk = orbit_linking(w, {OrbitId(a), sa}, {OrbitId(b), sb}, 512, kSeed + k);
      const long expect = static_cast<long>(sa) * sb * w.pq();
      o.require(lk.snapped == expect && std::abs(lk.value - expect) < kSnapTolerance,
                "P=(" + std::to_string(p) + "," + std::to_string(q) + "): " + std::to_string(lk.value));
      pairs.push_back(to_json(lk));
    }
  }
  o.doc = pairs;
  return o;
}

// 8 -------------------------------------------------------------------------
Outcome positivization() {
  Outcome o;
  Json stages = Json::array();
  for (auto [p, q] : {std::pair{1, 1}, {2, 3}, {3, 5}}) {
    const WeightSystem w(p, q);
    const std::string tag = "P=(" + std::to_string(p) + "," + std::to_string(q) + ")";
    LinkConfiguration one{w, {{OrbitId(cplx(0.3, 0.2)), 1}, {OrbitId(cplx(-0.1, 0.5)), 1}, {OrbitId(cplx(0.2, -0.4)), -1}}};
    const auto r1 = eliminate_all(one);
    const auto model = solve_link(torus_model(w, 1), w);
    bool same_signs = r1.final_report.components() == model.components();
    for (std::size_t k = 0; same_signs && k < model.solutions.size(); ++k) {
      same_signs = r1.final_report.solutions[k].degree == model.solutions[k].degree;
    }
    o.require(r1.stages.size() == 1 && same_signs && r1.final_report.n_neg == 0,
              tag + " (1,1): final link does not match the torus model");

    LinkConfiguration two{w, {{OrbitId(cplx(0.3, 0.2)), 1},
                              {OrbitId(cplx(-0.1, 0.5)), 1},
                              {OrbitId(cplx(0.2, -0.4)), -1},
                              {OrbitId(cplx(-0.5, -0.3)), 1}}};
    const auto r2 = eliminate_all(two);
    const auto& fin = r2.final_report;
    o.require(fin.components() == 2 && fin.n_pos == 2, tag + " (2,1): final link is not 2 positive components");
    long lk_snapped = 0;
    if (fin.components() == 2) {
      const auto lk = orbit_linking(w, {OrbitId(fin.solutions[0].u), 1}, {OrbitId(fin.solutions[1].u), 1}, 512, kSeed);
      lk_snapped = lk.snapped;
      o.require(lk.snapped == w.pq(), tag + " (2,1): linking " + std::to_string(lk.value));
    }
    stages.push_back(Json{{"weights", {p, q}},
                          {"d1r1", to_json(r1.final_report)},
                          {"d2r1", to_json(fin)},
                          {"d2r1_linking", lk_snapped}});
  }
  o.doc = stages;
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Outcome(Collected&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "degeneration counts", 5.0, [](Collected& c) { return degeneration_counts(c); }},
      {2, "sigma and regions", 30.0, [](Collected&) { return sigma_regions(); }},
      {3, "pair elimination", 10.0, [](Collected&) { return pair_elimination(); }},
      {4, "round-trip construction", 60.0, [](Collected& c) { return round_trip(c); }},
      {5, "conservation laws", 60.0, [](Collected& c) { return conservation(c); }},
      {6, "Milnor invariants", 20.0, [](Collected&) { return milnor_invariants(); }},
      {7, "linking numbers", 30.0, [](Collected&) { return linking_numbers(); }},
      {8, "full positivization", 60.0, [](Collected&) { return positivization(); }},
  };

  Collected col;
  std::map<int, std::string> first_docs;
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run(col);
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double dt = seconds_since(t0);
    if (dt > c.limit_s) out.require(false, "runtime " + std::to_string(dt) + " s over the limit");
    first_docs[c.id] = dump(make_report(c.name, Json{{"seed", kSeed}}, out.doc, Json::object()));
    failures += out.pass ? 0 : 1;
    std::printf("criterion %d [%s] %s (%.2f s)%s%s\n", c.id, c.name, out.pass ? "PASS" : "FAIL", dt,
                out.detail.empty() ? "" : ": ", out.detail.c_str());
    std::fflush(stdout);
  }

  // 9: rerun every suite and compare the report documents.
  {
    const auto t0 = std::chrono::steady_clock::now();
    Collected again;
    std::vector<int> differing;
    for (const auto& c : criteria) {
      Outcome out;
      try {
        out = c.run(again);
      } catch (const std::exception&) {
      }
      if (dump(make_report(c.name, Json{{"seed", kSeed}}, out.doc, Json::object())) != first_docs[c.id]) {
        differing.push_back(c.id);
      }
    }
    std::string detail;
    for (int id : differing) detail += (detail.empty() ? "documents differ for suite " : ", ") + std::to_string(id);
    const bool pass = differing.empty();
    failures += pass ? 0 : 1;
    std::printf("criterion 9 [determinism] %s (%.2f s)%s%s\n", pass ? "PASS" : "FAIL", seconds_since(t0),
                detail.empty() ? "" : ": ", detail.c_str());
  }
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
