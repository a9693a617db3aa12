#include "mixlink/slice_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mixlink {

OrbitId chart_to_orbit(const WeightSystem& w, cplx u_chart) {
  const double target = std::abs(u_chart);
  if (!(target > 0.0) || !std::isfinite(target)) {
    throw Error(ErrorCode::InvalidConfiguration, "chart coordinate must be finite and nonzero");
  }
  const int p = w.p(), q = w.q();
  // log of t^p / (1 - t^2)^(q/2), strictly increasing on (0, 1).
  auto lhs = [&](double t) { return p * std::log(t) - 0.5 * q * std::log1p(-t * t); };
  const double goal = std::log(target);
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (lhs(mid) < goal) lo = mid;
    else hi = mid;
  }
  const double t = 0.5 * (lo + hi);
  return OrbitId(std::polar(ipow(t, p), std::arg(u_chart)));
}

cplx orbit_to_chart(const WeightSystem& w, cplx u) {
  const double r2 = std::pow(std::abs(u), 2.0 / w.p());
  return u / std::pow(1.0 - r2, 0.5 * w.q());
}

LinkReport solve_link(const MixedPolynomial& f, const WeightSystem& w,
                      const SolverOptions& opts) {
  const auto deg = degree_report(f, w);
  if (!deg.strongly_polar_homogeneous()) {
    throw Error(ErrorCode::NotHomogeneous, "polynomial is not strongly polar weighted homogeneous");
  }
  if (!deg.is_convenient) throw Error(ErrorCode::NotConvenient, "polynomial is not convenient");

  const PlanarMap slice(f, simd::Lift::Slice);
  std::vector<RootCluster> clusters;
  try {
    clusters = solve_planar(slice, Disk{{0.0, 0.0}, 1.0}, opts);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ZeroOnContour) {
      throw Error(ErrorCode::NotConvenient, "polynomial vanishes on the z1 = 0 orbit");
    }
    throw;
  }

  const int p = w.p();
  const cplx omega = std::polar(1.0, 2.0 * std::numbers::pi / p);
  const double tol = opts.winding_radius;
  std::vector<bool> used(clusters.size(), false);
  LinkReport rep;
  rep.weights = w;
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    std::vector<const RootCluster*> tuple{&clusters[i]};
    cplx rotated = clusters[i].center;
    for (int k = 1; k < p; ++k) {
      rotated *= omega;
      std::size_t best = clusters.size();
      double best_dist = tol;
      for (std::size_t j = 0; j < clusters.size(); ++j) {
        if (used[j]) continue;
        const double dist = std::abs(clusters[j].center - rotated);
        if (dist < best_dist) {
          best_dist = dist;
          best = j;
        }
      }
      if (best == clusters.size()) {
        throw Error(ErrorCode::BudgetExceeded, "slice roots do not form complete p-tuples");
      }
      used[best] = true;
      tuple.push_back(&clusters[best]);
    }
    LinkSolution sol;
    cplx u_sum{0.0, 0.0};
    sol.degree = tuple.front()->degree;
    sol.multiplicity = tuple.front()->multiplicity;
    sol.condition = tuple.front()->condition;
    sol.simple = true;
    for (const auto* c : tuple) {
      u_sum += ipow(c->center, p);
      sol.residual = std::max(sol.residual, c->residual);
      sol.condition = std::min(sol.condition, c->condition);
      sol.simple = sol.simple && c->simple;
      if (c->degree != sol.degree) sol.simple = false;
      sol.multiplicity = std::max(sol.multiplicity, c->multiplicity);
    }
    sol.u = u_sum / double(p);
    sol.u_chart = orbit_to_chart(w, sol.u);
    rep.solutions.push_back(sol);
  }
  std::sort(rep.solutions.begin(), rep.solutions.end(),
            [](const LinkSolution& a, const LinkSolution& b) {
              if (a.u.real() != b.u.real()) return a.u.real() < b.u.real();
              return a.u.imag() < b.u.imag();
            });
  for (const auto& s : rep.solutions) {
    rep.signed_total += s.degree;
    if (s.simple && s.degree > 0) ++rep.n_pos;
    if (s.simple && s.degree < 0) ++rep.n_neg;
    if (!s.simple || s.condition < opts.degenerate_threshold) rep.degenerate = true;
  }
  return rep;
}

SignedCountCheck signed_count(const LinkReport& report, const WeightSystem& w,
                              const MixedPolynomial& f) {
  const auto deg = degree_report(f, w);
  SignedCountCheck out;
  out.signed_total = report.signed_total;
  if (!deg.polar_degree || *deg.polar_degree % w.pq() != 0) return out;
  out.expected = *deg.polar_degree / w.pq();
  out.pass = out.signed_total == out.expected;
  return out;
}

}  // namespace mixlink
