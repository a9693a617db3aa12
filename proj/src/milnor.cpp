#include "mixlink/milnor.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "mixlink/error.hpp"
#include "mixlink/slice_solver.hpp"

namespace mixlink {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kFiberSamples = 8192;

double local_scale(const MixedPolynomial& f, const C2& z) {
  double s = 0.0;
  const double a1 = std::abs(z.z1), a2 = std::abs(z.z2);
  for (const auto& t : f.terms()) {
    s += std::abs(t.coeff) * ipow(a1, t.mono.nu[0] + t.mono.mu[0]) *
         ipow(a2, t.mono.nu[1] + t.mono.mu[1]);
  }
  return s;
}

double c2_distance(const C2& a, const C2& b) { return std::sqrt(std::norm(a.z1 - b.z1) + std::norm(a.z2 - b.z2)); }
}  // namespace

bool fiber_membership(const MixedPolynomial& f, const C2& z) {
  if (std::abs(std::sqrt(z.norm2()) - 1.0) > 1e-8) {
    throw Error(ErrorCode::NotOnSphere, "point is not on the unit sphere");
  }
  const cplx v = evaluate(f, z);
  return std::abs(v.imag()) < 1e-10 * (1.0 + std::abs(v)) && v.real() > 0.0;
}

C2 monodromy_apply(const WeightSystem& w, int d, const C2& z) {
  if (d < 1) throw Error(ErrorCode::InvalidConfiguration, "monodromy needs d >= 1");
  return apply_action(z, 1.0, std::polar(1.0, kTwoPi / (double(d) * w.pq())), w);
}

int monodromy_order(const WeightSystem& w, int d, const std::vector<C2>& points) {
  std::vector<C2> cur = points;
  const int cap = 16 * d * w.pq() + 16;
  for (int k = 1; k <= cap; ++k) {
    bool identity = true;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      cur[i] = monodromy_apply(w, d, cur[i]);
      identity = identity && c2_distance(cur[i], points[i]) < 1e-9;
    }
    if (identity) return k;
  }
  throw Error(ErrorCode::BudgetExceeded, "monodromy order exceeds the search cap");
}

int measure_fiber_count(const MixedPolynomial& f, const WeightSystem& w, const C2& z0) {
  const cplx f0 = evaluate(f, z0);
  if (!(std::abs(f0) > 1e-12 * local_scale(f, z0))) {
    throw Error(ErrorCode::OnLink, "base point lies on the link");
  }
  auto at = [&](double phi) { return apply_action(z0, 1.0, std::polar(1.0, phi), w); };
  auto g = [&](double phi) { return evaluate(f, at(phi)); };

  std::vector<C2> hits;
  double prev_phi = 0.0;
  cplx prev = g(0.0);
  for (int k = 1; k <= kFiberSamples; ++k) {
    const double phi = kTwoPi * k / kFiberSamples;
    const cplx cur = k == kFiberSamples ? g(0.0) : g(phi);
    if ((prev.imag() >= 0.0) != (cur.imag() >= 0.0)) {
      double lo = prev_phi, hi = phi;
      const bool lo_nonneg = prev.imag() >= 0.0;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((g(mid).imag() >= 0.0) == lo_nonneg) lo = mid;
        else hi = mid;
      }
      const double root = 0.5 * (lo + hi);
      if (g(root).real() > 0.0) {
        const C2 z = at(root);
        bool seen = false;
        for (const auto& h : hits) seen = seen || c2_distance(h, z) < 1e-8;
        if (!seen) hits.push_back(z);
      }
    }
    prev = cur;
    prev_phi = phi;
  }
  return static_cast<int>(hits.size());
}

int chi_paper(int d, int r, int p, int q) { return -(d + 2 * r) * d * p * q + p + q; }

int chi_covering(int d, int r, int p, int q, int c1, int c2) {
  return -(d + 2 * r) * d * p * q + c1 + c2;
}

MilnorReport milnor_report(const MixedPolynomial& f, const WeightSystem& w, std::optional<int> r,
                           std::uint64_t seed) {
  const auto deg = degree_report(f, w);
  if (!deg.strongly_polar_homogeneous()) {
    throw Error(ErrorCode::NotHomogeneous, "polynomial is not strongly polar weighted homogeneous");
  }
  if (!deg.is_convenient) throw Error(ErrorCode::NotConvenient, "polynomial is not convenient");
  const int pq = w.pq();
  MilnorReport rep;
  rep.d_p = *deg.polar_degree;
  rep.d_r = *deg.radial_degree;
  if (rep.d_p <= 0 || rep.d_p % pq != 0 || rep.d_r % pq != 0) {
    throw Error(ErrorCode::NotHomogeneous, "degrees are not positive multiples of pq");
  }
  rep.d = rep.d_p / pq;
  rep.s = (rep.d_r / pq - rep.d) / 2;
  rep.r = r ? *r : solve_link(f, w).n_neg;

  // Generic base point: first seeded regular point far enough from the link.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  C2 base{1.0, 0.0};
  for (int attempt = 0; attempt < 256; ++attempt) {
    const double a = 0.2 + 0.6 * unit(rng);
    const C2 z{std::sqrt(1.0 - a * a), std::polar(a, kTwoPi * unit(rng))};
    if (std::abs(evaluate(f, z)) > 1e-6 * local_scale(f, z)) {
      base = z;
      break;
    }
  }
  rep.generic_fiber_count = measure_fiber_count(f, w, base);
  rep.axis1_fiber_count = measure_fiber_count(f, w, C2{1.0, 0.0});
  rep.axis2_fiber_count = measure_fiber_count(f, w, C2{0.0, 1.0});
  rep.monodromy_order = monodromy_order(w, rep.d, {base, C2{std::sqrt(0.5), std::sqrt(0.5)}});
  rep.chi_paper = chi_paper(rep.d, rep.r, w.p(), w.q());
  rep.chi_covering = chi_covering(rep.d, rep.r, w.p(), w.q(), rep.axis1_fiber_count,
                                  rep.axis2_fiber_count);
  rep.agree = rep.chi_paper == rep.chi_covering;
  return rep;
}

LinkConfiguration canonical_config(const WeightSystem& w, int d, int r) {
  LinkConfiguration cfg{w, {}};
  const int n = d + 2 * r;
  for (int k = 0; k < n; ++k) {
    cfg.orbits.push_back({OrbitId(std::polar(0.5, kTwoPi * (k + 0.5) / n)), k < d + r ? 1 : -1});
  }
  return cfg;
}

std::vector<TopologyEntry> topology_enumeration(const WeightSystem& w, int d, int s) {
  if (d < 1 || s < 0) throw Error(ErrorCode::InvalidConfiguration, "need d >= 1 and s >= 0");
  std::vector<TopologyEntry> out;
  for (int r = 0; r <= s; ++r) {
    const auto f = defining_polynomial(canonical_config(w, d, r), s);
    const int c1 = measure_fiber_count(f, w, C2{1.0, 0.0});
    const int c2 = measure_fiber_count(f, w, C2{0.0, 1.0});
    out.push_back({r, d + 2 * r, chi_paper(d, r, w.p(), w.q()),
                   chi_covering(d, r, w.p(), w.q(), c1, c2)});
  }
  return out;
}

}  // namespace mixlink
