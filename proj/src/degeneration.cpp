#include "mixlink/degeneration.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace mixlink {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};
}  // namespace

MixedPolynomial LinearFamily::at(cplx t) const { return base + t * slope; }

LinearFamily model_family(const WeightSystem& w) {
  const int p = w.p(), q = w.q();
  LinearFamily fam;
  fam.base = MixedPolynomial::monomial(-2.0, 0, 2 * p, 0, p) +
             MixedPolynomial::monomial(1.0, 2 * q, 0, q, 0);
  fam.slope = MixedPolynomial::monomial(1.0, 0, 2 * p, q, 0);
  return fam;
}

MixedPolynomial family_poly(const WeightSystem& w, cplx t) { return model_family(w).at(t); }

cplx chart_eval(cplx t, cplx u) { return -2.0 * std::norm(u) * u + t * u * u + 1.0; }

std::array<std::array<double, 2>, 2> chart_jacobian(cplx t, cplx u) {
  const cplx gu = -4.0 * std::norm(u) + 2.0 * t * u;
  const cplx gub = -2.0 * u * u;
  const cplx fx = gu + gub;
  const cplx fy = kI * (gu - gub);
  return {{{fx.real(), fy.real()}, {fx.imag(), fy.imag()}}};
}

MixedPolynomial chart_poly(cplx t) {
  return MixedPolynomial::monomial(-2.0, 0, 2, 0, 1) + MixedPolynomial::monomial(t, 0, 2, 0, 0) +
         MixedPolynomial::constant(1.0);
}

double chart_search_radius(cplx t) { return std::max(1.0, std::abs(t)) + 0.5; }

std::vector<ChartRoot> solve_chart(cplx t, const SolverOptions& opts,
                                   std::span<const cplx> extra_seeds) {
  const double radius = chart_search_radius(t);
  SolverOptions local = opts;
  local.grid_resolution =
      std::max(opts.grid_resolution, static_cast<int>(std::ceil(opts.grid_resolution * radius / 2.0)));
  const PlanarMap chart(chart_poly(t), simd::Lift::Chart);
  const auto clusters = solve_planar(chart, Disk{{0.0, 0.0}, radius}, local, extra_seeds);
  std::vector<ChartRoot> out;
  out.reserve(clusters.size());
  for (const auto& c : clusters) {
    out.push_back({c.center, c.degree, c.multiplicity, c.simple, c.residual, c.members});
  }
  return out;
}

int chart_count(const std::vector<ChartRoot>& roots) {
  int n = 0;
  for (const auto& r : roots) n += r.multiplicity;
  return n;
}

cplx sigma_point(double theta) {
  const cplx s = std::polar(1.0, theta);
  return (2.0 * s - 1.0) / (s * s);
}

SigmaCurve trace_sigma(int n) {
  if (n < 16) throw Error(ErrorCode::TooFewSamples, "trace_sigma needs at least 16 samples");
  SigmaCurve curve;
  curve.samples.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double theta = 2.0 * kPi * k / n;
    curve.samples.push_back({theta, sigma_point(theta)});
  }
  curve.closed = true;
  return curve;
}

std::string_view to_string(Region r) {
  switch (r) {
    case Region::Inside: return "inside";
    case Region::Outside: return "outside";
    case Region::OnCurve: return "on_curve";
  }
  return "unknown";
}

namespace {

double segment_distance(cplx p, cplx a, cplx b) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  double s = len2 > 0.0 ? ((p - a) * std::conj(ab)).real() / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return std::abs(p - (a + s * ab));
}

}  // namespace

Region classify_region(cplx t, const SigmaCurve& curve, double tol) {
  const auto& pts = curve.samples;
  if (pts.size() < 1024) {
    throw Error(ErrorCode::TooFewSamples, "classify_region needs a curve with >= 1024 samples");
  }
  const std::size_t n = pts.size();
  double dist = std::numeric_limits<double>::infinity();
  double turn = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const cplx a = pts[k].t, b = pts[(k + 1) % n].t;
    dist = std::min(dist, segment_distance(t, a, b));
    turn += std::arg((b - t) / (a - t));
  }
  if (dist < tol) return Region::OnCurve;
  const long wind = std::lround(turn / (2.0 * kPi));
  return wind != 0 ? Region::Inside : Region::Outside;
}

SmoothnessReport rank_check(const LinearFamily& family, const C2& z, cplx t, double radius,
                            cplx direction) {
  if (std::abs(std::sqrt(z.norm2()) - radius) > 1e-8) {
    throw Error(ErrorCode::NotOnSphere, "point is not on the sphere of the given radius");
  }
  const MixedPolynomial f = family.at(t);
  if (std::abs(evaluate(f, z)) > 1e-8) {
    throw Error(ErrorCode::NotOnVariety, "f(z, t) does not vanish at the point");
  }
  direction /= std::abs(direction);
  const auto g = wirtinger_gradient(f, z);
  const cplx ft = family.slope.empty() ? cplx{0.0, 0.0} : evaluate(family.slope, z) * direction;
  const std::array<cplx, 5> df{g.dz1, g.dzb1, g.dz2, g.dzb2, ft};
  // d(conj f) in the same basis: conj of the partner derivative.
  const std::array<cplx, 5> dfb{std::conj(g.dzb1), std::conj(g.dz1), std::conj(g.dzb2),
                                std::conj(g.dz2), std::conj(ft)};
  SmoothnessReport rep;
  rep.radius = radius;
  for (int k = 0; k < 5; ++k) {
    rep.matrix[0][k] = 0.5 * (df[k] + dfb[k]);
    rep.matrix[1][k] = (df[k] - dfb[k]) / (2.0 * kI);
  }
  rep.matrix[2] = {std::conj(z.z1), z.z1, std::conj(z.z2), z.z2, 0.0};

  Eigen::Matrix<std::complex<double>, 3, 5> a;
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 5; ++k) a(i, k) = rep.matrix[i][k];
  }
  Eigen::JacobiSVD<Eigen::Matrix<std::complex<double>, 3, 5>> svd(a);
  const auto sv = svd.singularValues();
  for (int i = 0; i < 3; ++i) rep.singular_values[i] = sv(i);
  rep.rank = 0;
  for (int i = 0; i < 3; ++i) {
    if (rep.singular_values[i] > 1e-6 * rep.singular_values[0]) ++rep.rank;
  }
  return rep;
}

SmoothnessReport rank_check(const MixedPolynomial& f, const C2& z, cplx t, double radius) {
  return rank_check(LinearFamily{f, MixedPolynomial{}}, z, t, radius);
}

C2 lift_chart_point(const WeightSystem& w, cplx u_chart, double radius) {
  const int p = w.p(), q = w.q();
  const double m = std::abs(u_chart);
  // y^p = m x^q with x^2 + y^2 = radius^2; y(x) increases as x decreases.
  auto excess = [&](double x) {
    const double y = std::sqrt(std::max(0.0, radius * radius - x * x));
    return p * std::log(y) - q * std::log(x) - std::log(m);
  };
  double lo = 0.0, hi = radius;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (excess(mid) > 0.0) lo = mid;
    else hi = mid;
  }
  const double x = 0.5 * (lo + hi);
  const double y = std::sqrt(std::max(0.0, radius * radius - x * x));
  return {x, std::polar(y, std::arg(u_chart) / p)};
}

std::string_view to_string(SweepEvent::Kind k) {
  return k == SweepEvent::Kind::PairElimination ? "pair_elimination" : "pair_creation";
}

std::vector<cplx> linear_path(cplx from, cplx to, int steps) {
  steps = std::max(steps, 1);
  std::vector<cplx> path;
  path.reserve(steps + 1);
  for (int k = 0; k <= steps; ++k) path.push_back(from + (to - from) * (double(k) / steps));
  return path;
}

namespace {

std::vector<cplx> seeds_of(const std::vector<ChartRoot>& roots) {
  std::vector<cplx> seeds;
  for (const auto& r : roots) {
    seeds.push_back(r.u);
    for (const auto& m : r.members) seeds.push_back(m.w);
  }
  return seeds;
}

bool all_simple(const std::vector<ChartRoot>& roots) {
  return std::all_of(roots.begin(), roots.end(), [](const ChartRoot& r) { return r.simple; });
}

int signed_total_of(const std::vector<ChartRoot>& roots) {
  int s = 0;
  for (const auto& r : roots) s += r.degree;
  return s;
}

/// Roots of `more` left over after greedily matching every root of `fewer`.
std::vector<MergingRoot> unmatched(const std::vector<ChartRoot>& more,
                                   const std::vector<ChartRoot>& fewer) {
  std::vector<bool> taken(more.size(), false);
  for (const auto& r : fewer) {
    std::size_t best = more.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < more.size(); ++i) {
      if (!taken[i] && std::abs(more[i].u - r.u) < best_d) {
        best_d = std::abs(more[i].u - r.u);
        best = i;
      }
    }
    if (best < more.size()) taken[best] = true;
  }
  std::vector<MergingRoot> out;
  for (std::size_t i = 0; i < more.size(); ++i) {
    if (!taken[i]) out.push_back({more[i].u, more[i].degree});
  }
  return out;
}

/// Newton on (Re G, Im G, det J) = 0 in (Re u, Im u, lambda) with
/// t = ta + lambda (tb - ta): the fold point where two roots meet.
std::optional<std::pair<cplx, double>> refine_fold(cplx ta, cplx tb, cplx u0, double lambda0) {
  auto residual = [&](const Eigen::Vector3d& x) {
    const cplx u{x(0), x(1)};
    const cplx t = ta + x(2) * (tb - ta);
    const cplx g = chart_eval(t, u);
    const auto j = chart_jacobian(t, u);
    return Eigen::Vector3d(g.real(), g.imag(), j[0][0] * j[1][1] - j[0][1] * j[1][0]);
  };
  Eigen::Vector3d x(u0.real(), u0.imag(), lambda0);
  for (int it = 0; it < 60; ++it) {
    const Eigen::Vector3d r = residual(x);
    if (r.norm() < 1e-14) break;
    Eigen::Matrix3d jac;
    for (int k = 0; k < 3; ++k) {
      const double h = 1e-7 * std::max(1.0, std::abs(x(k)));
      Eigen::Vector3d xp = x, xm = x;
      xp(k) += h;
      xm(k) -= h;
      jac.col(k) = (residual(xp) - residual(xm)) / (2.0 * h);
    }
    const Eigen::Vector3d step = jac.fullPivLu().solve(-r);
    if (!step.allFinite()) return std::nullopt;
    x += step;
    if (step.norm() < 1e-15) break;
  }
  const Eigen::Vector3d r = residual(x);
  if (!(r.head<2>().norm() < 1e-12) || !(std::abs(r(2)) < 1e-9)) return std::nullopt;
  return std::pair{cplx{x(0), x(1)}, x(2)};
}

constexpr double kCuspClearance = 1e-2;
constexpr double kBisectionWidth = 1e-6;

}  // namespace

SweepResult sweep(const WeightSystem& w, std::span<const cplx> t_path, const SolverOptions& opts,
                  double certificate_radius) {
  SweepResult res;
  res.path.assign(t_path.begin(), t_path.end());
  for (std::size_t k = 0; k < t_path.size(); ++k) {
    const auto seeds = k > 0 ? seeds_of(res.roots.back()) : std::vector<cplx>{};
    res.roots.push_back(solve_chart(t_path[k], opts, seeds));
    res.counts.push_back(chart_count(res.roots.back()));
    res.signed_totals.push_back(signed_total_of(res.roots.back()));
  }
  const LinearFamily fam = model_family(w);
  for (std::size_t k = 0; k + 1 < t_path.size(); ++k) {
    const int ca = res.counts[k], cb = res.counts[k + 1];
    if (ca == cb) continue;
    const cplx ta = t_path[k], tb = t_path[k + 1];
    if (std::abs(ca - cb) != 2) {
      throw Error(ErrorCode::TangentialCrossing,
                  "root count changed by " + std::to_string(cb - ca) + " across one step");
    }
    if (segment_distance(cplx{1.0, 0.0}, ta, tb) < kCuspClearance) {
      throw Error(ErrorCode::TangentialCrossing, "crossing too close to the cusp t = 1");
    }
    // Bisection on the path parameter; the side with more roots seeds the other.
    double la = 0.0, lb = 1.0;
    auto roots_a = res.roots[k], roots_b = res.roots[k + 1];
    const bool a_has_more = ca > cb;
    auto& outside = a_has_more ? roots_a : roots_b;
    std::vector<ChartRoot> separated = outside;
    while ((lb - la) * std::abs(tb - ta) > kBisectionWidth) {
      const double lm = 0.5 * (la + lb);
      const cplx tm = ta + lm * (tb - ta);
      auto seeds = seeds_of(outside);
      auto roots_m = solve_chart(tm, opts, seeds);
      const int cm = chart_count(roots_m);
      if (cm == ca) {
        la = lm;
        roots_a = std::move(roots_m);
      } else if (cm == cb) {
        lb = lm;
        roots_b = std::move(roots_m);
      } else {
        throw Error(ErrorCode::TangentialCrossing, "inconsistent root counts during bisection");
      }
      if (all_simple(outside) && static_cast<int>(outside.size()) == std::max(ca, cb)) {
        separated = outside;
      }
    }
    // If the bracket end on the outside sits exactly on the locus, fall back
    // to the nearest path sample where the roots are still separated.
    if (!all_simple(separated) || static_cast<int>(separated.size()) != std::max(ca, cb)) {
      if (a_has_more) {
        for (std::size_t j = k + 1; j-- > 0;) {
          if (res.counts[j] == ca && all_simple(res.roots[j])) {
            separated = res.roots[j];
            break;
          }
        }
      } else {
        for (std::size_t j = k + 1; j < res.roots.size(); ++j) {
          if (res.counts[j] == cb && all_simple(res.roots[j])) {
            separated = res.roots[j];
            break;
          }
        }
      }
    }
    const auto& inside = a_has_more ? roots_b : roots_a;
    auto pair = unmatched(separated, inside);
    SweepEvent ev;
    ev.kind = ca > cb ? SweepEvent::Kind::PairElimination : SweepEvent::Kind::PairCreation;
    ev.count_before = ca;
    ev.count_after = cb;
    double lambda = 0.5 * (la + lb);
    cplx collision{0.0, 0.0};
    if (pair.size() == 2) {
      ev.merging_roots = {pair[0], pair[1]};
      // Closest approach on the final bracket.
      auto near = unmatched(outside, inside);
      collision = near.size() == 2 ? 0.5 * (near[0].u + near[1].u)
                                   : (near.size() == 1 ? near[0].u : 0.5 * (pair[0].u + pair[1].u));
    } else if (!pair.empty()) {
      ev.merging_roots = {pair[0], pair[0]};
      collision = pair[0].u;
    }
    if (auto fold = refine_fold(ta, tb, collision, lambda)) {
      if (std::abs(fold->second - lambda) * std::abs(tb - ta) < 1e-4) {
        collision = fold->first;
        lambda = fold->second;
      }
    }
    ev.t_star = ta + lambda * (tb - ta);
    ev.collision_point = collision;
    ev.certificate_point = lift_chart_point(w, collision, certificate_radius);
    ev.certificate = rank_check(fam, ev.certificate_point, ev.t_star, certificate_radius, tb - ta);
    res.events.push_back(ev);
  }
  return res;
}

// Pair elimination ---------------------------------------------------------

LinkConfiguration EliminationFamily::config_at(double tau) const {
  LinkConfiguration cfg = start;
  if (schedule.empty()) return cfg;
  tau = std::clamp(tau, 0.0, 1.0);
  const double per_move = 1.0 / schedule.size();
  for (std::size_t m = 0; m < schedule.size(); ++m) {
    const auto& mv = schedule[m];
    const double local = std::clamp((tau - m * per_move) / per_move, 0.0, 1.0);
    double length = 0.0;
    for (std::size_t k = 0; k + 1 < mv.waypoints.size(); ++k) {
      length += std::abs(mv.waypoints[k + 1] - mv.waypoints[k]);
    }
    double remaining_len = local * length;
    cplx pos = mv.waypoints.back();
    for (std::size_t k = 0; k + 1 < mv.waypoints.size(); ++k) {
      const double seg = std::abs(mv.waypoints[k + 1] - mv.waypoints[k]);
      if (remaining_len <= seg) {
        pos = seg > 0.0 ? mv.waypoints[k] + (mv.waypoints[k + 1] - mv.waypoints[k]) *
                                                (remaining_len / seg)
                        : mv.waypoints[k];
        break;
      }
      remaining_len -= seg;
    }
    cfg.orbits[mv.orbit].id = OrbitId(pos);
  }
  return cfg;
}

namespace {

struct Obstacle {
  cplx at;
  std::optional<std::size_t> orbit;  // nullopt for the puncture u = 0
};

[[noreturn]] void blocked(std::size_t moving, const Obstacle& o) {
  const std::string other = o.orbit ? "orbit " + std::to_string(*o.orbit) : "the puncture u = 0";
  throw Error(ErrorCode::IsotopyBlocked,
              "moving orbit " + std::to_string(moving) + " is blocked by " + other);
}

/// Straight segment from a to b with semicircular detours of radius
/// kIsotopyDetour around every obstacle closer than kIsotopyClearance.
std::vector<cplx> plan_move(std::size_t moving, cplx a, cplx b,
                            const std::vector<Obstacle>& obstacles) {
  for (const auto& o : obstacles) {
    if (std::abs(b - o.at) < kIsotopyDetour || std::abs(a - o.at) < kIsotopyClearance) {
      blocked(moving, o);
    }
  }
  const cplx dir = b - a;
  const double len = std::abs(dir);
  std::vector<cplx> pts{a};
  if (len == 0.0) return pts;
  const cplx unit = dir / len;
  struct Hit {
    double s_in, s_out;
    const Obstacle* o;
  };
  std::vector<Hit> hits;
  for (const auto& o : obstacles) {
    if (segment_distance(o.at, a, b) >= kIsotopyClearance) continue;
    const double along = ((o.at - a) * std::conj(unit)).real();
    const double off = ((o.at - a) * std::conj(unit)).imag();
    const double half = std::sqrt(kIsotopyDetour * kIsotopyDetour - off * off);
    hits.push_back({along - half, along + half, &o});
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& x, const Hit& y) { return x.s_in < y.s_in; });
  for (std::size_t h = 0; h < hits.size(); ++h) {
    if (h > 0 && hits[h].s_in < hits[h - 1].s_out) blocked(moving, *hits[h].o);
    const cplx c = hits[h].o->at;
    const cplx entry = a + hits[h].s_in * unit;
    const cplx exit = a + hits[h].s_out * unit;
    pts.push_back(entry);
    // Shorter arc: the one on the chord's side of the obstacle.
    const double a0 = std::arg(entry - c);
    double sweep_angle = std::arg((exit - c) / (entry - c));
    const cplx chord_mid = 0.5 * (entry + exit);
    const cplx arc_mid = c + std::polar(kIsotopyDetour, a0 + 0.5 * sweep_angle);
    if (std::abs(chord_mid - c) > 0.0 && ((arc_mid - c) * std::conj(chord_mid - c)).real() < 0.0) {
      sweep_angle = sweep_angle > 0 ? sweep_angle - 2.0 * kPi : sweep_angle + 2.0 * kPi;
    }
    for (int k = 1; k < 16; ++k) pts.push_back(c + std::polar(kIsotopyDetour, a0 + sweep_angle * k / 16.0));
    pts.push_back(exit);
  }
  pts.push_back(b);
  // Every waypoint segment must keep its clearance and stay in the disk.
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    for (const auto& o : obstacles) {
      if (segment_distance(o.at, pts[k], pts[k + 1]) < 0.5 * kIsotopyClearance) blocked(moving, o);
    }
    if (std::abs(pts[k + 1]) >= 1.0) blocked(moving, Obstacle{pts[k + 1], std::nullopt});
  }
  return pts;
}

}  // namespace

EliminationFamily elimination_family(const LinkConfiguration& config,
                                     std::optional<EliminationTriple> triple,
                                     const EliminationOptions& options,
                                     const SolverOptions& solver) {
  if (config.n_neg() == 0) throw Error(ErrorCode::NoNegativeOrbit, "configuration has r = 0");
  const auto valid = validate_config(config);
  if (!valid.ok()) throw Error(ErrorCode::InvalidConfiguration, valid.violations.front().detail);
  const WeightSystem w = config.weights;
  if (!triple) {
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < config.orbits.size(); ++i) {
      (config.orbits[i].sign > 0 ? pos : neg).push_back(i);
    }
    if (pos.size() < 2) {
      throw Error(ErrorCode::InvalidConfiguration, "elimination needs two positive orbits");
    }
    triple = EliminationTriple{pos[0], pos[1], neg[0]};
  }
  const auto& orb = config.orbits;
  const auto n = orb.size();
  if (triple->positive_a >= n || triple->positive_b >= n || triple->negative >= n ||
      triple->positive_a == triple->positive_b || orb[triple->positive_a].sign < 0 ||
      orb[triple->positive_b].sign < 0 || orb[triple->negative].sign > 0) {
    throw Error(ErrorCode::InvalidConfiguration, "triple must name two positive and one negative orbit");
  }

  // Targets: the model's three roots at t_out, as orbit ids.
  const auto roots = solve_chart(options.t_out, solver);
  std::vector<cplx> pos_targets, neg_targets;
  for (const auto& r : roots) {
    if (!r.simple) throw Error(ErrorCode::InvalidConfiguration, "t_out lies on the locus");
    (r.degree > 0 ? pos_targets : neg_targets).push_back(chart_to_orbit(w, r.u).value());
  }
  if (pos_targets.size() != 2 || neg_targets.size() != 1) {
    throw Error(ErrorCode::InvalidConfiguration, "t_out must lie outside the bounded region");
  }
  const cplx ua = orb[triple->positive_a].id.value();
  const cplx ub = orb[triple->positive_b].id.value();
  if (std::abs(ua - pos_targets[1]) + std::abs(ub - pos_targets[0]) <
      std::abs(ua - pos_targets[0]) + std::abs(ub - pos_targets[1])) {
    std::swap(pos_targets[0], pos_targets[1]);
  }

  EliminationFamily fam;
  fam.weights = w;
  fam.start = config;
  fam.triple = *triple;
  fam.options = options;
  fam.moved = config;

  const std::array<std::pair<std::size_t, cplx>, 3> moves{
      std::pair{triple->negative, neg_targets[0]}, std::pair{triple->positive_a, pos_targets[0]},
      std::pair{triple->positive_b, pos_targets[1]}};
  for (const auto& [idx, target] : moves) {
    std::vector<Obstacle> obstacles{{cplx{0.0, 0.0}, std::nullopt}};
    for (std::size_t j = 0; j < n; ++j) {
      if (j != idx) obstacles.push_back({fam.moved.orbits[j].id.value(), j});
    }
    const cplx from = fam.moved.orbits[idx].id.value();
    fam.schedule.push_back({idx, plan_move(idx, from, target, obstacles)});
    fam.moved.orbits[idx].id = OrbitId(target);
  }

  MixedPolynomial rest = MixedPolynomial::constant(1.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == triple->positive_a || i == triple->positive_b || i == triple->negative) continue;
    fam.remaining.push_back(i);
    rest = rest * (orb[i].sign > 0 ? ell(w, orb[i].id) : ell_bar(w, orb[i].id));
  }
  fam.remaining_product = rest;
  const LinearFamily model = model_family(w);
  fam.family = LinearFamily{model.base * rest, model.slope * rest};
  return fam;
}

namespace {

bool same_oriented_ids(const LinkReport& rep, const LinkConfiguration& cfg, double tol) {
  if (rep.components() != static_cast<int>(cfg.orbits.size()) || rep.degenerate) return false;
  std::vector<bool> used(cfg.orbits.size(), false);
  for (const auto& s : rep.solutions) {
    bool found = false;
    for (std::size_t i = 0; i < cfg.orbits.size(); ++i) {
      if (!used[i] && std::abs(cfg.orbits[i].id.value() - s.u) < tol &&
          cfg.orbits[i].sign == s.degree) {
        used[i] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

LinkConfiguration config_from_report(const LinkReport& rep) {
  LinkConfiguration cfg{rep.weights, {}};
  for (const auto& s : rep.solutions) cfg.orbits.push_back({OrbitId(s.u), s.degree > 0 ? 1 : -1});
  return cfg;
}

}  // namespace

EliminationResult run_elimination(const LinkConfiguration& config,
                                  std::optional<EliminationTriple> triple,
                                  const EliminationOptions& options, const SolverOptions& solver) {
  EliminationResult res;
  res.family = elimination_family(config, triple, options, solver);
  const auto& fam = res.family;
  const WeightSystem w = config.weights;

  res.start_report = solve_link(defining_polynomial(config, config.r()), w, solver);
  res.isotopy_end_report = solve_link(fam.at(options.t_out), w, solver);
  if (!same_oriented_ids(res.isotopy_end_report, fam.moved, 1e-6)) {
    throw Error(ErrorCode::BudgetExceeded,
                "family at t_out does not realize the moved configuration");
  }

  const auto path = linear_path(options.t_out, options.t_in, options.sweep_steps);
  res.sweep = sweep(w, path, solver, options.certificate_radius);

  // Remaining orbits must stay clear of the family's roots along the sweep.
  for (const auto& step_roots : res.sweep.roots) {
    for (const auto& r : step_roots) {
      const cplx u = chart_to_orbit(w, r.u).value();
      for (auto i : fam.remaining) {
        if (std::abs(config.orbits[i].id.value() - u) < kIsotopyClearance) {
          throw Error(ErrorCode::IsotopyBlocked,
                      "orbit " + std::to_string(i) + " meets a root of the model family during the sweep");
        }
      }
    }
  }
  res.min_remaining_modulus = std::numeric_limits<double>::infinity();
  for (const auto& ev : res.sweep.events) {
    const OrbitId hit = chart_to_orbit(w, ev.collision_point);
    for (const auto& z : sample_orbit(w, hit, 64)) {
      res.min_remaining_modulus =
          std::min(res.min_remaining_modulus, std::abs(evaluate(fam.remaining_product, z)));
    }
  }

  res.final_report = solve_link(fam.at(options.t_in), w, solver);
  res.final_config = config_from_report(res.final_report);
  return res;
}

PositivizationResult eliminate_all(const LinkConfiguration& config,
                                   const EliminationOptions& options,
                                   const SolverOptions& solver) {
  PositivizationResult out;
  LinkConfiguration current = config;
  if (current.n_neg() == 0) {
    out.final_config = current;
    out.final_report = solve_link(defining_polynomial(current, 0), current.weights, solver);
    return out;
  }
  while (current.n_neg() > 0) {
    auto stage = run_elimination(current, std::nullopt, options, solver);
    current = stage.final_config;
    out.final_report = stage.final_report;
    out.stages.push_back(std::move(stage));
  }
  out.final_config = current;
  return out;
}

}  // namespace mixlink
