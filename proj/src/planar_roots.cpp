#include "mixlink/planar_roots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <numbers>

namespace mixlink {

namespace {

constexpr double kPi = std::numbers::pi;
// Roots are accepted when |F| / scale falls below this.
constexpr double kAcceptResidual = 1e-10;
// The slice lift is only defined on the open unit disk.
constexpr double kSliceLimit = 1.0 - 1e-13;

}  // namespace

SolverOptions default_solver_options() {
  SolverOptions opts;
  if (const char* profile = std::getenv("MIXLINK_PROFILE")) {
    if (std::strcmp(profile, "fast") == 0) {
      opts.grid_resolution = 120;
      opts.max_newton_steps = 40;
    } else if (std::strcmp(profile, "strict") == 0) {
      opts.grid_resolution = 320;
      opts.max_newton_steps = 80;
      opts.newton_tol = 1e-13;
    }
  }
  return opts;
}

PlanarMap::PlanarMap(MixedPolynomial f, simd::Lift lift, cplx offset)
    : f_(std::move(f)), compiled_(simd::compile(f_)), lift_(lift), offset_(offset) {}

C2 PlanarMap::lifted(cplx w) const {
  if (lift_ == simd::Lift::Slice) return {std::sqrt(std::max(0.0, 1.0 - std::norm(w))), w};
  return {1.0, w};
}

cplx PlanarMap::value(cplx w) const { return evaluate(f_, lifted(w)) - offset_; }

std::pair<cplx, cplx> PlanarMap::wirtinger(cplx w) const {
  const C2 z = lifted(w);
  const auto g = wirtinger_gradient(f_, z);
  if (lift_ == simd::Lift::Chart) return {g.dz2, g.dzb2};
  // z1 = zb1 = x(w) = sqrt(1 - w wbar); dx/dw = -wbar / (2x), dx/dwbar = -w / (2x).
  const double x = z.z1.real();
  const cplx radial = g.dz1 + g.dzb1;
  if (x <= 0.0) return {g.dz2, g.dzb2};
  return {radial * (-std::conj(w) / (2.0 * x)) + g.dz2, radial * (-w / (2.0 * x)) + g.dzb2};
}

double PlanarMap::scale(cplx w) const {
  const C2 z = lifted(w);
  const double a1 = std::abs(z.z1), a2 = std::abs(z.z2);
  double s = std::abs(offset_);
  for (const auto& t : f_.terms()) {
    s += std::abs(t.coeff) * ipow(a1, t.mono.nu[0] + t.mono.mu[0]) *
         ipow(a2, t.mono.nu[1] + t.mono.mu[1]);
  }
  return s;
}

double PlanarMap::residual(cplx w) const {
  const double s = scale(w);
  const double v = std::abs(value(w));
  return s > 0.0 ? v / s : v;
}

void PlanarMap::values(std::span<const double> w_re, std::span<const double> w_im,
                       std::span<double> out_re, std::span<double> out_im) const {
  simd::evaluate_batch(compiled_, lift_, w_re, w_im, out_re, out_im);
  if (offset_ != cplx{0.0, 0.0}) {
    for (std::size_t k = 0; k < out_re.size(); ++k) {
      out_re[k] -= offset_.real();
      out_im[k] -= offset_.imag();
    }
  }
}

PlanarMap PlanarMap::shifted(cplx c) const {
  PlanarMap out = *this;
  out.offset_ += c;
  return out;
}

namespace {

double arg_step(cplx from, cplx to) { return std::arg(to / from); }

double refine_arc(const std::function<cplx(cplx)>& F, cplx center, double radius, double ta,
                  cplx fa, double tb, cplx fb, int depth, double& min_mod, double& max_mod) {
  const double step = arg_step(fa, fb);
  if (std::abs(step) <= kPi / 4.0 || depth >= 30) return step;
  const double tm = 0.5 * (ta + tb);
  const cplx fm = F(center + std::polar(radius, tm));
  min_mod = std::min(min_mod, std::abs(fm));
  max_mod = std::max(max_mod, std::abs(fm));
  return refine_arc(F, center, radius, ta, fa, tm, fm, depth + 1, min_mod, max_mod) +
         refine_arc(F, center, radius, tm, fm, tb, fb, depth + 1, min_mod, max_mod);
}

}  // namespace

WindingResult winding(const std::function<cplx(cplx)>& F, cplx center, double radius,
                      int samples) {
  samples = std::max(samples, 8);
  std::vector<cplx> vals(samples);
  double min_mod = std::numeric_limits<double>::infinity(), max_mod = 0.0;
  for (int k = 0; k < samples; ++k) {
    vals[k] = F(center + std::polar(radius, 2.0 * kPi * k / samples));
    min_mod = std::min(min_mod, std::abs(vals[k]));
    max_mod = std::max(max_mod, std::abs(vals[k]));
  }
  if (!(min_mod > 10.0 * 1e-14 * max_mod)) {
    throw Error(ErrorCode::ZeroOnContour, "map vanishes on the winding contour");
  }
  double total = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double ta = 2.0 * kPi * k / samples;
    const double tb = 2.0 * kPi * (k + 1) / samples;
    total += refine_arc(F, center, radius, ta, vals[k], tb, vals[(k + 1) % samples], 0, min_mod,
                        max_mod);
  }
  if (!(min_mod > 10.0 * 1e-14 * max_mod)) {
    throw Error(ErrorCode::ZeroOnContour, "map vanishes on the winding contour");
  }
  const double turns = total / (2.0 * kPi);
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) >= 0.1) {
    throw Error(ErrorCode::BudgetExceeded, "winding number did not settle to an integer");
  }
  return {static_cast<int>(rounded), min_mod, max_mod};
}

int local_degree(const std::function<cplx(cplx)>& F, cplx center, double radius, int samples) {
  return winding(F, center, radius, samples).degree;
}

PlanarRoot describe_root(const PlanarMap& F, cplx w) {
  PlanarRoot r;
  r.w = w;
  r.residual = F.residual(w);
  const auto [a, b] = F.wirtinger(w);
  const double det = std::norm(a) - std::norm(b);
  r.jacobian_degree = det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
  const double s = F.scale(w);
  const double sigma_min = std::abs(std::abs(a) - std::abs(b));
  r.condition = s > 0.0 ? sigma_min / s : sigma_min;
  return r;
}

namespace {

bool inside_lift(const PlanarMap& F, cplx w) {
  return F.lift() != simd::Lift::Slice || std::abs(w) < kSliceLimit;
}

/// Damped Newton on the real 2x2 system written with Wirtinger derivatives:
/// a dw + b conj(dw) = -F  =>  dw = (b conj(F) - conj(a) F) / (|a|^2 - |b|^2).
std::optional<cplx> newton(const PlanarMap& F, cplx w, const SolverOptions& opts) {
  cplx fw = F.value(w);
  for (int step = 0; step < opts.max_newton_steps; ++step) {
    if (fw == cplx{0.0, 0.0}) break;
    const auto [a, b] = F.wirtinger(w);
    const double det = std::norm(a) - std::norm(b);
    if (det == 0.0 || !std::isfinite(det)) break;
    const cplx delta = (b * std::conj(fw) - std::conj(a) * fw) / det;
    if (!std::isfinite(delta.real()) || !std::isfinite(delta.imag())) break;
    double lambda = 1.0;
    bool moved = false;
    cplx wn = w, fn = fw;
    for (int halving = 0; halving < 40; ++halving, lambda *= 0.5) {
      wn = w + lambda * delta;
      if (!inside_lift(F, wn)) continue;
      fn = F.value(wn);
      if (std::abs(fn) < std::abs(fw)) {
        moved = true;
        break;
      }
    }
    if (!moved) break;
    const double stepsize = std::abs(wn - w);
    w = wn;
    fw = fn;
    if (stepsize < opts.newton_tol * std::max(1.0, std::abs(w))) break;
  }
  if (F.residual(w) < kAcceptResidual) return w;
  return std::nullopt;
}

std::vector<PlanarRoot> dedup(std::vector<PlanarRoot> roots, double radius) {
  std::sort(roots.begin(), roots.end(), [](const PlanarRoot& x, const PlanarRoot& y) {
    if (x.w.real() != y.w.real()) return x.w.real() < y.w.real();
    return x.w.imag() < y.w.imag();
  });
  std::vector<PlanarRoot> out;
  for (const auto& r : roots) {
    bool merged = false;
    for (auto& o : out) {
      if (std::abs(o.w - r.w) < radius) {
        if (r.residual < o.residual) o = r;
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(r);
  }
  return out;
}

}  // namespace

std::vector<PlanarRoot> find_roots(const PlanarMap& F, const Disk& domain,
                                   const SolverOptions& opts, int grid_resolution,
                                   std::span<const cplx> extra_seeds) {
  const int n = std::max(grid_resolution, 4);
  const double h = 2.0 * domain.radius / (n - 1);
  const double x0 = domain.center.real() - domain.radius;
  const double y0 = domain.center.imag() - domain.radius;
  std::vector<double> gre(static_cast<std::size_t>(n) * n), gim(gre.size());
  std::vector<double> fre(gre.size()), fim(gre.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      gre[i * n + j] = x0 + h * j;
      gim[i * n + j] = y0 + h * i;
    }
  }
  F.values(gre, gim, fre, fim);
  std::vector<char> mask(gre.size());
  for (std::size_t k = 0; k < gre.size(); ++k) {
    const cplx w{gre[k], gim[k]};
    mask[k] = std::norm(w - domain.center) < domain.radius * domain.radius && inside_lift(F, w);
  }
  auto inside = [&](int i, int j) {
    if (i < 0 || j < 0 || i >= n || j >= n) return false;
    return mask[static_cast<std::size_t>(i) * n + j] != 0;
  };
  auto mag2 = [&](int i, int j) {
    const std::size_t k = static_cast<std::size_t>(i) * n + j;
    return fre[k] * fre[k] + fim[k] * fim[k];
  };

  std::vector<cplx> seeds(extra_seeds.begin(), extra_seeds.end());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!inside(i, j)) continue;
      const double m = mag2(i, j);
      bool is_min = true;
      for (int di = -1; di <= 1 && is_min; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if ((di || dj) && inside(i + di, j + dj) && mag2(i + di, j + dj) < m) {
            is_min = false;
            break;
          }
        }
      }
      if (is_min) seeds.emplace_back(gre[i * n + j], gim[i * n + j]);
      // Cells whose corners see sign changes of both Re F and Im F.
      if (inside(i + 1, j) && inside(i, j + 1) && inside(i + 1, j + 1)) {
        const std::size_t k[4] = {static_cast<std::size_t>(i) * n + j,
                                  static_cast<std::size_t>(i) * n + j + 1,
                                  static_cast<std::size_t>(i + 1) * n + j,
                                  static_cast<std::size_t>(i + 1) * n + j + 1};
        bool re_pos = false, re_neg = false, im_pos = false, im_neg = false;
        for (auto kk : k) {
          (fre[kk] >= 0.0 ? re_pos : re_neg) = true;
          (fim[kk] >= 0.0 ? im_pos : im_neg) = true;
        }
        if (re_pos && re_neg && im_pos && im_neg) {
          seeds.emplace_back(gre[k[0]] + 0.5 * h, gim[k[0]] + 0.5 * h);
        }
      }
    }
  }

  std::vector<PlanarRoot> found;
  for (const cplx s : seeds) {
    if (!inside_lift(F, s)) continue;
    if (auto w = newton(F, s, opts)) {
      if (std::abs(*w - domain.center) <= domain.radius) found.push_back(describe_root(F, *w));
    }
  }
  return dedup(std::move(found), opts.dedup_radius);
}

namespace {

std::vector<RootCluster> cluster_roots(const PlanarMap& F, const Disk& domain,
                                       const std::vector<PlanarRoot>& roots,
                                       const SolverOptions& opts) {
  // Single linkage at the winding radius.
  const std::size_t n = roots.size();
  std::vector<int> label(n, -1);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] >= 0) continue;
    label[i] = next;
    std::vector<std::size_t> stack{i};
    while (!stack.empty()) {
      const std::size_t k = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < n; ++j) {
        if (label[j] < 0 && std::abs(roots[j].w - roots[k].w) < opts.winding_radius) {
          label[j] = next;
          stack.push_back(j);
        }
      }
    }
    ++next;
  }
  std::vector<RootCluster> clusters(next);
  for (std::size_t i = 0; i < n; ++i) clusters[label[i]].members.push_back(roots[i]);
  for (auto& c : clusters) {
    cplx sum{0.0, 0.0};
    for (const auto& m : c.members) sum += m.w;
    c.center = sum / double(c.members.size());
  }

  auto fn = [&F](cplx w) { return F.value(w); };
  for (std::size_t ci = 0; ci < clusters.size(); ++ci) {
    auto& c = clusters[ci];
    double spread = 0.0;
    for (const auto& m : c.members) spread = std::max(spread, std::abs(m.w - c.center));
    double rad = std::max(opts.winding_radius, 2.0 * spread);
    for (std::size_t cj = 0; cj < clusters.size(); ++cj) {
      if (cj != ci) rad = std::min(rad, 0.45 * std::abs(clusters[cj].center - c.center));
    }
    if (F.lift() == simd::Lift::Slice) rad = std::min(rad, 0.9 * (1.0 - std::abs(c.center)));
    (void)domain;

    const auto wr = winding(fn, c.center, rad);
    c.degree = wr.degree;
    c.condition = std::numeric_limits<double>::infinity();
    c.residual = 0.0;
    for (const auto& m : c.members) {
      c.condition = std::min(c.condition, m.condition);
      c.residual = std::max(c.residual, m.residual);
    }
    c.simple = c.members.size() == 1 && c.condition >= opts.degenerate_threshold &&
               c.members.front().jacobian_degree == c.degree;
    if (c.simple) {
      c.multiplicity = 1;
      c.center = c.members.front().w;
      continue;
    }
    // Multiplicity: the largest number of roots that a small perturbation
    // F - eps e^(i phi) splits the cluster into.
    int best = 0;
    const double eps = 0.25 * wr.min_modulus;
    std::vector<cplx> member_seeds;
    for (const auto& m : c.members) member_seeds.push_back(m.w);
    SolverOptions local = opts;
    local.dedup_radius = std::min(opts.dedup_radius, rad * 1e-3);
    for (int k = 0; k < 8; ++k) {
      const cplx shift = std::polar(eps, 2.0 * kPi * (k + 0.5) / 8.0);
      const auto perturbed =
          find_roots(F.shifted(shift), Disk{c.center, rad}, local, 48, member_seeds);
      best = std::max(best, static_cast<int>(perturbed.size()));
    }
    c.multiplicity = std::max({best, std::abs(c.degree), 1});
  }
  return clusters;
}

}  // namespace

std::vector<RootCluster> solve_planar(const PlanarMap& F, const Disk& domain,
                                      const SolverOptions& opts,
                                      std::span<const cplx> extra_seeds) {
  auto fn = [&F](cplx w) { return F.value(w); };
  const int expected = winding(fn, domain.center, domain.radius, 512).degree;
  int grid = opts.grid_resolution;
  std::vector<cplx> seeds(extra_seeds.begin(), extra_seeds.end());
  for (int attempt = 0; attempt < 3; ++attempt, grid *= 2) {
    const auto roots = find_roots(F, domain, opts, grid, seeds);
    auto clusters = cluster_roots(F, domain, roots, opts);
    int total = 0;
    for (const auto& c : clusters) total += c.degree;
    if (total == expected) {
      std::sort(clusters.begin(), clusters.end(), [](const RootCluster& x, const RootCluster& y) {
        if (x.center.real() != y.center.real()) return x.center.real() < y.center.real();
        return x.center.imag() < y.center.imag();
      });
      return clusters;
    }
    for (const auto& r : roots) seeds.push_back(r.w);
  }
  throw Error(ErrorCode::BudgetExceeded,
              "root degrees do not add up to the boundary winding number after grid refinement");
}

}  // namespace mixlink
