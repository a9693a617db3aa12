#pragma once

// Root finding for real-plane maps F: C -> C given by a lifted mixed
// polynomial. Zero sets here are polyanalytic, so roots are located by grid
// seeding and damped Newton on the real 2x2 system, then certified with
// winding numbers on small circles.

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "mixlink/mixed_poly.hpp"
#include "mixlink/simd/kernels.hpp"

namespace mixlink {

struct SolverOptions {
  int grid_resolution = 200;
  double newton_tol = 1e-12;
  int max_newton_steps = 50;
  double dedup_radius = 1e-6;
  double degenerate_threshold = 1e-8;
  double winding_radius = 1e-3;
};

/// Defaults adjusted by MIXLINK_PROFILE (fast | strict); unset or unknown
/// values give the plain defaults.
SolverOptions default_solver_options();

/// F(w) = f(lift(w)) - offset.
class PlanarMap {
 public:
  PlanarMap(MixedPolynomial f, simd::Lift lift, cplx offset = {0.0, 0.0});

  cplx value(cplx w) const;
  /// Wirtinger derivatives (dF/dw, dF/dwbar).
  std::pair<cplx, cplx> wirtinger(cplx w) const;
  /// Sum of term magnitudes at w; the yardstick for relative residuals.
  double scale(cplx w) const;
  double residual(cplx w) const;
  void values(std::span<const double> w_re, std::span<const double> w_im, std::span<double> out_re,
              std::span<double> out_im) const;

  PlanarMap shifted(cplx c) const;
  simd::Lift lift() const { return lift_; }
  const MixedPolynomial& polynomial() const { return f_; }

 private:
  C2 lifted(cplx w) const;

  MixedPolynomial f_;
  simd::CompiledTerms compiled_;
  simd::Lift lift_;
  cplx offset_;
};

struct Disk {
  cplx center{0.0, 0.0};
  double radius = 1.0;
};

struct WindingResult {
  int degree = 0;
  double min_modulus = 0.0;
  double max_modulus = 0.0;
};

/// Winding number of F around the circle |w - center| = radius. Samples are
/// refined adaptively until every argument increment is below pi/4.
/// Throws ZeroOnContour when min |F| on the circle is within 10x the noise
/// floor (1e-14 relative to max |F|).
WindingResult winding(const std::function<cplx(cplx)>& F, cplx center, double radius,
                      int samples = 128);

int local_degree(const std::function<cplx(cplx)>& F, cplx center, double radius,
                 int samples = 128);

struct PlanarRoot {
  cplx w;
  double residual = 0.0;
  int jacobian_degree = 0;  // sign of |F_w|^2 - |F_wbar|^2
  double condition = 0.0;   // smallest singular value of the real Jacobian / scale
};

struct RootCluster {
  cplx center;
  std::vector<PlanarRoot> members;
  int degree = 0;        // winding number around the cluster
  int multiplicity = 1;  // 1 for simple roots, perturbation count otherwise
  double condition = 0.0;
  double residual = 0.0;
  bool simple = true;
};

/// Newton-polished roots of F inside the disk, deduplicated but not clustered.
std::vector<PlanarRoot> find_roots(const PlanarMap& F, const Disk& domain,
                                   const SolverOptions& opts, int grid_resolution,
                                   std::span<const cplx> extra_seeds = {});

/// All roots of F in the disk, clustered and certified. The sum of cluster
/// degrees must match the winding number on the domain boundary; the grid is
/// refined twice before giving up with BudgetExceeded.
std::vector<RootCluster> solve_planar(const PlanarMap& F, const Disk& domain,
                                      const SolverOptions& opts,
                                      std::span<const cplx> extra_seeds = {});

PlanarRoot describe_root(const PlanarMap& F, cplx w);

}  // namespace mixlink
