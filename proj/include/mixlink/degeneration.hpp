#pragma once

// The model degeneration family
//   f_t = -2 z2^(2p) zb2^p + z1^(2q) zb1^q + t z2^(2p) zb1^q,
// its chart equation -2 u^2 ubar + t u^2 + 1 = 0, the degeneration locus
// Sigma = {(2s - 1) / s^2 : |s| = 1}, sweeps across Sigma and the
// constructive pair-elimination pipeline.

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mixlink/mixed_poly.hpp"
#include "mixlink/orbit.hpp"
#include "mixlink/planar_roots.hpp"
#include "mixlink/slice_solver.hpp"

namespace mixlink {

/// f_t = base + t * slope.
struct LinearFamily {
  MixedPolynomial base;
  MixedPolynomial slope;

  MixedPolynomial at(cplx t) const;
};

LinearFamily model_family(const WeightSystem& w);
MixedPolynomial family_poly(const WeightSystem& w, cplx t);

/// -2 |u|^2 u + t u^2 + 1.
cplx chart_eval(cplx t, cplx u);
/// Real Jacobian of chart_eval(t, .) as a map of the plane, row-major
/// [[dRe/dx, dRe/dy], [dIm/dx, dIm/dy]].
std::array<std::array<double, 2>, 2> chart_jacobian(cplx t, cplx u);
/// chart_eval(t, .) as a polynomial in z2 (z1 fixed to 1).
MixedPolynomial chart_poly(cplx t);

struct ChartRoot {
  cplx u;
  int degree = 0;
  int multiplicity = 1;
  bool simple = true;
  double residual = 0.0;
  std::vector<PlanarRoot> members;
};

/// Disk radius max(1, |t|) + 0.5: any root has |u| <= max(1, |t|).
double chart_search_radius(cplx t);

/// All chart roots for parameter t, sorted by (Re u, Im u).
std::vector<ChartRoot> solve_chart(cplx t, const SolverOptions& opts = default_solver_options(),
                                   std::span<const cplx> extra_seeds = {});
/// Roots counted with multiplicity.
int chart_count(const std::vector<ChartRoot>& roots);

/// t(theta) = (2 e^(i theta) - 1) e^(-2 i theta).
cplx sigma_point(double theta);

struct SigmaSample {
  double theta;
  cplx t;
};

struct SigmaCurve {
  std::vector<SigmaSample> samples;
  bool closed = true;
};

/// n samples at theta_k = 2 pi k / n. Throws TooFewSamples for n < 16.
SigmaCurve trace_sigma(int n);

enum class Region { Inside, Outside, OnCurve };
std::string_view to_string(Region r);

/// OnCurve within `tol` of the closed polyline, otherwise by winding number.
/// Throws TooFewSamples for curves with fewer than 1024 samples.
Region classify_region(cplx t, const SigmaCurve& curve, double tol);

struct SmoothnessReport {
  // Rows dg, dh, drho in the basis dz1, dzb1, dz2, dzb2, dt.
  std::array<std::array<cplx, 5>, 3> matrix{};
  std::array<double, 3> singular_values{};
  int rank = 0;
  double radius = 1.0;
};

/// Rank of [dg; dh; drho] at (z, t) for f = g + i h, rho = |z|^2. The dt
/// column is the derivative along the real direction `direction` of the
/// parameter. Throws NotOnSphere / NotOnVariety (tolerance 1e-8).
SmoothnessReport rank_check(const LinearFamily& family, const C2& z, cplx t, double radius,
                            cplx direction = {1.0, 0.0});
/// Same for a parameter-free polynomial (zero dt column).
SmoothnessReport rank_check(const MixedPolynomial& f, const C2& z, cplx t, double radius);

/// Point (x, y e^(i arg(u) / p)) on the sphere of the given radius, x > 0,
/// with chart coordinate z2^p / z1^q = u_chart.
C2 lift_chart_point(const WeightSystem& w, cplx u_chart, double radius);

struct MergingRoot {
  cplx u;
  int degree = 0;
};

struct SweepEvent {
  enum class Kind { PairElimination, PairCreation } kind = Kind::PairElimination;
  cplx t_star;
  std::array<MergingRoot, 2> merging_roots{};
  cplx collision_point;
  C2 certificate_point;
  SmoothnessReport certificate;
  int count_before = 0;
  int count_after = 0;
};

std::string_view to_string(SweepEvent::Kind k);

struct SweepResult {
  std::vector<cplx> path;
  std::vector<int> counts;         // chart roots with multiplicity
  std::vector<int> signed_totals;  // sum of degrees
  std::vector<std::vector<ChartRoot>> roots;
  std::vector<SweepEvent> events;
};

/// steps + 1 equally spaced points from `from` to `to`.
std::vector<cplx> linear_path(cplx from, cplx to, int steps);

/// Solves the chart along the path; every change of the root count is
/// located by bisection (|dt| < 1e-6) and then refined to the fold point.
/// Throws TangentialCrossing for count changes other than +-2 or crossings
/// within 1e-2 of the cusp t = 1.
SweepResult sweep(const WeightSystem& w, std::span<const cplx> t_path,
                  const SolverOptions& opts = default_solver_options(),
                  double certificate_radius = 1.0);

// Pair elimination ---------------------------------------------------------

struct EliminationTriple {
  std::size_t positive_a;
  std::size_t positive_b;
  std::size_t negative;
};

struct IsotopyMove {
  std::size_t orbit;
  std::vector<cplx> waypoints;
};

struct EliminationOptions {
  cplx t_out{-3.5, 0.0};
  cplx t_in{-2.5, 0.0};
  int sweep_steps = 100;
  double certificate_radius = 1.0;
};

inline constexpr double kIsotopyClearance = 1e-3;
inline constexpr double kIsotopyDetour = 2e-3;

struct EliminationFamily {
  WeightSystem weights{1, 1};
  LinkConfiguration start{WeightSystem{1, 1}, {}};
  EliminationTriple triple{};
  EliminationOptions options;
  std::vector<IsotopyMove> schedule;
  LinkConfiguration moved{WeightSystem{1, 1}, {}};
  std::vector<std::size_t> remaining;
  MixedPolynomial remaining_product;
  LinearFamily family;  // model family times the remaining factors

  MixedPolynomial at(cplx t) const { return family.at(t); }
  /// Configuration along the isotopy, tau in [0, 1].
  LinkConfiguration config_at(double tau) const;
};

/// Throws NoNegativeOrbit, InvalidConfiguration (no two positive orbits or
/// an invalid triple) or IsotopyBlocked.
EliminationFamily elimination_family(const LinkConfiguration& config,
                                     std::optional<EliminationTriple> triple = std::nullopt,
                                     const EliminationOptions& options = {},
                                     const SolverOptions& solver = default_solver_options());

struct EliminationResult {
  EliminationFamily family;
  LinkReport start_report;
  LinkReport isotopy_end_report;
  SweepResult sweep;
  LinkReport final_report;
  double min_remaining_modulus = 0.0;
  LinkConfiguration final_config{WeightSystem{1, 1}, {}};
};

EliminationResult run_elimination(const LinkConfiguration& config,
                                  std::optional<EliminationTriple> triple = std::nullopt,
                                  const EliminationOptions& options = {},
                                  const SolverOptions& solver = default_solver_options());

struct PositivizationResult {
  std::vector<EliminationResult> stages;
  LinkReport final_report;
  LinkConfiguration final_config{WeightSystem{1, 1}, {}};
};

/// Eliminates pairs until no negative orbit is left.
PositivizationResult eliminate_all(const LinkConfiguration& config,
                                   const EliminationOptions& options = {},
                                   const SolverOptions& solver = default_solver_options());

}  // namespace mixlink
