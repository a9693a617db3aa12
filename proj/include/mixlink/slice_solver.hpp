#pragma once

#include <vector>

#include "mixlink/mixed_poly.hpp"
#include "mixlink/orbit.hpp"
#include "mixlink/planar_roots.hpp"

namespace mixlink {

/// One component (orbit) of a solved link.
struct LinkSolution {
  cplx u;        // orbit id beta2^p in the punctured disk
  cplx u_chart;  // chart coordinate z2^p / z1^q of the same orbit
  int degree = 0;
  int multiplicity = 1;
  double residual = 0.0;
  double condition = 0.0;
  bool simple = true;
};

/// Numeric realization of L = f^-1(0) on S^3, sorted by (Re u, Im u).
/// For a clustered (non-simple) solution `degree` is the total winding
/// number of the cluster, so signed_total is the plain sum of degrees.
struct LinkReport {
  WeightSystem weights{1, 1};
  std::vector<LinkSolution> solutions;
  int n_pos = 0;
  int n_neg = 0;
  int signed_total = 0;
  bool degenerate = false;

  int components() const { return static_cast<int>(solutions.size()); }
};

/// Roots beta2 of F(beta2) = f(sqrt(1 - |beta2|^2), beta2) in the unit disk,
/// grouped into p-tuples under beta2 -> beta2 e^(2 pi i / p), one per orbit.
/// Throws NotHomogeneous, NotConvenient or BudgetExceeded (also for partial
/// p-tuples).
LinkReport solve_link(const MixedPolynomial& f, const WeightSystem& w,
                      const SolverOptions& opts = default_solver_options());

/// Orbit id of the orbit with chart coordinate u_chart = z2^p / z1^q.
/// Solves t^p / (1 - t^2)^(q/2) = |u_chart| for t in (0, 1) by bisection.
OrbitId chart_to_orbit(const WeightSystem& w, cplx u_chart);
cplx orbit_to_chart(const WeightSystem& w, cplx u);

struct SignedCountCheck {
  bool pass = false;
  int signed_total = 0;
  int expected = 0;  // d_p / pq
};

SignedCountCheck signed_count(const LinkReport& report, const WeightSystem& w,
                              const MixedPolynomial& f);

}  // namespace mixlink
