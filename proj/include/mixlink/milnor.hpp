#pragma once

// Milnor fiber F = {z in S^3 : f(z) > 0}, its monodromy and Euler
// characteristic, both from the closed form and from measured fiber counts.

#include <cstdint>
#include <optional>
#include <vector>

#include "mixlink/mixed_poly.hpp"
#include "mixlink/orbit.hpp"

namespace mixlink {

/// True iff f(z) is real positive: |Im f| < 1e-10 (1 + |f|) and Re f > 0.
/// Throws NotOnSphere unless | |z| - 1 | < 1e-8.
bool fiber_membership(const MixedPolynomial& f, const C2& z);

/// h(z) = e^(2 pi i / dpq) o z.
C2 monodromy_apply(const WeightSystem& w, int d, const C2& z);

/// Smallest k >= 1 with h^k(z) = z (within 1e-9) for every given point.
int monodromy_order(const WeightSystem& w, int d, const std::vector<C2>& points);

/// Number of distinct points of F on the orbit of z0. Scans rho = e^(i phi)
/// at 8192 angles for sign changes of Im f(rho o z0) with Re f > 0, refines
/// each by bisection and merges points that coincide on the sphere, so axis
/// orbits (with nontrivial isotropy) are counted once per geometric point.
/// Throws OnLink when |f(z0)| is below 1e-12 times the local scale.
int measure_fiber_count(const MixedPolynomial& f, const WeightSystem& w, const C2& z0);

int chi_paper(int d, int r, int p, int q);
/// -(d + 2r) dpq + c1 + c2 with c1, c2 the axis fiber counts.
int chi_covering(int d, int r, int p, int q, int c1, int c2);

struct MilnorReport {
  int d = 0, r = 0, s = 0;
  int d_p = 0, d_r = 0;
  int monodromy_order = 0;
  int generic_fiber_count = 0;
  int axis1_fiber_count = 0;  // over the z2 = 0 orbit
  int axis2_fiber_count = 0;  // over the z1 = 0 orbit
  int chi_paper = 0;
  int chi_covering = 0;
  bool agree = false;
};

/// `r` is the number of negatively oriented components; pass it when known,
/// otherwise the link is solved to find it. Throws NotHomogeneous or
/// NotConvenient.
MilnorReport milnor_report(const MixedPolynomial& f, const WeightSystem& w,
                           std::optional<int> r = std::nullopt, std::uint64_t seed = 0x5eed);

struct TopologyEntry {
  int r = 0;
  int components = 0;
  int chi_paper = 0;
  int chi_covering = 0;
};

/// One entry per r = 0..s, each measured on a constructed polynomial with
/// d + r positive and r negative orbits and radial budget s.
std::vector<TopologyEntry> topology_enumeration(const WeightSystem& w, int d, int s);

/// d + r positive and r negative orbits evenly spaced on |u| = 1/2.
LinkConfiguration canonical_config(const WeightSystem& w, int d, int r);

}  // namespace mixlink
