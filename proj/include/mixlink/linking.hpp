#pragma once

// Gauss linking numbers of orbits after stereographic projection to R^3,
// and the holomorphic torus model z1^(qd) - z2^(pd).

#include <array>
#include <cstdint>
#include <vector>

#include "mixlink/mixed_poly.hpp"
#include "mixlink/orbit.hpp"

namespace mixlink {

using Vec3 = std::array<double, 3>;
using Vec4 = std::array<double, 4>;

Vec4 to_real(const C2& z);
C2 from_real(const Vec4& x);

/// Projection of the sphere of radius |pole| from `pole` onto the
/// hyperplane through 0 orthogonal to it, in an orthonormal basis (e1, e2, e3)
/// of that hyperplane chosen so that (n, e1, e2, e3) is positively oriented.
class Stereographic {
 public:
  /// Throws InvalidConfiguration for a zero pole.
  explicit Stereographic(const C2& pole);

  /// Throws AtPole when |z - pole| <= 1e-6.
  Vec3 project(const C2& z) const;
  C2 unproject(const Vec3& y) const;

  double radius() const { return radius_; }

 private:
  Vec4 n_{};
  std::array<Vec4, 3> basis_{};
  double radius_ = 1.0;
};

Vec3 stereographic_project(const C2& z, const C2& pole);
C2 stereographic_unproject(const Vec3& y, const C2& pole);

struct Polyline3 {
  std::vector<Vec3> points;
  bool closed = true;

  Polyline3 reversed() const;
};

/// Discretized Gauss integral over segment midpoints, divided by 4 pi.
/// Both curves are treated as closed. Throws CurvesTooClose when two
/// vertices are within 1e-3, TooFewSamples below 8 points.
double gauss_linking(const Polyline3& a, const Polyline3& b);

inline constexpr double kSnapTolerance = 0.05;
inline constexpr int kMaxLinkingSamples = 4096;

struct OrbitLinking {
  double value = 0.0;
  long snapped = 0;
  int samples = 0;  // per orbit, after auto-doubling
  C2 pole;
};

/// Samples both orbits (reversed for sign -1), projects from a pole at
/// distance > 0.2 from both, and doubles the sampling up to 4096 points per
/// orbit until the value is within 0.05 of an integer. Throws
/// InvalidConfiguration for equal ids, PoleSearchFailed, CurvesTooClose.
OrbitLinking orbit_linking(const WeightSystem& w, const OrientedOrbit& a, const OrientedOrbit& b,
                           int samples = 512, std::uint64_t seed = 0x5eed);

/// Pole search: the first of 64 seeded random points on the unit sphere
/// whose distance to every given point exceeds 0.2.
C2 find_pole(const std::vector<std::vector<C2>>& curves, std::uint64_t seed);

/// Projected polyline of an oriented orbit.
Polyline3 project_orbit(const WeightSystem& w, const OrientedOrbit& o, int samples,
                        const Stereographic& proj);

/// z1^(qd) - z2^(pd).
MixedPolynomial torus_model(const WeightSystem& w, int d);

}  // namespace mixlink
