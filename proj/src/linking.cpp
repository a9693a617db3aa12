#include "mixlink/linking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "mixlink/error.hpp"
#include "mixlink/simd/kernels.hpp"

namespace mixlink {

namespace {

double dot4(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

double c2_distance(const C2& a, const C2& b) {
  return std::sqrt(std::norm(a.z1 - b.z1) + std::norm(a.z2 - b.z2));
}

// The raw Gauss sum has the opposite sign to the complex orientation of
// S^3 under our projection; flipping here makes two Hopf fibers link +1.
constexpr double kOrientation = -1.0;

}  // namespace

Vec4 to_real(const C2& z) { return {z.z1.real(), z.z1.imag(), z.z2.real(), z.z2.imag()}; }
C2 from_real(const Vec4& x) { return {cplx{x[0], x[1]}, cplx{x[2], x[3]}}; }

Stereographic::Stereographic(const C2& pole) {
  radius_ = std::sqrt(pole.norm2());
  if (!(radius_ > 0.0)) throw Error(ErrorCode::InvalidConfiguration, "pole must be nonzero");
  n_ = to_real(pole);
  for (auto& v : n_) v /= radius_;
  // Gram-Schmidt on the standard basis, skipping the most parallel vector.
  std::size_t skip = 0;
  for (std::size_t i = 1; i < 4; ++i) {
    if (std::abs(n_[i]) > std::abs(n_[skip])) skip = i;
  }
  std::vector<Vec4> frame{n_};
  for (std::size_t i = 0; i < 4; ++i) {
    if (i == skip) continue;
    Vec4 v{};
    v[i] = 1.0;
    for (const auto& f : frame) {
      const double c = dot4(v, f);
      for (int k = 0; k < 4; ++k) v[k] -= c * f[k];
    }
    const double len = std::sqrt(dot4(v, v));
    for (auto& x : v) x /= len;
    frame.push_back(v);
  }
  Eigen::Matrix4d m;
  for (int c = 0; c < 4; ++c) {
    for (int r = 0; r < 4; ++r) m(r, c) = frame[c][r];
  }
  if (m.determinant() < 0.0) {
    for (auto& x : frame[3]) x = -x;
  }
  basis_ = {frame[1], frame[2], frame[3]};
}

Vec3 Stereographic::project(const C2& z) const {
  const Vec4 x = to_real(z);
  const double h = dot4(x, n_);
  Vec4 diff{};
  for (int k = 0; k < 4; ++k) diff[k] = x[k] - radius_ * n_[k];
  if (std::sqrt(dot4(diff, diff)) <= 1e-6) {
    throw Error(ErrorCode::AtPole, "point coincides with the projection pole");
  }
  const double scale = radius_ / (radius_ - h);
  return {scale * dot4(x, basis_[0]), scale * dot4(x, basis_[1]), scale * dot4(x, basis_[2])};
}

C2 Stereographic::unproject(const Vec3& y) const {
  const double y2 = y[0] * y[0] + y[1] * y[1] + y[2] * y[2];
  const double r2 = radius_ * radius_;
  const double denom = y2 + r2;
  Vec4 x{};
  for (int k = 0; k < 4; ++k) {
    const double tangent = y[0] * basis_[0][k] + y[1] * basis_[1][k] + y[2] * basis_[2][k];
    x[k] = (2.0 * r2 * tangent + (y2 - r2) * radius_ * n_[k]) / denom;
  }
  return from_real(x);
}

Vec3 stereographic_project(const C2& z, const C2& pole) { return Stereographic(pole).project(z); }
C2 stereographic_unproject(const Vec3& y, const C2& pole) {
  return Stereographic(pole).unproject(y);
}

Polyline3 Polyline3::reversed() const {
  Polyline3 out{{points.rbegin(), points.rend()}, closed};
  return out;
}

namespace {

simd::SegmentSoA segments(const Polyline3& c) {
  simd::SegmentSoA s;
  const std::size_t n = c.points.size();
  for (auto* v : {&s.mx, &s.my, &s.mz, &s.dx, &s.dy, &s.dz}) v->resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3& a = c.points[i];
    const Vec3& b = c.points[(i + 1) % n];
    s.mx[i] = 0.5 * (a[0] + b[0]);
    s.my[i] = 0.5 * (a[1] + b[1]);
    s.mz[i] = 0.5 * (a[2] + b[2]);
    s.dx[i] = b[0] - a[0];
    s.dy[i] = b[1] - a[1];
    s.dz[i] = b[2] - a[2];
  }
  return s;
}

}  // namespace

double gauss_linking(const Polyline3& a, const Polyline3& b) {
  if (a.points.size() < 8 || b.points.size() < 8) {
    throw Error(ErrorCode::TooFewSamples, "polylines need at least 8 points");
  }
  double min_d2 = std::numeric_limits<double>::infinity();
  for (const auto& x : a.points) {
    for (const auto& y : b.points) {
      const double dx = x[0] - y[0], dy = x[1] - y[1], dz = x[2] - y[2];
      min_d2 = std::min(min_d2, dx * dx + dy * dy + dz * dz);
    }
  }
  if (min_d2 <= 1e-6) throw Error(ErrorCode::CurvesTooClose, "curves come within 1e-3");
  return kOrientation * simd::gauss_linking_sum(segments(a), segments(b)) /
         (4.0 * std::numbers::pi);
}

C2 find_pole(const std::vector<std::vector<C2>>& curves, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Vec4 x{gauss(rng), gauss(rng), gauss(rng), gauss(rng)};
    const double len = std::sqrt(dot4(x, x));
    for (auto& v : x) v /= len;
    const C2 pole = from_real(x);
    bool clear = true;
    for (const auto& c : curves) {
      for (const auto& z : c) {
        if (c2_distance(z, pole) <= 0.2) {
          clear = false;
          break;
        }
      }
      if (!clear) break;
    }
    if (clear) return pole;
  }
  throw Error(ErrorCode::PoleSearchFailed, "no pole at distance > 0.2 from the curves");
}

Polyline3 project_orbit(const WeightSystem& w, const OrientedOrbit& o, int samples,
                        const Stereographic& proj) {
  Polyline3 line;
  for (const auto& z : sample_orbit(w, o.id, samples)) line.points.push_back(proj.project(z));
  return o.sign < 0 ? line.reversed() : line;
}

OrbitLinking orbit_linking(const WeightSystem& w, const OrientedOrbit& a, const OrientedOrbit& b,
                           int samples, std::uint64_t seed) {
  if (a.id.value() == b.id.value()) {
    throw Error(ErrorCode::InvalidConfiguration, "orbits must be distinct");
  }
  samples = std::max(samples, 8);
  OrbitLinking out;
  // The pole is chosen once at the finest sampling so it stays fixed while
  // the sampling is refined.
  out.pole = find_pole({sample_orbit(w, a.id, kMaxLinkingSamples),
                        sample_orbit(w, b.id, kMaxLinkingSamples)},
                       seed);
  const Stereographic proj(out.pole);
  for (int n = samples;; n *= 2) {
    out.samples = n;
    out.value = gauss_linking(project_orbit(w, a, n, proj), project_orbit(w, b, n, proj));
    out.snapped = std::lround(out.value);
    if (std::abs(out.value - out.snapped) < kSnapTolerance || n * 2 > kMaxLinkingSamples) break;
  }
  return out;
}

MixedPolynomial torus_model(const WeightSystem& w, int d) {
  if (d < 1) throw Error(ErrorCode::InvalidConfiguration, "torus model needs d >= 1");
  return MixedPolynomial::monomial(1.0, w.q() * d, 0, 0, 0) -
         MixedPolynomial::monomial(1.0, 0, w.p() * d, 0, 0);
}

}  // namespace mixlink
