#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mixlink/mixed_poly.hpp"

namespace mixlink {

/// Identifier u = beta2^p in the punctured unit disk of a regular orbit whose
/// representative (beta1, beta2) has beta1 real positive.
class OrbitId {
 public:
  /// Unchecked so that configurations can be built and then validated;
  /// operations that need u in the punctured disk throw InvalidConfiguration.
  explicit OrbitId(cplx u) : u_(u) {}

  bool in_punctured_disk() const;

  cplx value() const { return u_; }
  /// r = |u|^(1/p), the modulus of beta2.
  double radius(const WeightSystem& w) const;
  /// theta = arg u taken in [0, 2 pi).
  double theta() const;

 private:
  cplx u_;
};

struct OrientedOrbit {
  OrbitId id;
  int sign = 1;  // +1 or -1
};

struct LinkConfiguration {
  WeightSystem weights;
  std::vector<OrientedOrbit> orbits;

  int n_pos() const;
  int n_neg() const;
  int d() const { return n_pos() - n_neg(); }
  int r() const { return n_neg(); }
  /// Smallest pairwise |u_i - u_j|, +inf with fewer than two orbits.
  double min_separation() const;
};

inline constexpr double kDefaultMinSeparation = 1e-3;

struct ConfigViolation {
  enum class Kind { Duplicate, OutsideDisk, NonPositiveD } kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<ConfigViolation> violations;
  double min_separation = 0.0;
  bool ok() const { return violations.empty(); }
};

/// Point (rho^p sqrt(1 - r^2), rho^q r e^(i theta / p)) of the orbit K(u).
/// Throws NonUnitArgument for |rho| != 1.
C2 orbit_point(const WeightSystem& w, const OrbitId& u, cplx rho);

/// n points of K(u) at rho = e^(2 pi i k / n), k = 0..n-1. The increasing-k
/// order is the positive orientation. Throws TooFewSamples for n < 3.
std::vector<C2> sample_orbit(const WeightSystem& w, const OrbitId& u, int n);

/// alpha_{u,k} = (1 - r^2)^(q (1/2 + k)) / (r^(p (1 + 2k)) e^(i theta)).
cplx alpha_coeff(const WeightSystem& w, const OrbitId& u, int k);

/// ell_{u,k} = z1^(q + kq) zb1^(kq) - alpha_{u,k} z2^(p + kp) zb2^(kp).
MixedPolynomial ell(const WeightSystem& w, const OrbitId& u, int k = 0);
MixedPolynomial ell_bar(const WeightSystem& w, const OrbitId& u, int k = 0);

/// Product of one ell_{u,s-r} (on the orbit at `budget_orbit`, default the
/// first positive one), plain ell for the other positive orbits and ell_bar
/// for the negative ones. Polar degree d pq, radial degree (d + 2s) pq.
/// Throws RadialBudgetTooSmall when s < r, InvalidConfiguration for an
/// invalid configuration or a budget orbit that is not positive.
MixedPolynomial defining_polynomial(const LinkConfiguration& config, int s,
                                    std::optional<std::size_t> budget_orbit = std::nullopt);

ValidationReport validate_config(const LinkConfiguration& config,
                                 double min_separation = kDefaultMinSeparation);

}  // namespace mixlink
