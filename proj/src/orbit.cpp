#include "mixlink/orbit.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace mixlink {

bool OrbitId::in_punctured_disk() const {
  const double m = std::abs(u_);
  return m > 0.0 && m < 1.0;
}

double OrbitId::radius(const WeightSystem& w) const {
  if (!in_punctured_disk()) {
    throw Error(ErrorCode::InvalidConfiguration, "orbit id must lie in the punctured unit disk");
  }
  return std::pow(std::abs(u_), 1.0 / w.p());
}

double OrbitId::theta() const {
  double th = std::arg(u_);
  if (th < 0.0) th += 2.0 * std::numbers::pi;
  return th;
}

int LinkConfiguration::n_pos() const {
  int n = 0;
  for (const auto& o : orbits) n += o.sign > 0 ? 1 : 0;
  return n;
}

int LinkConfiguration::n_neg() const {
  int n = 0;
  for (const auto& o : orbits) n += o.sign < 0 ? 1 : 0;
  return n;
}

double LinkConfiguration::min_separation() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    for (std::size_t j = i + 1; j < orbits.size(); ++j) {
      best = std::min(best, std::abs(orbits[i].id.value() - orbits[j].id.value()));
    }
  }
  return best;
}

C2 orbit_point(const WeightSystem& w, const OrbitId& u, cplx rho) {
  if (std::abs(std::abs(rho) - 1.0) > 1e-12) {
    throw Error(ErrorCode::NonUnitArgument, "rho must lie on the unit circle");
  }
  const double r = u.radius(w);
  const cplx base2 = std::polar(r, u.theta() / w.p());
  return {ipow(rho, w.p()) * std::sqrt(1.0 - r * r), ipow(rho, w.q()) * base2};
}

std::vector<C2> sample_orbit(const WeightSystem& w, const OrbitId& u, int n) {
  if (n < 3) throw Error(ErrorCode::TooFewSamples, "an orbit needs at least 3 samples");
  std::vector<C2> pts;
  pts.reserve(n);
  for (int k = 0; k < n; ++k) {
    pts.push_back(orbit_point(w, u, std::polar(1.0, 2.0 * std::numbers::pi * k / n)));
  }
  return pts;
}

cplx alpha_coeff(const WeightSystem& w, const OrbitId& u, int k) {
  const double r = u.radius(w);
  const double num = std::pow(1.0 - r * r, w.q() * (0.5 + k));
  const double den = std::pow(r, w.p() * (1 + 2 * k));
  return std::polar(num / den, -u.theta());
}

MixedPolynomial ell(const WeightSystem& w, const OrbitId& u, int k) {
  const int p = w.p(), q = w.q();
  const cplx a = alpha_coeff(w, u, k);
  return canonicalize({{cplx{1.0, 0.0}, Monomial{{q + k * q, 0}, {k * q, 0}}},
                       {-a, Monomial{{0, p + k * p}, {0, k * p}}}});
}

MixedPolynomial ell_bar(const WeightSystem& w, const OrbitId& u, int k) {
  return conjugate_poly(ell(w, u, k));
}

MixedPolynomial defining_polynomial(const LinkConfiguration& config, int s,
                                    std::optional<std::size_t> budget_orbit) {
  const auto report = validate_config(config);
  if (!report.ok()) {
    throw Error(ErrorCode::InvalidConfiguration, report.violations.front().detail);
  }
  const int r = config.r();
  if (s < r) {
    throw Error(ErrorCode::RadialBudgetTooSmall,
                "s = " + std::to_string(s) + " is below r = " + std::to_string(r));
  }
  std::size_t budget = config.orbits.size();
  if (budget_orbit) {
    budget = *budget_orbit;
    if (budget >= config.orbits.size() || config.orbits[budget].sign < 0) {
      throw Error(ErrorCode::InvalidConfiguration, "budget orbit must be a positive orbit");
    }
  } else {
    for (std::size_t i = 0; i < config.orbits.size(); ++i) {
      if (config.orbits[i].sign > 0) {
        budget = i;
        break;
      }
    }
  }
  MixedPolynomial g = MixedPolynomial::constant(1.0);
  for (std::size_t i = 0; i < config.orbits.size(); ++i) {
    const auto& o = config.orbits[i];
    if (o.sign > 0) {
      g = g * ell(config.weights, o.id, i == budget ? s - r : 0);
    } else {
      g = g * ell_bar(config.weights, o.id, 0);
    }
  }
  return g;
}

ValidationReport validate_config(const LinkConfiguration& config, double min_separation) {
  ValidationReport rep;
  rep.min_separation = config.min_separation();
  const auto& orbits = config.orbits;
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    if (!orbits[i].id.in_punctured_disk()) {
      rep.violations.push_back({ConfigViolation::Kind::OutsideDisk,
                                "orbit " + std::to_string(i) + " lies outside the punctured disk"});
    }
    for (std::size_t j = i + 1; j < orbits.size(); ++j) {
      if (std::abs(orbits[i].id.value() - orbits[j].id.value()) < min_separation) {
        rep.violations.push_back({ConfigViolation::Kind::Duplicate,
                                  "orbits " + std::to_string(i) + " and " + std::to_string(j) +
                                      " coincide within the separation threshold"});
      }
    }
  }
  if (config.d() < 1) {
    rep.violations.push_back({ConfigViolation::Kind::NonPositiveD,
                              "d = n_pos - n_neg = " + std::to_string(config.d()) + " < 1"});
  }
  return rep;
}

}  // namespace mixlink
