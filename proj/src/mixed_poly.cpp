#include "mixlink/mixed_poly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

namespace mixlink {

WeightSystem::WeightSystem(int p, int q) : p_(p), q_(q) {
  if (p <= 0 || q <= 0 || std::gcd(p, q) != 1) {
    throw Error(ErrorCode::InvalidWeights,
                "weights must be coprime positive integers, got (" + std::to_string(p) + "," +
                    std::to_string(q) + ")");
  }
}

cplx ipow(cplx z, int n) {
  if (n < 0) return 1.0 / ipow(z, -n);
  cplx result{1.0, 0.0};
  cplx base = z;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

double ipow(double x, int n) {
  if (n < 0) return 1.0 / ipow(x, -n);
  double result = 1.0;
  double base = x;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

MixedPolynomial canonicalize(std::vector<MixedTerm> raw_terms) {
  struct Acc {
    cplx sum{0.0, 0.0};
    double magnitude = 0.0;
  };
  std::map<Monomial, Acc> merged;
  for (const auto& t : raw_terms) {
    for (int v : {t.mono.nu[0], t.mono.nu[1], t.mono.mu[0], t.mono.mu[1]}) {
      if (v < 0) throw Error(ErrorCode::SyntaxError, "negative exponent");
    }
    auto& acc = merged[t.mono];
    acc.sum += t.coeff;
    acc.magnitude += std::abs(t.coeff);
  }
  MixedPolynomial out;
  out.terms_.reserve(merged.size());
  for (const auto& [mono, acc] : merged) {
    const double mag = std::abs(acc.sum);
    if (mag == 0.0 || mag < kZeroCoefficient * acc.magnitude) continue;
    out.terms_.push_back({acc.sum, mono});
  }
  return out;
}

cplx MixedPolynomial::coeff(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const MixedTerm& t, const Monomial& key) { return t.mono < key; });
  if (it != terms_.end() && it->mono == m) return it->coeff;
  return {0.0, 0.0};
}

int MixedPolynomial::max_exponent() const {
  int m = 0;
  for (const auto& t : terms_) {
    m = std::max({m, t.mono.nu[0], t.mono.nu[1], t.mono.mu[0], t.mono.mu[1]});
  }
  return m;
}

MixedPolynomial MixedPolynomial::monomial(cplx coeff, int nu1, int nu2, int mu1, int mu2) {
  return canonicalize({{coeff, Monomial{{nu1, nu2}, {mu1, mu2}}}});
}

MixedPolynomial MixedPolynomial::constant(cplx c) { return monomial(c, 0, 0, 0, 0); }

cplx MixedPolynomial::operator()(const C2& z) const { return evaluate(*this, z); }

MixedPolynomial operator*(const MixedPolynomial& a, const MixedPolynomial& b) {
  std::vector<MixedTerm> raw;
  raw.reserve(a.size() * b.size());
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      raw.push_back({s.coeff * t.coeff,
                     Monomial{{s.mono.nu[0] + t.mono.nu[0], s.mono.nu[1] + t.mono.nu[1]},
                              {s.mono.mu[0] + t.mono.mu[0], s.mono.mu[1] + t.mono.mu[1]}}});
    }
  }
  return canonicalize(std::move(raw));
}

MixedPolynomial operator+(const MixedPolynomial& a, const MixedPolynomial& b) {
  std::vector<MixedTerm> raw = a.terms_;
  raw.insert(raw.end(), b.terms_.begin(), b.terms_.end());
  return canonicalize(std::move(raw));
}

MixedPolynomial operator-(const MixedPolynomial& a, const MixedPolynomial& b) {
  return a + cplx{-1.0, 0.0} * b;
}

MixedPolynomial operator*(cplx c, const MixedPolynomial& a) {
  std::vector<MixedTerm> raw = a.terms_;
  for (auto& t : raw) t.coeff *= c;
  return canonicalize(std::move(raw));
}

bool operator==(const MixedPolynomial& a, const MixedPolynomial& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff) {
      return false;
    }
  }
  return true;
}

namespace {

cplx monomial_value(const Monomial& m, const C2& z) {
  return ipow(z.z1, m.nu[0]) * ipow(z.z2, m.nu[1]) * ipow(std::conj(z.z1), m.mu[0]) *
         ipow(std::conj(z.z2), m.mu[1]);
}

}  // namespace

cplx evaluate(const MixedPolynomial& f, const C2& z) {
  cplx sum{0.0, 0.0};
  for (const auto& t : f.terms()) sum += t.coeff * monomial_value(t.mono, z);
  return sum;
}

MixedPolynomial conjugate_poly(const MixedPolynomial& f) {
  std::vector<MixedTerm> raw;
  raw.reserve(f.size());
  for (const auto& t : f.terms()) {
    raw.push_back({std::conj(t.coeff), Monomial{t.mono.mu, t.mono.nu}});
  }
  return canonicalize(std::move(raw));
}

WirtingerGradient wirtinger_gradient(const MixedPolynomial& f, const C2& z) {
  WirtingerGradient g{};
  const cplx zb1 = std::conj(z.z1);
  const cplx zb2 = std::conj(z.z2);
  for (const auto& t : f.terms()) {
    const auto [a1, a2] = t.mono.nu;
    const auto [b1, b2] = t.mono.mu;
    const cplx p1 = ipow(z.z1, a1), p2 = ipow(z.z2, a2);
    const cplx q1 = ipow(zb1, b1), q2 = ipow(zb2, b2);
    if (a1 > 0) g.dz1 += t.coeff * double(a1) * ipow(z.z1, a1 - 1) * p2 * q1 * q2;
    if (b1 > 0) g.dzb1 += t.coeff * double(b1) * p1 * p2 * ipow(zb1, b1 - 1) * q2;
    if (a2 > 0) g.dz2 += t.coeff * double(a2) * p1 * ipow(z.z2, a2 - 1) * q1 * q2;
    if (b2 > 0) g.dzb2 += t.coeff * double(b2) * p1 * p2 * q1 * ipow(zb2, b2 - 1);
  }
  return g;
}

DegreeReport degree_report(const MixedPolynomial& f, const WeightSystem& w) {
  if (f.empty()) throw Error(ErrorCode::EmptyPolynomial, "degree_report of the zero polynomial");
  const int p = w.p(), q = w.q();
  DegreeReport rep;
  std::optional<int> radial, polar;
  bool radial_ok = true, polar_ok = true;
  for (const auto& t : f.terms()) {
    const auto& m = t.mono;
    const int rd = p * (m.nu[0] + m.mu[0]) + q * (m.nu[1] + m.mu[1]);
    const int pd = p * (m.nu[0] - m.mu[0]) + q * (m.nu[1] - m.mu[1]);
    if (!radial) radial = rd;
    else if (*radial != rd) radial_ok = false;
    if (!polar) polar = pd;
    else if (*polar != pd) polar_ok = false;
    const bool pure_z1 = m.nu[1] == 0 && m.mu[1] == 0 && (m.nu[0] + m.mu[0]) > 0;
    const bool pure_z2 = m.nu[0] == 0 && m.mu[0] == 0 && (m.nu[1] + m.mu[1]) > 0;
    if (pure_z1 && !rep.witness_z1) rep.witness_z1 = std::pair{m.nu[0], m.mu[0]};
    if (pure_z2 && !rep.witness_z2) rep.witness_z2 = std::pair{m.nu[1], m.mu[1]};
  }
  rep.is_radial_homogeneous = radial_ok;
  rep.is_polar_homogeneous = polar_ok;
  if (radial_ok) rep.radial_degree = radial;
  if (polar_ok) rep.polar_degree = polar;
  // Radial and polar weights are both (p, q) here.
  rep.is_strongly_polar = true;
  rep.is_convenient = rep.witness_z1.has_value() && rep.witness_z2.has_value();
  if (rep.strongly_polar_homogeneous() && rep.is_convenient) {
    const int pq = w.pq();
    if (*rep.polar_degree % pq == 0 && *rep.radial_degree % pq == 0) {
      const int d = *rep.polar_degree / pq;
      const int total = *rep.radial_degree / pq;
      if ((total - d) % 2 == 0) {
        rep.d = d;
        rep.s = (total - d) / 2;
      }
    }
  }
  return rep;
}

C2 apply_action(const C2& z, double r, cplx eta, const WeightSystem& w) {
  if (std::abs(std::abs(eta) - 1.0) > 1e-12) {
    throw Error(ErrorCode::NonUnitArgument, "eta must lie on the unit circle");
  }
  if (!(r > 0.0)) throw Error(ErrorCode::NonUnitArgument, "r must be positive");
  const cplx zeta1 = ipow(r, w.p()) * ipow(eta, w.p());
  const cplx zeta2 = ipow(r, w.q()) * ipow(eta, w.q());
  return {zeta1 * z.z1, zeta2 * z.z2};
}

double verify_equivariance(const MixedPolynomial& f, const WeightSystem& w, int samples,
                           std::uint64_t seed) {
  const auto rep = degree_report(f, w);
  if (!rep.strongly_polar_homogeneous()) {
    throw Error(ErrorCode::NotHomogeneous, "polynomial is not strongly polar weighted homogeneous");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto disk_point = [&] {
    const double rad = std::sqrt(unit(rng));
    return std::polar(rad, 2.0 * std::numbers::pi * unit(rng));
  };
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const C2 z{disk_point(), disk_point()};
    const double r = 0.5 + 0.5 * unit(rng);
    const cplx eta = std::polar(1.0, 2.0 * std::numbers::pi * unit(rng));
    const cplx lhs = evaluate(f, apply_action(z, r, eta, w));
    const cplx rhs = ipow(r, *rep.radial_degree) * ipow(eta, *rep.polar_degree) * evaluate(f, z);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

}  // namespace mixlink
