#pragma once

#include <array>
#include <complex>
#include <compare>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mixlink/error.hpp"

namespace mixlink {

using cplx = std::complex<double>;

/// A point (z1, z2) of C^2.
struct C2 {
  cplx z1;
  cplx z2;

  double norm2() const { return std::norm(z1) + std::norm(z2); }
};

/// Exponent key of a monomial z1^nu1 z2^nu2 zb1^mu1 zb2^mu2.
struct Monomial {
  std::array<int, 2> nu{0, 0};
  std::array<int, 2> mu{0, 0};

  // Lexicographic on (nu1, nu2, mu1, mu2).
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

struct MixedTerm {
  cplx coeff;
  Monomial mono;
};

/// Coprime positive weights P = (p, q) of the circle action
/// (z1, z2) -> (z1 rho^p, z2 rho^q).
class WeightSystem {
 public:
  WeightSystem(int p, int q);

  int p() const { return p_; }
  int q() const { return q_; }
  int pq() const { return p_ * q_; }

  friend bool operator==(const WeightSystem&, const WeightSystem&) = default;

 private:
  int p_;
  int q_;
};

/// Sparse mixed polynomial in (z1, z2, zb1, zb2). Terms are kept canonical:
/// distinct monomials, sorted lexicographically, no zero coefficients.
class MixedPolynomial {
 public:
  MixedPolynomial() = default;

  const std::vector<MixedTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Coefficient of the given monomial, zero when absent.
  cplx coeff(const Monomial& m) const;
  int max_exponent() const;

  cplx operator()(const C2& z) const;

  friend MixedPolynomial operator*(const MixedPolynomial& a, const MixedPolynomial& b);
  friend MixedPolynomial operator+(const MixedPolynomial& a, const MixedPolynomial& b);
  friend MixedPolynomial operator-(const MixedPolynomial& a, const MixedPolynomial& b);
  friend MixedPolynomial operator*(cplx c, const MixedPolynomial& a);

  friend bool operator==(const MixedPolynomial& a, const MixedPolynomial& b);

  /// Single-monomial polynomial.
  static MixedPolynomial monomial(cplx coeff, int nu1, int nu2, int mu1, int mu2);
  static MixedPolynomial constant(cplx c);

 private:
  friend MixedPolynomial canonicalize(std::vector<MixedTerm> raw_terms);
  std::vector<MixedTerm> terms_;
};

/// Coefficients whose merged magnitude falls below this fraction of the
/// magnitudes that were merged into them are treated as cancellation dust.
inline constexpr double kZeroCoefficient = 1e-14;

/// Merge like terms, drop exact zeros and cancellation dust, sort.
MixedPolynomial canonicalize(std::vector<MixedTerm> raw_terms);

cplx evaluate(const MixedPolynomial& f, const C2& z);

/// Term-wise conjugation (c, nu, mu) -> (conj c, mu, nu).
MixedPolynomial conjugate_poly(const MixedPolynomial& f);

struct WirtingerGradient {
  cplx dz1;
  cplx dzb1;
  cplx dz2;
  cplx dzb2;
};

WirtingerGradient wirtinger_gradient(const MixedPolynomial& f, const C2& z);

struct DegreeReport {
  std::optional<int> radial_degree;
  std::optional<int> polar_degree;
  bool is_radial_homogeneous = false;
  bool is_polar_homogeneous = false;
  bool is_strongly_polar = false;
  bool is_convenient = false;
  std::optional<std::pair<int, int>> witness_z1;  // (a1, b1) of z1^a1 zb1^b1
  std::optional<std::pair<int, int>> witness_z2;
  std::optional<int> d;  // polar_degree / pq
  std::optional<int> s;  // radial_degree = (d + 2s) pq

  bool strongly_polar_homogeneous() const {
    return is_strongly_polar && is_radial_homogeneous && is_polar_homogeneous;
  }
};

/// Weighted homogeneity and convenience of f with radial and polar weights
/// both equal to (p, q). Throws EmptyPolynomial.
DegreeReport degree_report(const MixedPolynomial& f, const WeightSystem& w);

/// The strongly polar action (r, eta) o z = (r^p eta^p z1, r^q eta^q z2).
/// Throws NonUnitArgument when |eta| differs from 1 by more than 1e-12.
C2 apply_action(const C2& z, double r, cplx eta, const WeightSystem& w);

/// max |f((r,eta) o z) - r^dr eta^dp f(z)| over random samples with z in the
/// unit polydisk. Throws NotHomogeneous unless f is strongly polar homogeneous.
double verify_equivariance(const MixedPolynomial& f, const WeightSystem& w, int samples,
                           std::uint64_t seed = 0x5eed);

/// Integer power by repeated squaring; shared by the evaluators so every
/// evaluation path rounds identically.
cplx ipow(cplx z, int n);
double ipow(double x, int n);

}  // namespace mixlink
