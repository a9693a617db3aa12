#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference version and
// an AVX2 version; `active_backend()` picks one at runtime from the CPU
// feature bits (overridable with MIXLINK_SIMD=scalar|avx2 or force_backend).
// The two versions are tested for equivalence, not bit-identity: the AVX2
// path reorders sums.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "mixlink/mixed_poly.hpp"

namespace mixlink::simd {

enum class Backend { Scalar, Avx2 };

std::string_view to_string(Backend b);

bool avx2_available();
Backend active_backend();
/// Pin the backend for the whole process (tests use this to compare paths).
/// Requesting Avx2 on a machine without it falls back to Scalar.
void force_backend(Backend b);

/// How the planar variable w is lifted to C^2 before evaluation. Both lifts
/// put a real non-negative number in the first coordinate, which the kernels
/// exploit: z1^a zb1^b collapses to x^(a+b).
enum class Lift {
  Slice,  // (sqrt(1 - |w|^2), w), the canonical slice of the unit sphere
  Chart,  // (1, w), the affine chart u = z2^p / z1^q of the family
};

/// Structure-of-arrays copy of a polynomial's terms, with the exponents
/// folded into the form used by the kernels:
///   c * x^radial1 * |w|^(2 * abs2) * w^winding   (winding < 0 means conj(w)).
struct CompiledTerms {
  std::vector<double> coeff_re;
  std::vector<double> coeff_im;
  std::vector<int> radial1;
  std::vector<int> abs2;
  std::vector<int> winding;

  std::size_t size() const { return coeff_re.size(); }
};

CompiledTerms compile(const MixedPolynomial& f);

/// out[k] = F(w[k]) for the lifted polynomial. All spans have equal length.
void evaluate_batch(const CompiledTerms& terms, Lift lift, std::span<const double> w_re,
                    std::span<const double> w_im, std::span<double> out_re,
                    std::span<double> out_im);

/// Midpoints and edge vectors of a closed polyline, one array per axis.
struct SegmentSoA {
  std::vector<double> mx, my, mz;
  std::vector<double> dx, dy, dz;

  std::size_t size() const { return mx.size(); }
};

/// Raw Gauss double sum  sum_i sum_j (da_i x db_j) . (ma_i - mb_j) / |ma_i - mb_j|^3.
/// The linking number is this value divided by 4 pi.
double gauss_linking_sum(const SegmentSoA& a, const SegmentSoA& b);

namespace scalar {
void evaluate_batch(const CompiledTerms& terms, Lift lift, std::span<const double> w_re,
                    std::span<const double> w_im, std::span<double> out_re,
                    std::span<double> out_im);
double gauss_linking_sum(const SegmentSoA& a, const SegmentSoA& b);
}  // namespace scalar

#if defined(MIXLINK_HAVE_AVX2)
namespace avx2 {
void evaluate_batch(const CompiledTerms& terms, Lift lift, std::span<const double> w_re,
                    std::span<const double> w_im, std::span<double> out_re,
                    std::span<double> out_im);
double gauss_linking_sum(const SegmentSoA& a, const SegmentSoA& b);
}  // namespace avx2
#endif

}  // namespace mixlink::simd
