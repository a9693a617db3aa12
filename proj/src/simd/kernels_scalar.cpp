#include <cmath>

#include "mixlink/simd/kernels.hpp"

namespace mixlink::simd::scalar {

void evaluate_batch(const CompiledTerms& terms, Lift lift, std::span<const double> w_re,
                    std::span<const double> w_im, std::span<double> out_re,
                    std::span<double> out_im) {
  const std::size_t n = w_re.size();
  const std::size_t nt = terms.size();
  for (std::size_t k = 0; k < n; ++k) {
    const cplx w{w_re[k], w_im[k]};
    const double r2 = w_re[k] * w_re[k] + w_im[k] * w_im[k];
    const double x = lift == Lift::Slice ? std::sqrt(std::max(0.0, 1.0 - r2)) : 1.0;
    double acc_re = 0.0, acc_im = 0.0;
    for (std::size_t t = 0; t < nt; ++t) {
      const int wind = terms.winding[t];
      const cplx wp = wind >= 0 ? ipow(w, wind) : ipow(std::conj(w), -wind);
      const double real_part = ipow(x, terms.radial1[t]) * ipow(r2, terms.abs2[t]);
      const double vr = real_part * wp.real();
      const double vi = real_part * wp.imag();
      acc_re += terms.coeff_re[t] * vr - terms.coeff_im[t] * vi;
      acc_im += terms.coeff_re[t] * vi + terms.coeff_im[t] * vr;
    }
    out_re[k] = acc_re;
    out_im[k] = acc_im;
  }
}

double gauss_linking_sum(const SegmentSoA& a, const SegmentSoA& b) {
  const std::size_t na = a.size(), nb = b.size();
  double total = 0.0;
  for (std::size_t i = 0; i < na; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < nb; ++j) {
      const double rx = a.mx[i] - b.mx[j];
      const double ry = a.my[i] - b.my[j];
      const double rz = a.mz[i] - b.mz[j];
      const double cx = a.dy[i] * b.dz[j] - a.dz[i] * b.dy[j];
      const double cy = a.dz[i] * b.dx[j] - a.dx[i] * b.dz[j];
      const double cz = a.dx[i] * b.dy[j] - a.dy[i] * b.dx[j];
      const double r2 = rx * rx + ry * ry + rz * rz;
      row += (cx * rx + cy * ry + cz * rz) / (r2 * std::sqrt(r2));
    }
    total += row;
  }
  return total;
}

}  // namespace mixlink::simd::scalar
