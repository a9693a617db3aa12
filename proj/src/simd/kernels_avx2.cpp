// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include <cmath>

#include "mixlink/simd/kernels.hpp"

namespace mixlink::simd::avx2 {

namespace {

struct CVec {
  __m256d re;
  __m256d im;
};

inline CVec cmul(const CVec& a, const CVec& b) {
  return {_mm256_fmsub_pd(a.re, b.re, _mm256_mul_pd(a.im, b.im)),
          _mm256_fmadd_pd(a.re, b.im, _mm256_mul_pd(a.im, b.re))};
}

inline __m256d rpow(__m256d x, int n) {
  __m256d result = _mm256_set1_pd(1.0);
  __m256d base = x;
  while (n > 0) {
    if (n & 1) result = _mm256_mul_pd(result, base);
    n >>= 1;
    if (n) base = _mm256_mul_pd(base, base);
  }
  return result;
}

inline CVec cpow(CVec z, int n) {
  CVec result{_mm256_set1_pd(1.0), _mm256_setzero_pd()};
  CVec base = z;
  while (n > 0) {
    if (n & 1) result = cmul(result, base);
    n >>= 1;
    if (n) base = cmul(base, base);
  }
  return result;
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

void evaluate_batch(const CompiledTerms& terms, Lift lift, std::span<const double> w_re,
                    std::span<const double> w_im, std::span<double> out_re,
                    std::span<double> out_im) {
  const std::size_t n = w_re.size();
  const std::size_t nt = terms.size();
  const std::size_t body = n - n % 4;
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d sign = _mm256_set1_pd(-0.0);
  for (std::size_t k = 0; k < body; k += 4) {
    const CVec w{_mm256_loadu_pd(&w_re[k]), _mm256_loadu_pd(&w_im[k])};
    const CVec wbar{w.re, _mm256_xor_pd(w.im, sign)};
    const __m256d r2 = _mm256_fmadd_pd(w.re, w.re, _mm256_mul_pd(w.im, w.im));
    const __m256d x =
        lift == Lift::Slice ? _mm256_sqrt_pd(_mm256_max_pd(zero, _mm256_sub_pd(one, r2))) : one;
    __m256d acc_re = zero, acc_im = zero;
    for (std::size_t t = 0; t < nt; ++t) {
      const int wind = terms.winding[t];
      const CVec wp = wind >= 0 ? cpow(w, wind) : cpow(wbar, -wind);
      const __m256d real_part = _mm256_mul_pd(rpow(x, terms.radial1[t]), rpow(r2, terms.abs2[t]));
      const __m256d vr = _mm256_mul_pd(real_part, wp.re);
      const __m256d vi = _mm256_mul_pd(real_part, wp.im);
      const __m256d cr = _mm256_set1_pd(terms.coeff_re[t]);
      const __m256d ci = _mm256_set1_pd(terms.coeff_im[t]);
      acc_re = _mm256_add_pd(acc_re, _mm256_fmsub_pd(cr, vr, _mm256_mul_pd(ci, vi)));
      acc_im = _mm256_add_pd(acc_im, _mm256_fmadd_pd(cr, vi, _mm256_mul_pd(ci, vr)));
    }
    _mm256_storeu_pd(&out_re[k], acc_re);
    _mm256_storeu_pd(&out_im[k], acc_im);
  }
  if (body < n) {
    scalar::evaluate_batch(terms, lift, w_re.subspan(body), w_im.subspan(body),
                           out_re.subspan(body), out_im.subspan(body));
  }
}

double gauss_linking_sum(const SegmentSoA& a, const SegmentSoA& b) {
  const std::size_t na = a.size(), nb = b.size();
  const std::size_t body = nb - nb % 4;
  double total = 0.0;
  for (std::size_t i = 0; i < na; ++i) {
    const __m256d amx = _mm256_set1_pd(a.mx[i]), amy = _mm256_set1_pd(a.my[i]),
                  amz = _mm256_set1_pd(a.mz[i]);
    const __m256d adx = _mm256_set1_pd(a.dx[i]), ady = _mm256_set1_pd(a.dy[i]),
                  adz = _mm256_set1_pd(a.dz[i]);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t j = 0; j < body; j += 4) {
      const __m256d bdx = _mm256_loadu_pd(&b.dx[j]);
      const __m256d bdy = _mm256_loadu_pd(&b.dy[j]);
      const __m256d bdz = _mm256_loadu_pd(&b.dz[j]);
      const __m256d rx = _mm256_sub_pd(amx, _mm256_loadu_pd(&b.mx[j]));
      const __m256d ry = _mm256_sub_pd(amy, _mm256_loadu_pd(&b.my[j]));
      const __m256d rz = _mm256_sub_pd(amz, _mm256_loadu_pd(&b.mz[j]));
      const __m256d cx = _mm256_fmsub_pd(ady, bdz, _mm256_mul_pd(adz, bdy));
      const __m256d cy = _mm256_fmsub_pd(adz, bdx, _mm256_mul_pd(adx, bdz));
      const __m256d cz = _mm256_fmsub_pd(adx, bdy, _mm256_mul_pd(ady, bdx));
      const __m256d r2 = _mm256_fmadd_pd(rx, rx, _mm256_fmadd_pd(ry, ry, _mm256_mul_pd(rz, rz)));
      const __m256d num = _mm256_fmadd_pd(cx, rx, _mm256_fmadd_pd(cy, ry, _mm256_mul_pd(cz, rz)));
      const __m256d den = _mm256_mul_pd(r2, _mm256_sqrt_pd(r2));
      acc = _mm256_add_pd(acc, _mm256_div_pd(num, den));
    }
    double row = hsum(acc);
    for (std::size_t j = body; j < nb; ++j) {
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

}  // namespace mixlink::simd::avx2
