#include <atomic>
#include <cstdlib>
#include <cstring>
#include <optional>

#include "mixlink/simd/kernels.hpp"

namespace mixlink::simd {

namespace {

std::atomic<int> g_forced{-1};

Backend detect() {
  if (const char* env = std::getenv("MIXLINK_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::Scalar;
  }
  return avx2_available() ? Backend::Avx2 : Backend::Scalar;
}

}  // namespace

std::string_view to_string(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

bool avx2_available() {
#if defined(MIXLINK_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

Backend active_backend() {
  const int forced = g_forced.load(std::memory_order_relaxed);
  if (forced >= 0) return static_cast<Backend>(forced);
  static const Backend detected = detect();
  return detected;
}

void force_backend(Backend b) {
  if (b == Backend::Avx2 && !avx2_available()) b = Backend::Scalar;
  g_forced.store(static_cast<int>(b), std::memory_order_relaxed);
}

CompiledTerms compile(const MixedPolynomial& f) {
  CompiledTerms out;
  for (const auto& t : f.terms()) {
    out.coeff_re.push_back(t.coeff.real());
    out.coeff_im.push_back(t.coeff.imag());
    out.radial1.push_back(t.mono.nu[0] + t.mono.mu[0]);
    out.abs2.push_back(std::min(t.mono.nu[1], t.mono.mu[1]));
    out.winding.push_back(t.mono.nu[1] - t.mono.mu[1]);
  }
  return out;
}

void evaluate_batch(const CompiledTerms& terms, Lift lift, std::span<const double> w_re,
                    std::span<const double> w_im, std::span<double> out_re,
                    std::span<double> out_im) {
#if defined(MIXLINK_HAVE_AVX2)
  if (active_backend() == Backend::Avx2) {
    avx2::evaluate_batch(terms, lift, w_re, w_im, out_re, out_im);
    return;
  }
#endif
  scalar::evaluate_batch(terms, lift, w_re, w_im, out_re, out_im);
}

double gauss_linking_sum(const SegmentSoA& a, const SegmentSoA& b) {
#if defined(MIXLINK_HAVE_AVX2)
  if (active_backend() == Backend::Avx2) return avx2::gauss_linking_sum(a, b);
#endif
  return scalar::gauss_linking_sum(a, b);
}

}  // namespace mixlink::simd
