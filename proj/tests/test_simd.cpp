#include <doctest.h>

#include <random>

#include "mixlink/mixed_poly.hpp"
#include "mixlink/simd/kernels.hpp"

using namespace mixlink;

namespace {

MixedPolynomial random_poly(std::mt19937_64& rng, int terms) {
  std::uniform_int_distribution<int> e(0, 5);
  std::uniform_real_distribution<double> c(-2.0, 2.0);
  MixedPolynomial f;
  for (int k = 0; k < terms; ++k) {
    f = f + MixedPolynomial::monomial(cplx(c(rng), c(rng)), e(rng), e(rng), e(rng), e(rng));
  }
  return f;
}

}  // namespace

TEST_CASE("compiled kernels agree with the reference evaluator") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_poly(rng, 7);
    const auto compiled = simd::compile(f);
    std::vector<double> re(37), im(37), outr(37), outi(37);
    for (std::size_t k = 0; k < re.size(); ++k) {
      re[k] = u(rng);
      im[k] = u(rng);
    }
    simd::scalar::evaluate_batch(compiled, simd::Lift::Slice, re, im, outr, outi);
    for (std::size_t k = 0; k < re.size(); ++k) {
      const cplx w(re[k], im[k]);
      const cplx ref = evaluate(f, C2{std::sqrt(1.0 - std::norm(w)), w});
      CHECK(std::abs(cplx(outr[k], outi[k]) - ref) < 1e-12);
    }
    simd::scalar::evaluate_batch(compiled, simd::Lift::Chart, re, im, outr, outi);
    for (std::size_t k = 0; k < re.size(); ++k) {
      const cplx w(re[k], im[k]);
      CHECK(std::abs(cplx(outr[k], outi[k]) - evaluate(f, C2{1.0, w})) < 1e-12);
    }
  }
}

#if defined(MIXLINK_HAVE_AVX2)
TEST_CASE("AVX2 kernels match the scalar kernels") {
  if (!simd::avx2_available()) return;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_poly(rng, 1 + trial % 9);
    const auto compiled = simd::compile(f);
    const std::size_t n = 1 + trial * 7;  // exercises the scalar tail
    std::vector<double> re(n), im(n), ar(n), ai(n), br(n), bi(n);
    for (std::size_t k = 0; k < n; ++k) {
      re[k] = u(rng);
      im[k] = u(rng);
    }
    for (auto lift : {simd::Lift::Slice, simd::Lift::Chart}) {
      simd::scalar::evaluate_batch(compiled, lift, re, im, ar, ai);
      simd::avx2::evaluate_batch(compiled, lift, re, im, br, bi);
      for (std::size_t k = 0; k < n; ++k) {
        const double scale = 1.0 + std::hypot(ar[k], ai[k]);
        CHECK(std::abs(ar[k] - br[k]) < 1e-13 * scale);
        CHECK(std::abs(ai[k] - bi[k]) < 1e-13 * scale);
      }
    }
  }
  for (int trial = 0; trial < 5; ++trial) {
    simd::SegmentSoA a, b;
    const std::size_t na = 9 + trial * 13, nb = 5 + trial * 11;
    for (auto* v : {&a.mx, &a.my, &a.mz, &a.dx, &a.dy, &a.dz}) {
      v->resize(na);
      for (auto& x : *v) x = u(rng);
    }
    for (auto* v : {&b.mx, &b.my, &b.mz, &b.dx, &b.dy, &b.dz}) {
      v->resize(nb);
      for (auto& x : *v) x = u(rng) + 3.0;
    }
    const double s = simd::scalar::gauss_linking_sum(a, b);
    const double v = simd::avx2::gauss_linking_sum(a, b);
    CHECK(std::abs(s - v) < 1e-12 * (1.0 + std::abs(s)));
  }
}
#endif

TEST_CASE("backend can be pinned") {
  const auto before = simd::active_backend();
  simd::force_backend(simd::Backend::Scalar);
  CHECK(simd::active_backend() == simd::Backend::Scalar);
  simd::force_backend(before);
  CHECK(simd::active_backend() == before);
}
