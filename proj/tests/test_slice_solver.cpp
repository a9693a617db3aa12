#include <doctest.h>

#include <random>

#include "mixlink/degeneration.hpp"
#include "mixlink/error.hpp"
#include "mixlink/slice_solver.hpp"
#include "oracles.hpp"

using namespace mixlink;

TEST_CASE("chart and orbit coordinates are inverse") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> rad(0.01, 0.99), ang(-3.0, 3.0);
  for (auto [p, q] : {std::pair{1, 1}, {2, 3}, {3, 5}, {1, 2}}) {
    const WeightSystem w(p, q);
    for (int k = 0; k < 20; ++k) {
      const cplx u = std::polar(rad(rng), ang(rng));
      const cplx back = chart_to_orbit(w, orbit_to_chart(w, u)).value();
      CHECK(std::abs(back - u) < 1e-12);
    }
  }
}

TEST_CASE("family links match the eliminated quintic") {
  const WeightSystem w(2, 3);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> coord(-4.0, 4.0);
  const auto sigma = trace_sigma(4096);
  int checked = 0;
  while (checked < 25) {
    const cplx t(coord(rng), coord(rng));
    if (classify_region(t, sigma, 0.05) == Region::OnCurve) continue;
    const auto expect = oracle::chart_roots(t);
    const auto rep = solve_link(family_poly(w, t), w);
    REQUIRE(rep.components() == static_cast<int>(expect.size()));
    for (std::size_t k = 0; k < expect.size(); ++k) {
      bool found = false;
      for (const auto& s : rep.solutions) {
        if (std::abs(s.u_chart - expect[k].u) < 1e-8) {
          found = true;
          CHECK(s.degree == expect[k].degree);
        }
      }
      CHECK(found);
    }
    ++checked;
  }
}

TEST_CASE("solve_link rejects bad input") {
  const WeightSystem w(2, 3);
  const auto not_conv = MixedPolynomial::monomial(1.0, 3, 0, 0, 0) + MixedPolynomial::monomial(1.0, 1, 1, 0, 0);
  CHECK_THROWS_AS(solve_link(not_conv, w), Error);
  const auto not_hom = MixedPolynomial::monomial(1.0, 3, 0, 0, 0) + MixedPolynomial::monomial(1.0, 0, 3, 0, 0);
  try {
    solve_link(not_hom, w);
    FAIL("expected NotHomogeneous");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHomogeneous);
  }
}

TEST_CASE("signed count equals d") {
  const WeightSystem w(2, 3);
  for (double t : {0.0, 4.0, -3.5, -2.5}) {
    const auto f = family_poly(w, t);
    const auto chk = signed_count(solve_link(f, w), w, f);
    CHECK(chk.pass);
    CHECK(chk.expected == 1);
  }
}
