#include <doctest.h>

#include <numbers>

#include "mixlink/degeneration.hpp"
#include "mixlink/error.hpp"
#include "oracles.hpp"

using namespace mixlink;

TEST_CASE("sigma curve") {
  CHECK(std::abs(sigma_point(std::numbers::pi) - cplx(-3.0, 0.0)) < 1e-12);
  CHECK(std::abs(sigma_point(0.0) - cplx(1.0, 0.0)) < 1e-15);
  // Every point of the curve is a parameter with a fold root: u = s gives
  // G = 0 and det J = 0 there (checked by hand-written formulas).
  for (int k = 1; k < 64; ++k) {
    const double th = 2 * std::numbers::pi * k / 64;
    const cplx t = sigma_point(th);
    const cplx u = std::polar(1.0, th);
    CHECK(std::abs(oracle::chart_G(t, u)) < 1e-12);
    const cplx gu = -4.0 * std::norm(u) + 2.0 * t * u, gub = -2.0 * u * u;
    CHECK(std::abs(std::norm(gu) - std::norm(gub)) < 1e-10);
  }
  CHECK_THROWS_AS(trace_sigma(8), Error);
  CHECK_THROWS_AS(classify_region(0.0, trace_sigma(100), 1e-3), Error);
}

TEST_CASE("region classification") {
  const auto curve = trace_sigma(2048);
  CHECK(classify_region(0.0, curve, 1e-3) == Region::Inside);
  CHECK(classify_region(4.0, curve, 1e-3) == Region::Outside);
  CHECK(classify_region(-3.0, curve, 1e-3) == Region::OnCurve);
  CHECK(classify_region(-2.5, curve, 1e-3) == Region::Inside);
  CHECK(classify_region(-3.5, curve, 1e-3) == Region::Outside);
}

TEST_CASE("chart Jacobian is the derivative of the chart map") {
  const cplx t(0.7, -1.3), u(0.4, 0.9);
  const auto j = chart_jacobian(t, u);
  const double h = 1e-6;
  const cplx dx = (chart_eval(t, u + h) - chart_eval(t, u - h)) / (2 * h);
  const cplx dy = (chart_eval(t, u + cplx(0, h)) - chart_eval(t, u - cplx(0, h))) / (2 * h);
  CHECK(j[0][0] == doctest::Approx(dx.real()).epsilon(1e-7));
  CHECK(j[1][0] == doctest::Approx(dx.imag()).epsilon(1e-7));
  CHECK(j[0][1] == doctest::Approx(dy.real()).epsilon(1e-7));
  CHECK(j[1][1] == doctest::Approx(dy.imag()).epsilon(1e-7));
}

TEST_CASE("chart roots at reference parameters") {
  for (cplx t : {cplx(0), cplx(4), cplx(-3.5), cplx(-2.5), cplx(0, 1), cplx(2, 2)}) {
    const auto expect = oracle::chart_roots(t);
    const auto got = solve_chart(t);
    REQUIRE(got.size() == expect.size());
    for (std::size_t k = 0; k < got.size(); ++k) {
      CHECK(std::abs(got[k].u - expect[k].u) < 1e-9);
      CHECK(got[k].degree == expect[k].degree);
      CHECK(got[k].simple);
    }
  }
  // t = -3: 1/2 simple and the fold at -1.
  const auto at3 = solve_chart(-3.0);
  REQUIRE(at3.size() == 2);
  CHECK(std::abs(at3[0].u + 1.0) < 1e-6);
  CHECK(at3[0].multiplicity == 2);
  CHECK(std::abs(at3[1].u - 0.5) < 1e-12);
  CHECK(chart_count(at3) == 3);
}

TEST_CASE("rank matrix at the fold point matches the closed form") {
  for (auto [p, q] : {std::pair{1, 1}, {2, 3}, {3, 5}}) {
    const WeightSystem w(p, q);
    const cplx a = std::polar(1.0, std::numbers::pi / p);
    const C2 z{1.0, a};
    const auto rep = rank_check(model_family(w), z, -3.0, std::sqrt(2.0));
    const cplx I(0, 1);
    const std::array<cplx, 5> dg{0, 0, 0, 0, 1};
    const std::array<cplx, 5> dh{-2.0 * I * double(q), 2.0 * I * double(q), 2.0 * I * double(p) * std::conj(a),
                                 -2.0 * I * double(p) * a, 0};
    const std::array<cplx, 5> drho{1, 1, std::conj(a), a, 0};
    for (int k = 0; k < 5; ++k) {
      CHECK(std::abs(rep.matrix[0][k] - dg[k]) < 1e-12);
      CHECK(std::abs(rep.matrix[1][k] - dh[k]) < 1e-12);
      CHECK(std::abs(rep.matrix[2][k] - drho[k]) < 1e-12);
    }
    CHECK(rep.rank == 3);
    CHECK(rep.singular_values[2] > 1e-6 * rep.singular_values[0]);
  }
  const WeightSystem w(2, 3);
  CHECK_THROWS_AS(rank_check(model_family(w), C2{1.0, 0.0}, -3.0, 1.0), Error);
  CHECK_THROWS_AS(rank_check(model_family(w), C2{0.6, 0.8}, -3.0, 1.0), Error);
}

TEST_CASE("lifted chart points land on the family") {
  const WeightSystem w(2, 3);
  for (cplx u : {cplx(-1.0), cplx(0.5), cplx(0.3, 0.7)}) {
    const C2 z = lift_chart_point(w, u, 1.7);
    CHECK(std::sqrt(z.norm2()) == doctest::Approx(1.7));
    CHECK(std::abs(std::pow(z.z2, 2) / std::pow(z.z1, 3) - u) < 1e-12);
  }
}

TEST_CASE("sweep across the locus") {
  const WeightSystem w(2, 3);
  const auto path = linear_path(-3.5, -2.5, 100);
  const auto res = sweep(w, path);
  REQUIRE(res.events.size() == 1);
  const auto& e = res.events[0];
  CHECK(e.kind == SweepEvent::Kind::PairElimination);
  CHECK(std::abs(e.t_star + 3.0) < 1e-6);
  CHECK(std::abs(e.collision_point + 1.0) < 1e-6);
  CHECK(e.merging_roots[0].degree + e.merging_roots[1].degree == 0);
  CHECK(e.certificate.rank == 3);
  for (int s : res.signed_totals) CHECK(s == 1);
  // The reverse direction creates the pair.
  const auto back = sweep(w, linear_path(-2.5, -3.5, 100));
  REQUIRE(back.events.size() == 1);
  CHECK(back.events[0].kind == SweepEvent::Kind::PairCreation);
  // Crossing near the cusp is refused.
  CHECK_THROWS_AS(sweep(w, linear_path(cplx(1.0, -0.5), cplx(1.0, 0.5), 20)), Error);
}

TEST_CASE("elimination of one pair") {
  const WeightSystem w(2, 3);
  LinkConfiguration cfg{w, {{OrbitId(cplx(0.3, 0.2)), 1}, {OrbitId(cplx(-0.1, 0.5)), 1}, {OrbitId(cplx(0.2, -0.4)), -1}}};
  const auto res = run_elimination(cfg);
  CHECK(res.start_report.components() == 3);
  CHECK(res.isotopy_end_report.components() == 3);
  REQUIRE(res.sweep.events.size() == 1);
  CHECK(res.final_report.components() == 1);
  CHECK(res.final_report.n_pos == 1);

  LinkConfiguration none{w, {{OrbitId(0.3), 1}}};
  CHECK_THROWS_AS(elimination_family(none), Error);
}

TEST_CASE("isotopy detours around an obstacle") {
  const WeightSystem w(1, 1);
  // The negative orbit's straight path to its target passes an orbit that
  // sits just off the segment.
  const auto roots = solve_chart(-3.5);
  const cplx neg_target = chart_to_orbit(w, roots.front().u).value();
  const cplx start(0.1, 0.0);
  const cplx mid = 0.5 * (start + neg_target) + cplx(0.0, 5e-4);
  LinkConfiguration cfg{w, {{OrbitId(cplx(0.2, 0.6)), 1}, {OrbitId(cplx(0.1, -0.6)), 1},
                            {OrbitId(start), -1}, {OrbitId(mid), 1}}};
  const auto fam = elimination_family(cfg, EliminationTriple{0, 1, 2});
  REQUIRE(fam.schedule.size() == 3);
  const auto& wp = fam.schedule[0].waypoints;
  CHECK(wp.size() > 2);
  for (double tau = 0.0; tau <= 1.0; tau += 1e-3) {
    const auto c = fam.config_at(tau);
    CHECK(std::abs(c.orbits[2].id.value() - mid) > 9e-4);
  }
}
