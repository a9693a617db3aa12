#include <doctest.h>

#include <random>

#include "mixlink/degeneration.hpp"
#include "mixlink/io.hpp"
#include "mixlink/svg.hpp"

using namespace mixlink;

TEST_CASE("parse simple polynomials") {
  const auto f = parse_poly("z1^3 - z2^2");
  CHECK(f.size() == 2);
  CHECK(f.coeff(Monomial{{3, 0}, {0, 0}}) == cplx(1, 0));
  CHECK(f.coeff(Monomial{{0, 2}, {0, 0}}) == cplx(-1, 0));
  const auto g = parse_poly("z1^6*zb1^3 - 2*z2^4*zb2^2 + (-3+0i)*z2^4*zb1^3");
  CHECK(g == family_poly(WeightSystem(2, 3), -3.0));
  CHECK(parse_poly("(1.5-2e-3i)*z1*zb2 + 4").size() == 2);
  CHECK(parse_poly("- z1 z2") == MixedPolynomial::monomial(-1.0, 1, 1, 0, 0));
}

TEST_CASE("syntax errors carry their offset") {
  try {
    parse_poly("z1^^2");
    FAIL("expected a syntax error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 3);
    CHECK(e.code() == ErrorCode::SyntaxError);
  }
  CHECK_THROWS_AS(parse_poly(""), ParseError);
  CHECK_THROWS_AS(parse_poly("z3"), ParseError);
  CHECK_THROWS_AS(parse_poly("(1+2)*z1"), ParseError);
  try {
    parse_poly("z1^1000001");
    FAIL("expected overflow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ExponentOverflow);
  }
}

TEST_CASE("text and JSON round trips are exact") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> c(-5, 5);
  std::uniform_int_distribution<int> e(0, 6);
  for (int trial = 0; trial < 50; ++trial) {
    MixedPolynomial f;
    for (int k = 0; k < 6; ++k) {
      f = f + MixedPolynomial::monomial(cplx(c(rng), c(rng)) * std::pow(10.0, e(rng) - 3), e(rng), e(rng), e(rng), e(rng));
    }
    CHECK(parse_poly(serialize_poly(f)) == f);
    CHECK(poly_from_json(Json::parse(poly_to_json(f).dump())) == f);
    CHECK(load_poly(poly_to_json(f).dump()) == f);
  }
  const auto fam = family_poly(WeightSystem(3, 5), cplx(0.1, -0.7));
  CHECK(parse_poly(serialize_poly(fam)) == fam);
}

TEST_CASE("duplicate JSON term keys are rejected") {
  const auto j = Json::parse(R"({"variables":2,"terms":[
    {"coeff":{"re":1,"im":0},"nu":[1,0],"mu":[0,0]},
    {"coeff":{"re":2,"im":0},"nu":[1,0],"mu":[0,0]}]})");
  CHECK_THROWS_AS(poly_from_json(j), ParseError);
}

TEST_CASE("complex literals and orbit lists") {
  CHECK(parse_complex("0.3") == cplx(0.3, 0));
  CHECK(parse_complex("0.3+0.2i") == cplx(0.3, 0.2));
  CHECK(parse_complex("-0.1-0.4i") == cplx(-0.1, -0.4));
  CHECK(parse_complex("-0.5i") == cplx(0, -0.5));
  CHECK(parse_complex("1e-2+1e-3i") == cplx(0.01, 0.001));
  const auto o = parse_orbits("0.3+0.2i:+,-0.5:-");
  REQUIRE(o.size() == 2);
  CHECK(o[0].sign == 1);
  CHECK(o[1].sign == -1);
  CHECK(o[1].id.value() == cplx(-0.5, 0));
  CHECK_THROWS_AS(parse_orbits("0.3:x"), ParseError);
  CHECK_THROWS_AS(parse_orbits("0.3"), ParseError);
}

TEST_CASE("reports have a schema version and stable order") {
  const auto r = make_report("solve", Json{{"a", 1}}, Json{{"b", 2}}, Json::object());
  CHECK(r.begin().key() == "schema_version");
  CHECK(dump(r) == dump(make_report("solve", Json{{"a", 1}}, Json{{"b", 2}}, Json::object())));
}

namespace {

// Minimal structural check: balanced tags, one root <svg>, closed paths.
bool well_formed(const std::string& svg, int& paths, int& closed) {
  std::vector<std::string> stack;
  int roots = 0;
  paths = closed = 0;
  std::size_t pos = 0;
  while ((pos = svg.find('<', pos)) != std::string::npos) {
    const std::size_t end = svg.find('>', pos);
    if (end == std::string::npos) return false;
    std::string tag = svg.substr(pos + 1, end - pos - 1);
    pos = end + 1;
    if (tag.empty() || tag[0] == '?') continue;
    if (tag[0] == '/') {
      if (stack.empty() || stack.back() != tag.substr(1)) return false;
      stack.pop_back();
      continue;
    }
    const std::string name = tag.substr(0, tag.find_first_of(" /"));
    if (name == "path") {
      ++paths;
      const auto d = tag.find(" d=\"");
      if (d != std::string::npos && tag.find('Z', d) != std::string::npos) ++closed;
    }
    if (tag.back() == '/') continue;
    if (stack.empty()) ++roots;
    stack.push_back(name);
  }
  return stack.empty() && roots == 1;
}

}  // namespace

TEST_CASE("svg output") {
  int paths = 0, closed = 0;
  const auto s = emit_svg(trace_sigma(1024));
  CHECK(well_formed(s, paths, closed));
  CHECK(paths == closed);
  CHECK(s.find("t=-3") != std::string::npos);
  CHECK_THROWS_AS(emit_svg(SigmaCurve{}), Error);
  CHECK_THROWS_AS(emit_svg(std::vector<SignedPolyline>{}), Error);

  const WeightSystem w(2, 3);
  const auto rep = solve_link(family_poly(w, 4.0), w);
  std::vector<std::vector<C2>> curves;
  for (const auto& sol : rep.solutions) curves.push_back(sample_orbit(w, OrbitId(sol.u), 128));
  const Stereographic proj(find_pole(curves, 1));
  std::vector<SignedPolyline> comps;
  for (const auto& sol : rep.solutions) {
    comps.push_back({project_orbit(w, {OrbitId(sol.u), sol.degree}, 128, proj), sol.degree});
  }
  const auto link_svg = emit_svg(comps);
  CHECK(well_formed(link_svg, paths, closed));
  std::size_t dashed = 0, at = 0;
  while ((at = link_svg.find("stroke-dasharray", at)) != std::string::npos) {
    ++dashed;
    ++at;
  }
  CHECK(dashed == 1);
}
