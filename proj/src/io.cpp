#include "mixlink/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace mixlink {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  MixedPolynomial parse() {
    std::vector<MixedTerm> terms;
    skip();
    if (at_end()) fail("empty input");
    double sign = 1.0;
    if (peek() == '-' || peek() == '+') {
      sign = peek() == '-' ? -1.0 : 1.0;
      ++pos_;
    }
    for (;;) {
      MixedTerm t = term();
      t.coeff *= sign;
      terms.push_back(t);
      skip();
      if (at_end()) break;
      if (peek() == '+') sign = 1.0;
      else if (peek() == '-') sign = -1.0;
      else fail("expected '+', '-' or end of input");
      ++pos_;
    }
    return canonicalize(std::move(terms));
  }

 private:
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }
  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_, what); }

  bool starts_factor() const { return peek() == 'z'; }

  MixedTerm term() {
    skip();
    MixedTerm t{cplx{1.0, 0.0}, Monomial{}};
    if (!starts_factor()) {
      t.coeff = coeff();
      skip();
      if (peek() != '*') return t;
      ++pos_;
      skip();
    }
    // Factors are joined by '*' or simply juxtaposed.
    for (;;) {
      factor(t.mono);
      skip();
      if (peek() == '*') {
        ++pos_;
        skip();
      } else if (!starts_factor()) {
        break;
      }
    }
    return t;
  }

  void factor(Monomial& m) {
    static constexpr std::pair<std::string_view, int> names[] = {
        {"zb1", 2}, {"zb2", 3}, {"z1", 0}, {"z2", 1}};
    int slot = -1;
    for (const auto& [name, idx] : names) {
      if (s_.substr(pos_, name.size()) == name) {
        slot = idx;
        pos_ += name.size();
        break;
      }
    }
    if (slot < 0) fail("expected z1, z2, zb1 or zb2");
    long e = 1;
    skip();
    if (peek() == '^') {
      ++pos_;
      skip();
      e = uint_literal();
    }
    auto& target = slot < 2 ? m.nu[slot] : m.mu[slot - 2];
    const long total = target + e;
    if (total > kMaxExponent) {
      throw Error(ErrorCode::ExponentOverflow, "exponent exceeds 1e6");
    }
    target = static_cast<int>(total);
  }

  long uint_literal() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an unsigned integer");
    long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = std::min<long>(v * 10 + (peek() - '0'), kMaxExponent + 1);
      ++pos_;
    }
    if (v > kMaxExponent) throw Error(ErrorCode::ExponentOverflow, "exponent exceeds 1e6");
    return v;
  }

  double float_literal() {
    skip();
    std::size_t start = pos_;
    if (peek() == '+' || peek() == '-') ++pos_;
    const std::size_t body = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') ++pos_;
    if (pos_ == body) {
      pos_ = start;
      fail("expected a number");
    }
    if (peek() == 'e' || peek() == 'E') {
      const std::size_t save = pos_;
      ++pos_;
      if (peek() == '+' || peek() == '-') ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) pos_ = save;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    std::string_view tok = s_.substr(start, pos_ - start);
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    double v = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
      pos_ = start;
      fail("malformed number");
    }
    return v;
  }

  cplx coeff() {
    if (peek() != '(') return {float_literal(), 0.0};
    ++pos_;
    const double re = float_literal();
    double im = 0.0;
    skip();
    if (peek() == '+' || peek() == '-') {
      const double sign = peek() == '-' ? -1.0 : 1.0;
      ++pos_;
      skip();
      if (peek() == '+' || peek() == '-') fail("expected a number");
      im = sign * float_literal();
      skip();
      if (peek() != 'i') fail("expected 'i'");
      ++pos_;
      skip();
    }
    if (peek() != ')') fail("expected ')'");
    ++pos_;
    return {re, im};
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

MixedPolynomial parse_poly(std::string_view text) { return Parser(text).parse(); }

std::string format_complex(cplx z) {
  const bool neg_im = std::signbit(z.imag());
  return "(" + g17(z.real()) + (neg_im ? "-" : "+") + g17(std::abs(z.imag())) + "i)";
}

std::string serialize_poly(const MixedPolynomial& f) {
  if (f.empty()) return "(0+0i)";
  std::string out;
  static constexpr const char* names[] = {"z1", "z2", "zb1", "zb2"};
  for (const auto& t : f.terms()) {
    if (!out.empty()) out += " + ";
    out += format_complex(t.coeff);
    const int exps[] = {t.mono.nu[0], t.mono.nu[1], t.mono.mu[0], t.mono.mu[1]};
    for (int k = 0; k < 4; ++k) {
      if (exps[k] == 0) continue;
      out += "*";
      out += names[k];
      if (exps[k] != 1) out += "^" + std::to_string(exps[k]);
    }
  }
  return out;
}

Json to_json(cplx z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const C2& z) { return Json::array({to_json(z.z1), to_json(z.z2)}); }

Json poly_to_json(const MixedPolynomial& f) {
  Json terms = Json::array();
  for (const auto& t : f.terms()) {
    terms.push_back(Json{{"coeff", to_json(t.coeff)},
                         {"nu", {t.mono.nu[0], t.mono.nu[1]}},
                         {"mu", {t.mono.mu[0], t.mono.mu[1]}}});
  }
  return Json{{"variables", 2}, {"terms", terms}};
}

MixedPolynomial poly_from_json(const Json& j) {
  try {
    if (j.contains("variables") && j.at("variables").get<int>() != 2) {
      throw ParseError(0, "only two variables are supported");
    }
    std::vector<MixedTerm> terms;
    std::vector<Monomial> seen;
    for (const auto& t : j.at("terms")) {
      MixedTerm term;
      term.coeff = {t.at("coeff").at("re").get<double>(), t.at("coeff").at("im").get<double>()};
      for (int k = 0; k < 2; ++k) {
        const long nu = t.at("nu").at(k).get<long>(), mu = t.at("mu").at(k).get<long>();
        if (nu < 0 || mu < 0) throw ParseError(0, "negative exponent");
        if (nu > kMaxExponent || mu > kMaxExponent) {
          throw Error(ErrorCode::ExponentOverflow, "exponent exceeds 1e6");
        }
        term.mono.nu[k] = static_cast<int>(nu);
        term.mono.mu[k] = static_cast<int>(mu);
      }
      if (std::find(seen.begin(), seen.end(), term.mono) != seen.end()) {
        throw ParseError(0, "duplicate term key");
      }
      seen.push_back(term.mono);
      terms.push_back(term);
    }
    return canonicalize(std::move(terms));
  } catch (const Json::exception& e) {
    throw ParseError(0, std::string("malformed polynomial document: ") + e.what());
  }
}

MixedPolynomial load_poly(std::string_view content) {
  const auto first = content.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && content[first] == '{') {
    Json j;
    try {
      j = Json::parse(content);
    } catch (const Json::parse_error& e) {
      throw ParseError(e.byte > 0 ? e.byte - 1 : 0, "invalid JSON");
    }
    return poly_from_json(j);
  }
  return parse_poly(content);
}

cplx parse_complex(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')') s += c;
  }
  auto number = [&](std::string_view tok, double fallback_unit) {
    if (tok.empty() || tok == "+") return fallback_unit;
    if (tok == "-") return -fallback_unit;
    if (tok.front() == '+') tok.remove_prefix(1);
    double v = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
      throw ParseError(0, "malformed complex literal '" + std::string(text) + "'");
    }
    return v;
  };
  if (s.empty()) throw ParseError(0, "empty complex literal");
  if (s.back() != 'i') return {number(s, 0.0), 0.0};
  const std::string body = s.substr(0, s.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, number(body, 1.0)};
  return {number(std::string_view(body).substr(0, split), 0.0),
          number(std::string_view(body).substr(split), 1.0)};
}

std::vector<OrientedOrbit> parse_orbits(std::string_view text) {
  std::vector<OrientedOrbit> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string_view item = text.substr(start, comma - start);
    const std::size_t colon = item.rfind(':');
    if (colon == std::string_view::npos) {
      throw ParseError(start, "orbit entries look like u:+ or u:-");
    }
    std::string_view sign = item.substr(colon + 1);
    while (!sign.empty() && std::isspace(static_cast<unsigned char>(sign.front()))) sign.remove_prefix(1);
    while (!sign.empty() && std::isspace(static_cast<unsigned char>(sign.back()))) sign.remove_suffix(1);
    if (sign != "+" && sign != "-") throw ParseError(start + colon + 1, "orientation must be + or -");
    out.push_back({OrbitId(parse_complex(item.substr(0, colon))), sign == "+" ? 1 : -1});
    start = comma + 1;
  }
  return out;
}

Json to_json(const DegreeReport& r) {
  Json j;
  j["radial_degree"] = r.radial_degree ? Json(*r.radial_degree) : Json(nullptr);
  j["polar_degree"] = r.polar_degree ? Json(*r.polar_degree) : Json(nullptr);
  j["is_radial_homogeneous"] = r.is_radial_homogeneous;
  j["is_polar_homogeneous"] = r.is_polar_homogeneous;
  j["is_strongly_polar"] = r.is_strongly_polar;
  j["is_convenient"] = r.is_convenient;
  j["strongly_polar_homogeneous"] = r.strongly_polar_homogeneous();
  return j;
}

Json to_json(const LinkReport& r) {
  Json sols = Json::array();
  for (const auto& s : r.solutions) {
    sols.push_back(Json{{"u", to_json(s.u)},
                        {"u_chart", to_json(s.u_chart)},
                        {"degree", s.degree},
                        {"multiplicity", s.multiplicity},
                        {"simple", s.simple},
                        {"residual", s.residual},
                        {"condition", s.condition}});
  }
  return Json{{"weights", {r.weights.p(), r.weights.q()}},
              {"components", r.components()},
              {"n_pos", r.n_pos},
              {"n_neg", r.n_neg},
              {"signed_total", r.signed_total},
              {"degenerate", r.degenerate},
              {"solutions", sols}};
}

Json to_json(const MilnorReport& r) {
  return Json{{"d", r.d},
              {"r", r.r},
              {"s", r.s},
              {"d_p", r.d_p},
              {"d_r", r.d_r},
              {"monodromy_order", r.monodromy_order},
              {"generic_fiber_count", r.generic_fiber_count},
              {"axis1_fiber_count", r.axis1_fiber_count},
              {"axis2_fiber_count", r.axis2_fiber_count},
              {"chi_paper", r.chi_paper},
              {"chi_covering", r.chi_covering},
              {"agree", r.agree}};
}

Json to_json(const SmoothnessReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.matrix) {
    Json jr = Json::array();
    for (const auto& v : row) jr.push_back(to_json(v));
    rows.push_back(jr);
  }
  return Json{{"radius", r.radius},
              {"rank", r.rank},
              {"singular_values", r.singular_values},
              {"matrix", rows}};
}

Json to_json(const SweepEvent& e) {
  Json merging = Json::array();
  for (const auto& m : e.merging_roots) merging.push_back(Json{{"u", to_json(m.u)}, {"degree", m.degree}});
  return Json{{"kind", std::string(to_string(e.kind))},
              {"t_star", to_json(e.t_star)},
              {"count_before", e.count_before},
              {"count_after", e.count_after},
              {"merging_roots", merging},
              {"collision_point", to_json(e.collision_point)},
              {"certificate_point", to_json(e.certificate_point)},
              {"certificate", to_json(e.certificate)}};
}

Json to_json(const SweepResult& r) {
  Json steps = Json::array();
  for (std::size_t k = 0; k < r.path.size(); ++k) {
    steps.push_back(Json{{"t", to_json(r.path[k])},
                         {"count", r.counts[k]},
                         {"signed_total", r.signed_totals[k]}});
  }
  Json events = Json::array();
  for (const auto& e : r.events) events.push_back(to_json(e));
  return Json{{"steps", steps}, {"events", events}};
}

Json to_json(const SigmaCurve& c) {
  Json pts = Json::array();
  for (const auto& s : c.samples) pts.push_back(Json{{"theta", s.theta}, {"t", to_json(s.t)}});
  return Json{{"closed", c.closed}, {"samples", pts}};
}

Json to_json(const LinkConfiguration& c) {
  Json orbits = Json::array();
  for (const auto& o : c.orbits) orbits.push_back(Json{{"u", to_json(o.id.value())}, {"sign", o.sign}});
  return Json{{"weights", {c.weights.p(), c.weights.q()}},
              {"d", c.d()},
              {"r", c.r()},
              {"orbits", orbits}};
}

Json to_json(const EliminationResult& r) {
  const auto& fam = r.family;
  Json schedule = Json::array();
  for (const auto& mv : fam.schedule) {
    Json wps = Json::array();
    for (auto w : mv.waypoints) wps.push_back(to_json(w));
    schedule.push_back(Json{{"orbit", mv.orbit}, {"waypoints", wps}});
  }
  Json events = Json::array();
  for (const auto& e : r.sweep.events) events.push_back(to_json(e));
  return Json{{"triple",
               {{"positive_a", fam.triple.positive_a},
                {"positive_b", fam.triple.positive_b},
                {"negative", fam.triple.negative}}},
              {"t_out", to_json(fam.options.t_out)},
              {"t_in", to_json(fam.options.t_in)},
              {"start", to_json(fam.start)},
              {"moved", to_json(fam.moved)},
              {"isotopy", schedule},
              {"start_report", to_json(r.start_report)},
              {"isotopy_end_report", to_json(r.isotopy_end_report)},
              {"events", events},
              {"min_remaining_modulus", r.min_remaining_modulus},
              {"final_report", to_json(r.final_report)},
              {"final_config", to_json(r.final_config)}};
}

Json to_json(const OrbitLinking& r) {
  return Json{{"value", r.value}, {"snapped", r.snapped}, {"samples", r.samples}, {"pole", to_json(r.pole)}};
}

Json to_json(const Polyline3& c) {
  Json pts = Json::array();
  for (const auto& p : c.points) pts.push_back(Json::array({p[0], p[1], p[2]}));
  return Json{{"closed", c.closed}, {"points", pts}};
}

Json make_report(std::string_view command, Json inputs, Json results, Json diagnostics) {
  return Json{{"schema_version", kSchemaVersion},
              {"command", std::string(command)},
              {"inputs", std::move(inputs)},
              {"results", std::move(results)},
              {"diagnostics", std::move(diagnostics)}};
}

Json make_error_report(std::string_view command, Json inputs, const Error& e) {
  return Json{{"schema_version", kSchemaVersion},
              {"command", std::string(command)},
              {"inputs", std::move(inputs)},
              {"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace mixlink
