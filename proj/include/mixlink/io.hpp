#pragma once

// Text and JSON formats for polynomials, orbit lists and reports.
//
// Text grammar:
//   poly   := ['-'] term (('+' | '-') term)*
//   term   := [coeff '*'] factor (['*'] factor)*  |  coeff
//   factor := ('z1' | 'z2' | 'zb1' | 'zb2') ['^' uint]
//   coeff  := float | '(' float [('+' | '-') float 'i'] ')'

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mixlink/degeneration.hpp"
#include "mixlink/error.hpp"
#include "mixlink/linking.hpp"
#include "mixlink/milnor.hpp"
#include "mixlink/mixed_poly.hpp"
#include "mixlink/orbit.hpp"
#include "mixlink/slice_solver.hpp"

namespace mixlink {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";
inline constexpr long kMaxExponent = 1000000;

/// Error with code SyntaxError and the byte offset where parsing stopped.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : Error(ErrorCode::SyntaxError, "offset " + std::to_string(offset) + ": " + what),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Throws ParseError or ExponentOverflow (exponent above 1e6).
MixedPolynomial parse_poly(std::string_view text);

/// Canonical text form; coefficients are printed with 17 significant digits.
std::string serialize_poly(const MixedPolynomial& f);

Json poly_to_json(const MixedPolynomial& f);
MixedPolynomial poly_from_json(const Json& j);
/// JSON document if the first non-blank character is '{', text otherwise.
MixedPolynomial load_poly(std::string_view content);

/// "a", "a+bi", "-bi", "(a+bi)" style literals.
cplx parse_complex(std::string_view text);
std::string format_complex(cplx z);

/// "u:+,u:-" with u complex literals.
std::vector<OrientedOrbit> parse_orbits(std::string_view text);

Json to_json(cplx z);
Json to_json(const C2& z);
Json to_json(const DegreeReport& r);
Json to_json(const LinkReport& r);
Json to_json(const MilnorReport& r);
Json to_json(const SmoothnessReport& r);
Json to_json(const SweepEvent& e);
Json to_json(const SweepResult& r);
Json to_json(const SigmaCurve& c);
Json to_json(const LinkConfiguration& c);
Json to_json(const EliminationResult& r);
Json to_json(const OrbitLinking& r);
Json to_json(const Polyline3& c);

/// {schema_version, command, inputs, results, diagnostics}.
Json make_report(std::string_view command, Json inputs, Json results, Json diagnostics);
Json make_error_report(std::string_view command, Json inputs, const Error& e);

/// Compact, deterministic dump with a trailing newline.
std::string dump(const Json& j);

}  // namespace mixlink
