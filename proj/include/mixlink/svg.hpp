#pragma once

#include <string>
#include <vector>

#include "mixlink/degeneration.hpp"
#include "mixlink/linking.hpp"

namespace mixlink {

/// Closed path through the samples with markers at the cusp t = 1 and at
/// t = -3. Throws EmptyData for an empty curve.
std::string emit_svg(const SigmaCurve& curve);

struct SignedPolyline {
  Polyline3 line;
  int sign = 1;
};

/// Projection to the (x, y) plane of each component, solid for +1 and dashed
/// for -1, with one arrowhead per component along its orientation. Throws
/// EmptyData for no components or an empty polyline.
std::string emit_svg(const std::vector<SignedPolyline>& components);

}  // namespace mixlink
