#pragma once

// Static SVG figures: overlaid set outlines and support functions over angle.

#include <string>
#include <vector>

#include "setflow/polygon.hpp"
#include "setflow/support_sample.hpp"

namespace setflow::svg {

/// One <polygon> per frame, all drawn in a shared coordinate view.
std::string filmstrip(const std::vector<ConvexPolygon<double>>& frames, const std::vector<double>& times,
                      const std::string& title);

/// One <polyline> per frame plotting values against the direction angle.
std::string support_curves(const std::vector<Vector<double>>& frames, const std::vector<double>& times,
                           const std::string& title);

}  // namespace setflow::svg
