#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qtkit/map.hpp"
#include "qtkit/poly.hpp"

namespace qtkit {

// Built-in inputs so the standard examples run with no problem file:
//   a1, a2, b  -- dimension-5 homogeneous quasi-translations,
//   perazzo    -- the cubic x1*x4^2 + x2*x4*x5 + x3*x5^2 (singular Hessian).
std::vector<std::string> preset_names();
std::optional<PolyMap> preset_map(std::string_view name);
std::optional<Poly> preset_poly(std::string_view name);

} // namespace qtkit
