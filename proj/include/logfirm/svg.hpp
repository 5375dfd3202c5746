#pragma once

#include <string>

#include "logfirm/firmament.hpp"

namespace logfirm {

/// Rank-2 embedded fan: rays as segments, lattice points of the support as
/// filled circles. The drawn box is [0, bound]^2, or [-bound, bound]^2 when
/// some ray leaves the first quadrant.
std::string fan_svg(const ConeComplex& fan, long bound);

/// Rank-2 firmament target over [0, bound]^2. Filled circles are points of
/// the firmament, hollow circles the other lattice points.
std::string firmament_svg(const Firmament& g, long bound);

}  // namespace logfirm
