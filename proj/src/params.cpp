#include "spinfp/params.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace spinfp {

DimensionlessParams::DimensionlessParams(double u, double theta) : u_(u), theta_(theta) {
  if (!std::isfinite(u) || u < 0.0) throw std::domain_error(fmt::format("coupling u must be finite and >= 0, got {}", u));
  if (!std::isfinite(theta) || theta <= 0.0)
    throw std::domain_error(fmt::format("phase theta must be finite and > 0, got {}", theta));
}

}  // namespace spinfp
