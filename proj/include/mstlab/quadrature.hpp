#pragma once

#include <string>

namespace mstlab {

// Block-pattern probability q(delta), expected per-block swap cost r(delta),
// and the small-delta slope c with q(delta) ~ c * delta.
struct ConfigRate {
  double q = 0.0;
  double r = 0.0;
  double c = 0.0;
};

ConfigRate config_rate_quadrature(const std::string& dist, double delta);

}  // namespace mstlab
