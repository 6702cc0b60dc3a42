// Nondimensional physical parameters shared across the solver components.
#pragma once

#include <stdexcept>

namespace fulldisp {

// mu is the shallowness parameter (depth over wavelength, squared) and eps
// the amplitude parameter. h_min is the smallest admissible total depth
// 1 + eps*zeta; configurations that dip below it are rejected up front so
// that depth divisions stay well conditioned.
struct Params {
  double mu = 1.0;
  double eps = 0.0;
  double h_min = 0.25;

  void validate() const {
    if (!(mu > 0.0) || !(mu <= 4.0))
      throw std::invalid_argument("Params: mu must lie in (0, 4]");
    if (!(eps >= 0.0) || !(eps <= 1.0))
      throw std::invalid_argument("Params: eps must lie in [0, 1]");
    if (!(h_min > 0.0) || !(h_min < 1.0))
      throw std::invalid_argument("Params: h_min must lie in (0, 1)");
  }
};

}  // namespace fulldisp
