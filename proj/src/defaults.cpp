#include "qdiv/defaults.hpp"

#include "qdiv/errors.hpp"

#include <cmath>
#include <limits>

namespace qdiv {

void LimitSchedule::validate() const {
    if (!(eps0 > 0) || !(ratio > 0 && ratio < 1) || !(conv_tol > 0) || max_steps < 1)
        throw ValidationError("limit schedule: need eps0 > 0, 0 < ratio < 1, conv_tol > 0, max_steps >= 1");
    if (eps0 * std::pow(ratio, max_steps) <= std::numeric_limits<double>::epsilon() * 1e-4)
        throw ValidationError("limit schedule: final shift eps0 * ratio^max_steps underflows the working precision");
}

} // namespace qdiv
