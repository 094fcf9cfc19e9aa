#include "moebius/config.hpp"

#include <stdexcept>

namespace moebius {

void RunConfig::validate() const {
    for (double t : {tol_frame, tol_integrability, tol_classification, tol_invariance, q_tol, eps_umbilic, fd_step}) {
        if (!(t > 0.0)) throw std::invalid_argument("tolerances and fd_step must be positive");
    }
    if (probe_count < 1) throw std::invalid_argument("probe_count must be at least 1");
}

}  // namespace moebius
