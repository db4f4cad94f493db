#pragma once

#include "mhdshell/config.hpp"
#include "mhdshell/splitting.hpp"

namespace mhdshell::io {

// Builds the initial coupled state for the configured recipe:
//   equilibrium   - uniform fluid at rest on all of B, shell at rest
//   density-bump  - smooth rho bump supported strictly inside Omega_w(0)
//   magnetic-bump - smooth b bump supported strictly inside Omega_w(0)
//   shell-kick    - bump fluid plus v0 = eps sin(2 pi y) shell velocity
//   collapse      - uniform inward shell velocity that drives degeneracy
// Momentum is zero wherever rho vanishes; theta0 > 0 on Omega_w(0).
splitting::CoupledState synthesize_initial_data(const RunConfig& config);

}  // namespace mhdshell::io
