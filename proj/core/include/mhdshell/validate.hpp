#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mhdshell/constitutive.hpp"
#include "mhdshell/geometry.hpp"

namespace mhdshell::validate {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Finite-difference Gibbs identity over (rho, theta) in [0.1, 5]^2, 50x50 grid,
// relative tolerance 1e-6, centered differences with step 1e-5.
CheckResult gibbs_relation(const constitutive::EosParams& eos);

// S : grad u >= 0 on random gradient samples, plus agreement of the direct
// contraction with the sum-of-squares form.
CheckResult stress_positivity(const constitutive::EosParams& eos, std::uint64_t seed,
                              int trials);

// inverse-after-forward flow-map identity on random admissible samples,
// sigma_w(0) = 1, and the analytic circle distance/projection oracles.
CheckResult geometry_roundtrip(const geometry::GeometryConfig& cfg, std::uint64_t seed,
                               int samples);

// Upwind transport conserves cell sums with rim-supported velocities and
// preserves nonnegativity under the CFL bound.
CheckResult transport_conservation(std::uint64_t seed, int trials);

// recover_temperature inverts the thermal energy map to 1e-10 relative.
CheckResult temperature_roundtrip(const constitutive::EosParams& eos, std::uint64_t seed,
                                  int trials);

// Exterior L^{5/3} smallness of the g field scales linearly with omega.
CheckResult g_field_smallness(const geometry::GeometryConfig& cfg);

std::vector<CheckResult> run_all(std::uint64_t seed);

}  // namespace mhdshell::validate
