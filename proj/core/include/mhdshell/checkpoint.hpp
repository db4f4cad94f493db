#pragma once

#include <string>

#include "mhdshell/splitting.hpp"

namespace mhdshell::io {

// Binary checkpoint: one JSON metadata line (grid dims, node counts, time,
// window, ladder parameters, declared little endianness) followed by raw
// row-major little-endian float64 payloads in a documented field order
// (rho, b, mom_x, mom_y, qth, shell w, v, theta, buffer trace).
void write_checkpoint(const std::string& path, const splitting::CoupledState& state,
                      const splitting::ParameterLadder& ladder);

// Round-trips bit-exactly. Throws CheckpointError on truncation, metadata
// mismatch, or a foreign byte order.
splitting::CoupledState read_checkpoint(const std::string& path);

}  // namespace mhdshell::io
