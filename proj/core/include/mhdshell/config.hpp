#pragma once

#include <cstdint>
#include <string>

#include "mhdshell/constitutive.hpp"
#include "mhdshell/fluid.hpp"
#include "mhdshell/geometry.hpp"
#include "mhdshell/shell.hpp"

namespace mhdshell::io {

struct RunParams {
  double T = 0.05;
  double dt = 2.5e-3;
  std::string recipe = "density-bump";
  std::uint64_t seed = 12345;

  void validate() const;
};

struct RunConfig {
  geometry::GeometryConfig geometry;
  constitutive::EosParams eos;
  shell::ShellParams shell;
  fluid::FluidParams fluid;
  RunParams run;

  void validate() const;
  // Normalized key=value dump used for hashing and reproducibility records.
  std::string canonical_text() const;
  std::uint64_t hash() const;  // FNV-1a of canonical_text
};

// Flat key=value file, UTF-8, '#' comments. Unknown keys are rejected with the
// offending key name; violated invariants are reported with the rule.
RunConfig parse_config_text(const std::string& text, const std::string& origin);
RunConfig parse_config(const std::string& path);

// The shipped default configuration, as text (parse_config_text round-trips it).
std::string default_config_text();

}  // namespace mhdshell::io
