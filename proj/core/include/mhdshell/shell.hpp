#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace mhdshell::shell {

struct ShellParams {
  std::size_t n_nodes = 256;
  double alpha1 = 1.0;  // viscoelasticity coefficient
  double alpha2 = 1.0;  // rotational inertia coefficient
  int substeps = 4;     // backward-Euler substeps per coupling window

  void validate() const;
};

// Displacement w, velocity v = w_t and temperature theta at n uniform torus nodes.
struct ShellState {
  std::vector<double> w;
  std::vector<double> v;
  std::vector<double> theta;
  double t = 0.0;

  static ShellState zeros(std::size_t n);
  std::size_t size() const { return w.size(); }
};

// Per-node samples driving one window: normal surface force sigma_w (F.n),
// entropy flux sigma_w q, and the penalty target tau_dt v.n.
struct ShellForcing {
  std::vector<double> f_n;
  std::vector<double> q_s;
  std::vector<double> v_target;

  static ShellForcing zeros(std::size_t n);
};

// Spectral symbol of the periodic Laplacian, -(2 pi k)^2.
double laplacian_symbol(int k);

// One backward-Euler substep of length tau of the mode-decoupled system
//   (1-delta)(v+ - v)/tau + s^2 w+ + s theta+ - a1 s v+ - a2 s (v+ - v)/tau
//        + (delta/dt_window)(v+ - v_target) = f_n,
//   (theta+ - theta)/tau - s theta+ - s v+ = q_s,      w+ = w + tau v+.
// Throws DegeneracyError if the updated displacement exits (bound_lo, bound_hi).
ShellState shell_step(const ShellState& state, const ShellForcing& forcing, double tau,
                      double dt_window, double delta, double alpha1, double alpha2,
                      double bound_lo = -std::numeric_limits<double>::infinity(),
                      double bound_hi = std::numeric_limits<double>::infinity());

struct EnergyBreakdown {
  double kinetic = 0.0;     // 1/2 ||v||^2
  double bending = 0.0;     // 1/2 ||Lap w||^2
  double rotational = 0.0;  // alpha2/2 ||grad v||^2
  double thermal = 0.0;     // ||theta||^2

  double total() const { return kinetic + bending + rotational + thermal; }
};

EnergyBreakdown shell_energy(const ShellState& state, double alpha2);

// L2(Gamma) norms by spectral quadrature (unit torus measure).
double norm2_l2(const std::vector<double>& samples);
double norm2_grad(const std::vector<double>& samples);

}  // namespace mhdshell::shell
