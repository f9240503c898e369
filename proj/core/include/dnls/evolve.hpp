#pragma once
#include <functional>
#include <memory>

#include "dnls/grid.hpp"

namespace dnls {

// u_t = i u_xx - (1/2)|u|^2 u_x + (1/2) u^2 conj(u_x) + (3i/16)|u|^4 u
// integrated with an integrating-factor RK4 in Fourier space (12 FFTs per
// step) and a 2/3 dealiasing mask on the nonlinear term.

// min(0.5/k_max^2, 0.1/(k_max*max(umax^2, 1e-6))), k_max = pi*n/(2*half_length).
double suggest_dt(const GridSpec& g, double umax);

// Full right-hand side sampled in physical space (linear part included).
Field rhs(const Field& u, bool dealias = true);

class Stepper {
 public:
  Stepper(const GridSpec& g, double dt, bool dealias = true, bool linear_only = false);
  ~Stepper();
  Stepper(const Stepper&) = delete;
  Stepper& operator=(const Stepper&) = delete;

  double dt() const;
  Field step(const Field& u);  // one step of size dt

  // Spectral-state interface used by evolve(): avoids per-step transforms.
  void load(const Field& u);
  void advance();              // one step on the internal state
  void store(Field& u) const;  // write current state into u (grid must match)

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

using Observer = std::function<void(double t, const Field& u)>;

struct EvolveConfig {
  double t_end = 0.0;
  double dt = 0.0;  // <= 0: use suggest_dt(grid, sup|u0|)
  bool dealias = true;
  std::size_t observer_stride = 1;  // observer every this many steps
};

struct EvolveResult {
  Field u;
  double t;
  std::size_t steps;
  double dt;
};

// Runs ceil-rounded n = round(t_end/dt) steps of size t_end/n so the final
// time is hit exactly; calls the observer at t=0, every stride, and at the
// end. Throws NonFinite (with the failing time) if the state blows up.
EvolveResult evolve(const Field& u0, const EvolveConfig& cfg, const Observer& obs = {});

Field step_ifrk4(const Field& u, double dt, bool dealias = true);

}  // namespace dnls
