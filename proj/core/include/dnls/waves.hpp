#pragma once
#include <utility>

#include "dnls/grid.hpp"

namespace dnls {

enum class Regime { subcritical, critical, supercritical };

// Traveling-wave parameters (omega, c, x0, gamma).
struct WaveParams {
  double omega = 1.0;
  double c = 0.0;
  double x0 = 0.0;
  double gamma = 0.0;
};

// critical means c^2 = 4*omega (within 1e-12*max(1,c^2)) with c > 0.
Regime classify_regime(double omega, double c);

double reduce_gamma(double gamma);  // to [0, 2*pi)

// Pointwise ground-state profile and derivative on the line (closed form,
// overflow-safe at any x). Subcritical or critical only.
double phi_value(double omega, double c, double x);
double phi_deriv_value(double omega, double c, double x);

// Profile sampled on the grid. Subcritical profiles are periodized by a short
// image sum so the sampled data is smooth across the seam; the correction is
// O(phi(2*half_length)) and far below every tolerance used here.
Field phi_profile(double omega, double c, const GridSpec& g);
Field phi_profile_deriv(double omega, double c, const GridSpec& g);

// R(x,t) = e^{i omega t} phi(x - x0 - c t) e^{i(gamma + (c/2)(x - x0 - c t))}.
// Throws TailTooFat when the box cannot hold the tails (edge mass density
// above 1e-10, i.e. edge amplitude above 1e-5).
Field wave_field(const WaveParams& p, const GridSpec& g, double t = 0.0);

struct WaveGrad {
  Field domega, dc, dx0, dgamma;
};

// Central finite differences of wave_field at t=0; step 1e-5*max(1,|param|).
WaveGrad wave_param_grad(const WaveParams& p, const GridSpec& g);

// Sup norms of the stationary elliptic residual of phi and of the traveling
// profile equation applied to wave_field at t=0.
struct WaveResiduals {
  double elliptic;
  double traveling;
};
WaveResiduals residuals(const WaveParams& p, const GridSpec& g);

}  // namespace dnls
