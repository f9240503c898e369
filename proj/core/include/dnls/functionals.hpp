#pragma once
#include "dnls/grid.hpp"
#include "dnls/waves.hpp"

namespace dnls {

// M = (1/2) int |u|^2
// P = -(1/2) Im int conj(u) u_x + (1/8) int |u|^4
// E = (1/2) int |u_x|^2 - (1/32) int |u|^6
struct Conserved {
  double mass;
  double momentum;
  double energy;
};

Conserved conserved(const Field& u);

// Pointwise densities of M and P (used by the localized functionals).
std::vector<double> mass_density(const Field& u);
std::vector<double> momentum_density(const Field& u);

// J = E + omega*M + c*P
double action(double omega, double c, const Field& u);

// K = int(|u_x|^2 - (3/16)|u|^6 + omega|u|^2 - c Im(conj(u)u_x) + (c/2)|u|^4)
double nehari(double omega, double c, const Field& u);

// M and P of the traveling wave R_{omega,c} (x0 = gamma = 0) on grid g.
struct SolitonMP {
  double mass;
  double momentum;
};
SolitonMP soliton_mass_momentum(double omega, double c, const GridSpec& g);

// 2x2 Hessian d''(omega,c) = [[dM/domega, dM/dc], [dP/domega, dP/dc]] by
// central differences (step 1e-4*max(1,|param|)). The off-diagonal entries
// agree in exact arithmetic; defect reports |d12 - d21|.
struct HessianD2 {
  double m[2][2];
  double det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
  double defect() const;
};
HessianD2 d_second(double omega, double c, const GridSpec& g);

}  // namespace dnls
