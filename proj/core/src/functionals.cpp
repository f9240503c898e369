#include "dnls/functionals.hpp"

#include <algorithm>
#include <cmath>

namespace dnls {

namespace {
double im_u_conj_ux_integral(const Field& u, const Field& ux) {
  double s = 0.0;
  for (std::size_t m = 0; m < u.size(); ++m)
    s += std::imag(std::conj(u.v[m]) * ux.v[m]);
  return s * u.grid.dx();
}
}  // namespace

Conserved conserved(const Field& u) {
  const Field ux = spectral_derivative(u, 1);
  const double dx = u.grid.dx();
  double m2 = 0.0, m4 = 0.0, m6 = 0.0, kin = 0.0;
  for (std::size_t m = 0; m < u.size(); ++m) {
    const double a2 = std::norm(u.v[m]);
    m2 += a2;
    m4 += a2 * a2;
    m6 += a2 * a2 * a2;
    kin += std::norm(ux.v[m]);
  }
  m2 *= dx;
  m4 *= dx;
  m6 *= dx;
  kin *= dx;
  const double cross = im_u_conj_ux_integral(u, ux);
  return Conserved{0.5 * m2, -0.5 * cross + 0.125 * m4, 0.5 * kin - m6 / 32.0};
}

std::vector<double> mass_density(const Field& u) {
  std::vector<double> d(u.size());
  for (std::size_t m = 0; m < u.size(); ++m) d[m] = 0.5 * std::norm(u.v[m]);
  return d;
}

std::vector<double> momentum_density(const Field& u) {
  const Field ux = spectral_derivative(u, 1);
  std::vector<double> d(u.size());
  for (std::size_t m = 0; m < u.size(); ++m) {
    const double a2 = std::norm(u.v[m]);
    d[m] = -0.5 * std::imag(std::conj(u.v[m]) * ux.v[m]) + 0.125 * a2 * a2;
  }
  return d;
}

double action(double omega, double c, const Field& u) {
  const Conserved q = conserved(u);
  return q.energy + omega * q.mass + c * q.momentum;
}

double nehari(double omega, double c, const Field& u) {
  const Field ux = spectral_derivative(u, 1);
  const double dx = u.grid.dx();
  double s = 0.0;
  for (std::size_t m = 0; m < u.size(); ++m) {
    const double a2 = std::norm(u.v[m]);
    s += std::norm(ux.v[m]) - (3.0 / 16.0) * a2 * a2 * a2 + omega * a2 -
         c * std::imag(std::conj(u.v[m]) * ux.v[m]) + 0.5 * c * a2 * a2;
  }
  return s * dx;
}

SolitonMP soliton_mass_momentum(double omega, double c, const GridSpec& g) {
  const Field R = wave_field(WaveParams{omega, c, 0.0, 0.0}, g);
  const Conserved q = conserved(R);
  return SolitonMP{q.mass, q.momentum};
}

double HessianD2::defect() const { return std::abs(m[0][1] - m[1][0]); }

HessianD2 d_second(double omega, double c, const GridSpec& g) {
  auto step = [](double v) { return 1e-4 * std::max(1.0, std::abs(v)); };
  const double hw = step(omega), hc = step(c);
  for (double sgn : {-1.0, 1.0}) {
    if (classify_regime(omega + sgn * hw, c) == Regime::supercritical ||
        classify_regime(omega, c + sgn * hc) == Regime::supercritical)
      fail(errc::step_breaks_regime, "Hessian stencil leaves the subcritical cone");
  }
  const SolitonMP wp = soliton_mass_momentum(omega + hw, c, g);
  const SolitonMP wm = soliton_mass_momentum(omega - hw, c, g);
  const SolitonMP cp = soliton_mass_momentum(omega, c + hc, g);
  const SolitonMP cm = soliton_mass_momentum(omega, c - hc, g);
  HessianD2 h;
  h.m[0][0] = (wp.mass - wm.mass) / (2.0 * hw);
  h.m[0][1] = (cp.mass - cm.mass) / (2.0 * hc);
  h.m[1][0] = (wp.momentum - wm.momentum) / (2.0 * hw);
  h.m[1][1] = (cp.momentum - cm.momentum) / (2.0 * hc);
  return h;
}

}  // namespace dnls
