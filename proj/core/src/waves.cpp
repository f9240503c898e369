#include "dnls/waves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace dnls {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kEdgeAmplitude = 1e-5;  // edge mass density 1e-10

struct SubParams {
  double nu;  // sqrt(4w - c^2)
  double b;   // c / (2 sqrt(w))
  double amp; // nu / w^{1/4}
};

SubParams sub_params(double omega, double c) {
  const double nu2 = 4.0 * omega - c * c;
  return SubParams{std::sqrt(nu2), c / (2.0 * std::sqrt(omega)), std::sqrt(nu2) / std::pow(omega, 0.25)};
}

// phi and phi' written with q = e^{-nu|x|} so cosh never overflows:
// cosh(nu x) - b = e^{nu|x|} * D, D = (1+q^2)/2 - b q.
double phi_sub(const SubParams& s, double x) {
  const double ax = s.nu * std::abs(x);
  const double q = std::exp(-ax);
  const double d = 0.5 * (1.0 + q * q) - s.b * q;
  return s.amp * std::exp(-0.5 * ax) / std::sqrt(d);
}

double phi_sub_deriv(const SubParams& s, double x) {
  const double ax = s.nu * std::abs(x);
  const double q = std::exp(-ax);
  const double d = 0.5 * (1.0 + q * q) - s.b * q;
  const double sgn = (x > 0.0) ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
  return -0.25 * s.amp * s.nu * sgn * (1.0 - q * q) * std::exp(-0.5 * ax) / std::pow(d, 1.5);
}

void require_wave_regime(double omega, double c, const char* who) {
  if (classify_regime(omega, c) == Regime::supercritical)
    fail(errc::regime_unsupported, std::string(who) + ": need c^2 <= 4*omega (omega=" +
                                       std::to_string(omega) + ", c=" + std::to_string(c) + ")");
}
}  // namespace

Regime classify_regime(double omega, double c) {
  const double disc = c * c - 4.0 * omega;
  const double tol = 1e-12 * std::max(1.0, c * c);
  if (std::abs(disc) <= tol && c > 0.0) return Regime::critical;
  if (disc < -tol) return Regime::subcritical;
  return Regime::supercritical;
}

double reduce_gamma(double gamma) {
  double g = std::fmod(gamma, kTwoPi);
  if (g < 0.0) g += kTwoPi;
  return g;
}

double phi_value(double omega, double c, double x) {
  require_wave_regime(omega, c, "phi_value");
  if (classify_regime(omega, c) == Regime::critical)
    return 2.0 * std::sqrt(c) / std::sqrt(c * c * x * x + 1.0);
  return phi_sub(sub_params(omega, c), x);
}

double phi_deriv_value(double omega, double c, double x) {
  require_wave_regime(omega, c, "phi_deriv_value");
  if (classify_regime(omega, c) == Regime::critical) {
    const double r = c * c * x * x + 1.0;
    return -2.0 * std::sqrt(c) * c * c * x / (r * std::sqrt(r));
  }
  return phi_sub_deriv(sub_params(omega, c), x);
}

namespace {
// Periodized profile value: a 5-image sum is exact to below 1e-30 relative for
// every box used here; critical (algebraic) profiles are not periodized.
template <typename F>
double periodized(const F& f, double per, double x) {
  double s = 0.0;
  for (int i = -2; i <= 2; ++i) s += f(x + per * static_cast<double>(i));
  return s;
}
}  // namespace

Field phi_profile(double omega, double c, const GridSpec& g) {
  require_wave_regime(omega, c, "phi_profile");
  Field f = make_field(g);
  if (classify_regime(omega, c) == Regime::critical) {
    for (std::size_t m = 0; m < g.n; ++m) f.v[m] = cd{phi_value(omega, c, g.node(m)), 0.0};
    return f;
  }
  const SubParams s = sub_params(omega, c);
  const double per = 2.0 * g.half_length;
  for (std::size_t m = 0; m < g.n; ++m)
    f.v[m] = cd{periodized([&](double x) { return phi_sub(s, x); }, per, g.node(m)), 0.0};
  return f;
}

Field phi_profile_deriv(double omega, double c, const GridSpec& g) {
  require_wave_regime(omega, c, "phi_profile_deriv");
  Field f = make_field(g);
  if (classify_regime(omega, c) == Regime::critical) {
    for (std::size_t m = 0; m < g.n; ++m) f.v[m] = cd{phi_deriv_value(omega, c, g.node(m)), 0.0};
    return f;
  }
  const SubParams s = sub_params(omega, c);
  const double per = 2.0 * g.half_length;
  for (std::size_t m = 0; m < g.n; ++m)
    f.v[m] = cd{periodized([&](double x) { return phi_sub_deriv(s, x); }, per, g.node(m)), 0.0};
  return f;
}

Field wave_field(const WaveParams& p, const GridSpec& g, double t) {
  require_wave_regime(p.omega, p.c, "wave_field");
  const bool critical = classify_regime(p.omega, p.c) == Regime::critical;
  const SubParams s = critical ? SubParams{} : sub_params(p.omega, p.c);
  const double per = 2.0 * g.half_length;
  const double center = p.x0 + p.c * t;
  const double gam = reduce_gamma(p.gamma);
  Field f = make_field(g);
  double min_amp = std::numeric_limits<double>::max();
  // The phase slope c/2 is generally not a box harmonic, so the wave is
  // periodized as a full complex image sum (phases included); a plain seam in
  // the phase would otherwise pollute every spectral derivative.
  for (std::size_t m = 0; m < g.n; ++m) {
    const double y = g.node(m) - center;
    cd z;
    if (critical) {
      z = std::polar(phi_value(p.omega, p.c, y), p.omega * t + gam + 0.5 * p.c * y);
    } else {
      z = cd{0.0, 0.0};
      for (int i = -2; i <= 2; ++i) {
        const double yi = y + per * static_cast<double>(i);
        z += std::polar(phi_sub(s, yi), p.omega * t + gam + 0.5 * p.c * yi);
      }
    }
    min_amp = std::min(min_amp, std::abs(z));
    f.v[m] = z;
  }
  if (min_amp > kEdgeAmplitude)
    fail(errc::tail_too_fat, "box too small: edge amplitude " + std::to_string(min_amp) +
                                 " exceeds " + std::to_string(kEdgeAmplitude));
  return f;
}

WaveGrad wave_param_grad(const WaveParams& p, const GridSpec& g) {
  auto step = [](double v) { return 1e-5 * std::max(1.0, std::abs(v)); };
  const double hw = step(p.omega), hc = step(p.c), hx = step(p.x0), hg = step(p.gamma);
  for (double sgn : {-1.0, 1.0}) {
    if (classify_regime(p.omega + sgn * hw, p.c) == Regime::supercritical ||
        classify_regime(p.omega, p.c + sgn * hc) == Regime::supercritical)
      fail(errc::step_breaks_regime, "finite-difference stencil leaves the subcritical cone");
  }
  auto central = [&](auto get, double h) {
    WaveParams lo = p, hi = p;
    get(lo) -= h;
    get(hi) += h;
    Field a = wave_field(lo, g), b = wave_field(hi, g);
    Field out = make_field(g);
    const double inv = 1.0 / (2.0 * h);
    for (std::size_t m = 0; m < g.n; ++m) out.v[m] = (b.v[m] - a.v[m]) * inv;
    return out;
  };
  WaveGrad grad{
      central([](WaveParams& q) -> double& { return q.omega; }, hw),
      central([](WaveParams& q) -> double& { return q.c; }, hc),
      central([](WaveParams& q) -> double& { return q.x0; }, hx),
      central([](WaveParams& q) -> double& { return q.gamma; }, hg),
  };
  return grad;
}

WaveResiduals residuals(const WaveParams& p, const GridSpec& g) {
  // Stationary profile equation.
  Field phi = phi_profile(p.omega, p.c, g);
  Field phi_xx = spectral_derivative(phi, 2);
  double r_ell = 0.0;
  const double mu = p.omega - 0.25 * p.c * p.c;
  for (std::size_t m = 0; m < g.n; ++m) {
    const double f = phi.v[m].real();
    const double r =
        mu * f - phi_xx.v[m].real() - (3.0 / 16.0) * f * f * f * f * f + 0.5 * p.c * f * f * f;
    r_ell = std::max(r_ell, std::abs(r));
  }
  // Traveling profile equation for the full complex wave.
  Field R = wave_field(p, g);
  Field Rx = spectral_derivative(R, 1);
  Field Rxx = spectral_derivative(R, 2);
  double r_tw = 0.0;
  for (std::size_t m = 0; m < g.n; ++m) {
    const cd r = R.v[m], rx = Rx.v[m], rxx = Rxx.v[m];
    const double a2 = std::norm(r);
    const cd res = p.omega * r - rxx - (3.0 / 16.0) * a2 * a2 * r + cd{0.0, p.c} * rx -
                   cd{0.0, 0.5} * a2 * rx + cd{0.0, 0.5} * r * r * std::conj(rx);
    r_tw = std::max(r_tw, std::abs(res));
  }
  return WaveResiduals{r_ell, r_tw};
}

}  // namespace dnls
