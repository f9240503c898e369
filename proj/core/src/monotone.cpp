#include "dnls/monotone.hpp"

#include <algorithm>
#include <cmath>

#include "dnls/functionals.hpp"
#include "dnls/waves.hpp"

namespace dnls {

double ramp_septic(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double t4 = t * t * t * t;
  return t4 * (35.0 - 84.0 * t + 70.0 * t * t - 20.0 * t * t * t);
}

double ramp_septic_d1(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double u = 1.0 - t;
  return 140.0 * t * t * t * u * u * u;
}

double ramp_septic_d2(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double u = 1.0 - t;
  return 420.0 * t * t * u * u * (1.0 - 2.0 * t);
}

double cutoff_h(double x) { return ramp_septic(0.5 * (x + 1.0)); }
double cutoff_h_d1(double x) { return 0.5 * ramp_septic_d1(0.5 * (x + 1.0)); }
double cutoff_h_d2(double x) { return 0.25 * ramp_septic_d2(0.5 * (x + 1.0)); }

CutoffAudit cutoff_audit(std::size_t points, double edge) {
  CutoffAudit out{0.0, 0.0};
  for (std::size_t i = 0; i < points; ++i) {
    const double t = edge + (1.0 - 2.0 * edge) * static_cast<double>(i) /
                                static_cast<double>(points - 1);
    const double s = ramp_septic(t), s1 = ramp_septic_d1(t), s2 = ramp_septic_d2(t);
    // In h coordinates: (h')^2/h = s1^2/(4 s), (h'')^2/h' = s2^2/(8 s1).
    out.c_a = std::max(out.c_a, s1 * s1 / (4.0 * s));
    out.c_b = std::max(out.c_b, s2 * s2 / (8.0 * s1));
  }
  return out;
}

std::vector<double> partition_left_weight(const GridSpec& g, double x1, double x2, double L) {
  const double a = x1 + L / 8.0, b = x2 - L / 8.0;
  if (!(b > a)) fail(errc::bad_domain, "partition transition interval is empty");
  std::vector<double> w(g.n);
  for (std::size_t m = 0; m < g.n; ++m)
    w[m] = 1.0 - ramp_septic((g.node(m) - a) / (b - a));
  return w;
}

double window_profile(double z) {
  const double az = std::abs(z);
  if (az <= 1.0) return 1.0;
  if (az >= 2.0) return std::exp(-az);
  const double s = ramp_septic(az - 1.0);
  return (1.0 - s) + s * std::exp(-az);
}

std::vector<double> exp_window_weight(const GridSpec& g, double B, double y0) {
  if (!(B > 0.0)) fail(errc::bad_domain, "window width must be positive");
  std::vector<double> w(g.n);
  for (std::size_t m = 0; m < g.n; ++m) w[m] = window_profile((g.node(m) - y0) / B);
  return w;
}

LineSpec make_line(double origin, double speed, double L) {
  if (!(L > 0.0)) fail(errc::bad_domain, "separation must be positive");
  return LineSpec{origin, speed, L * L / 64.0};
}

std::vector<double> line_weight(double t, const LineSpec& line, const GridSpec& g) {
  if (!(t + line.a > 0.0)) fail(errc::bad_domain, "line weight needs t + a > 0");
  const double root = std::sqrt(t + line.a);
  const double center = line.origin + line.speed * t;
  std::vector<double> w(g.n);
  for (std::size_t m = 0; m < g.n; ++m) w[m] = cutoff_h((g.node(m) - center) / root);
  return w;
}

std::vector<double> line_weight_deriv(double t, const LineSpec& line, const GridSpec& g) {
  const double root = std::sqrt(t + line.a);
  const double center = line.origin + line.speed * t;
  std::vector<double> w(g.n);
  for (std::size_t m = 0; m < g.n; ++m)
    w[m] = cutoff_h_d1((g.node(m) - center) / root) / root;
  return w;
}

PairSpeeds pair_speeds(double w1, double c1, double w2, double c2) {
  PairSpeeds s;
  s.cond_a = classify_regime(w1, c1) == Regime::subcritical &&
             classify_regime(w2, c2) == Regime::subcritical;
  s.cond_b = 0.0 < c1 && c1 < c2;
  if (c2 == c1) fail(errc::bad_domain, "equal speeds: sigma undefined");
  s.sigma = 2.0 * (w2 - w1) / (c2 - c1);
  s.cond_c = std::max(c1, 0.0) < s.sigma && s.sigma < c2;
  s.sp0 = 0.5 * (s.sigma + c2);
  s.sm0 = 0.5 * (s.sigma + std::max(c1, 0.0));
  const double nu1 = std::sqrt(std::max(4.0 * w1 - c1 * c1, 0.0));
  const double nu2 = std::sqrt(std::max(4.0 * w2 - c2 * c2, 0.0));
  s.theta1 = 0.25 * std::min({nu1, nu2, c2 - c1});
  auto theta_for = [&](double v) {
    return (1.0 / 16.0) * std::min({v - c1, c2 - v, 0.25 * nu1, 0.25 * nu2});
  };
  s.theta2 = theta_for(s.sigma);
  s.theta3 = std::min(theta_for(s.sp0), theta_for(s.sm0));
  s.theta0 = std::min({s.theta1, s.theta2, s.theta3});
  return s;
}

LocalizedValues localized_functionals(double t, const Field& u, double w1, double c1, double w2,
                                      double c2, double xbar0, double L) {
  const PairSpeeds sp = pair_speeds(w1, c1, w2, c2);
  const GridSpec& g = u.grid;
  const std::vector<double> md = mass_density(u);
  const std::vector<double> pd = momentum_density(u);
  const double dx = g.dx();

  auto weighted = [&](const std::vector<double>& w, const std::vector<double>& d) {
    double s = 0.0;
    for (std::size_t m = 0; m < g.n; ++m) s += w[m] * d[m];
    return s * dx;
  };

  const LineSpec center = make_line(xbar0, sp.sigma, L);
  const std::vector<double> hv = line_weight(t, center, g);
  std::vector<double> gv(g.n);
  for (std::size_t m = 0; m < g.n; ++m) gv[m] = 1.0 - hv[m];

  LocalizedValues out;
  const double mh = weighted(hv, md), ph = weighted(hv, pd);
  const double mg = weighted(gv, md), pg = weighted(gv, pd);
  out.F = w1 * mg + c1 * pg + w2 * mh + c2 * ph;
  out.Q = (w2 - w1) * mh + (c2 - c1) * ph;
  out.E_loc = conserved(u).energy + out.F;

  auto q_line_momentum = [&](double v) {
    const LineSpec l = make_line(xbar0, v, L);
    const std::vector<double> w = line_weight(t, l, g);
    return (c2 - c1) * (0.5 * v * weighted(w, md) + weighted(w, pd));
  };
  auto q_line_mass = [&](double v) {
    const LineSpec l = make_line(xbar0, v, L);
    const std::vector<double> w = line_weight(t, l, g);
    return (w2 - w1) * (weighted(w, md) + (2.0 / v) * weighted(w, pd));
  };
  out.Q_p0 = q_line_momentum(sp.sp0);
  out.Q_m0 = q_line_momentum(sp.sm0);
  out.Q_0p = q_line_mass(sp.sm0);
  out.Q_0m = q_line_mass(sp.sp0);
  return out;
}

double local_mass_window(double t, const Field& u, const LineSpec& line) {
  const double root = std::sqrt(t + line.a);
  const double center = line.origin + line.speed * t;
  double s = 0.0;
  for (std::size_t m = 0; m < u.size(); ++m)
    if (std::abs(u.grid.node(m) - center) < root) s += std::norm(u.v[m]);
  return s * u.grid.dx();
}

QuarticCheck quartic_inequality_check(const Field& w, const std::vector<double>& h,
                                      const std::vector<double>& hx) {
  const GridSpec& g = w.grid;
  if (h.size() != g.n || hx.size() != g.n) fail(errc::grid_mismatch, "weight length mismatch");
  const Field wx = spectral_derivative(w, 1);
  const double dx = g.dx();
  QuarticCheck out;
  double grad_h = 0.0, mass_h = 0.0, mass_hx = 0.0;
  for (std::size_t m = 0; m < g.n; ++m) {
    const double a2 = std::norm(w.v[m]);
    out.lhs_quartic += a2 * a2 * h[m];
    out.mid = std::max(out.mid, a2 * h[m]);
    if (h[m] > 0.0) out.mass_supp += a2;
    grad_h += std::norm(wx.v[m]) * h[m];
    mass_h += a2 * h[m];
    mass_hx += a2 * std::abs(hx[m]);
  }
  out.lhs_quartic *= dx;
  out.mass_supp *= dx;
  grad_h *= dx;
  mass_h *= dx;
  mass_hx *= dx;
  out.rhs_sup = 2.0 * std::sqrt(grad_h) * std::sqrt(mass_h) + mass_hx;
  const double slack = 1e-12 * (1.0 + out.mid * out.mass_supp + out.rhs_sup);
  out.ok = out.lhs_quartic <= out.mid * out.mass_supp + slack && out.mid <= out.rhs_sup + slack;
  return out;
}

}  // namespace dnls
