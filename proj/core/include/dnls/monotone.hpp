#pragma once
#include <vector>

#include "dnls/grid.hpp"

namespace dnls {

// Septic ramp s(t) = 35t^4 - 84t^5 + 70t^6 - 20t^7: s(0)=0, s(1)=1 with three
// vanishing derivatives at both ends; clamped outside [0,1].
double ramp_septic(double t);
double ramp_septic_d1(double t);  // 140 t^3 (1-t)^3
double ramp_septic_d2(double t);  // 420 t^2 (1-t)^2 (1-2t)

// Cutoff h on [-1,1]: h(x) = s((x+1)/2); 0 left of -1, 1 right of 1.
double cutoff_h(double x);
double cutoff_h_d1(double x);
double cutoff_h_d2(double x);

// sup (h')^2/h and sup (h'')^2/h' over a uniform t-grid of `points` samples
// on [edge, 1-edge]; both are finite for this ramp.
struct CutoffAudit {
  double c_a;
  double c_b;
};
CutoffAudit cutoff_audit(std::size_t points = 100000, double edge = 1e-6);

// Smooth partition for the two-soliton forms: left weight 1 for
// x <= x1 + L/8, 0 for x >= x2 - L/8, septic ramp between.
std::vector<double> partition_left_weight(const GridSpec& g, double x1, double x2, double L);

// Even C^2 window Phi((x-y0)/B): 1 on |z|<=1, e^{-|z|} beyond |z|=2, and a
// ramp blend in between that stays inside [e^{-|z|}, 3.5 e^{-|z|}],
// decreasing in |z|.
double window_profile(double z);
std::vector<double> exp_window_weight(const GridSpec& g, double B, double y0);

// ---- moving-line machinery ------------------------------------------------

// Weight h((x - origin - speed*t)/sqrt(t + a)); a = L^2/64 at construction.
struct LineSpec {
  double origin = 0.0;
  double speed = 0.0;
  double a = 1.0;
};
LineSpec make_line(double origin, double speed, double L);

std::vector<double> line_weight(double t, const LineSpec& line, const GridSpec& g);
// Spatial derivative d/dx of the line weight, h'(z)/sqrt(t + a).
std::vector<double> line_weight_deriv(double t, const LineSpec& line, const GridSpec& g);

// Derived line speeds, decay rates, and the speed ordering conditions for a
// frozen pair (w1,c1), (w2,c2).
struct PairSpeeds {
  double sigma = 0.0;      // 2 (w2 - w1) / (c2 - c1)
  double sp0 = 0.0;        // (sigma + c2)/2     (fast pair of lines)
  double sm0 = 0.0;        // (sigma + max(c1,0))/2
  double theta1 = 0.0, theta2 = 0.0, theta3 = 0.0, theta0 = 0.0;
  bool cond_a = false;     // both waves subcritical
  bool cond_b = false;     // 0 < c1 < c2
  bool cond_c = false;     // max(c1,0) < sigma < c2
  bool all() const { return cond_a && cond_b && cond_c; }
};
PairSpeeds pair_speeds(double w1, double c1, double w2, double c2);

// Localized two-soliton functionals at time t with parameters frozen at t=0:
// F (weighted action), Q (the exchanged part), E_loc = E + F, and the four
// line-shifted variants of Q.
struct LocalizedValues {
  double F = 0.0;
  double Q = 0.0;
  double E_loc = 0.0;
  double Q_p0 = 0.0, Q_m0 = 0.0, Q_0p = 0.0, Q_0m = 0.0;
};
LocalizedValues localized_functionals(double t, const Field& u, double w1, double c1, double w2,
                                      double c2, double xbar0, double L);

// Mass inside the sharp moving window |x - origin - speed t| < sqrt(t + a).
double local_mass_window(double t, const Field& u, const LineSpec& line);

// The two chained quartic-localization inequalities for field w and weight h
// (h_x supplied analytically by the caller).
struct QuarticCheck {
  double lhs_quartic = 0.0;  // int |w|^4 h
  double mid = 0.0;          // sup |w|^2 h
  double mass_supp = 0.0;    // int_{supp h} |w|^2
  double rhs_sup = 0.0;      // 2 sqrt(int |w_x|^2 h) sqrt(int |w|^2 h) + int |w|^2 |h_x|
  bool ok = false;
};
QuarticCheck quartic_inequality_check(const Field& w, const std::vector<double>& h,
                                      const std::vector<double>& hx);

}  // namespace dnls
