#include "dnls/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace dnls {

namespace {
Field apply_gauge(const Field& v, double a) {
  require_finite(v, "gauge input");
  double sup = 0.0;
  for (const cd& z : v.v) sup = std::max(sup, std::abs(z));
  if (std::abs(v.v[0]) > 1e-8 * sup) {
    char msg[96];
    std::snprintf(msg, sizeof(msg), "field does not vanish at the left box edge (|v(-L)| = %.3e)",
                  std::abs(v.v[0]));
    fail(errc::left_tail_not_decayed, msg);
  }
  Field u = make_field(v.grid);
  const double dx = v.grid.dx();
  double phase_int = 0.0;  // left-Riemann cumulative integral of |v|^2
  for (std::size_t m = 0; m < v.size(); ++m) {
    u.v[m] = v.v[m] * std::polar(1.0, a * phase_int);
    phase_int += dx * std::norm(v.v[m]);
  }
  return u;
}
}  // namespace

Field gauge_forward(const Field& v, double a) { return apply_gauge(v, a); }

Field gauge_inverse(const Field& u, double a) { return apply_gauge(u, -a); }

}  // namespace dnls
