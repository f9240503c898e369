#pragma once
#include "dnls/grid.hpp"

namespace dnls {

// Gauge map u = exp(i a int_{-L}^{x} |v|^2 dy) v with the integral taken as a
// left-endpoint cumulative rectangle sum from the left box edge. The modulus
// is preserved pointwise, so gauge_inverse(gauge_forward(v, a), a) recovers v
// up to rounding and maps compose additively in a.
// Throws LeftTailNotDecayed when |v(-L)| > 1e-8 * sup|v|.
Field gauge_forward(const Field& v, double a = 0.75);
Field gauge_inverse(const Field& u, double a = 0.75);

}  // namespace dnls
