#include <cmath>

#include "dnls/functionals.hpp"
#include "dnls/waves.hpp"
#include "doctest.h"

using namespace dnls;

namespace {
// Closed forms for the soliton invariants, derived by integrating the profile
// (int du/(cosh u - b) = 2(pi/2 + arcsin b)/sqrt(1-b^2) and its b-derivative):
//   M(w,c) = pi + 2 arcsin(c / (2 sqrt(w))),  P(w,c) = sqrt(4w - c^2),
// giving det d'' = -1/w exactly.
double mass_exact(double w, double c) { return M_PI + 2.0 * std::asin(c / (2.0 * std::sqrt(w))); }
double mom_exact(double w, double c) { return std::sqrt(4.0 * w - c * c); }
}  // namespace

TEST_CASE("golden invariants at (1,0)") {
  GridSpec g = make_grid(20.0, 1024);
  Field R = wave_field(WaveParams{1.0, 0.0, 0.0, 0.0}, g);
  Conserved q = conserved(R);
  CHECK(std::abs(q.mass - M_PI) < 1e-8);
  CHECK(std::abs(q.momentum - 2.0) < 1e-8);
  CHECK(std::abs(q.energy - 0.0) < 1e-8);
  CHECK(std::abs(action(1.0, 0.0, R) - M_PI) < 1e-8);
  CHECK(std::abs(nehari(1.0, 0.0, R)) < 1e-8);
}

TEST_CASE("soliton mass and momentum match the closed forms") {
  GridSpec g = make_grid(25.0, 1024);
  for (auto [w, c] : {std::pair{1.0, 0.0}, {1.0, 1.0}, {1.0, -1.0}, {2.0, 1.5}, {0.5, 0.7}}) {
    SolitonMP mp = soliton_mass_momentum(w, c, g);
    CHECK(mp.mass == doctest::Approx(mass_exact(w, c)).epsilon(1e-10));
    CHECK(mp.momentum == doctest::Approx(mom_exact(w, c)).epsilon(1e-10));
  }
}

TEST_CASE("nehari functional vanishes on every soliton") {
  GridSpec g = make_grid(25.0, 1024);
  for (auto [w, c] : {std::pair{1.0, 1.0}, {2.0, 1.5}, {0.5, -0.7}, {1.5, 0.0}}) {
    Field R = wave_field(WaveParams{w, c, 0.3, 0.8}, g);
    CHECK(std::abs(nehari(w, c, R)) < 1e-8);
  }
}

TEST_CASE("action is stationary on the soliton family") {
  // J(w,c; u) at fixed (w,c) has zero derivative along the family parameters.
  GridSpec g = make_grid(25.0, 1024);
  const double w = 1.0, c = 0.8, h = 1e-5;
  auto jat = [&](double w2, double c2) {
    Field R = wave_field(WaveParams{w2, c2, 0.0, 0.0}, g);
    return action(w, c, R);
  };
  const double dw = (jat(w + h, c) - jat(w - h, c)) / (2.0 * h);
  const double dc = (jat(w, c + h) - jat(w, c - h)) / (2.0 * h);
  CHECK(std::abs(dw) < 1e-8);
  CHECK(std::abs(dc) < 1e-8);
}

TEST_CASE("Hessian d'' matches the analytic Jacobian of (M,P)") {
  // dM/dw = -c/(nu w), dM/dc = dP/dw = 2/nu, dP/dc = -c/nu, det = -1/w.
  GridSpec g = make_grid(25.0, 1024);
  for (auto [w, c] : {std::pair{1.0, 0.0}, {1.0, 1.0}, {2.0, -1.5}, {0.5, 0.7}}) {
    const double nu = std::sqrt(4.0 * w - c * c);
    HessianD2 h = d_second(w, c, g);
    CHECK(h.m[0][0] == doctest::Approx(-c / (nu * w)).epsilon(1e-6));
    CHECK(h.m[0][1] == doctest::Approx(2.0 / nu).epsilon(1e-6));
    CHECK(h.m[1][0] == doctest::Approx(2.0 / nu).epsilon(1e-6));
    CHECK(h.m[1][1] == doctest::Approx(-c / nu).epsilon(1e-6));
    CHECK(h.det() == doctest::Approx(-1.0 / w).epsilon(1e-6));
    CHECK(h.det() < 0.0);
    CHECK(h.defect() < 1e-6);
  }
}

TEST_CASE("Hessian stencil regime guard") {
  GridSpec g = make_grid(20.0, 512);
  CHECK_THROWS_AS(d_second(1.0, 2.0 - 1e-6, g), error);
}

TEST_CASE("densities integrate to the functionals") {
  GridSpec g = make_grid(25.0, 1024);
  Field R = wave_field(WaveParams{1.0, 0.6, -0.4, 0.2}, g);
  Conserved q = conserved(R);
  CHECK(integrate_real(mass_density(R), g) == doctest::Approx(q.mass).epsilon(1e-12));
  CHECK(integrate_real(momentum_density(R), g) == doctest::Approx(q.momentum).epsilon(1e-12));
}
