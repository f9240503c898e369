#include "dnls/modulation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "dnls/errors.hpp"
#include "dnls/spectral.hpp"

namespace dnls {

namespace {

double fd_step(double v) { return 1e-5 * std::max(1.0, std::abs(v)); }

Eigen::Vector4d pairings(const Field& R, const Field& eps) {
  const auto vs = soliton_constraint_vectors(R);
  const Eigen::VectorXd z = real_coords(eps);
  Eigen::Vector4d rho;
  for (int k = 0; k < 4; ++k) rho(k) = eps.grid.dx() * vs[static_cast<std::size_t>(k)].dot(z);
  return rho;
}

WaveParams nudge(const WaveParams& p, int k, double h) {
  WaveParams q = p;
  switch (k) {
    case 0: q.omega += h; break;
    case 1: q.c += h; break;
    case 2: q.x0 += h; break;
    default: q.gamma += h; break;
  }
  return q;
}

bool subcritical(const WaveParams& p) {
  return classify_regime(p.omega, p.c) == Regime::subcritical;
}

// Shared damped-Newton driver over a flat parameter vector.
struct NewtonProblem {
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> residual;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> jacobian;
  std::function<bool(const Eigen::VectorXd&)> admissible;  // regime/order guards
  errc guard_error = errc::regime_lost;
  const char* guard_message = "step left the admissible parameter region";
};

struct NewtonOutcome {
  Eigen::VectorXd x;
  double resid = 0.0;
  int iters = 0;
};

NewtonOutcome damped_newton(const NewtonProblem& prob, Eigen::VectorXd x, double tol) {
  if (!prob.admissible(x)) fail(prob.guard_error, prob.guard_message);
  Eigen::VectorXd rho = prob.residual(x);
  double rn = rho.norm();
  for (int iter = 1; iter <= 50; ++iter) {
    if (rn < tol) return NewtonOutcome{x, rn, iter - 1};
    const Eigen::MatrixXd jac = prob.jacobian(x);
    const Eigen::VectorXd step = jac.fullPivLu().solve(-rho);
    if (!step.allFinite()) fail(errc::no_convergence, "modulation step is not finite");
    double alpha = 1.0;
    bool accepted = false, any_admissible = false;
    for (int halving = 0; halving <= 8; ++halving, alpha *= 0.5) {
      const Eigen::VectorXd cand = x + alpha * step;
      if (!prob.admissible(cand)) continue;
      any_admissible = true;
      const Eigen::VectorXd crho = prob.residual(cand);
      const double crn = crho.norm();
      if (crn < rn) {
        x = cand;
        rho = crho;
        rn = crn;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (!any_admissible) fail(prob.guard_error, prob.guard_message);
      fail(errc::no_convergence, "modulation iteration stalled");
    }
  }
  if (rn < tol) return NewtonOutcome{x, rn, 50};
  fail(errc::no_convergence, "modulation iteration exceeded 50 steps");
}

Eigen::VectorXd pack(const WaveParams& p) {
  Eigen::VectorXd x(4);
  x << p.omega, p.c, p.x0, p.gamma;
  return x;
}

WaveParams unpack(const Eigen::VectorXd& x) {
  return WaveParams{x(0), x(1), x(2), x(3)};
}

}  // namespace

Eigen::Vector4d residuals_single(const Field& u, const WaveParams& p) {
  const Field R = wave_field(p, u.grid);
  Field eps = make_field(u.grid);
  for (std::size_t m = 0; m < u.size(); ++m) eps.v[m] = u.v[m] - R.v[m];
  return pairings(R, eps);
}

Eigen::Matrix4d modulation_jacobian(const Field& u, const WaveParams& p) {
  Eigen::Matrix4d jac;
  for (int k = 0; k < 4; ++k) {
    const double h = fd_step(pack(p)(k));
    const WaveParams pp = nudge(p, k, h), pm = nudge(p, k, -h);
    if (!subcritical(pp) || !subcritical(pm))
      fail(errc::step_breaks_regime, "Jacobian stencil leaves the subcritical cone");
    jac.col(k) = (residuals_single(u, pp) - residuals_single(u, pm)) / (2.0 * h);
  }
  return jac;
}

SingleFit fit_single(const Field& u, const WaveParams& guess, double tol) {
  NewtonProblem prob;
  prob.residual = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return residuals_single(u, unpack(x));
  };
  prob.jacobian = [&](const Eigen::VectorXd& x) -> Eigen::MatrixXd {
    return modulation_jacobian(u, unpack(x));
  };
  prob.admissible = [](const Eigen::VectorXd& x) { return subcritical(unpack(x)); };
  prob.guard_error = errc::regime_lost;
  prob.guard_message = "fitted wave left the subcritical cone";

  const NewtonOutcome out = damped_newton(prob, pack(guess), tol);
  SingleFit fit{unpack(out.x), make_field(u.grid), out.resid, out.iters};
  const Field R = wave_field(fit.p, u.grid);
  for (std::size_t m = 0; m < u.size(); ++m) fit.eps.v[m] = u.v[m] - R.v[m];
  return fit;
}

Eigen::Matrix<double, 8, 1> residuals_pair(const Field& u, const WaveParams& p1,
                                           const WaveParams& p2) {
  const Field R1 = wave_field(p1, u.grid);
  const Field R2 = wave_field(p2, u.grid);
  Field eps = make_field(u.grid);
  for (std::size_t m = 0; m < u.size(); ++m) eps.v[m] = u.v[m] - R1.v[m] - R2.v[m];
  Eigen::Matrix<double, 8, 1> rho;
  rho.head<4>() = pairings(R1, eps);
  rho.tail<4>() = pairings(R2, eps);
  return rho;
}

PairFit fit_pair(const Field& u, const WaveParams& guess1, const WaveParams& guess2,
                 double tol) {
  auto unpack2 = [](const Eigen::VectorXd& x) {
    return std::pair<WaveParams, WaveParams>{WaveParams{x(0), x(1), x(2), x(3)},
                                             WaveParams{x(4), x(5), x(6), x(7)}};
  };
  NewtonProblem prob;
  prob.residual = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    const auto [p1, p2] = unpack2(x);
    return residuals_pair(u, p1, p2);
  };
  prob.jacobian = [&](const Eigen::VectorXd& x) -> Eigen::MatrixXd {
    Eigen::MatrixXd jac(8, 8);
    for (int k = 0; k < 8; ++k) {
      const double h = fd_step(x(k));
      Eigen::VectorXd xp = x, xm = x;
      xp(k) += h;
      xm(k) -= h;
      const auto [pp1, pp2] = unpack2(xp);
      const auto [pm1, pm2] = unpack2(xm);
      if (!subcritical(pp1) || !subcritical(pp2) || !subcritical(pm1) || !subcritical(pm2))
        fail(errc::step_breaks_regime, "Jacobian stencil leaves the subcritical cone");
      jac.col(k) = (residuals_pair(u, pp1, pp2) - residuals_pair(u, pm1, pm2)) / (2.0 * h);
    }
    return jac;
  };
  prob.admissible = [&](const Eigen::VectorXd& x) {
    const auto [p1, p2] = unpack2(x);
    return subcritical(p1) && subcritical(p2) && p2.x0 - p1.x0 >= 10.0;
  };
  prob.guard_error = errc::separation_too_small;
  prob.guard_message = "fitted centers closer than the minimum separation";
  if (!(guess2.x0 - guess1.x0 >= 10.0))
    fail(errc::separation_too_small, "initial centers closer than the minimum separation");
  if (!subcritical(guess1) || !subcritical(guess2))
    fail(errc::regime_lost, "pair guess is not subcritical");

  Eigen::VectorXd x0(8);
  x0 << guess1.omega, guess1.c, guess1.x0, guess1.gamma, guess2.omega, guess2.c, guess2.x0,
      guess2.gamma;
  const NewtonOutcome out = damped_newton(prob, x0, tol);
  const auto [p1, p2] = unpack2(out.x);
  PairFit fit{p1, p2, make_field(u.grid), out.resid, out.iters};
  const Field R1 = wave_field(p1, u.grid);
  const Field R2 = wave_field(p2, u.grid);
  for (std::size_t m = 0; m < u.size(); ++m) fit.eps.v[m] = u.v[m] - R1.v[m] - R2.v[m];
  return fit;
}

// ---- time tracks ----------------------------------------------------------

namespace {
double unwrap_to(double value, double reference, double period) {
  return value + period * std::round((reference - value) / period);
}
}  // namespace

void ModulationTrack::append(double t, const SingleFit& fit) {
  TrackFrame f{t, fit.p, fit.resid, norm(fit.eps, NormKind::h1)};
  if (!frames.empty()) {
    const TrackFrame& prev = frames.back();
    f.p.gamma = unwrap_to(f.p.gamma, prev.p.gamma, 2.0 * M_PI);
    f.p.x0 = unwrap_to(f.p.x0, prev.p.x0, 2.0 * fit.eps.grid.half_length);
  }
  frames.push_back(f);
}

void PairTrack::append(double t, const PairFit& fit) {
  PairTrackFrame f{t, fit.p1, fit.p2, fit.resid, norm(fit.eps, NormKind::h1)};
  if (!frames.empty()) {
    const PairTrackFrame& prev = frames.back();
    f.p1.gamma = unwrap_to(f.p1.gamma, prev.p1.gamma, 2.0 * M_PI);
    f.p2.gamma = unwrap_to(f.p2.gamma, prev.p2.gamma, 2.0 * M_PI);
    f.p1.x0 = unwrap_to(f.p1.x0, prev.p1.x0, 2.0 * fit.eps.grid.half_length);
    f.p2.x0 = unwrap_to(f.p2.x0, prev.p2.x0, 2.0 * fit.eps.grid.half_length);
  }
  frames.push_back(f);
}

// ---- orbital distance -----------------------------------------------------

OrbitDistance orbit_distance(const Field& u, double omega, double c) {
  const GridSpec& g = u.grid;
  const Field R = wave_field(WaveParams{omega, c, 0.0, 0.0}, g);
  const std::vector<cd> su = spectrum(u);
  const std::vector<cd> sR = spectrum(R);
  const double dx = g.dx();

  // H1 cross-correlation Z(y) = <u, R(. - y)>_{H1} for every grid shift, via
  // one inverse transform of (1 + k^2) hat(u) conj(hat(R)).
  std::vector<cd> amp(g.n);
  double nu2 = 0.0, nR2 = 0.0;
  for (std::size_t j = 0; j < g.n; ++j) {
    const double k = g.wavenumber(j);
    const double w = 1.0 + k * k;
    amp[j] = w * su[j] * std::conj(sR[j]) * dx;
    nu2 += w * std::norm(su[j]);
    nR2 += w * std::norm(sR[j]);
  }
  nu2 *= dx / static_cast<double>(g.n);
  nR2 *= dx / static_cast<double>(g.n);
  // The index-space inverse transform evaluates Z at y = x_m + half_length
  // (the product of two same-convention spectra drops the grid-origin phase).
  const Field zf = from_spectrum(g, amp);
  std::size_t best = 0;
  for (std::size_t m = 1; m < g.n; ++m)
    if (std::abs(zf.v[m]) > std::abs(zf.v[best])) best = m;
  double y_best = g.node(best) + g.half_length;
  if (y_best >= g.half_length) y_best -= 2.0 * g.half_length;

  // Trigonometric evaluation of Z and its y-derivatives for the refinement.
  auto z_at = [&](double y, cd& z0, cd& z1, cd& z2) {
    z0 = z1 = z2 = cd{0.0, 0.0};
    for (std::size_t j = 0; j < g.n; ++j) {
      const double k = g.wavenumber(j);
      const cd ph = amp[j] * std::polar(1.0, k * y);
      z0 += ph;
      z1 += cd{0.0, k} * ph;
      z2 += -k * k * ph;
    }
    const double s = 1.0 / static_cast<double>(g.n);
    z0 *= s;
    z1 *= s;
    z2 *= s;
  };
  double y = y_best;
  for (int it = 0; it < 8; ++it) {
    cd z0, z1, z2;
    z_at(y, z0, z1, z2);
    const double f1 = 2.0 * std::real(std::conj(z0) * z1);           // d|Z|^2/dy
    const double f2 = 2.0 * (std::norm(z1) + std::real(std::conj(z0) * z2));
    if (f2 >= 0.0) break;  // not locally concave: keep the grid maximum
    const double step = -f1 / f2;
    if (!std::isfinite(step)) break;
    y += std::clamp(step, -2.0 * dx, 2.0 * dx);
  }
  cd z0, z1, z2;
  z_at(y, z0, z1, z2);

  OrbitDistance out;
  out.x0 = y;
  out.gamma = reduce_gamma(std::arg(z0));
  out.dist = std::sqrt(std::max(0.0, nu2 + nR2 - 2.0 * std::abs(z0)));
  return out;
}

}  // namespace dnls
