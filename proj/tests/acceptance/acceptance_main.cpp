// Acceptance gate for the traveling-wave laboratory. Each criterion prints
// exactly one line, PASS or FAIL, with its measured quantities; the process
// exits nonzero if any criterion fails. All tolerances are pinned here.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <set>
#include <cstdio>
#include <string>
#include <vector>

#include "dnls/evolve.hpp"
#include "dnls/functionals.hpp"
#include "dnls/gauge.hpp"
#include "dnls/grid.hpp"
#include "dnls/lab.hpp"
#include "dnls/modulation.hpp"
#include "dnls/monotone.hpp"
#include "dnls/rng.hpp"
#include "dnls/spectral.hpp"
#include "dnls/waves.hpp"

using namespace dnls;

namespace {

int g_failures = 0;
std::set<int> g_reported;

void report(int id, const char* label, bool pass, const std::string& detail) {
  g_reported.insert(id);
  std::printf("%s criterion-%02d %s: %s\n", pass ? "PASS" : "FAIL", id, label, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

// A criterion that throws is a failed criterion, not a dead gate.
struct GateId {
  int id;
  const char* label;
};

template <class Fn>
void guarded(std::initializer_list<GateId> ids, Fn&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    for (const GateId& g : ids)
      if (!g_reported.count(g.id))
        report(g.id, g.label, false, std::string("unhandled error: ") + e.what());
  }
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Largest rise of a series above its running minimum: zero for a
// non-increasing sequence, positive when the series climbs back up.
double upward_excursion(const std::vector<double>& s) {
  double run_min = s.empty() ? 0.0 : s.front();
  double exc = 0.0;
  for (double v : s) {
    run_min = std::min(run_min, v);
    exc = std::max(exc, v - run_min);
  }
  return exc;
}

// ---- 1: pointwise profile values against frozen closed-form evaluations ---

void criterion_1() {
  const double tol = 1e-12;
  const double func_tol = 1e-8;
  GridSpec g = make_grid(20.0, 1024);
  const double x1 = g.node(538);  // 1.015625 exactly

  // Frozen independently evaluated values of nu/omega^{1/4} (cosh(nu x)-b)^{-1/2}.
  const double golden_phi10_0 = 2.0;
  const double golden_phi10_x1 = 1.0156877494091063;
  const double golden_phi11_half = 1.8267251541865299;
  const double golden_phi2c_m2 = 0.260367430091346;
  const double golden_wave_re = 1.5270645844415944;
  const double golden_wave_im = 0.95274532543536861;

  const Field p10 = phi_profile(1.0, 0.0, g);
  const Field w11 = wave_field(WaveParams{1.0, 1.0, 0.5, 0.3}, g);

  double err = 0.0;
  err = std::max(err, std::abs(p10.v[512].real() - golden_phi10_0));
  err = std::max(err, std::abs(p10.v[538].real() - golden_phi10_x1));
  err = std::max(err, std::abs(p10.v[512].imag()));
  err = std::max(err, std::abs(phi_value(1.0, 1.0, 0.5) - golden_phi11_half));
  err = std::max(err, std::abs(phi_value(2.0, 1.5, -2.0) - golden_phi2c_m2));
  err = std::max(err, std::abs(w11.v[538].real() - golden_wave_re));
  err = std::max(err, std::abs(w11.v[538].imag() - golden_wave_im));

  // Closed-form functional values of the standing wave (omega, c) = (1, 0):
  // M = pi, P = 2, E = 0, so J = E + M = pi, and the scaling functional K
  // vanishes on every member of the family.
  const Field w10 = wave_field(WaveParams{1.0, 0.0, 0.0, 0.0}, g);
  const Conserved cv = conserved(w10);
  double ferr = 0.0;
  ferr = std::max(ferr, std::abs(cv.mass - M_PI));
  ferr = std::max(ferr, std::abs(cv.momentum - 2.0));
  ferr = std::max(ferr, std::abs(cv.energy));
  ferr = std::max(ferr, std::abs(action(1.0, 0.0, w10) - M_PI));
  ferr = std::max(ferr, std::abs(nehari(1.0, 0.0, w10)));

  report(1, "golden-profile-values", err <= tol && ferr <= func_tol,
         fmt("max deviation %.3e (tol %.1e) at x=0, x=%.6f and off-grid points; "
             "max M,P,E,J,K closed-form error %.3e (tol %.1e) at (1,0)",
             err, tol, x1, ferr, func_tol));
}

// ---- 2: elliptic and traveling residuals of the sampled waves -------------

void criterion_2() {
  const double tol = 1e-8;
  double worst = 0.0;
  for (const WaveParams& p :
       {WaveParams{1.0, 0.0, 0.0, 0.0}, WaveParams{1.0, 1.0, 0.0, 0.0},
        WaveParams{2.0, 1.5, 0.0, 0.0}}) {
    const WaveResiduals r = residuals(p, audit_box(p.omega, p.c));
    worst = std::max({worst, r.elliptic, r.traveling});
  }
  report(2, "traveling-wave-residuals", worst <= tol,
         fmt("sup elliptic/traveling residual %.3e over 3 parameter points (tol %.1e)", worst,
             tol));
}

// ---- 3: linearized-operator audit over the standard 15-point family -------

void criterion_3() {
  const double ker_plus_tol = 1e-6;   // ||L+ phi_x|| / ||phi_x||
  const double ker_minus_tol = 1e-8;  // ||L- phi|| / ||phi||
  const double mu_floor = 1e-3;
  const double struct_tol = 1e-4;
  const double point_budget_s = 30.0;

  bool counts_ok = true;
  double max_kp = 0.0, max_km = 0.0, max_struct = 0.0, min_mu = 1e300, max_sec = 0.0;
  for (const WaveParams& p : audit_set()) {
    const auto t0 = std::chrono::steady_clock::now();
    const SpectralReport s = spectral_report(p.omega, p.c, audit_box(p.omega, p.c));
    max_sec = std::max(max_sec, seconds_since(t0));
    counts_ok = counts_ok && s.neg_plus == 1 && s.neg_minus == 0 && s.lambda1_sq > 0.0;
    max_kp = std::max(max_kp, s.ker_plus_res);
    max_km = std::max(max_km, s.ker_minus_res);
    max_struct = std::max({max_struct, s.struct_res_omega, s.struct_res_c});
    min_mu = std::min({min_mu, s.mu_minus, s.mu_plus});
  }
  const bool pass = counts_ok && max_kp <= ker_plus_tol && max_km <= ker_minus_tol &&
                    min_mu >= mu_floor && max_struct <= struct_tol && max_sec < point_budget_s;
  report(3, "spectral-audit", pass,
         fmt("15 points: counts %s, max L+ kernel res %.2e (tol %.0e), max L- kernel res %.2e "
             "(tol %.0e), min mu %.4f (floor %.0e), max structure res %.2e (tol %.0e), slowest "
             "point %.1fs (budget %.0fs)",
             counts_ok ? "1/0 everywhere" : "WRONG", max_kp, ker_plus_tol, max_km, ker_minus_tol,
             min_mu, mu_floor, max_struct, struct_tol, max_sec, point_budget_s));
}

// ---- 4: concavity table - determinant identity det = -1/omega -------------

void criterion_4() {
  const double det_tol = 1e-4;
  const double sym_tol = 1e-4;
  const double closed_tol = 1e-10;
  const auto rows = run_soliton_table("");
  bool all_neg = true;
  double max_det_defect = 0.0, max_sym = 0.0, max_closed = 0.0;
  for (const SolitonTableRow& r : rows) {
    all_neg = all_neg && r.det < 0.0;
    max_det_defect = std::max(max_det_defect, std::abs(r.det * r.p.omega + 1.0));
    max_sym = std::max(max_sym, r.defect);
    max_closed = std::max({max_closed, std::abs(r.cons.mass - r.mass_closed),
                           std::abs(r.cons.momentum - r.momentum_closed)});
  }
  const bool pass = all_neg && max_det_defect <= det_tol && max_sym <= sym_tol &&
                    max_closed <= closed_tol;
  report(4, "hessian-table", pass,
         fmt("15 points: det %s, max |omega det + 1| %.2e (tol %.0e), max asymmetry %.2e "
             "(tol %.0e), max closed-form defect %.2e (tol %.0e)",
             all_neg ? "all negative" : "SIGN WRONG", max_det_defect, det_tol, max_sym, sym_tol,
             max_closed, closed_tol));
}

// ---- 5: modulation sensitivity determinant ---------------------------------

void criterion_5() {
  const double rel_tol = 0.01;
  bool pass = true;
  std::string detail;
  int idx = 0;
  for (const WaveParams& p :
       {WaveParams{1.0, 0.0, 0.4, 1.1}, WaveParams{1.0, 1.0, -0.6, 2.2}}) {
    GridSpec g = make_grid(20.0, 512);
    const Field u = wave_field(p, g);
    const double det = modulation_jacobian(u, p).determinant();
    const double np2 = std::pow(norm(phi_profile_deriv(p.omega, p.c, g), NormKind::l2), 2);
    const double n2 = std::pow(norm(phi_profile(p.omega, p.c, g), NormKind::l2), 2);
    const double ident = np2 * n2 / p.omega;
    const double rel = std::abs(det - ident) / ident;
    pass = pass && det > 0.0 && rel <= rel_tol;
    if (idx == 0) {
      const double two_pi_sq = 2.0 * M_PI * M_PI;
      const double rel0 = std::abs(det - two_pi_sq) / two_pi_sq;
      pass = pass && rel0 <= rel_tol;
      detail += fmt("det %.5f vs 2 pi^2 (rel %.2e) and ", det, rel0);
    }
    detail += fmt("rel defect %.2e vs |phi'|^2|phi|^2/omega at point %d; ", rel, idx + 1);
    ++idx;
  }
  report(5, "jacobian-determinant", pass, detail + fmt("tol %.0e, both positive", rel_tol));
}

// ---- 6: unperturbed transport accuracy over ten units of time -------------

void criterion_6() {
  const double h1_tol = 1e-4;
  const double drift_tol = 1e-8;
  const double budget_s = 120.0;

  SingleStabilityConfig cfg;
  cfg.omega = 1.0;
  cfg.c = 1.0;
  cfg.half_length = 30.0;
  cfg.n = 2048;
  cfg.t_end = 10.0;
  cfg.perturbation.kind = "none";

  const auto t0 = std::chrono::steady_clock::now();
  const SingleStabilityResult r = run_single_stability(cfg, "");
  const double sec = seconds_since(t0);
  const double drift = std::max({r.mass_drift, r.momentum_drift, r.energy_drift});
  const bool pass = r.sup_eps_h1 < h1_tol && drift < drift_tol && sec < budget_s;
  report(6, "free-flight-accuracy", pass,
         fmt("sup |eps|_H1 %.2e (tol %.0e), max conservation drift %.2e (tol %.0e), %.0fs "
             "(budget %.0fs, %zu steps)",
             r.sup_eps_h1, h1_tol, drift, drift_tol, sec, budget_s, r.steps));
}

// ---- 7: orbital stability with quadratic parameter response ---------------

void criterion_7() {
  const double delta = 1e-2;
  const double orbit_factor = 10.0;
  const double ratio_lo = 3.0, ratio_hi = 5.0;
  const double budget_s = 600.0;

  auto run = [&](double d) {
    SingleStabilityConfig cfg;
    cfg.omega = 1.0;
    cfg.c = 0.0;
    cfg.half_length = 20.0;
    cfg.n = 1024;
    cfg.t_end = 20.0;
    cfg.perturbation.kind = "smooth";
    cfg.perturbation.seed = 2;
    cfg.perturbation.delta = d;
    return run_single_stability(cfg, "");
  };
  auto param_drift = [](const SingleStabilityResult& r) {
    const WaveParams p0 = r.track.frames.front().p;
    double m = 0.0;
    for (const TrackFrame& f : r.track.frames)
      m = std::max(m, std::hypot(f.p.omega - p0.omega, f.p.c - p0.c));
    return m;
  };

  const auto t0 = std::chrono::steady_clock::now();
  const SingleStabilityResult full = run(delta);
  const SingleStabilityResult half = run(delta / 2.0);
  const double sec = seconds_since(t0);

  const double drift_ratio = param_drift(full) / param_drift(half);
  const bool orbit_ok =
      full.sup_orbit <= orbit_factor * delta && half.sup_orbit <= orbit_factor * delta / 2.0;
  const bool pass =
      orbit_ok && drift_ratio >= ratio_lo && drift_ratio <= ratio_hi && sec < budget_s;
  report(7, "single-orbit-stability", pass,
         fmt("sup orbit distance %.3e <= %.0e and %.3e <= %.0e; parameter-drift ratio %.2f in "
             "[%.0f,%.0f] (drifts %.2e / %.2e); %.0fs (budget %.0fs)",
             full.sup_orbit, orbit_factor * delta, half.sup_orbit, orbit_factor * delta / 2.0,
             drift_ratio, ratio_lo, ratio_hi, param_drift(full), param_drift(half), sec,
             budget_s));
}

// ---- 8/9/10 share the golden pair configuration ---------------------------

PairStabilityConfig golden_pair_config() {
  PairStabilityConfig cfg;
  cfg.wave1 = WaveParams{1.0, 1.0, -15.0, 0.0};
  cfg.wave2 = WaveParams{3.0, 3.0, 15.0, 0.0};
  cfg.half_length = 64.0;
  cfg.n = 2048;
  cfg.t_end = 10.0;
  cfg.perturbation.kind = "smooth";
  cfg.perturbation.seed = 4;
  cfg.perturbation.delta = 1e-2;
  return cfg;
}

struct PairDrifts {
  double mass = 0.0, momentum = 0.0;
};

PairDrifts per_soliton_drift(const PairTrack& track) {
  auto closed_m = [](const WaveParams& p) {
    return M_PI + 2.0 * std::asin(p.c / (2.0 * std::sqrt(p.omega)));
  };
  auto closed_p = [](const WaveParams& p) { return std::sqrt(4.0 * p.omega - p.c * p.c); };
  PairDrifts d;
  const PairTrackFrame& f0 = track.frames.front();
  for (const PairTrackFrame& f : track.frames) {
    d.mass = std::max({d.mass, std::abs(closed_m(f.p1) - closed_m(f0.p1)),
                       std::abs(closed_m(f.p2) - closed_m(f0.p2))});
    d.momentum = std::max({d.momentum, std::abs(closed_p(f.p1) - closed_p(f0.p1)),
                           std::abs(closed_p(f.p2) - closed_p(f0.p2))});
  }
  return d;
}

// Sanity cap for the measured drift constant of criterion 8: the constant is
// frozen from the delta = 1e-2 run, and the freeze is only accepted if it
// comes out of order one or below.
constexpr double kPairDriftCap = 1.0;

double drift_denominator(const PairStabilityResult& r, double L) {
  return r.sup_eps_h1 * r.sup_eps_h1 + std::exp(-r.speeds.theta0 * L);
}

bool check_pair_run(const PairStabilityResult& r, const PairStabilityConfig& cfg, double delta,
                    std::string& detail) {
  const double L = cfg.wave2.x0 - cfg.wave1.x0;
  const double theta0 = r.speeds.theta0;
  const double dist_bound = 10.0 * (delta + std::exp(-theta0 * L / 2.0));

  const bool subcritical =
      classify_regime(cfg.wave1.omega, cfg.wave1.c) == Regime::subcritical &&
      classify_regime(cfg.wave2.omega, cfg.wave2.c) == Regime::subcritical;
  const bool ordered = 0.0 < cfg.wave1.c && cfg.wave1.c < cfg.wave2.c;
  const bool speeds_ok = r.speeds.all();
  const bool dist_ok = r.sup_eps_h1 <= dist_bound;

  // After t = 1 the fitted separation must open at least at rate theta0.
  bool slope_ok = true;
  const PairTrackFrame* base = nullptr;
  for (const PairTrackFrame& f : r.track.frames) {
    if (f.t < 1.0) continue;
    if (!base) {
      base = &f;
      continue;
    }
    const double gap = (f.p2.x0 - f.p1.x0) - (base->p2.x0 - base->p1.x0);
    if (gap < theta0 * (f.t - base->t)) slope_ok = false;
  }

  detail += fmt("[delta %.0e: dist %.3e<=%.2f, sep slope %s] ", delta, r.sup_eps_h1, dist_bound,
                slope_ok ? "ok" : "TOO FLAT");
  return subcritical && ordered && speeds_ok && dist_ok && slope_ok;
}

void criteria_8_9_10() {
  const double budget_s = 1200.0;
  const auto t0 = std::chrono::steady_clock::now();

  // Criterion 8: perturbed golden pair; the per-soliton drift constant K is
  // frozen from this run, then the delta/2 rerun must satisfy the same
  // inequality with the frozen constant.
  PairStabilityConfig cfg = golden_pair_config();
  const PairStabilityResult run_full = run_pair_stability(cfg, "");
  PairStabilityConfig cfg_half = cfg;
  cfg_half.perturbation.delta = 5e-3;
  const PairStabilityResult run_half = run_pair_stability(cfg_half, "");

  // The delta = 1e-2 run defines the drift constant (its own inequality is
  // then an identity); the delta = 5e-3 run is the check that the constant
  // transfers.
  const double L8 = cfg.wave2.x0 - cfg.wave1.x0;
  const PairDrifts d_full = per_soliton_drift(run_full.track);
  const PairDrifts d_half = per_soliton_drift(run_half.track);
  const double K_frozen =
      std::max(d_full.mass, d_full.momentum) / drift_denominator(run_full, L8);
  const double half_bound = K_frozen * drift_denominator(run_half, L8);
  const bool drift_ok = K_frozen <= kPairDriftCap && d_half.mass <= half_bound &&
                        d_half.momentum <= half_bound;

  std::string d8;
  bool pass8 = check_pair_run(run_full, cfg, cfg.perturbation.delta, d8);
  pass8 = check_pair_run(run_half, cfg_half, cfg_half.perturbation.delta, d8) && pass8;
  d8 += fmt("drift K %.2e (cap %.0f) frozen from delta 1e-02 M/P %.2e/%.2e, reverified at "
            "delta 5e-03: M/P %.2e/%.2e <= %.2e; ",
            K_frozen, kPairDriftCap, d_full.mass, d_full.momentum, d_half.mass, d_half.momentum,
            half_bound);
  const double sec8 = seconds_since(t0);
  pass8 = pass8 && drift_ok && sec8 < budget_s;
  report(8, "pair-orbit-stability", pass8, d8 + fmt("%.0fs (budget %.0fs)", sec8, budget_s));

  // Criterion 9: localized almost-monotonicity. The five line functionals on
  // the perturbed run may rise only by C9 (delta^2 + e^{-theta0 L/2}); an
  // unperturbed high-resolution half-step run must be monotone to 1e-6 and
  // satisfy the exchange identity to 1e-9.
  const double c9 = 1.0;
  const double unperturbed_tol = 1e-6;
  const double exchange_tol = 1e-9;

  const MonotoneSeries mono_full = run_monotone(run_full, cfg, "");
  const double L = cfg.wave2.x0 - cfg.wave1.x0;
  const double theta0 = run_full.speeds.theta0;
  const double rise_bound =
      c9 * (cfg.perturbation.delta * cfg.perturbation.delta + std::exp(-theta0 * L / 2.0));

  auto series_excursions = [](const MonotoneSeries& s) {
    std::vector<std::vector<double>> col(5);
    for (const MonotoneFrame& f : s.frames) {
      col[0].push_back(f.values.Q);
      col[1].push_back(f.values.Q_p0);
      col[2].push_back(f.values.Q_m0);
      col[3].push_back(f.values.Q_0p);
      col[4].push_back(f.values.Q_0m);
    }
    double worst = 0.0;
    for (const auto& s5 : col) worst = std::max(worst, upward_excursion(s5));
    return worst;
  };
  const double exc_full = series_excursions(mono_full);

  PairStabilityConfig cfg0 = cfg;
  cfg0.perturbation.kind = "none";
  cfg0.n = 4096;  // keep dealias regeneration far below the 1e-6 target
  {
    GridSpec g0 = make_grid(cfg0.half_length, cfg0.n);
    Field probe = wave_field(cfg0.wave1, g0);
    const Field r2 = wave_field(cfg0.wave2, g0);
    for (std::size_t m = 0; m < g0.n; ++m) probe.v[m] += r2.v[m];
    cfg0.dt = 0.5 * suggest_dt(g0, norm(probe, NormKind::sup));
  }
  const PairStabilityResult run0 = run_pair_stability(cfg0, "");
  const MonotoneSeries mono0 = run_monotone(run0, cfg0, "");
  const double exc0 = series_excursions(mono0);
  double exchange0 = 0.0;
  for (const MonotoneFrame& f : mono0.frames)
    exchange0 = std::max(exchange0, std::abs(f.exchange_resid));

  const bool pass9 = exc_full <= rise_bound && exc0 < unperturbed_tol &&
                     exchange0 <= exchange_tol;
  report(9, "localized-monotonicity", pass9,
         fmt("perturbed rise %.3e <= %.3f over 5 line functionals; unperturbed rise %.2e "
             "(tol %.0e); exchange identity %.2e (tol %.0e) at half step",
             exc_full, rise_bound, exc0, unperturbed_tol, exchange0, exchange_tol));

  // Criterion 10: the quartic-localization chain. Random fields against
  // random moving line weights, the audited ramp constants, the window
  // comparability envelope, and the chain on every perturbed pair frame.
  const double cb_exact = 157.5 / 16.0;
  int trials_ok = 0;
  const int trials = 100;
  {
    GridSpec g = make_grid(20.0, 512);
    Xorshift64s rng(12345);
    for (int k = 0; k < trials; ++k) {
      Field w = random_smooth_field(g, rng, 4 + static_cast<std::size_t>(rng.uniform() * 24));
      const double amp = std::pow(10.0, 2.0 * rng.symmetric());
      for (auto& v : w.v) v *= amp;
      const LineSpec line = make_line(5.0 * rng.symmetric(), 2.0 * rng.symmetric(),
                                      8.0 + 16.0 * rng.uniform());
      const double t = 5.0 * rng.uniform();
      const QuarticCheck q =
          quartic_inequality_check(w, line_weight(t, line, g), line_weight_deriv(t, line, g));
      if (q.ok) ++trials_ok;
    }
  }

  const CutoffAudit ca = cutoff_audit(100000, 1e-6);
  const bool ramp_ok = std::isfinite(ca.c_a) && ca.c_a > 1.0 && ca.c_a < 10.0 &&
                       std::abs(ca.c_b - cb_exact) <= 1e-3;

  bool window_ok = true;
  for (int i = 0; i <= 3000; ++i) {
    const double z = i * 0.01;
    const double w = window_profile(z);
    const double lo = std::exp(-z), hi = 3.5 * std::exp(-z);
    if (w < lo * (1.0 - 1e-12) || w > hi) window_ok = false;
    if (window_profile(-z) != w) window_ok = false;
  }

  bool frames_ok = true;
  for (const MonotoneFrame& f : mono_full.frames) frames_ok = frames_ok && f.quartic.ok;

  const bool pass10 = trials_ok == trials && ramp_ok && window_ok && frames_ok;
  report(10, "quartic-localization", pass10,
         fmt("random trials %d/%d; ramp constants c_a %.3f in (1,10), c_b %.6f vs %.6f; window "
             "envelope %s; chain on all %zu pair frames %s",
             trials_ok, trials, ca.c_a, ca.c_b, cb_exact, window_ok ? "ok" : "BROKEN",
             mono_full.frames.size(), frames_ok ? "ok" : "BROKEN"));
}

// ---- 11: measured coercivity constants ------------------------------------

// Frozen floors, set at about half of the values measured on these exact
// configurations when the gate was first established.
constexpr double kMuSingleFloor[2] = {0.05, 0.05};
constexpr double kMuPairFloor = 0.02;
constexpr double kMuWindowFloor = 0.02;

void criterion_11() {
  bool pass = true;
  std::string detail;

  // Single-soliton moving-frame forms at two parameter points.
  const WaveParams pts[2] = {WaveParams{1.0, 0.5, 0.0, 0.0}, WaveParams{2.0, 1.5, 0.0, 0.0}};
  GridSpec gs = make_grid(20.0, 512);
  Xorshift64s rng(777);
  for (int i = 0; i < 2; ++i) {
    const Field R = wave_field(pts[i], gs);
    const auto cons = soliton_constraint_vectors(R);
    const Eigen::MatrixXd M = form_H_matrix(pts[i], gs);
    const Eigen::MatrixXd G = h1_gram_matrix(gs);
    const double mu = constrained_form_min(M, G, cons);
    bool rand_ok = true;
    for (int k = 0; k < 50; ++k) {
      Field w = random_smooth_field(gs, rng, 20);
      const Field pw = project_out(w, cons);
      const Eigen::VectorXd z = real_coords(pw);
      const double q = z.dot(M * z) / z.dot(G * z);
      if (q < kMuSingleFloor[i]) rand_ok = false;
    }
    pass = pass && mu >= kMuSingleFloor[i] && rand_ok;
    detail += fmt("H(%g,%g): mu %.4f >= %.2f, 50 projected quotients %s; ", pts[i].omega,
                  pts[i].c, mu, kMuSingleFloor[i], rand_ok ? "ok" : "BELOW FLOOR");
  }

  // Two-soliton localized form at separation 30.
  {
    GridSpec g = make_grid(32.0, 1024);
    const WaveParams p1{1.0, 1.0, -15.0, 0.0}, p2{3.0, 3.0, 15.0, 0.0};
    const Field R1 = wave_field(p1, g), R2 = wave_field(p2, g);
    const std::vector<double> gw = partition_left_weight(g, p1.x0, p2.x0, p2.x0 - p1.x0);
    std::vector<double> hw(gw.size());
    for (std::size_t m = 0; m < gw.size(); ++m) hw[m] = 1.0 - gw[m];
    auto cons = soliton_constraint_vectors(R1);
    const auto cons2 = soliton_constraint_vectors(R2);
    cons.insert(cons.end(), cons2.begin(), cons2.end());
    const Eigen::MatrixXd M =
        form_H_two_matrix(R1, p1.omega, p1.c, R2, p2.omega, p2.c, gw, hw);
    const Eigen::MatrixXd G = h1_gram_matrix(g);
    const double mu2 = constrained_form_min(M, G, cons);
    bool rand_ok = true;
    for (int k = 0; k < 50; ++k) {
      Field w = random_smooth_field(g, rng, 20);
      const Field pw = project_out(w, cons);
      const Eigen::VectorXd z = real_coords(pw);
      const double q = z.dot(M * z) / z.dot(G * z);
      if (q < kMuPairFloor) rand_ok = false;
    }
    pass = pass && mu2 >= kMuPairFloor && rand_ok;
    detail += fmt("H2(L=30): mu %.4f >= %.2f, quotients %s; ", mu2, kMuPairFloor,
                  rand_ok ? "ok" : "BELOW FLOOR");
  }

  // Exponentially windowed form at scale B = 8.
  {
    const WaveParams p{1.0, 0.5, 0.0, 0.0};
    const Field R = wave_field(p, gs);
    const std::vector<double> Phi = exp_window_weight(gs, 8.0, 0.0);
    const auto cons = soliton_constraint_vectors(R);
    const Eigen::MatrixXd M = form_H_weighted_matrix(R, p.omega, p.c, Phi);
    const Eigen::MatrixXd G = h1_gram_weighted_matrix(gs, Phi);
    const double muB = constrained_form_min(M, G, cons);
    bool rand_ok = true;
    for (int k = 0; k < 50; ++k) {
      Field w = random_smooth_field(gs, rng, 20);
      const Field pw = project_out(w, cons);
      const Eigen::VectorXd z = real_coords(pw);
      const double q = z.dot(M * z) / z.dot(G * z);
      if (q < kMuWindowFloor) rand_ok = false;
    }
    pass = pass && muB >= kMuWindowFloor && rand_ok;
    detail += fmt("H_B(B=8): mu %.4f >= %.2f, quotients %s", muB, kMuWindowFloor,
                  rand_ok ? "ok" : "BELOW FLOOR");
  }

  report(11, "coercivity-constants", pass, detail);
}

// ---- 12: gauge transform invariances --------------------------------------

void criterion_12() {
  const double roundtrip_tol = 1e-12;
  const double modulus_tol = 1e-15;
  const double mass_tol = 1e-12;
  const double compose_tol = 1e-12;

  GridSpec g = make_grid(20.0, 512);
  Field v = wave_field(WaveParams{1.0, 0.5, 0.0, 0.0}, g);
  {
    // Add a bump so the field is not a pure soliton.
    const Field b = gaussian_bump(g, 2.0, 1.5);
    for (std::size_t m = 0; m < g.n; ++m) v.v[m] += 0.3 * b.v[m];
  }
  const double vsup = norm(v, NormKind::sup);

  const Field u = gauge_forward(v, 0.75);
  const Field back = gauge_inverse(u, 0.75);
  double rt = 0.0, mod = 0.0;
  for (std::size_t m = 0; m < g.n; ++m) {
    rt = std::max(rt, std::abs(back.v[m] - v.v[m]));
    mod = std::max(mod, std::abs(std::abs(u.v[m]) - std::abs(v.v[m])));
  }
  const double dm = std::abs(conserved(u).mass - conserved(v).mass);

  const Field ab = gauge_forward(gauge_forward(v, 0.30), 0.45);
  const Field once = gauge_forward(v, 0.75);
  double comp = 0.0;
  for (std::size_t m = 0; m < g.n; ++m)
    comp = std::max(comp, std::abs(ab.v[m] - once.v[m]));

  const bool pass = rt <= roundtrip_tol && mod <= modulus_tol * vsup && dm <= mass_tol &&
                    comp <= compose_tol;
  report(12, "gauge-invariances", pass,
         fmt("roundtrip %.2e (tol %.0e), modulus %.2e (tol %.0e sup), mass %.2e (tol %.0e), "
             "composition %.2e (tol %.0e)",
             rt, roundtrip_tol, mod, modulus_tol * vsup, dm, mass_tol, comp, compose_tol));
}

constexpr const char* kLabels[12] = {
    "golden-profile-values", "traveling-wave-residuals", "spectral-audit",
    "hessian-table",         "jacobian-determinant",     "free-flight-accuracy",
    "single-orbit-stability", "pair-orbit-stability",    "localized-monotonicity",
    "quartic-localization",  "coercivity-constants",     "gauge-invariances"};

// Accepts "7", "criterion-07", or "single-orbit-stability"; returns 0 if the
// name matches no criterion.
int parse_criterion(const std::string& arg) {
  for (int id = 1; id <= 12; ++id) {
    if (arg == kLabels[id - 1] || arg == fmt("criterion-%02d", id) ||
        arg == std::to_string(id))
      return id;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  // With no arguments every criterion runs; otherwise only the named ones
  // (criteria 8-10 share one simulated run and are evaluated together).
  std::set<int> want;
  for (int i = 1; i < argc; ++i) {
    const int id = parse_criterion(argv[i]);
    if (id == 0) {
      std::fprintf(stderr, "unknown criterion: %s\nvalid names:\n", argv[i]);
      for (int k = 1; k <= 12; ++k)
        std::fprintf(stderr, "  criterion-%02d  %s\n", k, kLabels[k - 1]);
      return 2;
    }
    want.insert(id);
  }
  const auto selected = [&](std::initializer_list<int> ids) {
    if (want.empty()) return true;
    for (int id : ids)
      if (want.count(id)) return true;
    return false;
  };

  const auto t0 = std::chrono::steady_clock::now();
  if (selected({1})) guarded({{1, kLabels[0]}}, criterion_1);
  if (selected({2})) guarded({{2, kLabels[1]}}, criterion_2);
  if (selected({3})) guarded({{3, kLabels[2]}}, criterion_3);
  if (selected({4})) guarded({{4, kLabels[3]}}, criterion_4);
  if (selected({5})) guarded({{5, kLabels[4]}}, criterion_5);
  if (selected({6})) guarded({{6, kLabels[5]}}, criterion_6);
  if (selected({7})) guarded({{7, kLabels[6]}}, criterion_7);
  if (selected({8, 9, 10}))
    guarded({{8, kLabels[7]}, {9, kLabels[8]}, {10, kLabels[9]}}, criteria_8_9_10);
  if (selected({11})) guarded({{11, kLabels[10]}}, criterion_11);
  if (selected({12})) guarded({{12, kLabels[11]}}, criterion_12);

  // A selected criterion that produced no verdict is a failure, not a skip.
  for (int id = 1; id <= 12; ++id)
    if ((want.empty() || want.count(id)) && !g_reported.count(id))
      report(id, kLabels[id - 1], false, "never evaluated");

  std::printf("acceptance: %d of %zu criteria failed, %.0fs total\n", g_failures,
              g_reported.size(), seconds_since(t0));
  return g_failures == 0 ? 0 : 1;
}
