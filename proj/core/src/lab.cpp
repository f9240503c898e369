#include "dnls/lab.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "dnls/errors.hpp"
#include "dnls/evolve.hpp"
#include "dnls/io.hpp"
#include "dnls/rng.hpp"
#include "json.hpp"

namespace dnls {

namespace {

namespace fs = std::filesystem;
using njson = nlohmann::json;

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(errc::io_failure, "cannot create output directory: " + dir);
}

void write_json(const std::string& path, const njson& j) {
  std::ofstream out(path);
  if (!out) fail(errc::io_failure, "cannot open " + path);
  out << j.dump(2) << "\n";
  if (!out) fail(errc::io_failure, "failed writing " + path);
}

njson perturbation_json(const PerturbationSpec& p) {
  return njson{{"kind", p.kind}, {"seed", p.seed}, {"delta", p.delta}};
}

void check_keys(const njson& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* key : allowed)
      if (item.key() == key) ok = true;
    if (!ok) fail(errc::bad_config, "unknown key \"" + item.key() + "\" in " + where);
  }
}

njson load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io_failure, "cannot open config file: " + path);
  njson j;
  try {
    j = njson::parse(in);
  } catch (const njson::parse_error& e) {
    fail(errc::bad_config, std::string("config parse error: ") + e.what());
  }
  if (!j.is_object()) fail(errc::bad_config, "config root must be a JSON object");
  return j;
}

PerturbationSpec parse_perturbation(const njson& j) {
  PerturbationSpec p;
  check_keys(j, {"kind", "seed", "delta"}, "perturbation");
  p.kind = j.value("kind", p.kind);
  p.seed = j.value("seed", p.seed);
  p.delta = j.value("delta", p.delta);
  if (p.kind != "smooth" && p.kind != "bump" && p.kind != "none")
    fail(errc::bad_config, "perturbation kind must be smooth, bump, or none");
  if (!(p.delta >= 0.0)) fail(errc::bad_config, "perturbation delta must be nonnegative");
  return p;
}

WaveParams parse_wave(const njson& j, const std::string& where) {
  check_keys(j, {"omega", "c", "x0", "gamma"}, where);
  WaveParams p;
  p.omega = j.value("omega", 1.0);
  p.c = j.value("c", 0.0);
  p.x0 = j.value("x0", 0.0);
  p.gamma = j.value("gamma", 0.0);
  return p;
}

std::size_t pick_stride(std::size_t stride, const GridSpec& g, double t_end, double dt_hint,
                        double umax) {
  if (stride > 0) return stride;
  const double dt = dt_hint > 0.0 ? dt_hint : suggest_dt(g, umax);
  const auto steps = static_cast<std::size_t>(std::llround(std::ceil(t_end / dt)));
  return std::max<std::size_t>(1, steps / 100);
}

}  // namespace

namespace {

// Shared shape of both box rules: half-length >= `floor_half` and
// nu * half >= `decay`, rounded up to a multiple of 5.
GridSpec sized_box(double omega, double c, double floor_half, double decay, std::size_t n) {
  if (classify_regime(omega, c) != Regime::subcritical)
    fail(errc::regime_unsupported, "audit boxes are defined for subcritical waves");
  const double nu = std::sqrt(4.0 * omega - c * c);
  const double needed = std::max(floor_half, decay / nu);
  const double half = 5.0 * std::ceil(needed / 5.0);
  return make_grid(half, n);
}

// Box used wherever the modulated wave itself is sampled (the functional
// table).  phi decays like e^{-nu x / 2} and the periodized edge amplitude
// doubles under the image sum, so nu * half >= 28 keeps the tails an order
// of magnitude below the wave_field gate; the floor of 25 keeps the
// image-overlap cross terms in the quadratures below ~1e-11 even for the
// slowest-decaying centered profiles.
GridSpec wave_box(double omega, double c, std::size_t n = 1024) {
  return sized_box(omega, c, 25.0, 28.0, n);
}

}  // namespace

GridSpec audit_box(double omega, double c, std::size_t n) {
  // The operator audit wants the smallest tail-safe box: at fixed n, a
  // smaller box raises the grid cutoff kmax = pi n / (2 half), and the
  // kernel residuals of the discrete operators shrink like kmax^2
  // e^{-kmax d} with d the width of the profile's analyticity strip.
  // nu * half >= 24 keeps profile edge values below ~1e-5 while
  // kmax * d stays >= 27 over the whole audit family at n = 1024.
  return sized_box(omega, c, 20.0, 24.0, n);
}

std::vector<WaveParams> audit_set() {
  std::vector<WaveParams> out;
  for (double omega : {0.5, 1.0, 2.0})
    for (double rho : {-0.9, -0.5, 0.0, 0.5, 0.9})
      out.push_back(WaveParams{omega, rho * 2.0 * std::sqrt(omega), 0.0, 0.0});
  return out;
}

Field make_perturbation(const GridSpec& g, const PerturbationSpec& spec) {
  Field w = make_field(g);
  if (spec.kind == "none" || spec.delta == 0.0) return w;
  if (spec.kind == "smooth") {
    Xorshift64s rng(spec.seed);
    w = random_smooth_field(g, rng, 16);
  } else if (spec.kind == "bump") {
    w = gaussian_bump(g, 0.0, 2.0);
    Xorshift64s rng(spec.seed);
    const double phase = 2.0 * M_PI * rng.uniform();
    for (auto& v : w.v) v *= std::polar(1.0, phase);
  } else {
    fail(errc::bad_config, "unknown perturbation kind: " + spec.kind);
  }
  const double h1 = norm(w, NormKind::h1);
  if (!(h1 > 0.0)) fail(errc::bad_config, "degenerate perturbation");
  const double s = spec.delta / h1;
  for (auto& v : w.v) v *= s;
  return w;
}

SingleStabilityConfig load_single_config(const std::string& path) {
  const njson j = load_json_file(path);
  check_keys(j,
             {"omega", "c", "x0", "gamma", "half_length", "n", "t_end", "dt", "stride",
              "perturbation"},
             "single-stability config");
  SingleStabilityConfig cfg;
  cfg.omega = j.value("omega", cfg.omega);
  cfg.c = j.value("c", cfg.c);
  cfg.x0 = j.value("x0", cfg.x0);
  cfg.gamma = j.value("gamma", cfg.gamma);
  cfg.half_length = j.value("half_length", cfg.half_length);
  cfg.n = j.value("n", cfg.n);
  cfg.t_end = j.value("t_end", cfg.t_end);
  cfg.dt = j.value("dt", cfg.dt);
  cfg.stride = j.value("stride", cfg.stride);
  if (j.contains("perturbation")) cfg.perturbation = parse_perturbation(j.at("perturbation"));
  return cfg;
}

PairStabilityConfig load_pair_config(const std::string& path) {
  const njson j = load_json_file(path);
  check_keys(j, {"wave1", "wave2", "half_length", "n", "t_end", "dt", "stride", "perturbation"},
             "pair-stability config");
  PairStabilityConfig cfg;
  if (j.contains("wave1")) cfg.wave1 = parse_wave(j.at("wave1"), "wave1");
  if (j.contains("wave2")) cfg.wave2 = parse_wave(j.at("wave2"), "wave2");
  cfg.half_length = j.value("half_length", cfg.half_length);
  cfg.n = j.value("n", cfg.n);
  cfg.t_end = j.value("t_end", cfg.t_end);
  cfg.dt = j.value("dt", cfg.dt);
  cfg.stride = j.value("stride", cfg.stride);
  if (j.contains("perturbation")) cfg.perturbation = parse_perturbation(j.at("perturbation"));
  return cfg;
}

// ---- audits ---------------------------------------------------------------

AuditResult run_spectral_audit(const std::string& out_dir) {
  AuditResult result;
  for (const WaveParams& p : audit_set()) {
    AuditRow row{audit_box(p.omega, p.c), SpectralReport{}};
    row.report = spectral_report(p.omega, p.c, row.box);
    result.rows.push_back(std::move(row));
  }
  if (!out_dir.empty()) {
    ensure_dir(out_dir);
    CsvWriter csv(out_dir + "/spectral.csv",
                  {"omega", "c", "half_length", "n", "ess", "lambda1_sq", "lambda2", "neg_plus",
                   "neg_minus", "mu_minus", "mu_plus", "ker_plus_res", "ker_minus_res",
                   "chi_overlap", "struct_res_omega", "struct_res_c"});
    double min_mu_minus = 1e300, min_mu_plus = 1e300, max_ker = 0.0, max_struct = 0.0;
    bool counts_ok = true;
    for (const AuditRow& r : result.rows) {
      const SpectralReport& s = r.report;
      csv.row({s.omega, s.c, r.box.half_length, static_cast<double>(r.box.n), s.ess,
               s.lambda1_sq, s.lambda2, static_cast<double>(s.neg_plus),
               static_cast<double>(s.neg_minus), s.mu_minus, s.mu_plus, s.ker_plus_res,
               s.ker_minus_res, s.chi_overlap, s.struct_res_omega, s.struct_res_c});
      min_mu_minus = std::min(min_mu_minus, s.mu_minus);
      min_mu_plus = std::min(min_mu_plus, s.mu_plus);
      max_ker = std::max({max_ker, s.ker_plus_res, s.ker_minus_res});
      max_struct = std::max({max_struct, s.struct_res_omega, s.struct_res_c});
      counts_ok = counts_ok && s.neg_plus == 1 && s.neg_minus == 0;
    }
    csv.close();
    write_json(out_dir + "/summary.json",
               njson{{"experiment", "audit-spectral"},
                     {"points", result.rows.size()},
                     {"counts_ok", counts_ok},
                     {"min_mu_minus", min_mu_minus},
                     {"min_mu_plus", min_mu_plus},
                     {"max_kernel_residual", max_ker},
                     {"max_structure_residual", max_struct}});
  }
  return result;
}

std::vector<SolitonTableRow> run_soliton_table(const std::string& out_dir) {
  std::vector<SolitonTableRow> rows;
  for (const WaveParams& p : audit_set()) {
    SolitonTableRow row;
    row.p = p;
    row.box = wave_box(p.omega, p.c);
    const Field R = wave_field(p, row.box);
    row.cons = conserved(R);
    row.action = action(p.omega, p.c, R);
    row.nehari = nehari(p.omega, p.c, R);
    row.mass_closed = M_PI + 2.0 * std::asin(p.c / (2.0 * std::sqrt(p.omega)));
    row.momentum_closed = std::sqrt(4.0 * p.omega - p.c * p.c);
    row.d2 = d_second(p.omega, p.c, row.box);
    row.det = row.d2.det();
    row.defect = row.d2.defect();
    rows.push_back(row);
  }
  if (!out_dir.empty()) {
    ensure_dir(out_dir);
    CsvWriter csv(out_dir + "/functionals.csv",
                  {"omega", "c", "half_length", "n", "mass", "momentum", "energy", "action",
                   "nehari", "mass_closed", "momentum_closed", "d11", "d12", "d21", "d22",
                   "det_d2", "sym_defect"});
    double max_mass_err = 0.0, max_det_defect = 0.0;
    bool all_concave_saddle = true;
    for (const SolitonTableRow& r : rows) {
      csv.row({r.p.omega, r.p.c, r.box.half_length, static_cast<double>(r.box.n), r.cons.mass,
               r.cons.momentum, r.cons.energy, r.action, r.nehari, r.mass_closed,
               r.momentum_closed, r.d2.m[0][0], r.d2.m[0][1], r.d2.m[1][0], r.d2.m[1][1], r.det,
               r.defect});
      max_mass_err = std::max({max_mass_err, std::abs(r.cons.mass - r.mass_closed),
                               std::abs(r.cons.momentum - r.momentum_closed)});
      max_det_defect =
          std::max(max_det_defect, std::abs(r.det * r.p.omega + 1.0));  // det = -1/omega
      all_concave_saddle = all_concave_saddle && r.det < 0.0;
    }
    csv.close();
    write_json(out_dir + "/summary.json",
               njson{{"experiment", "soliton-table"},
                     {"points", rows.size()},
                     {"max_closed_form_error", max_mass_err},
                     {"max_det_defect", max_det_defect},
                     {"all_determinants_negative", all_concave_saddle}});
  }
  return rows;
}

// ---- single-soliton stability --------------------------------------------

SingleStabilityResult run_single_stability(const SingleStabilityConfig& cfg,
                                           const std::string& out_dir) {
  GridSpec g = make_grid(cfg.half_length, cfg.n);
  const WaveParams p0{cfg.omega, cfg.c, cfg.x0, cfg.gamma};
  Field u0 = wave_field(p0, g);
  const Field w = make_perturbation(g, cfg.perturbation);
  for (std::size_t m = 0; m < g.n; ++m) u0.v[m] += w.v[m];

  SingleStabilityResult result;
  const Conserved c0 = conserved(u0);
  WaveParams guess = p0;
  std::vector<Conserved> cons_frames;

  EvolveConfig ec;
  ec.t_end = cfg.t_end;
  ec.dt = cfg.dt;
  ec.observer_stride = pick_stride(cfg.stride, g, cfg.t_end, cfg.dt, norm(u0, NormKind::sup));

  const Observer obs = [&](double t, const Field& u) {
    // Ballistic warm start from the previous fitted frame (or the seed).
    double t_prev = 0.0;
    if (!result.track.frames.empty()) {
      guess = result.track.frames.back().p;
      t_prev = result.track.frames.back().t;
    }
    guess.x0 += guess.c * (t - t_prev);
    guess.gamma += guess.omega * (t - t_prev);
    SingleFit fit = fit_single(u, guess, 1e-10);
    result.track.append(t, fit);
    result.orbit.push_back(orbit_distance(u, cfg.omega, cfg.c).dist);
    cons_frames.push_back(conserved(u));
  };

  const EvolveResult ev = evolve(u0, ec, obs);
  result.dt = ev.dt;
  result.steps = ev.steps;
  for (double d : result.orbit) result.sup_orbit = std::max(result.sup_orbit, d);
  for (const TrackFrame& f : result.track.frames)
    result.sup_eps_h1 = std::max(result.sup_eps_h1, f.eps_h1);
  for (const Conserved& c : cons_frames) {
    result.mass_drift = std::max(result.mass_drift, std::abs(c.mass - c0.mass));
    result.momentum_drift = std::max(result.momentum_drift, std::abs(c.momentum - c0.momentum));
    result.energy_drift = std::max(result.energy_drift, std::abs(c.energy - c0.energy));
  }

  if (!out_dir.empty()) {
    ensure_dir(out_dir);
    write_snapshot(out_dir + "/initial.bin", u0);
    write_snapshot(out_dir + "/final.bin", ev.u);
    CsvWriter csv(out_dir + "/track.csv", {"t", "omega", "c", "x0", "gamma", "resid", "eps_h1",
                                           "orbit_dist", "mass", "momentum", "energy"});
    for (std::size_t i = 0; i < result.track.frames.size(); ++i) {
      const TrackFrame& f = result.track.frames[i];
      csv.row({f.t, f.p.omega, f.p.c, f.p.x0, f.p.gamma, f.resid, f.eps_h1, result.orbit[i],
               cons_frames[i].mass, cons_frames[i].momentum, cons_frames[i].energy});
    }
    csv.close();
    write_json(out_dir + "/summary.json",
               njson{{"experiment", "stability-single"},
                     {"config",
                      njson{{"omega", cfg.omega},
                            {"c", cfg.c},
                            {"x0", cfg.x0},
                            {"gamma", cfg.gamma},
                            {"half_length", cfg.half_length},
                            {"n", cfg.n},
                            {"t_end", cfg.t_end},
                            {"dt", result.dt},
                            {"stride", ec.observer_stride},
                            {"perturbation", perturbation_json(cfg.perturbation)}}},
                     {"steps", result.steps},
                     {"frames", result.track.frames.size()},
                     {"sup_orbit_distance", result.sup_orbit},
                     {"sup_eps_h1", result.sup_eps_h1},
                     {"mass_drift", result.mass_drift},
                     {"momentum_drift", result.momentum_drift},
                     {"energy_drift", result.energy_drift}});
  }
  return result;
}

// ---- two-soliton stability ------------------------------------------------

PairStabilityResult run_pair_stability(const PairStabilityConfig& cfg,
                                       const std::string& out_dir) {
  GridSpec g = make_grid(cfg.half_length, cfg.n);
  PairStabilityResult result;
  result.speeds = pair_speeds(cfg.wave1.omega, cfg.wave1.c, cfg.wave2.omega, cfg.wave2.c);

  Field u0 = wave_field(cfg.wave1, g);
  const Field r2 = wave_field(cfg.wave2, g);
  for (std::size_t m = 0; m < g.n; ++m) u0.v[m] += r2.v[m];
  const Field w = make_perturbation(g, cfg.perturbation);
  for (std::size_t m = 0; m < g.n; ++m) u0.v[m] += w.v[m];

  const Conserved c0 = conserved(u0);
  WaveParams g1 = cfg.wave1, g2 = cfg.wave2;
  std::vector<Conserved> cons_frames;

  EvolveConfig ec;
  ec.t_end = cfg.t_end;
  ec.dt = cfg.dt;
  ec.observer_stride = pick_stride(cfg.stride, g, cfg.t_end, cfg.dt, norm(u0, NormKind::sup));

  const Observer obs = [&](double t, const Field& u) {
    if (!result.track.frames.empty()) {
      const PairTrackFrame& prev = result.track.frames.back();
      const double dt_frame = t - prev.t;
      g1 = prev.p1;
      g2 = prev.p2;
      g1.x0 += g1.c * dt_frame;
      g1.gamma += g1.omega * dt_frame;
      g2.x0 += g2.c * dt_frame;
      g2.gamma += g2.omega * dt_frame;
    }
    PairFit fit = fit_pair(u, g1, g2, 1e-10);
    result.track.append(t, fit);
    PairObservation frame{t, u, result.track.frames.back()};
    result.frames.push_back(std::move(frame));
    cons_frames.push_back(conserved(u));
  };

  const EvolveResult ev = evolve(u0, ec, obs);
  result.dt = ev.dt;
  result.steps = ev.steps;
  for (const PairObservation& f : result.frames)
    result.sup_eps_h1 = std::max(result.sup_eps_h1, f.fit.eps_h1);
  for (const Conserved& c : cons_frames) {
    result.mass_drift = std::max(result.mass_drift, std::abs(c.mass - c0.mass));
    result.momentum_drift = std::max(result.momentum_drift, std::abs(c.momentum - c0.momentum));
    result.energy_drift = std::max(result.energy_drift, std::abs(c.energy - c0.energy));
  }

  if (!out_dir.empty()) {
    ensure_dir(out_dir);
    write_snapshot(out_dir + "/initial.bin", u0);
    write_snapshot(out_dir + "/final.bin", ev.u);
    CsvWriter csv(out_dir + "/pair_track.csv",
                  {"t", "omega1", "c1", "x01", "gamma1", "omega2", "c2", "x02", "gamma2",
                   "resid", "eps_h1", "separation", "m1", "p1", "m2", "p2", "mass", "momentum",
                   "energy"});
    for (std::size_t i = 0; i < result.frames.size(); ++i) {
      const PairTrackFrame& f = result.frames[i].fit;
      const double m1 = M_PI + 2.0 * std::asin(f.p1.c / (2.0 * std::sqrt(f.p1.omega)));
      const double p1 = std::sqrt(4.0 * f.p1.omega - f.p1.c * f.p1.c);
      const double m2 = M_PI + 2.0 * std::asin(f.p2.c / (2.0 * std::sqrt(f.p2.omega)));
      const double p2 = std::sqrt(4.0 * f.p2.omega - f.p2.c * f.p2.c);
      csv.row({f.t, f.p1.omega, f.p1.c, f.p1.x0, f.p1.gamma, f.p2.omega, f.p2.c, f.p2.x0,
               f.p2.gamma, f.resid, f.eps_h1, f.p2.x0 - f.p1.x0, m1, p1, m2, p2,
               cons_frames[i].mass, cons_frames[i].momentum, cons_frames[i].energy});
    }
    csv.close();
    write_json(
        out_dir + "/summary.json",
        njson{{"experiment", "stability-pair"},
              {"config",
               njson{{"wave1",
                      njson{{"omega", cfg.wave1.omega},
                            {"c", cfg.wave1.c},
                            {"x0", cfg.wave1.x0},
                            {"gamma", cfg.wave1.gamma}}},
                     {"wave2",
                      njson{{"omega", cfg.wave2.omega},
                            {"c", cfg.wave2.c},
                            {"x0", cfg.wave2.x0},
                            {"gamma", cfg.wave2.gamma}}},
                     {"half_length", cfg.half_length},
                     {"n", cfg.n},
                     {"t_end", cfg.t_end},
                     {"dt", result.dt},
                     {"stride", ec.observer_stride},
                     {"perturbation", perturbation_json(cfg.perturbation)}}},
              {"steps", result.steps},
              {"frames", result.frames.size()},
              {"speeds",
               njson{{"sigma", result.speeds.sigma},
                     {"sp0", result.speeds.sp0},
                     {"sm0", result.speeds.sm0},
                     {"theta0", result.speeds.theta0},
                     {"conditions_hold", result.speeds.all()}}},
              {"sup_eps_h1", result.sup_eps_h1},
              {"mass_drift", result.mass_drift},
              {"momentum_drift", result.momentum_drift},
              {"energy_drift", result.energy_drift}});
  }
  return result;
}

// ---- localized monotonicity series ---------------------------------------

MonotoneSeries run_monotone(const PairStabilityResult& run, const PairStabilityConfig& cfg,
                            const std::string& out_dir) {
  if (run.frames.empty()) fail(errc::bad_config, "monotone series needs a nonempty pair run");
  MonotoneSeries series;
  series.speeds = run.speeds;
  const double xbar0 = 0.5 * (cfg.wave1.x0 + cfg.wave2.x0);
  const double L = cfg.wave2.x0 - cfg.wave1.x0;
  if (!(L > 0.0)) fail(errc::bad_config, "pair centers must be ordered left to right");
  const LineSpec center = make_line(xbar0, run.speeds.sigma, L);

  double e_loc0 = 0.0, q0 = 0.0;
  for (std::size_t i = 0; i < run.frames.size(); ++i) {
    const PairObservation& fr = run.frames[i];
    MonotoneFrame mf;
    mf.t = fr.t;
    mf.values = localized_functionals(fr.t, fr.u, cfg.wave1.omega, cfg.wave1.c, cfg.wave2.omega,
                                      cfg.wave2.c, xbar0, L);
    if (i == 0) {
      e_loc0 = mf.values.E_loc;
      q0 = mf.values.Q;
    }
    mf.exchange_resid = (mf.values.E_loc - e_loc0) - (mf.values.Q - q0);
    mf.local_mass_center = local_mass_window(fr.t, fr.u, center);

    // Quartic-localization chain on the fitted remainder with the line weight.
    const GridSpec& g = fr.u.grid;
    Field eps = make_field(g);
    const Field r1 = wave_field(fr.fit.p1, g);
    const Field r2 = wave_field(fr.fit.p2, g);
    for (std::size_t m = 0; m < g.n; ++m) eps.v[m] = fr.u.v[m] - r1.v[m] - r2.v[m];
    mf.quartic = quartic_inequality_check(eps, line_weight(fr.t, center, g),
                                          line_weight_deriv(fr.t, center, g));
    series.frames.push_back(mf);
  }

  if (!out_dir.empty()) {
    ensure_dir(out_dir);
    CsvWriter csv(out_dir + "/monotone.csv",
                  {"t", "F", "Q", "E_loc", "Q_p0", "Q_m0", "Q_0p", "Q_0m", "exchange_resid",
                   "local_mass_center", "quartic_lhs", "quartic_mid", "quartic_mass_supp",
                   "quartic_rhs", "quartic_ok"});
    double max_exchange = 0.0;
    bool quartic_all = true;
    for (const MonotoneFrame& f : series.frames) {
      csv.row({f.t, f.values.F, f.values.Q, f.values.E_loc, f.values.Q_p0, f.values.Q_m0,
               f.values.Q_0p, f.values.Q_0m, f.exchange_resid, f.local_mass_center,
               f.quartic.lhs_quartic, f.quartic.mid, f.quartic.mass_supp, f.quartic.rhs_sup,
               f.quartic.ok ? 1.0 : 0.0});
      max_exchange = std::max(max_exchange, std::abs(f.exchange_resid));
      quartic_all = quartic_all && f.quartic.ok;
    }
    csv.close();
    write_json(out_dir + "/summary.json",
               njson{{"experiment", "monotone"},
                     {"frames", series.frames.size()},
                     {"sigma", series.speeds.sigma},
                     {"sp0", series.speeds.sp0},
                     {"sm0", series.speeds.sm0},
                     {"theta0", series.speeds.theta0},
                     {"conditions_hold", series.speeds.all()},
                     {"max_exchange_residual", max_exchange},
                     {"quartic_all_frames", quartic_all}});
  }
  return series;
}

}  // namespace dnls
