#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "dnls/functionals.hpp"
#include "dnls/grid.hpp"
#include "dnls/modulation.hpp"
#include "dnls/monotone.hpp"
#include "dnls/spectral.hpp"
#include "dnls/waves.hpp"

namespace dnls {

// Standard operator-audit box: half-length 5*ceil(max(20, 24/nu)/5), the
// smallest multiple of 5 that resolves the tails of phi_{omega,c}; keeping
// the box tight maximizes the grid cutoff at fixed n, which is what the
// kernel-residual checks of the audit need.
GridSpec audit_box(double omega, double c, std::size_t n = 1024);

// The 15-point audit family: omega in {1/2, 1, 2}, c = rho * 2 sqrt(omega)
// for rho in {-0.9, -0.5, 0, 0.5, 0.9}.
std::vector<WaveParams> audit_set();

// ---- perturbations --------------------------------------------------------

struct PerturbationSpec {
  std::string kind = "smooth";  // "smooth" | "bump" | "none"
  std::uint64_t seed = 1;
  double delta = 1e-2;  // H1 norm of the added field
};

Field make_perturbation(const GridSpec& g, const PerturbationSpec& spec);

// ---- experiment configurations -------------------------------------------

struct SingleStabilityConfig {
  double omega = 1.0, c = 0.0;
  double x0 = 0.0, gamma = 0.0;
  double half_length = 30.0;
  std::size_t n = 2048;
  double t_end = 10.0;
  double dt = 0.0;         // <= 0: suggested step
  std::size_t stride = 0;  // 0: about 100 observer frames
  PerturbationSpec perturbation;
};

struct PairStabilityConfig {
  WaveParams wave1{1.0, 1.0, -15.0, 0.0};
  WaveParams wave2{3.0, 3.0, 15.0, 0.0};
  double half_length = 64.0;
  std::size_t n = 2048;
  double t_end = 10.0;
  double dt = 0.0;
  std::size_t stride = 0;
  PerturbationSpec perturbation;
};

SingleStabilityConfig load_single_config(const std::string& path);
PairStabilityConfig load_pair_config(const std::string& path);

// ---- drivers --------------------------------------------------------------
// Every driver returns its measurements and, when out_dir is nonempty,
// writes CSV series, binary snapshots, and a summary.json there.

struct AuditRow {
  GridSpec box;
  SpectralReport report;
};

struct AuditResult {
  std::vector<AuditRow> rows;
};

AuditResult run_spectral_audit(const std::string& out_dir = "");

struct SolitonTableRow {
  WaveParams p;
  GridSpec box;
  Conserved cons;       // measured on the sampled wave
  double action = 0.0;  // E + omega M + c P
  double nehari = 0.0;
  double mass_closed = 0.0;      // pi + 2 asin(c / (2 sqrt(omega)))
  double momentum_closed = 0.0;  // sqrt(4 omega - c^2)
  HessianD2 d2;
  double det = 0.0;
  double defect = 0.0;
};

// Functionals, closed forms, and the action Hessian over the audit family.
// Each row records the box it was computed on; the table samples the
// modulated wave, so its boxes are wider than audit_box (half-length
// 5*ceil(max(25, 28/nu)/5)) to clear the tail gate with margin.
std::vector<SolitonTableRow> run_soliton_table(const std::string& out_dir = "");

struct SingleStabilityResult {
  ModulationTrack track;
  std::vector<double> orbit;  // orbit distance per frame
  double sup_orbit = 0.0;
  double sup_eps_h1 = 0.0;
  double mass_drift = 0.0, momentum_drift = 0.0, energy_drift = 0.0;
  double dt = 0.0;
  std::size_t steps = 0;
};

SingleStabilityResult run_single_stability(const SingleStabilityConfig& cfg,
                                           const std::string& out_dir = "");

struct PairObservation {
  double t = 0.0;
  Field u;
  PairTrackFrame fit;
};

struct PairStabilityResult {
  PairSpeeds speeds;
  std::vector<PairObservation> frames;
  PairTrack track;
  double sup_eps_h1 = 0.0;
  double mass_drift = 0.0, momentum_drift = 0.0, energy_drift = 0.0;
  double dt = 0.0;
  std::size_t steps = 0;
};

PairStabilityResult run_pair_stability(const PairStabilityConfig& cfg,
                                       const std::string& out_dir = "");

struct MonotoneFrame {
  double t = 0.0;
  LocalizedValues values;
  double exchange_resid = 0.0;  // (E_loc(t) - E_loc(0)) - (Q(t) - Q(0))
  double local_mass_center = 0.0;
  QuarticCheck quartic;  // remainder against the center-line weight
};

struct MonotoneSeries {
  PairSpeeds speeds;
  std::vector<MonotoneFrame> frames;
};

MonotoneSeries run_monotone(const PairStabilityResult& run, const PairStabilityConfig& cfg,
                            const std::string& out_dir = "");

}  // namespace dnls
