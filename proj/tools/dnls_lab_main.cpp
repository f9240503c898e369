// dnls-lab: command-line driver for the traveling-wave laboratory.
//
//   dnls-lab audit-spectral    --out DIR            linearized-operator audit
//   dnls-lab soliton-table     --out DIR            conserved quantities and d''
//   dnls-lab stability-single  --config F --out DIR one perturbed wave
//   dnls-lab stability-pair    --config F --out DIR two perturbed waves
//   dnls-lab monotone          --config F --out DIR pair run + localized series
//
// Every run writes CSV series plus a summary.json into --out. Exit status is
// 0 on success and 1 on any laboratory error (message on stderr).

#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>

#include "CLI11.hpp"
#include "dnls/errors.hpp"
#include "dnls/lab.hpp"

namespace fs = std::filesystem;

namespace {

void prepare_out(const std::string& dir, bool force) {
  if (fs::exists(dir) && !fs::is_empty(dir) && !force)
    dnls::fail(dnls::errc::io_failure,
               "output directory " + dir + " is not empty (use --force to reuse it)");
}

struct SeedOverride {
  bool set = false;
  std::uint64_t value = 0;
  void apply(dnls::PerturbationSpec& p) const {
    if (set) p.seed = value;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for derivative-NLS traveling waves"};
  app.require_subcommand(1);

  std::string out;
  std::string config;
  bool force = false;
  SeedOverride seed;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    sub->add_option("--out", out, "output directory")->required();
    sub->add_flag("--force", force, "write into a non-empty output directory");
    if (needs_config) {
      sub->add_option("--config", config, "JSON experiment configuration")->required();
      sub->add_option("--seed", seed.value, "override the perturbation seed")
          ->each([&](const std::string&) { seed.set = true; });
    }
  };

  CLI::App* audit = app.add_subcommand("audit-spectral", "spectral audit over the standard family");
  add_common(audit, false);
  CLI::App* table = app.add_subcommand("soliton-table", "conserved quantities and d'' over the standard family");
  add_common(table, false);
  CLI::App* single = app.add_subcommand("stability-single", "evolve one perturbed traveling wave");
  add_common(single, true);
  CLI::App* pair = app.add_subcommand("stability-pair", "evolve two perturbed traveling waves");
  add_common(pair, true);
  CLI::App* mono = app.add_subcommand("monotone", "pair run plus the localized monotonicity series");
  add_common(mono, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (audit->parsed()) {
      prepare_out(out, force);
      const dnls::AuditResult r = dnls::run_spectral_audit(out);
      std::printf("audit-spectral: %zu points -> %s\n", r.rows.size(), out.c_str());
    } else if (table->parsed()) {
      prepare_out(out, force);
      const auto rows = dnls::run_soliton_table(out);
      std::printf("soliton-table: %zu points -> %s\n", rows.size(), out.c_str());
    } else if (single->parsed()) {
      prepare_out(out, force);
      dnls::SingleStabilityConfig cfg = dnls::load_single_config(config);
      seed.apply(cfg.perturbation);
      const dnls::SingleStabilityResult r = dnls::run_single_stability(cfg, out);
      std::printf("stability-single: %zu frames, sup orbit distance %.3e -> %s\n",
                  r.track.frames.size(), r.sup_orbit, out.c_str());
    } else if (pair->parsed()) {
      prepare_out(out, force);
      dnls::PairStabilityConfig cfg = dnls::load_pair_config(config);
      seed.apply(cfg.perturbation);
      const dnls::PairStabilityResult r = dnls::run_pair_stability(cfg, out);
      std::printf("stability-pair: %zu frames, sup |eps|_H1 %.3e -> %s\n", r.frames.size(),
                  r.sup_eps_h1, out.c_str());
    } else if (mono->parsed()) {
      prepare_out(out, force);
      dnls::PairStabilityConfig cfg = dnls::load_pair_config(config);
      seed.apply(cfg.perturbation);
      const std::string pair_dir = (fs::path(out) / "pair").string();
      const std::string mono_dir = (fs::path(out) / "monotone").string();
      const dnls::PairStabilityResult r = dnls::run_pair_stability(cfg, pair_dir);
      const dnls::MonotoneSeries s = dnls::run_monotone(r, cfg, mono_dir);
      double max_exchange = 0.0;
      bool quartic_all = true;
      for (const dnls::MonotoneFrame& f : s.frames) {
        max_exchange = std::max(max_exchange, std::abs(f.exchange_resid));
        quartic_all = quartic_all && f.quartic.ok;
      }
      std::printf("monotone: %zu frames, max exchange residual %.3e, quartic %s -> %s\n",
                  s.frames.size(), max_exchange, quartic_all ? "ok" : "VIOLATED", out.c_str());
    }
  } catch (const dnls::error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
