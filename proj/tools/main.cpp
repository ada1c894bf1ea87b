// Command-line front end for the gasket measure estimators.
//
// Subcommands: centred, packing, spherical, table, profile, restricted-ball.
// Exit codes: 0 success, 1 reference mismatch, 2 usage/domain error,
// 3 capacity exceeded. Shared flags can also be set through GASKET_*
// environment variables.

#include "gasket/commands.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <thread>

namespace {

void add_shared(CLI::App* cmd, gasket::RunConfig& cfg) {
  cmd->add_option("--format", cfg.format, "Output format: human, json or csv")
      ->envname("GASKET_FORMAT")
      ->check(CLI::IsMember({"human", "json", "csv"}));
  cmd->add_option("--out", cfg.out, "Write output to this file instead of stdout");
  cmd->add_option("--cache-dir", cfg.cache_dir, "Directory for cached point sets")
      ->envname("GASKET_CACHE_DIR");
  cmd->add_option("--workers", cfg.workers, "Worker threads for sweeps")
      ->envname("GASKET_WORKERS")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--confirm-long", cfg.confirm_long, "Confirm long-running sweeps (k >= 13)")
      ->envname("GASKET_CONFIRM_LONG");
  cmd->add_option("--grid-log", cfg.grid_log, "log2 of grid cells per unit length (default 5)")
      ->check(CLI::Range(0, 12));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact density-optimisation estimates of centred, packing and spherical measures of the Sierpinski gasket"};
  app.require_subcommand(1);

  gasket::RunConfig cfg;
  cfg.workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::function<int()> action;

  auto* centred = app.add_subcommand("centred", "Minimise inverse density over centred balls");
  centred->add_option("--k", cfg.k, "Iteration level")->required();
  centred->add_flag("--full-sweep", cfg.full_sweep, "Sweep every center instead of the symmetric restriction");
  centred->add_option("--emit-profile", cfg.emit_profile, "Write the optimal center's density profile CSV here");
  add_shared(centred, cfg);
  centred->callback([&] { action = [&] { return gasket::run_centred(cfg); }; });

  auto* packing = app.add_subcommand("packing", "Maximise inverse density over open balls");
  packing->add_option("--k", cfg.k, "Iteration level")->required();
  packing->add_option("--variant", cfg.variant, "Constant set: original or improved")
      ->check(CLI::IsMember({"original", "improved"}));
  packing->add_flag("--full-sweep", cfg.full_sweep, "Sweep every center instead of the symmetric restriction");
  add_shared(packing, cfg);
  packing->callback([&] { action = [&] { return gasket::run_packing(cfg); }; });

  auto* spherical = app.add_subcommand("spherical", "Maximise density at the barycentre");
  spherical->add_option("--k", cfg.k, "Iteration level")->required();
  spherical->add_flag("--full-sweep", cfg.full_sweep, "Use candidate radii from every point");
  spherical->add_option("--emit-profile", cfg.emit_profile, "Write the barycentre density profile CSV here");
  add_shared(spherical, cfg);
  spherical->callback([&] { action = [&] { return gasket::run_spherical(cfg); }; });

  auto* table = app.add_subcommand("table", "Centred estimates over a level range, diffed against the reference");
  table->add_option("--k-min", cfg.k_min, "First level")->required();
  table->add_option("--k-max", cfg.k_max, "Last level")->required();
  table->add_flag("--full-sweep", cfg.full_sweep, "Sweep every center instead of the symmetric restriction");
  add_shared(table, cfg);
  table->callback([&] { action = [&] { return gasket::run_table(cfg); }; });

  auto* profile = app.add_subcommand("profile", "Distance/density profile CSV for a center");
  profile->add_option("--k", cfg.k, "Iteration level")->required();
  profile->add_option("--center", cfg.center_spec,
                      "Center: barycentre, z0..z2, f<word>(z<j>) e.g. f010(z2), or '<x>,<y>' rationals "
                      "in the (1, sqrt(3)) basis")
      ->required();
  profile->add_option("--window", cfg.window, "Radius window preset: centred, spherical, packing, all");
  profile->add_option("--lo", cfg.window_lo, "Explicit lower radius, e.g. 'sqrt3/16' or '1/4'");
  profile->add_option("--hi", cfg.window_hi, "Explicit upper radius, e.g. 'sqrt3/8+1/8192'");
  add_shared(profile, cfg);
  profile->callback([&] { action = [&] { return gasket::run_profile(cfg); }; });

  auto* ball = app.add_subcommand("restricted-ball", "Bracket the centred measure restricted to a ball");
  ball->add_option("--k", cfg.k, "Iteration level")->required();
  ball->add_option("--center", cfg.center_spec, "Ball center (same grammar as profile --center)")->required();
  ball->add_option("--d", cfg.radius_spec,
                   "Ball radius: exact expression ('sqrt(7/72)', '5/16', 'sqrt3/8+1/64') or "
                   "'spherical-optimal' for the barycentre-optimal radius")
      ->required();
  ball->add_option("--bounds", cfg.bounds, "Centred bounds source: auto, golden or computed")
      ->check(CLI::IsMember({"auto", "golden", "computed"}));
  add_shared(ball, cfg);
  ball->callback([&] { action = [&] { return gasket::run_restricted_ball(cfg); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : gasket::kExitUsage;
  }

  try {
    return action();
  } catch (const gasket::capacity_error& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return gasket::kExitCapacity;
  } catch (const gasket::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return gasket::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return gasket::kExitUsage;
  }
}
