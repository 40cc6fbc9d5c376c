// Command line driver.
//
//   metawave convergence   refinement studies against the built-in smooth
//                          reference solution (text table + optional CSV)
//   metawave run           march a configured scenario, writing snapshots,
//                          an energy trace, and phase-probe data
//   metawave energy-audit  conservation/decay check from random initial
//                          data on a dispersive strip
//   metawave validate      parse a config, build the scenario, and report
//                          sizes and material diagnostics without running
//
// All file output is plain text (legacy VTK or RFC-4180 CSV) and is
// byte-stable for identical inputs.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "metawave/assembly.hpp"
#include "metawave/config.hpp"
#include "metawave/fespace.hpp"
#include "metawave/material.hpp"
#include "metawave/mesh.hpp"
#include "metawave/mms.hpp"
#include "metawave/output.hpp"
#include "metawave/postprocess.hpp"
#include "metawave/probe.hpp"
#include "metawave/runtime.hpp"
#include "metawave/state.hpp"
#include "metawave/stepper.hpp"

using namespace metawave;

namespace {

std::string fmt(const char* f, ...) {
  va_list args;
  va_start(args, f);
  char buf[512];
  std::vsnprintf(buf, sizeof(buf), f, args);
  va_end(args);
  return buf;
}

void apply_threads(int threads) {
  if (threads <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    threads = static_cast<int>(std::min(8u, hw == 0 ? 1u : hw));
  }
  set_num_threads(threads);
}

std::vector<Pairing> parse_pairings(const std::string& name) {
  if (name == "all")
    return {Pairing::BDM1, Pairing::RTN0, Pairing::BDM2, Pairing::RTN1};
  return {pairing_from_name(name)};
}

// ---------------------------------------------------------------------------

int cmd_convergence(const std::string& pairing_arg, std::vector<int> levels,
                    double T, const std::string& dt_policy,
                    const std::string& out_dir, int threads) {
  apply_threads(threads);
  for (const Pairing pairing : parse_pairings(pairing_arg)) {
    StudyOptions opts;
    opts.pairing = pairing;
    opts.levels = levels;
    opts.T = T;
    if (dt_policy == "h") {
      opts.dt_policy = DtPolicy::MatchH;
      opts.policy_explicit = true;
    } else if (dt_policy == "h2") {
      opts.dt_policy = DtPolicy::MatchH2;
      opts.policy_explicit = true;
    } else if (dt_policy != "auto") {
      std::fprintf(stderr, "unknown --dt-policy '%s' (auto|h|h2)\n",
                   dt_policy.c_str());
      return 2;
    }
    const ConvergenceReport report = run_convergence(opts);
    std::fputs(format_report(report).c_str(), stdout);
    std::fflush(stdout);
    if (!out_dir.empty()) {
      std::filesystem::create_directories(out_dir);
      const std::string path =
          out_dir + "/convergence_" + pairing_name(pairing) + ".csv";
      write_text_file(path, report_csv(report));
      std::printf("wrote %s\n", path.c_str());
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct SnapshotPlan {
  int step;
  double time;
};

int cmd_run(const std::string& config_path, int threads) {
  apply_threads(threads);
  const RunConfig cfg = load_run_config(config_path);
  const Scenario sc = build_scenario(cfg);
  const BlockLayout layout = BlockLayout::from(sc.spaces);
  const double dt = sc.grid.dt();

  std::printf("mesh: %d cells, %d edges, h_max=%.6g\n", sc.mesh->n_cells(),
              sc.mesh->n_edges(), sc.mesh->h_max());
  std::printf("spaces (%s): V=%d Q=%d W=%d, system size %d\n",
              pairing_name(cfg.pairing).c_str(), sc.spaces.V->n_dofs(),
              sc.spaces.Q->n_dofs(), sc.spaces.W->n_dofs(), layout.total);
  std::printf("time: %d steps of dt=%.6g to T=%.6g\n", sc.grid.n_steps, dt,
              cfg.T);

  // Map requested snapshot times to grid steps (nearest, with a note when
  // the requested time is off the grid).
  std::vector<SnapshotPlan> plan;
  for (const double t_req : cfg.output.snapshots) {
    int k = static_cast<int>(std::lround(t_req / dt));
    k = std::clamp(k, 0, sc.grid.n_steps);
    if (std::abs(k * dt - t_req) > 1e-9 * std::max(1.0, cfg.T))
      std::printf("note: snapshot time %.6g rounded to grid time %.6g\n",
                  t_req, k * dt);
    plan.push_back({k, k * dt});
  }

  std::filesystem::create_directories(cfg.output.directory);
  if (cfg.output.mesh_dump)
    write_text_file(cfg.output.directory + "/mesh.txt", mesh_to_text(*sc.mesh));

  const SystemBlocks blocks = assemble_system(sc.spaces, sc.material);
  CNSystem sys(blocks, layout, dt);
  if (!sc.source.neumann_edges.empty())
    sys.constrain(normal_constraint_dofs(*sc.spaces.V, sc.source.neumann_edges));
  const auto t0 = std::chrono::steady_clock::now();
  sys.factorize();
  std::printf("factorized in %.1fs\n",
              std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            t0)
                  .count());
  std::fflush(stdout);

  const EnergyForm energy(sc.spaces, sc.material);
  std::vector<std::vector<std::string>> energy_rows;

  const auto* phase = cfg.output.phase_line ? &*cfg.output.phase_line : nullptr;
  const int phase_first =
      phase ? sc.grid.n_steps - phase->lag_steps : -1;
  std::vector<double> phase_early, phase_late;

  StateVector prev(layout);
  auto write_snapshot = [&](const SnapshotPlan& sp, const StateVector& U) {
    // Cell means of p and (for steps past the first) the post-processed
    // pressure of the step ending at sp.time, which lives at the
    // midpoint sp.time - dt/2.
    CellScalars scalars;
    scalars.emplace_back("p", cell_means(*sc.spaces.Q, U.p()));
    if (sp.step > 0) {
      const PressurePost post = postprocess_pressure(
          sc.spaces, sc.material, prev, U, sp.time - dt, dt, sc.source.f);
      scalars.emplace_back("p_star", cell_means(*sc.spaces.Qstar, post.coeffs));
    }
    CellVectors vectors;
    vectors.emplace_back("v", centroid_values(*sc.spaces.V, U.v()));
    const bool vtk = cfg.output.format == "vtk";
    const std::string path = cfg.output.directory +
                             fmt("/snapshot_t%.4f.%s", sp.time,
                                 vtk ? "vtk" : "csv");
    write_text_file(path, vtk ? vtk_snapshot(*sc.mesh, scalars, vectors)
                              : csv_snapshot(*sc.mesh, scalars, vectors));
    std::printf("wrote %s\n", path.c_str());
  };

  run_transient(sys, sc.spaces, StateVector(layout), sc.source, sc.grid,
                [&](int step, double t, const StateVector& U) {
                  if (cfg.output.energy_trace)
                    energy_rows.push_back({fmt("%d", step), fmt("%.10g", t),
                                           fmt("%.12e", energy(U))});
                  for (const SnapshotPlan& sp : plan)
                    if (sp.step == step) write_snapshot(sp, U);
                  if (phase && (step == phase_first || step == sc.grid.n_steps)) {
                    auto& dst =
                        step == phase_first ? phase_early : phase_late;
                    dst = sample_on_line(*sc.spaces.Q, U.p(), phase->y,
                                         phase->x0, phase->x1, phase->samples);
                  }
                  prev.data = U.data;
                });

  if (cfg.output.energy_trace) {
    const std::string path = cfg.output.directory + "/energy.csv";
    write_text_file(path, csv_table({"step", "t", "E"}, energy_rows));
    std::printf("wrote %s\n", path.c_str());
  }
  if (phase) {
    const double shift = dominant_phase_shift(phase_early, phase_late);
    std::vector<std::vector<std::string>> rows;
    const double dx = (phase->x1 - phase->x0) / phase->samples;
    for (int i = 0; i < phase->samples; ++i)
      rows.push_back({fmt("%.10g", phase->x0 + (i + 0.5) * dx),
                      fmt("%.12e", phase_early[i]),
                      fmt("%.12e", phase_late[i])});
    const std::string path = cfg.output.directory + "/phase_line.csv";
    write_text_file(path, csv_table({"x", "p_early", "p_late"}, rows));
    std::printf("wrote %s\n", path.c_str());
    std::printf("phase shift of dominant mode on y=%.4g: %+.6f rad over %d "
                "step(s)\n",
                phase->y, shift, phase->lag_steps);
  }
  return 0;
}

// ---------------------------------------------------------------------------

int cmd_energy_audit(const std::string& pairing_arg, int n, int steps,
                     double dt, double gamma, unsigned seed,
                     const std::string& out_dir, int threads) {
  apply_threads(threads);
  bool all_ok = true;
  for (const Pairing pairing : parse_pairings(pairing_arg)) {
    const auto mesh =
        std::make_shared<Mesh>(build_structured(Rect{0, 0, 1, 1}, n));
    const SpaceSet spaces = SpaceSet::make(mesh, pairing);
    MaterialField mat = uniform_material(mesh->n_cells(), 1.2, 0.9, 1.5, 1.1,
                                         gamma);
    const std::vector<int> region =
        classify_cells(*mesh, [](const Vec2& x) {
          return (x.x() > 0.375 && x.x() < 0.625) ? 1 : 0;
        });
    apply_region_contrast(mat, region, 1, 2.0, 1.7);

    const BlockLayout layout = BlockLayout::from(spaces);
    CNSystem sys(assemble_system(spaces, mat), layout, dt);
    sys.factorize();

    StateVector U0(layout);
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int i = 0; i < layout.total; ++i) U0.data[i] = dist(gen);

    const EnergyForm energy(spaces, mat);
    const double E0 = energy(U0);
    double max_drift = 0.0, prevE = E0, worst_ratio = 0.0;
    bool monotone = true;
    std::vector<std::vector<std::string>> rows;
    run_transient(sys, spaces, U0, TransientSource{},
                  TimeGrid{0.0, steps * dt, steps},
                  [&](int step, double t, const StateVector& U) {
                    const double E = energy(U);
                    max_drift = std::max(max_drift, std::abs(E - E0) / E0);
                    if (step > 0) {
                      worst_ratio = std::max(worst_ratio, E / prevE);
                      if (E > prevE * (1.0 + 1e-12)) monotone = false;
                    }
                    prevE = E;
                    rows.push_back(
                        {fmt("%d", step), fmt("%.10g", t), fmt("%.12e", E)});
                  });

    if (gamma == 0.0) {
      std::printf("%s: E0=%.6e, max |E-E0|/E0 = %.3e over %d steps\n",
                  pairing_name(pairing).c_str(), E0, max_drift, steps);
      all_ok = all_ok && max_drift <= 1e-9;
    } else {
      std::printf("%s: E0=%.6e, final E=%.6e, monotone decay: %s "
                  "(max E_{n+1}/E_n=%.12f)\n",
                  pairing_name(pairing).c_str(), E0, prevE,
                  monotone ? "yes" : "NO", worst_ratio);
      all_ok = all_ok && monotone;
    }
    if (!out_dir.empty()) {
      std::filesystem::create_directories(out_dir);
      const std::string path =
          out_dir + "/energy_" + pairing_name(pairing) + ".csv";
      write_text_file(path, csv_table({"step", "t", "E"}, rows));
      std::printf("wrote %s\n", path.c_str());
    }
  }
  return all_ok ? 0 : 1;
}

// ---------------------------------------------------------------------------

int cmd_validate(const std::string& config_path) {
  const RunConfig cfg = load_run_config(config_path);
  const Scenario sc = build_scenario(cfg);
  const BlockLayout layout = BlockLayout::from(sc.spaces);

  std::printf("domain: [%.6g, %.6g] x [%.6g, %.6g], n=%d\n", cfg.domain.x0,
              cfg.domain.x1, cfg.domain.y0, cfg.domain.y1, cfg.n);
  std::printf("mesh: %d vertices, %d cells, %d edges, h_max=%.6g\n",
              sc.mesh->n_vertices(), sc.mesh->n_cells(), sc.mesh->n_edges(),
              sc.mesh->h_max());
  std::printf("pairing %s: V=%d Q=%d W=%d Q*=%d, system size %d\n",
              pairing_name(cfg.pairing).c_str(), sc.spaces.V->n_dofs(),
              sc.spaces.Q->n_dofs(), sc.spaces.W->n_dofs(),
              sc.spaces.Qstar->n_dofs(), layout.total);
  std::printf("time: %d steps of dt=%.6g to T=%.6g\n", sc.grid.n_steps,
              sc.grid.dt(), cfg.T);

  for (std::size_t i = 0; i < cfg.regions.size(); ++i) {
    int count = 0;
    for (const int r : sc.cell_region)
      if (r == static_cast<int>(i) + 1) ++count;
    std::printf("region '%s': %d cells, Omega_rho=%.6g Omega_kappa=%.6g\n",
                cfg.regions[i].label.c_str(), count, cfg.regions[i].Omega_rho,
                cfg.regions[i].Omega_kappa);
  }
  for (const auto& part : cfg.boundary) {
    const auto edges = sc.mesh->boundary_edges(part.label);
    std::printf("boundary '%s' (%s): %zu edges, %s%s\n", part.label.c_str(),
                part.where.c_str(), edges.size(),
                part.essential ? "essential v.n" : "pressure source ",
                part.essential ? "" : part.source_name.c_str());
  }

  const Diagnostics diag = validate(sc.material);
  if (diag.ok) {
    std::printf("material: admissible\n");
  } else {
    for (const auto& issue : diag.issues)
      std::printf("material issue: %s\n", issue.c_str());
  }
  return diag.ok ? 0 : 1;
}

}  // namespace

// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
  CLI::App app{"mixed finite element simulator for dispersive acoustics"};
  app.require_subcommand(1);

  // convergence
  auto* conv = app.add_subcommand(
      "convergence", "refinement study against the smooth reference solution");
  std::string conv_pairing = "all";
  std::vector<int> conv_levels = {8, 16, 32, 64};
  double conv_T = 0.25;
  std::string conv_policy = "auto";
  std::string conv_out;
  int conv_threads = 0;
  conv->add_option("--pairing", conv_pairing,
                   "bdm1|rtn0|bdm2|rtn1|all (default all)");
  conv->add_option("--levels", conv_levels, "mesh levels, e.g. 8,16,32,64")
      ->delimiter(',');
  conv->add_option("--T", conv_T, "final time (default 0.25)");
  conv->add_option("--dt-policy", conv_policy,
                   "auto|h|h2 (auto: h for lowest order, h2 otherwise)");
  conv->add_option("--out", conv_out, "directory for CSV reports");
  conv->add_option("--threads", conv_threads, "assembly threads (0 = auto)");

  // run
  auto* run = app.add_subcommand("run", "march a configured scenario");
  std::string run_config;
  int run_threads = 0;
  run->add_option("--config", run_config, "JSON run configuration")
      ->required();
  run->add_option("--threads", run_threads, "assembly threads (0 = auto)");

  // energy-audit
  auto* audit = app.add_subcommand(
      "energy-audit", "conservation/decay check from random initial data");
  std::string audit_pairing = "all";
  int audit_n = 16, audit_steps = 200, audit_threads = 0;
  double audit_dt = 0.01, audit_gamma = 0.0;
  unsigned audit_seed = 1;
  std::string audit_out;
  audit->add_option("--pairing", audit_pairing, "bdm1|rtn0|bdm2|rtn1|all");
  audit->add_option("--n", audit_n, "mesh resolution (default 16)");
  audit->add_option("--steps", audit_steps, "number of steps (default 200)");
  audit->add_option("--dt", audit_dt, "time step (default 0.01)");
  audit->add_option("--gamma", audit_gamma, "damping (default 0)");
  audit->add_option("--seed", audit_seed, "RNG seed for the initial data");
  audit->add_option("--out", audit_out, "directory for energy trace CSVs");
  audit->add_option("--threads", audit_threads, "assembly threads (0 = auto)");

  // validate
  auto* val = app.add_subcommand(
      "validate", "check a configuration and report scenario sizes");
  std::string val_config;
  val->add_option("--config", val_config, "JSON run configuration")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (conv->parsed())
      return cmd_convergence(conv_pairing, conv_levels, conv_T, conv_policy,
                             conv_out, conv_threads);
    if (run->parsed()) return cmd_run(run_config, run_threads);
    if (audit->parsed())
      return cmd_energy_audit(audit_pairing, audit_n, audit_steps, audit_dt,
                              audit_gamma, audit_seed, audit_out,
                              audit_threads);
    if (val->parsed()) return cmd_validate(val_config);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
