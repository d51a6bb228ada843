// axiring: simulate anti-parallel vortex-ring collisions in the meridional
// half-plane, run the Dyson thin-filament model, audit the kernel
// inequalities, fit power laws, and plot series.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "axiring/diagnostics.hpp"
#include "axiring/dyson.hpp"
#include "axiring/fitting.hpp"
#include "axiring/io.hpp"
#include "axiring/parallel.hpp"
#include "axiring/svg.hpp"
#include "axiring/theory.hpp"

namespace fs = std::filesystem;
using namespace axiring;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;
constexpr std::uint64_t kDefaultAuditSeed = 0x00c0ffee2a114ull;

int cmd_simulate(const std::string& config_path, int threads) {
  RunConfig cfg;
  try {
    cfg = load_run_config(config_path);
  } catch (const ConfigError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  }
  set_thread_count(resolve_thread_count(threads));

  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec) {
    std::cerr << "error: cannot create out_dir '" << cfg.out_dir << "'\n";
    return kExitUsage;
  }

  ParticleSystem sys;
  try {
    sys = init_from_profile(cfg.profile, cfg.h, Regularization{cfg.epsilon});
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  }
  std::cout << "simulate: preset " << to_string(cfg.profile.kind) << ", "
            << sys.particles.size() << " particles, dt " << cfg.dt << ", T "
            << cfg.t_max << ", threads " << effective_threads() << "\n";

  const std::string series_path =
      (fs::path(cfg.out_dir) / "series.csv").string();
  std::ofstream series(series_path, std::ios::binary);
  if (!series) {
    std::cerr << "error: cannot write '" << series_path << "'\n";
    return kExitUsage;
  }
  series << kSeriesHeader << '\n';

  RunOptions opt{cfg.dt, cfg.t_max, cfg.output_every};
  const RunResult result =
      run(sys, opt, [&](long index, const ParticleSystem& snap,
                        const TimeSeriesRecord& rec) {
        write_series_row(series, rec);
        series.flush();  // partial output survives an aborted run
        write_snapshot(
            (fs::path(cfg.out_dir) / snapshot_filename(index)).string(),
            snap);
      });
  if (result.advisory_violations > 0)
    std::cerr << "warning: dt exceeded the advisory bound 0.5*eps/max|u| on "
              << result.advisory_violations << " steps\n";
  if (sys.reflection_count > 0)
    std::cerr << "warning: " << sys.reflection_count
              << " particle reflections at z = 0\n";
  if (result.aborted) {
    std::cerr << "error: integration aborted: " << result.abort_reason << "\n";
    return kExitRuntime;
  }
  std::cout << "simulate: wrote " << result.records.size() << " records to "
            << series_path << "\n";
  return kExitOk;
}

int cmd_dyson(double gamma, double r0, double z0, double a0, double dt,
              double t_max, const std::string& core_model,
              const std::string& out_path) {
  CoreModel core;
  if (core_model == "fixed")
    core = CoreModel::fixed;
  else if (core_model == "shrinking")
    core = CoreModel::shrinking;
  else {
    std::cerr << "error: core model must be 'fixed' or 'shrinking'\n";
    return kExitUsage;
  }
  FilamentPairState state{r0, z0, gamma, a0, r0};
  DysonResult result;
  try {
    result = integrate(state, dt, t_max, core);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  }
  write_dyson_csv(out_path, result);
  std::cout << "dyson: wrote " << result.series.size() << " rows to "
            << out_path << (result.collision ? " (collision)" : "") << "\n";
  return kExitOk;
}

ParticleSystem system_for_audit(const std::string& config_path,
                                const std::string& snapshot_path,
                                double epsilon_override) {
  if (!config_path.empty()) {
    const RunConfig cfg = load_run_config(config_path);
    return init_from_profile(cfg.profile, cfg.h, Regularization{cfg.epsilon});
  }
  ParticleSystem sys;
  sys.particles = read_snapshot(snapshot_path);
  double scale = 0.0, h_sum = 0.0;
  for (const auto& p : sys.particles) {
    scale = std::max(scale, std::max(p.pos.r, std::abs(p.pos.z)));
    h_sum += std::sqrt(p.volume / p.pos.r);  // V = r h^2
  }
  sys.length_scale = scale > 0.0 ? scale : 1.0;
  sys.reg.epsilon = epsilon_override >= 0.0
                        ? epsilon_override
                        : 2.0 * h_sum / double(sys.particles.size());
  return sys;
}

int cmd_audit(const std::string& which, const std::string& config_path,
              const std::string& snapshot_path, double epsilon_override,
              const std::string& out_path, std::uint64_t seed, int threads) {
  if (which != "kernels" && which != "inequalities" && which != "all") {
    std::cerr << "error: audit selector must be one of kernels, inequalities, "
                 "all\n";
    return kExitUsage;
  }
  set_thread_count(resolve_thread_count(threads));
  std::vector<AuditReport> reports;
  try {
    if (which == "kernels" || which == "all") {
      reports.push_back(audit_f_signs());
      reports.push_back(audit_h_gap(10000, seed));
      reports.push_back(audit_derivative_identities());
      reports.push_back(audit_f_est(200, seed + 1));
    }
    if (which == "inequalities" || which == "all") {
      if (config_path.empty() && snapshot_path.empty()) {
        std::cerr << "error: audit inequalities needs --config or "
                     "--snapshot\n";
        return kExitUsage;
      }
      ParticleSystem sys =
          system_for_audit(config_path, snapshot_path, epsilon_override);
      const auto samples = sample_points_around(sys, 100, 0.5, seed + 2);
      reports.push_back(audit_p_linfty(sys, 2.0, 0.0));
      reports.push_back(
          audit_p_linfty(sys, std::numeric_limits<double>::infinity(), 0.0));
      for (double q : {0.0, 1.0, 2.0})
        reports.push_back(audit_lemma_xq(sys, q, samples));
      for (double alpha : {0.0, 1.0, 1.9})
        reports.push_back(audit_lemma_2d(sys, alpha));
      reports.push_back(audit_fs_bound(sys, samples));
      reports.push_back(audit_energy_kernel_bounds(50, seed + 3));
    }
  } catch (const ConfigError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  }

  if (out_path.empty() || out_path == "-") {
    write_audit_json(std::cout, reports);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      return kExitUsage;
    }
    write_audit_json(out, reports);
  }
  bool hard_ok = true;
  for (const auto& r : reports)
    if (r.hard && !r.pass) hard_ok = false;
  return hard_ok ? kExitOk : 1;
}

int cmd_fit(const std::string& csv_path, const std::string& column,
            double t_min, double t_max) {
  CsvTable table;
  try {
    table = read_csv(csv_path);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  }
  const int tc = table.column_index("t");
  const int vc = table.column_index(column);
  if (tc < 0 || vc < 0) {
    std::cerr << "error: column '" << (tc < 0 ? "t" : column)
              << "' not present in " << csv_path << "\n";
    return kExitUsage;
  }
  std::vector<std::pair<double, double>> series;
  for (const auto& row : table.rows) series.emplace_back(row[tc], row[vc]);
  PowerLawFit fit;
  try {
    fit = fit_power_law(series, t_min, t_max);
  } catch (const FitError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  }
  std::cout << "exponent,prefactor,residual\n"
            << format_double(fit.exponent) << ',' << format_double(fit.prefactor)
            << ',' << format_double(fit.residual) << "\n";
  std::printf(
      "# reference exponents: 2/15 = %.5f, 1/15 = %.5f, beta0(0) = %.5f, "
      "support bound = 2\n",
      2.0 / 15.0, 1.0 / 15.0, beta0(0.0));
  return kExitOk;
}

int cmd_plot(const std::string& csv_path,
             const std::vector<std::string>& columns, const std::string& mode,
             const std::string& out_path) {
  if (mode != "linear" && mode != "loglog") {
    std::cerr << "error: plot mode must be 'linear' or 'loglog'\n";
    return kExitUsage;
  }
  CsvTable table;
  try {
    table = read_csv(csv_path);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  }
  const int tc = table.column_index("t");
  if (tc < 0) {
    std::cerr << "error: column 't' not present in " << csv_path << "\n";
    return kExitUsage;
  }
  std::vector<PlotSeries> series;
  for (const auto& name : columns) {
    const int c = table.column_index(name);
    if (c < 0) {
      std::cerr << "error: column '" << name << "' not present in "
                << csv_path << "\n";
      return kExitUsage;
    }
    PlotSeries s;
    s.label = name;
    for (const auto& row : table.rows) {
      s.x.push_back(row[tc]);
      s.y.push_back(row[c]);
    }
    series.push_back(std::move(s));
  }
  std::string svg;
  try {
    svg = render_line_chart(series, "t", fs::path(csv_path).filename().string(),
                            mode == "loglog");
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << out_path << "'\n";
    return kExitUsage;
  }
  out << svg;
  std::cout << "plot: wrote " << out_path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"axiring: axisymmetric anti-parallel vortex-ring toolbox"};
  app.require_subcommand(1);

  std::string config_path, snapshot_path, out_path, column, which, core_model;
  std::string csv_path;
  std::vector<std::string> columns;
  std::string mode = "linear";
  int threads = 0;
  double gamma = 1.0, r0 = 1.0, z0 = 1.0, a0 = 0.05, dt = 0.01, t_max = 100.0;
  double t_min_fit = 0.0, t_max_fit = 0.0;
  double epsilon_override = -1.0;
  std::uint64_t seed = kDefaultAuditSeed;

  auto* sim = app.add_subcommand("simulate", "run a particle simulation");
  sim->add_option("--config", config_path, "JSON run configuration")
      ->required();
  sim->add_option("--threads", threads,
                  "worker threads (0 = auto; env AXIRING_THREADS overrides)");

  auto* dys = app.add_subcommand("dyson", "run the thin-filament pair model");
  dys->add_option("--gamma", gamma, "circulation magnitude")->required();
  dys->add_option("--r0", r0, "initial ring radius")->required();
  dys->add_option("--z0", z0, "initial half-separation")->required();
  dys->add_option("--a0", a0, "initial core radius")->required();
  dys->add_option("--dt", dt, "time step")->required();
  dys->add_option("--tmax", t_max, "horizon")->required();
  dys->add_option("--core", core_model, "core model: fixed | shrinking")
      ->required();
  dys->add_option("--out", out_path, "output CSV path")->required();

  auto* aud = app.add_subcommand("audit", "run inequality and sign audits");
  aud->add_option("which", which, "kernels | inequalities | all")->required();
  aud->add_option("--config", config_path,
                  "run config whose t = 0 system is audited");
  aud->add_option("--snapshot", snapshot_path, "snapshot CSV to audit");
  aud->add_option("--epsilon", epsilon_override,
                  "blob radius for snapshot audits (default: 2h estimate)");
  aud->add_option("--out", out_path, "report path ('-' = stdout)");
  aud->add_option("--seed", seed, "RNG seed for sampled audits");
  aud->add_option("--threads", threads, "worker threads");

  auto* fit = app.add_subcommand("fit", "log-log power-law fit of a column");
  fit->add_option("csv", csv_path, "input CSV")->required();
  fit->add_option("--column", column, "column to fit")->required();
  fit->add_option("--tmin", t_min_fit, "window start")->required();
  fit->add_option("--tmax", t_max_fit, "window end")->required();

  auto* plt = app.add_subcommand("plot", "render columns as an SVG chart");
  plt->add_option("csv", csv_path, "input CSV")->required();
  plt->add_option("--column", columns, "column(s) to draw")->required();
  plt->add_option("--mode", mode, "linear | loglog");
  plt->add_option("--out", out_path, "output SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return kExitUsage;
  }

  try {
    if (sim->parsed()) return cmd_simulate(config_path, threads);
    if (dys->parsed())
      return cmd_dyson(gamma, r0, z0, a0, dt, t_max, core_model, out_path);
    if (aud->parsed())
      return cmd_audit(which, config_path, snapshot_path, epsilon_override,
                       out_path, seed, threads);
    if (fit->parsed()) return cmd_fit(csv_path, column, t_min_fit, t_max_fit);
    if (plt->parsed()) return cmd_plot(csv_path, columns, mode, out_path);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
