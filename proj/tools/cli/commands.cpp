#include "cli/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli/svg_plot.hpp"
#include "gofpower/error.hpp"
#include "gofpower/model_io.hpp"
#include "gofpower/montecarlo.hpp"
#include "gofpower/parallel.hpp"
#include "gofpower/power.hpp"
#include "gofpower/quadform.hpp"

namespace gofpower::cli {

namespace fs = std::filesystem;

namespace {

unsigned effective_threads(const RunConfig& cfg) {
  return cfg.threads > 0 ? cfg.threads : threads_from_environment();
}

struct Inputs {
  ModelSource source;
  Perturbation perturbation;
};

Inputs load_inputs(const RunConfig& cfg) {
  if (cfg.model_spec.empty()) throw ParseError("--model is required", "model");
  ModelSource source = parse_model_spec(cfg.model_spec);
  Perturbation pert = parse_perturbation_spec(cfg.pert_spec, source);
  return {std::move(source), std::move(pert)};
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw PreconditionError("cannot write " + path.string());
  return file;
}

// Writes through `write` into `path`, or into `fallback` when path is empty.
template <class Write>
void emit(const std::string& path, std::ostream& fallback, Write&& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream file = open_output(path);
  write(file);
  if (!file) throw PreconditionError("failed writing " + path);
}

std::vector<double> plotting_alphas() {
  std::vector<double> alphas;
  for (int k = 1; k < 200; ++k) alphas.push_back(k / 200.0);
  return alphas;
}

std::vector<std::pair<double, double>> curve_points(const PowerCurve& curve) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(curve.points.size() + 2);
  pts.emplace_back(0.0, 0.0);
  for (auto it = curve.points.rbegin(); it != curve.points.rend(); ++it) {
    pts.emplace_back(it->alpha, it->power);
  }
  pts.emplace_back(1.0, 1.0);
  return pts;
}

// Removes everything it tracks unless released.
class OutputGuard {
 public:
  void track(fs::path p) { paths_.push_back(std::move(p)); }
  void release() { paths_.clear(); }
  ~OutputGuard() {
    std::error_code ec;
    for (const auto& p : paths_) fs::remove(p, ec);
  }

 private:
  std::vector<fs::path> paths_;
};

void print_cdf_line(std::ostream& out, double x, const CdfEvaluation& e) {
  char line[256];
  std::snprintf(line, sizeof line, "x=%.10g F=%.12f err=%.3g nodes=%zu method=%s%s\n", x, e.value,
                e.abs_error_estimate, e.nodes_used, std::string(to_string(e.method)).c_str(),
                e.budget_exhausted ? " (budget exhausted)" : "");
  out << line;
}

}  // namespace

int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const Inputs in = load_inputs(cfg);
  const Spectrum spectrum = compute_spectrum(in.source.model, in.perturbation);
  emit(cfg.out, out, [&](std::ostream& os) { os << spectrum_to_json(spectrum) << '\n'; });
  return kOk;
}

int cmd_cdf(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Inputs in = load_inputs(cfg);
  if (cfg.xs.empty()) throw ParseError("--x is required", "x");
  const Spectrum spectrum = cfg.null_only
                                ? compute_spectrum(in.source.model, in.perturbation).centered()
                                : compute_spectrum(in.source.model, in.perturbation);
  int status = kOk;
  for (double x : cfg.xs) {
    const CdfEvaluation e = cdf(x, spectrum, cfg.quadrature);
    print_cdf_line(out, x, e);
    if (e.budget_exhausted) {
      err << "warning: quadrature budget exhausted at x=" << x << '\n';
      status = kNumericalError;
    }
  }
  return status;
}

int cmd_power(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Inputs in = load_inputs(cfg);
  const auto grid = default_grid(cfg.grid_step, cfg.grid_max);
  const PowerCurve curve = power_curve(in.source.model, in.perturbation, grid, cfg.quadrature,
                                       effective_threads(cfg));
  emit(cfg.out, out, [&](std::ostream& os) { write_power_csv(os, curve); });
  if (!cfg.svg.empty()) {
    const auto pts = curve_points(curve);
    const SvgSeries series[] = {{pts, "black", false}};
    emit(cfg.svg, out, [&](std::ostream& os) { write_power_svg(os, in.source.description, series); });
  }
  if (curve.budget_warnings > 0) {
    err << "warning: quadrature budget exhausted at " << curve.budget_warnings
        << " grid point(s)\n";
    return kNumericalError;
  }
  return kOk;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const Inputs in = load_inputs(cfg);
  const unsigned threads = effective_threads(cfg);
  const SimulationResult alt = simulate_statistics(in.source.model, in.perturbation, cfg.n,
                                                   cfg.trials, cfg.seed, threads);
  emit(cfg.out, out, [&](std::ostream& os) { write_statistics_csv(os, alt); });
  if (!cfg.power_out.empty()) {
    const SimulationResult null =
        simulate_statistics(in.source.model, Perturbation::zero(in.source.model.size()), cfg.n,
                            cfg.trials, trial_seed(cfg.seed, 0xa11ULL), threads);
    const auto alphas = plotting_alphas();
    const auto points = empirical_power(null, alt, alphas);
    emit(cfg.power_out, out, [&](std::ostream& os) { write_empirical_power_csv(os, points); });
  }
  return kOk;
}

int cmd_examples(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const fs::path dir = cfg.out.empty() ? fs::path(".") : fs::path(cfg.out);
  fs::create_directories(dir);
  const unsigned threads = effective_threads(cfg);
  const auto grid = default_grid(cfg.grid_step, cfg.grid_max);
  const auto alphas = plotting_alphas();

  OutputGuard guard;
  const fs::path costs_path = dir / "costs.csv";
  guard.track(costs_path);
  std::ofstream costs = open_output(costs_path);
  costs << "example,m,q0,qa,t,method0,method_a\n";

  std::size_t warnings = 0;
  for (const ReferenceExample& ex : reference_examples()) {
    const std::string stem = "example" + std::to_string(ex.id);
    const PowerCurve curve = power_curve(ex.model, ex.perturbation, grid, cfg.quadrature, threads);
    warnings += curve.budget_warnings;

    const fs::path curve_path = dir / (stem + "_curve.csv");
    guard.track(curve_path);
    {
      std::ofstream f = open_output(curve_path);
      write_power_csv(f, curve);
    }

    const std::uint64_t null_seed = trial_seed(cfg.seed, 2 * static_cast<std::uint64_t>(ex.id));
    const std::uint64_t alt_seed = trial_seed(cfg.seed, 2 * static_cast<std::uint64_t>(ex.id) + 1);
    const SimulationResult null = simulate_statistics(
        ex.model, Perturbation::zero(ex.model.size()), cfg.n, cfg.trials, null_seed, threads);
    const SimulationResult alt =
        simulate_statistics(ex.model, ex.perturbation, cfg.n, cfg.trials, alt_seed, threads);
    const auto mc = empirical_power(null, alt, alphas);
    const fs::path mc_path = dir / (stem + "_mc.csv");
    guard.track(mc_path);
    {
      std::ofstream f = open_output(mc_path);
      write_empirical_power_csv(f, mc);
    }

    const auto asymptotic = curve_points(curve);
    std::vector<std::pair<double, double>> empirical;
    for (const auto& p : mc) empirical.emplace_back(p.alpha, p.power);
    const SvgSeries series[] = {{asymptotic, "black", false}, {empirical, "green", true}};
    const fs::path svg_path = dir / (stem + ".svg");
    guard.track(svg_path);
    {
      std::ofstream f = open_output(svg_path);
      write_power_svg(f, "example " + std::to_string(ex.id) + ": " + ex.label, series);
    }

    const double per_point = grid.empty() ? 0.0 : curve.seconds / static_cast<double>(grid.size());
    char row[256];
    std::snprintf(row, sizeof row, "%d,%zu,%zu,%zu,%.6f,%s,%s\n", ex.id, ex.model.size(),
                  curve.max_nodes_null, curve.max_nodes_alt, per_point,
                  std::string(to_string(curve.null_method)).c_str(),
                  std::string(to_string(curve.alt_method)).c_str());
    costs << row;
    out << "example " << ex.id << " (m=" << ex.model.size() << "): q0=" << curve.max_nodes_null
        << " qa=" << curve.max_nodes_alt << " method_a=" << to_string(curve.alt_method) << '\n';
  }
  costs.close();
  if (!costs) throw PreconditionError("failed writing " + costs_path.string());
  guard.release();
  if (warnings > 0) {
    err << "warning: quadrature budget exhausted at " << warnings << " grid point(s)\n";
    return kNumericalError;
  }
  return kOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Asymptotic power of the Euclidean-distance goodness-of-fit test", "gofpower"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_model = [&](CLI::App* sub) {
    sub->add_option("--model", cfg.model_spec,
                    "uniform:M | poisson:LAMBDA[:TOL] | example:K | file:PATH | PATH.json");
    sub->add_option("--pert", cfg.pert_spec,
                    "zero | alternating:AMP | file:PATH (default: the model source's own)");
  };
  auto add_quadrature = [&](CLI::App* sub) {
    sub->add_option("--abs-tol", cfg.quadrature.abs_tol, "absolute quadrature tolerance");
    sub->add_option("--rel-tol", cfg.quadrature.rel_tol, "relative quadrature tolerance");
    sub->add_option("--stability-threshold", cfg.quadrature.stability_threshold,
                    "largest stability bound that still uses the shifted contour");
    sub->add_option("--max-subdivisions", cfg.quadrature.max_subdivisions,
                    "bisections per integration window");
  };
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--grid-step", cfg.grid_step, "grid spacing in x");
    sub->add_option("--grid-max", cfg.grid_max, "largest grid x");
  };
  auto add_sim = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "draws per trial");
    sub->add_option("--trials", cfg.trials, "Monte-Carlo trials");
    sub->add_option("--seed", cfg.seed, "64-bit seed");
  };
  auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", cfg.threads, "worker threads (default: $GOFPOWER_THREADS or 1)");
  };

  auto* spectrum = app.add_subcommand("spectrum", "dump sigma^2, zeta and the stability bound");
  add_model(spectrum);
  spectrum->add_option("--out", cfg.out, "JSON output path (default stdout)");

  auto* cdf_cmd = app.add_subcommand("cdf", "evaluate the limiting CDF");
  add_model(cdf_cmd);
  add_quadrature(cdf_cmd);
  cdf_cmd->add_option("--x", cfg.xs, "evaluation point(s)")->allow_extra_args();
  cdf_cmd->add_flag("--null", cfg.null_only, "use the null law (zeta = 0)");

  auto* power_cmd = app.add_subcommand("power", "asymptotic power curve as CSV");
  add_model(power_cmd);
  add_quadrature(power_cmd);
  add_grid(power_cmd);
  add_threads(power_cmd);
  power_cmd->add_option("--out", cfg.out, "CSV output path (default stdout)");
  power_cmd->add_option("--svg", cfg.svg, "optional SVG plot path");

  auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo statistics at finite n");
  add_model(sim_cmd);
  add_sim(sim_cmd);
  add_threads(sim_cmd);
  sim_cmd->add_option("--out", cfg.out, "statistics CSV path (default stdout)");
  sim_cmd->add_option("--power-out", cfg.power_out, "empirical power CSV path");

  auto* ex_cmd = app.add_subcommand("examples", "reproduce the four reference examples");
  add_quadrature(ex_cmd);
  add_grid(ex_cmd);
  add_sim(ex_cmd);
  add_threads(ex_cmd);
  ex_cmd->add_option("--out", cfg.out, "output directory");

  std::vector<std::string> argv_storage{"gofpower"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (spectrum->parsed()) cfg.command = Command::Spectrum;
    if (cdf_cmd->parsed()) cfg.command = Command::Cdf;
    if (power_cmd->parsed()) cfg.command = Command::Power;
    if (sim_cmd->parsed()) cfg.command = Command::Simulate;
    if (ex_cmd->parsed()) cfg.command = Command::Examples;
    switch (cfg.command) {
      case Command::Spectrum: return cmd_spectrum(cfg, out, err);
      case Command::Cdf: return cmd_cdf(cfg, out, err);
      case Command::Power: return cmd_power(cfg, out, err);
      case Command::Simulate: return cmd_simulate(cfg, out, err);
      case Command::Examples: return cmd_examples(cfg, out, err);
    }
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what();
    if (!e.field().empty()) err << " [field: " << e.field() << ']';
    err << '\n';
    return kInputError;
  } catch (const InvalidDimensionError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const InvalidModelError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const TruncationError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumericalError;
  }
}

}  // namespace gofpower::cli
