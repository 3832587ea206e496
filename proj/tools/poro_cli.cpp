#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "poro/commands.hpp"

namespace fs = std::filesystem;
using namespace poro;

namespace {

struct CommonOptions {
  std::optional<std::string> problem;
  std::optional<fs::path> config;
  std::optional<std::string> cells;
  std::optional<int> steps;
  std::optional<std::string> solver;
  std::vector<std::string> overrides;
  std::optional<fs::path> out;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--problem", o.problem, "Benchmark: mandel or footing");
  cmd->add_option("--config", o.config, "Key-value configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--cells", o.cells, "Cells per axis, e.g. 80x16 or 8x8x8");
  cmd->add_option("--steps", o.steps, "Number of temporal elements");
  cmd->add_option("--solver", o.solver, "Linear solver: direct or gmres");
  cmd->add_option("--set", o.overrides, "Extra key=value override (repeatable)");
  cmd->add_option("--out", o.out, "Output directory");
}

ProblemSpec resolve_spec(const CommonOptions& o, std::optional<double> tol, bool no_extra,
                         std::optional<int> min_iterations) {
  std::vector<ConfigEntry> entries;
  if (o.config) entries = read_config_file(*o.config);
  const std::string cli = "command line";
  for (const auto& kv : o.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError(cli + ": --set expects key=value, got '" + kv + "'");
    entries.push_back({kv.substr(0, eq), kv.substr(eq + 1), cli});
  }
  if (o.cells) entries.push_back({"cells", *o.cells, cli});
  if (o.steps) entries.push_back({"steps", std::to_string(*o.steps), cli});
  if (o.solver) entries.push_back({"solver", *o.solver, cli});
  if (tol) entries.push_back({"tol", format_double(*tol), cli});
  if (no_extra) entries.push_back({"moredwr.extra_dual_iterations", "0", cli});
  if (min_iterations) entries.push_back({"moredwr.min_iterations", std::to_string(*min_iterations), cli});
  std::optional<ProblemKind> kind;
  if (o.problem) kind = parse_problem_kind(*o.problem);
  return parse_config(entries, kind);
}

void print_fom(const FomOutcome& r) {
  std::cout << "problem      " << r.summary.key.problem << " " << r.summary.key.cells << ", " << r.summary.key.steps
            << " steps\n"
            << "dofs         u " << r.summary.n_u << ", p " << r.summary.n_p << "\n"
            << "J            " << format_double(r.summary.j_fom) << "\n"
            << "wall time    " << r.summary.wall_seconds << " s\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Goal-oriented incremental reduced-order modelling of Biot poroelasticity"};
  app.require_subcommand(1);

  CommonOptions fom_opts;
  auto* fom = app.add_subcommand("fom", "Full-order reference run");
  add_common(fom, fom_opts);

  CommonOptions dwr_opts;
  std::optional<double> tol;
  std::optional<fs::path> reference;
  bool no_extra = false;
  std::optional<int> min_iterations;
  auto* dwr = app.add_subcommand("moredwr", "Adaptive reduced-order run with error control");
  add_common(dwr, dwr_opts);
  dwr->add_option("--tol", tol, "Relative error tolerance (0.01 = 1%)");
  dwr->add_option("--reference", reference, "Directory written by the fom command")->check(CLI::ExistingDirectory);
  dwr->add_flag("--no-extra-dual-enrichment", no_extra, "Disable the extra dual enrichment");
  dwr->add_option("--min-iterations", min_iterations, "Minimum number of iterations");

  std::vector<fs::path> bundles;
  std::optional<fs::path> compare_out;
  auto* cmp = app.add_subcommand("compare", "Tabulate moredwr bundles over tolerances");
  cmp->add_option("bundles", bundles, "Bundle directories or summary.csv files")->required();
  cmp->add_option("--out", compare_out, "Directory for compare.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    apply_thread_environment();
    if (*fom) {
      const auto spec = resolve_spec(fom_opts, std::nullopt, false, std::nullopt);
      print_fom(cmd_fom(spec, fom_opts.out));
      return kExitOk;
    }
    if (*dwr) {
      const auto spec = resolve_spec(dwr_opts, tol, no_extra, min_iterations);
      const auto r = cmd_moredwr(spec, dwr_opts.out, reference);
      std::cout << format_table({r.summary});
      return exit_code(r.record.status);
    }
    std::cout << cmd_compare(bundles, compare_out);
    return kExitOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const SolverFailure& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const DegenerateBasis& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
