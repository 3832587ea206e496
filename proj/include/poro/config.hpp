#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "poro/adaptive.hpp"
#include "poro/assembly.hpp"
#include "poro/fom.hpp"
#include "poro/linsolve.hpp"
#include "poro/mesh.hpp"

namespace poro {

/// Everything needed to assemble and run one benchmark.
struct ProblemSpec {
  ProblemKind kind = ProblemKind::Mandel;
  std::vector<double> origin;
  std::vector<double> extent;
  std::vector<int> cells;
  MaterialParams material;
  TimeGrid grid;
  LinearSolverConfig solver;
  MoreDwrConfig moredwr;

  /// Benchmark defaults: Mandel on (0,100)x(0,20) with 80x16 cells and the
  /// direct solver; footing on (-32,32)^2 x (0,64) with 16^3 cells and
  /// GMRES + Jacobi. Both use 5000 elements on (0, 5e6).
  static ProblemSpec defaults(ProblemKind kind);

  BoundaryTag traction_tag() const;
  BoundaryTag goal_tag() const;
  void validate() const;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One `key = value` assignment with its origin for diagnostics.
struct ConfigEntry {
  std::string key;
  std::string value;
  std::string source;  // "file:line" or "command line"
};

/// Reads `key = value` lines; `#` starts a comment. Keys are dotted
/// (`material.permeability`). Malformed lines raise ConfigError naming the
/// line.
std::vector<ConfigEntry> read_config_entries(std::istream& in, const std::string& name);
std::vector<ConfigEntry> read_config_file(const std::filesystem::path& path);

ProblemKind parse_problem_kind(const std::string& text);
/// "80x16" or "16x16x16".
std::vector<int> parse_cells(const std::string& text);

/// Builds a spec from entries. `problem` selects the defaults (an explicit
/// `kind` argument wins over a `problem` key); later entries override earlier
/// ones. Unknown keys and invalid values raise ConfigError.
ProblemSpec parse_config(const std::vector<ConfigEntry>& entries, std::optional<ProblemKind> kind = std::nullopt);

/// Every accepted key, aliases included, for documentation and tests.
std::vector<std::string> known_config_keys();

/// Serializes a spec in the same key-value format (canonical keys only).
std::string to_config_text(const ProblemSpec& spec);

std::string format_cells(const std::vector<int>& cells);

}  // namespace poro
