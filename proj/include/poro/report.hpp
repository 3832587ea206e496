#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "poro/adaptive.hpp"
#include "poro/fom.hpp"

namespace poro {

/// Shortest round-trip form with 17 significant digits, independent of the
/// global locale.
std::string format_double(double value);
std::string format_optional(const std::optional<double>& value);

/// Plain comma-separated table; fields never contain commas or quotes.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;
  const std::string& at(std::size_t row, const std::string& name) const;
};

void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

/// Identity of a run used to match references and comparison bundles.
struct RunKey {
  std::string problem;
  std::string cells;
  int steps = 0;
  double t_end = 0.0;

  bool operator==(const RunKey&) const = default;
};

/// Reference FOM run, `fom_summary.csv`.
struct FomSummary {
  RunKey key;
  std::string solver;
  long long n_u = 0;
  long long n_p = 0;
  double j_fom = 0.0;
  double wall_seconds = 0.0;  // setup + sweep
  int linear_solves = 0;
};

/// One row of `summary.csv`: one adaptive run at one tolerance.
struct SummaryRow {
  RunKey key;
  double tol_rel = 0.0;
  std::string status;
  int iterations = 0;
  double eta_rel = 0.0;
  std::optional<double> e_rel;
  std::optional<double> speedup;
  int fom_solves = 0;
  long long primal_u = 0, primal_p = 0, dual_u = 0, dual_p = 0;
  std::optional<double> i_eff;
  std::optional<double> i_ind;
  double j_rom = 0.0;
  std::optional<double> j_fom;
  double wall_seconds = 0.0;

  /// "Np_u / Np_p + Nd_u / Nd_p"
  std::string rom_size() const;
};

void write_fom_summary(const std::filesystem::path& path, const FomSummary& s);
FomSummary read_fom_summary(const std::filesystem::path& path);

void write_summary(const std::filesystem::path& path, const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> read_summary(const std::filesystem::path& path);

/// Columns m, t_m, rom, fom; either series may be absent (empty cells).
void write_goal_trajectory(const std::filesystem::path& path, const TimeGrid& grid,
                           const std::vector<double>* rom, const std::vector<double>* fom);
/// Reads the fom column of a goal trajectory written by the fom command.
std::vector<double> read_fom_goal_trajectory(const std::filesystem::path& path);

void write_iterations(const std::filesystem::path& path, const RunRecord& record);

/// Aligned text rendering of summary rows.
std::string format_table(const std::vector<SummaryRow>& rows);

}  // namespace poro
