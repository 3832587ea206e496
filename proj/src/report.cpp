#include "poro/report.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace poro {

namespace fs = std::filesystem;

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, ptr);
}

std::string format_optional(const std::optional<double>& value) { return value ? format_double(*value) : ""; }

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& text, const std::string& what) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw std::runtime_error("csv: bad number '" + text + "' in " + what);
  return v;
}

long long parse_int(const std::string& text, const std::string& what) {
  long long v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw std::runtime_error("csv: bad integer '" + text + "' in " + what);
  return v;
}

std::optional<double> parse_optional(const std::string& text, const std::string& what) {
  if (text.empty()) return std::nullopt;
  return parse_double(text, what);
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw std::runtime_error("csv: missing column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

const std::string& CsvTable::at(std::size_t row, const std::string& name) const {
  return rows.at(row).at(column(name));
}

void write_csv(const fs::path& path, const CsvTable& table) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  const auto line = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i];
    out << '\n';
  };
  line(table.header);
  for (const auto& r : table.rows) line(r);
  if (!out) throw std::runtime_error("error while writing " + path.string());
}

CsvTable read_csv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": empty file");
  t.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split(line);
    if (fields.size() != t.header.size())
      throw std::runtime_error(path.string() + ": row with " + std::to_string(fields.size()) + " fields, expected " +
                               std::to_string(t.header.size()));
    t.rows.push_back(std::move(fields));
  }
  return t;
}

std::string SummaryRow::rom_size() const {
  return std::to_string(primal_u) + " / " + std::to_string(primal_p) + " + " + std::to_string(dual_u) + " / " +
         std::to_string(dual_p);
}

void write_fom_summary(const fs::path& path, const FomSummary& s) {
  CsvTable t;
  t.header = {"problem", "cells", "steps", "t_end", "solver", "n_u", "n_p", "J_fom", "wall_seconds", "linear_solves"};
  t.rows.push_back({s.key.problem, s.key.cells, std::to_string(s.key.steps), format_double(s.key.t_end), s.solver,
                    std::to_string(s.n_u), std::to_string(s.n_p), format_double(s.j_fom),
                    format_double(s.wall_seconds), std::to_string(s.linear_solves)});
  write_csv(path, t);
}

FomSummary read_fom_summary(const fs::path& path) {
  const auto t = read_csv(path);
  if (t.rows.size() != 1) throw std::runtime_error(path.string() + ": expected exactly one row");
  const auto w = path.string();
  FomSummary s;
  s.key.problem = t.at(0, "problem");
  s.key.cells = t.at(0, "cells");
  s.key.steps = static_cast<int>(parse_int(t.at(0, "steps"), w));
  s.key.t_end = parse_double(t.at(0, "t_end"), w);
  s.solver = t.at(0, "solver");
  s.n_u = parse_int(t.at(0, "n_u"), w);
  s.n_p = parse_int(t.at(0, "n_p"), w);
  s.j_fom = parse_double(t.at(0, "J_fom"), w);
  s.wall_seconds = parse_double(t.at(0, "wall_seconds"), w);
  s.linear_solves = static_cast<int>(parse_int(t.at(0, "linear_solves"), w));
  return s;
}

namespace {

const std::vector<std::string> kSummaryHeader = {
    "problem", "cells",    "steps",    "t_end",    "tol_rel_percent", "status", "iterations", "eta_rel_percent",
    "e_rel_percent", "speedup", "fom_solves", "primal_u", "primal_p", "dual_u", "dual_p", "rom_size",
    "I_eff",   "I_ind",    "J_rom",    "J_fom",    "wall_seconds"};

std::optional<double> percent(const std::optional<double>& v) {
  return v ? std::optional<double>(100.0 * *v) : std::nullopt;
}

}  // namespace

void write_summary(const fs::path& path, const std::vector<SummaryRow>& rows) {
  CsvTable t;
  t.header = kSummaryHeader;
  for (const auto& r : rows)
    t.rows.push_back({r.key.problem, r.key.cells, std::to_string(r.key.steps), format_double(r.key.t_end),
                      format_double(100.0 * r.tol_rel), r.status, std::to_string(r.iterations),
                      format_double(100.0 * r.eta_rel), format_optional(percent(r.e_rel)), format_optional(r.speedup),
                      std::to_string(r.fom_solves), std::to_string(r.primal_u), std::to_string(r.primal_p),
                      std::to_string(r.dual_u), std::to_string(r.dual_p), r.rom_size(), format_optional(r.i_eff),
                      format_optional(r.i_ind), format_double(r.j_rom), format_optional(r.j_fom),
                      format_double(r.wall_seconds)});
  write_csv(path, t);
}

std::vector<SummaryRow> read_summary(const fs::path& path) {
  const auto t = read_csv(path);
  const auto w = path.string();
  std::vector<SummaryRow> out;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    SummaryRow r;
    r.key.problem = t.at(i, "problem");
    r.key.cells = t.at(i, "cells");
    r.key.steps = static_cast<int>(parse_int(t.at(i, "steps"), w));
    r.key.t_end = parse_double(t.at(i, "t_end"), w);
    r.tol_rel = parse_double(t.at(i, "tol_rel_percent"), w) / 100.0;
    r.status = t.at(i, "status");
    r.iterations = static_cast<int>(parse_int(t.at(i, "iterations"), w));
    r.eta_rel = parse_double(t.at(i, "eta_rel_percent"), w) / 100.0;
    if (auto e = parse_optional(t.at(i, "e_rel_percent"), w)) r.e_rel = *e / 100.0;
    r.speedup = parse_optional(t.at(i, "speedup"), w);
    r.fom_solves = static_cast<int>(parse_int(t.at(i, "fom_solves"), w));
    r.primal_u = parse_int(t.at(i, "primal_u"), w);
    r.primal_p = parse_int(t.at(i, "primal_p"), w);
    r.dual_u = parse_int(t.at(i, "dual_u"), w);
    r.dual_p = parse_int(t.at(i, "dual_p"), w);
    r.i_eff = parse_optional(t.at(i, "I_eff"), w);
    r.i_ind = parse_optional(t.at(i, "I_ind"), w);
    r.j_rom = parse_double(t.at(i, "J_rom"), w);
    r.j_fom = parse_optional(t.at(i, "J_fom"), w);
    r.wall_seconds = parse_double(t.at(i, "wall_seconds"), w);
    out.push_back(std::move(r));
  }
  return out;
}

void write_goal_trajectory(const fs::path& path, const TimeGrid& grid, const std::vector<double>* rom,
                           const std::vector<double>* fom) {
  CsvTable t;
  t.header = {"m", "t_m", "rom", "fom"};
  for (int m = 1; m <= grid.num_elements; ++m) {
    const auto idx = static_cast<std::size_t>(m - 1);
    t.rows.push_back({std::to_string(m), format_double(grid.time(m)),
                      rom && idx < rom->size() ? format_double((*rom)[idx]) : "",
                      fom && idx < fom->size() ? format_double((*fom)[idx]) : ""});
  }
  write_csv(path, t);
}

std::vector<double> read_fom_goal_trajectory(const fs::path& path) {
  const auto t = read_csv(path);
  const auto col = t.column("fom");
  std::vector<double> out;
  out.reserve(t.rows.size());
  for (const auto& r : t.rows) out.push_back(parse_double(r.at(col), path.string()));
  return out;
}

void write_iterations(const fs::path& path, const RunRecord& record) {
  CsvTable t;
  t.header = {"iteration", "eta_rel", "true_rel", "primal_u", "primal_p", "dual_u",
              "dual_p",    "fom_solves", "wall_seconds", "enriched_element"};
  for (const auto& l : record.iterations)
    t.rows.push_back({std::to_string(l.iteration), format_double(l.eta_rel), format_optional(l.true_rel),
                      std::to_string(l.primal_u), std::to_string(l.primal_p), std::to_string(l.dual_u),
                      std::to_string(l.dual_p), std::to_string(l.fom_solves), format_double(l.wall_seconds),
                      std::to_string(l.enriched_element)});
  write_csv(path, t);
}

namespace {

std::string fixed(const std::optional<double>& v, int digits) {
  if (!v) return "-";
  std::ostringstream o;
  o.imbue(std::locale::classic());
  o.setf(std::ios::fixed);
  o.precision(digits);
  o << *v;
  return o.str();
}

}  // namespace

std::string format_table(const std::vector<SummaryRow>& rows) {
  const std::vector<std::string> head = {"TOL [%]", "e_rel [%]", "eta_rel [%]", "speedup", "FOM solves",
                                         "ROM size", "I_eff", "I_ind", "status"};
  std::vector<std::vector<std::string>> cells;
  for (const auto& r : rows)
    cells.push_back({fixed(100.0 * r.tol_rel, 2), fixed(r.e_rel ? std::optional(100.0 * *r.e_rel) : std::nullopt, 3),
                     fixed(100.0 * r.eta_rel, 3), fixed(r.speedup, 1), std::to_string(r.fom_solves), r.rom_size(),
                     fixed(r.i_eff, 3), fixed(r.i_ind, 3), r.status});
  std::vector<std::size_t> width(head.size());
  for (std::size_t c = 0; c < head.size(); ++c) {
    width[c] = head[c].size();
    for (const auto& row : cells) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream o;
  const auto line = [&](const std::vector<std::string>& f) {
    for (std::size_t c = 0; c < f.size(); ++c)
      o << (c ? "  " : "") << std::string(width[c] - f[c].size(), ' ') << f[c];
    o << '\n';
  };
  line(head);
  for (const auto& row : cells) line(row);
  return o.str();
}

}  // namespace poro
