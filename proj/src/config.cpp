#include "poro/config.hpp"

#include "poro/report.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace poro {

ProblemSpec ProblemSpec::defaults(ProblemKind kind) {
  ProblemSpec s;
  s.kind = kind;
  if (kind == ProblemKind::Mandel) {
    s.origin = {0.0, 0.0};
    s.extent = {100.0, 20.0};
    s.cells = {80, 16};
    s.solver.method = SolverMethod::Direct;
    s.moredwr.extra_dual_iterations = 5;
  } else {
    s.origin = {-32.0, -32.0, 0.0};
    s.extent = {64.0, 64.0, 64.0};
    s.cells = {16, 16, 16};
    s.solver.method = SolverMethod::Gmres;
    s.solver.preconditioner = Preconditioner::Jacobi;
    s.solver.gmres_tolerance = 5e-8;
    s.moredwr.extra_dual_iterations = 8;
  }
  s.grid = TimeGrid{0.0, 5e6, 5000};
  return s;
}

BoundaryTag ProblemSpec::traction_tag() const {
  return kind == ProblemKind::Mandel ? BoundaryTag::Top : BoundaryTag::Compression;
}

BoundaryTag ProblemSpec::goal_tag() const {
  return kind == ProblemKind::Mandel ? BoundaryTag::Bottom : BoundaryTag::Compression;
}

void ProblemSpec::validate() const {
  const std::size_t dim = kind == ProblemKind::Mandel ? 2 : 3;
  if (cells.size() != dim || origin.size() != dim || extent.size() != dim)
    throw ConfigError("config: " + std::string(to_string(kind)) + " needs " + std::to_string(dim) + " entries for cells, origin and extent");
  for (int c : cells)
    if (c < 1) throw ConfigError("config: cells per axis must be >= 1");
  for (double e : extent)
    if (!(e > 0.0)) throw ConfigError("config: extent must be positive");
  if (grid.num_elements < 1) throw ConfigError("config: number of temporal elements must be >= 1");
  try {
    grid.validate();
    material.validate();
    solver.validate();
    moredwr.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

double to_double(const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ConfigError("expected a number, got '" + text + "'");
  return v;
}

int to_int(const std::string& text) {
  int v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ConfigError("expected an integer, got '" + text + "'");
  return v;
}

bool to_bool(const std::string& text) {
  const auto t = lower(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw ConfigError("expected true or false, got '" + text + "'");
}

std::vector<double> to_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(trim(item)));
  if (out.empty()) throw ConfigError("expected a comma-separated list of numbers");
  return out;
}

using Setter = std::function<void(ProblemSpec&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"mesh.cells", [](ProblemSpec& s, const std::string& v) { s.cells = parse_cells(v); }},
      {"mesh.origin", [](ProblemSpec& s, const std::string& v) { s.origin = to_doubles(v); }},
      {"mesh.extent", [](ProblemSpec& s, const std::string& v) { s.extent = to_doubles(v); }},
      {"time.t_start", [](ProblemSpec& s, const std::string& v) { s.grid.t_start = to_double(v); }},
      {"time.t_end", [](ProblemSpec& s, const std::string& v) { s.grid.t_end = to_double(v); }},
      {"time.steps", [](ProblemSpec& s, const std::string& v) { s.grid.num_elements = to_int(v); }},
      {"material.compressibility_modulus",
       [](ProblemSpec& s, const std::string& v) { s.material.compressibility_modulus = to_double(v); }},
      {"material.biot_alpha", [](ProblemSpec& s, const std::string& v) { s.material.biot_alpha = to_double(v); }},
      {"material.permeability",
       [](ProblemSpec& s, const std::string& v) { s.material.permeability = to_double(v); }},
      {"material.viscosity", [](ProblemSpec& s, const std::string& v) { s.material.viscosity = to_double(v); }},
      {"material.lame_mu", [](ProblemSpec& s, const std::string& v) { s.material.lame_mu = to_double(v); }},
      {"material.lame_lambda", [](ProblemSpec& s, const std::string& v) { s.material.lame_lambda = to_double(v); }},
      {"material.traction", [](ProblemSpec& s, const std::string& v) { s.material.traction = to_double(v); }},
      {"material.density", [](ProblemSpec& s, const std::string& v) { s.material.density = to_double(v); }},
      {"solver.method",
       [](ProblemSpec& s, const std::string& v) {
         const auto t = lower(v);
         if (t == "direct")
           s.solver.method = SolverMethod::Direct;
         else if (t == "gmres")
           s.solver.method = SolverMethod::Gmres;
         else
           throw ConfigError("solver must be direct or gmres, got '" + v + "'");
       }},
      {"solver.tolerance", [](ProblemSpec& s, const std::string& v) { s.solver.gmres_tolerance = to_double(v); }},
      {"solver.restart", [](ProblemSpec& s, const std::string& v) { s.solver.gmres_restart = to_int(v); }},
      {"solver.max_iterations", [](ProblemSpec& s, const std::string& v) { s.solver.max_iterations = to_int(v); }},
      {"solver.preconditioner",
       [](ProblemSpec& s, const std::string& v) {
         const auto t = lower(v);
         if (t == "jacobi")
           s.solver.preconditioner = Preconditioner::Jacobi;
         else if (t == "none")
           s.solver.preconditioner = Preconditioner::None;
         else
           throw ConfigError("preconditioner must be jacobi or none, got '" + v + "'");
       }},
      {"moredwr.tol", [](ProblemSpec& s, const std::string& v) { s.moredwr.tol_rel = to_double(v); }},
      {"moredwr.energy_primal_u", [](ProblemSpec& s, const std::string& v) { s.moredwr.energy_primal_u = to_double(v); }},
      {"moredwr.energy_primal_p", [](ProblemSpec& s, const std::string& v) { s.moredwr.energy_primal_p = to_double(v); }},
      {"moredwr.energy_dual_u", [](ProblemSpec& s, const std::string& v) { s.moredwr.energy_dual_u = to_double(v); }},
      {"moredwr.energy_dual_p", [](ProblemSpec& s, const std::string& v) { s.moredwr.energy_dual_p = to_double(v); }},
      {"moredwr.extra_dual_iterations",
       [](ProblemSpec& s, const std::string& v) { s.moredwr.extra_dual_iterations = to_int(v); }},
      {"moredwr.extra_dual_steps", [](ProblemSpec& s, const std::string& v) { s.moredwr.extra_dual_steps = to_int(v); }},
      {"moredwr.max_iterations", [](ProblemSpec& s, const std::string& v) { s.moredwr.max_iterations = to_int(v); }},
      {"moredwr.min_iterations", [](ProblemSpec& s, const std::string& v) { s.moredwr.min_iterations = to_int(v); }},
      {"moredwr.hold_stop_during_extra_dual",
       [](ProblemSpec& s, const std::string& v) { s.moredwr.hold_stop_during_extra_dual = to_bool(v); }},
  };
  return table;
}

const std::map<std::string, std::string>& aliases() {
  static const std::map<std::string, std::string> table = {
      {"cells", "mesh.cells"}, {"steps", "time.steps"}, {"tol", "moredwr.tol"}, {"solver", "solver.method"}};
  return table;
}

std::string canonical(const std::string& key) {
  const auto it = aliases().find(key);
  return it == aliases().end() ? key : it->second;
}

}  // namespace

std::vector<ConfigEntry> read_config_entries(std::istream& in, const std::string& name) {
  std::vector<ConfigEntry> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto where = name + ":" + std::to_string(number);
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto text = trim(line);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value', got '" + text + "'");
    auto key = trim(std::string_view(text).substr(0, eq));
    auto value = trim(std::string_view(text).substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": missing key");
    if (value.empty()) throw ConfigError(where + ": missing value for '" + key + "'");
    out.push_back({std::move(key), std::move(value), where});
  }
  return out;
}

std::vector<ConfigEntry> read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return read_config_entries(in, path.string());
}

ProblemKind parse_problem_kind(const std::string& text) {
  const auto t = lower(text);
  if (t == "mandel") return ProblemKind::Mandel;
  if (t == "footing") return ProblemKind::Footing;
  throw ConfigError("unknown problem '" + text + "' (expected mandel or footing)");
}

std::vector<int> parse_cells(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(lower(text));
  std::string item;
  while (std::getline(ss, item, 'x')) out.push_back(to_int(trim(item)));
  if (out.size() < 2 || out.size() > 3) throw ConfigError("cells must look like AxB or AxBxC, got '" + text + "'");
  for (int n : out)
    if (n < 1) throw ConfigError("cells must be positive, got '" + text + "'");
  return out;
}

std::string format_cells(const std::vector<int>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "x" : "") + std::to_string(cells[i]);
  return out;
}

ProblemSpec parse_config(const std::vector<ConfigEntry>& entries, std::optional<ProblemKind> kind) {
  std::optional<ProblemKind> from_entries;
  for (const auto& e : entries) {
    if (e.key != "problem") continue;
    try {
      from_entries = parse_problem_kind(e.value);
    } catch (const ConfigError& err) {
      throw ConfigError(e.source + ": " + err.what());
    }
  }
  auto spec = ProblemSpec::defaults(kind.value_or(from_entries.value_or(ProblemKind::Mandel)));
  for (const auto& e : entries) {
    if (e.key == "problem") continue;
    const auto key = canonical(e.key);
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError(e.source + ": unknown key '" + e.key + "'");
    try {
      it->second(spec, e.value);
    } catch (const ConfigError& err) {
      throw ConfigError(e.source + ": " + e.key + ": " + err.what());
    }
  }
  spec.validate();
  return spec;
}

std::vector<std::string> known_config_keys() {
  std::vector<std::string> keys{"problem"};
  for (const auto& [k, _] : setters()) keys.push_back(k);
  for (const auto& [k, _] : aliases()) keys.push_back(k);
  return keys;
}

std::string to_config_text(const ProblemSpec& s) {
  std::ostringstream o;
  const auto list = [](const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + format_double(v[i]);
    return out;
  };
  o << "problem = " << to_string(s.kind) << "\n";
  o << "mesh.cells = " << format_cells(s.cells) << "\n";
  o << "mesh.origin = " << list(s.origin) << "\n";
  o << "mesh.extent = " << list(s.extent) << "\n";
  o << "time.t_start = " << format_double(s.grid.t_start) << "\n";
  o << "time.t_end = " << format_double(s.grid.t_end) << "\n";
  o << "time.steps = " << s.grid.num_elements << "\n";
  o << "material.compressibility_modulus = " << format_double(s.material.compressibility_modulus) << "\n";
  o << "material.biot_alpha = " << format_double(s.material.biot_alpha) << "\n";
  o << "material.permeability = " << format_double(s.material.permeability) << "\n";
  o << "material.viscosity = " << format_double(s.material.viscosity) << "\n";
  o << "material.lame_mu = " << format_double(s.material.lame_mu) << "\n";
  o << "material.lame_lambda = " << format_double(s.material.lame_lambda) << "\n";
  o << "material.traction = " << format_double(s.material.traction) << "\n";
  o << "material.density = " << format_double(s.material.density) << "\n";
  o << "solver.method = " << (s.solver.method == SolverMethod::Direct ? "direct" : "gmres") << "\n";
  o << "solver.tolerance = " << format_double(s.solver.gmres_tolerance) << "\n";
  o << "solver.restart = " << s.solver.gmres_restart << "\n";
  o << "solver.max_iterations = " << s.solver.max_iterations << "\n";
  o << "solver.preconditioner = " << (s.solver.preconditioner == Preconditioner::Jacobi ? "jacobi" : "none") << "\n";
  o << "moredwr.tol = " << format_double(s.moredwr.tol_rel) << "\n";
  o << "moredwr.energy_primal_u = " << format_double(s.moredwr.energy_primal_u) << "\n";
  o << "moredwr.energy_primal_p = " << format_double(s.moredwr.energy_primal_p) << "\n";
  o << "moredwr.energy_dual_u = " << format_double(s.moredwr.energy_dual_u) << "\n";
  o << "moredwr.energy_dual_p = " << format_double(s.moredwr.energy_dual_p) << "\n";
  o << "moredwr.extra_dual_iterations = " << s.moredwr.extra_dual_iterations << "\n";
  o << "moredwr.extra_dual_steps = " << s.moredwr.extra_dual_steps << "\n";
  if (s.moredwr.max_iterations) o << "moredwr.max_iterations = " << *s.moredwr.max_iterations << "\n";
  o << "moredwr.min_iterations = " << s.moredwr.min_iterations << "\n";
  o << "moredwr.hold_stop_during_extra_dual = " << (s.moredwr.hold_stop_during_extra_dual ? "true" : "false")
    << "\n";
  return o.str();
}

}  // namespace poro
