#include "run_config.hpp"

#include "fmoheom/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace fmo::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  if (value == "inf") return std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(key, "expected a number, got '" + value + "'");
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long v = std::stol(value, &used);
    if (used == value.size() && v >= std::numeric_limits<int>::min() &&
        v <= std::numeric_limits<int>::max()) {
      return static_cast<int>(v);
    }
  } catch (const std::exception&) {
  }
  throw ConfigError(key, "expected an integer, got '" + value + "'");
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw ConfigError(key, "expected true or false, got '" + value + "'");
}

// A single value for every site or one value per site.
std::vector<double> parse_per_site(const std::string& key, const std::string& value, int n_sites) {
  const auto items = split(value, ',');
  std::vector<double> out;
  for (const auto& item : items) out.push_back(parse_double(key, item));
  if (out.size() == 1) return std::vector<double>(static_cast<std::size_t>(n_sites), out[0]);
  if (static_cast<int>(out.size()) != n_sites) {
    throw ConfigError(key, "expected 1 or " + std::to_string(n_sites) + " values");
  }
  return out;
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class T>
std::string join(const std::vector<T>& values, const std::string& sep = ",") {
  std::ostringstream out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out << sep;
    if constexpr (std::is_floating_point_v<T>) {
      out << format_double(values[i]);
    } else {
      out << values[i];
    }
  }
  return out.str();
}

}  // namespace

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "schema",
      "initial.kind",
      "initial.site",
      "model.hamiltonian_cm",
      "model.lambda_cm",
      "model.gamma_inv_fs",
      "model.temperature_K",
      "model.trap_rate_inv_ps",
      "model.trap_sites",
      "model.truncation_N",
      "time.t_end_fs",
      "time.dt_out_fs",
      "integrator.abs_tol",
      "integrator.rel_tol",
      "integrator.initial_step_fs",
      "integrator.max_step_fs",
      "integrator.dense_output",
      "output.pairs",
      "analysis.death_threshold",
      "converge.n_min",
      "converge.n_max",
  };
  return keys;
}

std::vector<PairIndex> RunConfig::resolved_pairs() const {
  return pairs.empty() ? all_pairs(params.n_sites) : pairs;
}

ComplexMatrix RunConfig::initial_state() const {
  if (initial_kind == InitialKind::fret) return fret_state(initial_site, exciton_basis(params));
  return localized_state(initial_site, params.n_sites);
}

void RunConfig::validate() const {
  if (initial_site < 1 || initial_site > params.n_sites) {
    throw ConfigError("initial.site", "must be in 1.." + std::to_string(params.n_sites));
  }
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("model", e.what());
  }
  try {
    output_steps(params.t_end_fs, params.dt_out_fs);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("time", e.what());
  }
  try {
    integrator.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("integrator", e.what());
  }
  for (const PairIndex& p : pairs) {
    if (p.m < 1 || p.n > params.n_sites || p.m >= p.n) {
      throw ConfigError("output.pairs", "invalid pair " + std::to_string(p.m) + "-" +
                                            std::to_string(p.n));
    }
  }
  if (!(death_threshold > 0.0)) throw ConfigError("analysis.death_threshold", "must be > 0");
  if (converge_n_min < 0 || converge_n_max < converge_n_min) {
    throw ConfigError("converge.n_max", "need 0 <= n_min <= n_max");
  }
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& value) {
  const int sites = c.params.n_sites;
  if (key == "schema") {
    if (parse_int(key, value) != kSchemaVersion) {
      throw ConfigError(key, "unsupported schema version '" + value + "'");
    }
  } else if (key == "initial.kind") {
    if (value == "localized") {
      c.initial_kind = InitialKind::localized;
    } else if (value == "fret") {
      c.initial_kind = InitialKind::fret;
    } else {
      throw ConfigError(key, "expected localized or fret, got '" + value + "'");
    }
  } else if (key == "initial.site") {
    c.initial_site = parse_int(key, value);
  } else if (key == "model.hamiltonian_cm") {
    const auto items = split(value, ',');
    if (static_cast<int>(items.size()) != sites * sites) {
      throw ConfigError(key, "expected " + std::to_string(sites * sites) + " row-major values");
    }
    for (int i = 0; i < sites; ++i) {
      for (int j = 0; j < sites; ++j) {
        c.params.hamiltonian_cm(i, j) =
            parse_double(key, items[static_cast<std::size_t>(i * sites + j)]);
      }
    }
  } else if (key == "model.lambda_cm") {
    c.params.lambda_cm = parse_per_site(key, value, sites);
  } else if (key == "model.gamma_inv_fs") {
    c.params.gamma_inv_fs = parse_per_site(key, value, sites);
  } else if (key == "model.temperature_K") {
    c.params.temperature_K = parse_double(key, value);
  } else if (key == "model.trap_rate_inv_ps") {
    c.params.trap_rate_inv_ps = parse_double(key, value);
  } else if (key == "model.trap_sites") {
    c.params.trap_sites.clear();
    if (value != "none") {
      for (const auto& item : split(value, ',')) c.params.trap_sites.push_back(parse_int(key, item));
    }
  } else if (key == "model.truncation_N") {
    c.params.truncation_N = parse_int(key, value);
  } else if (key == "time.t_end_fs") {
    c.params.t_end_fs = parse_double(key, value);
  } else if (key == "time.dt_out_fs") {
    c.params.dt_out_fs = parse_double(key, value);
  } else if (key == "integrator.abs_tol") {
    c.integrator.abs_tol = parse_double(key, value);
  } else if (key == "integrator.rel_tol") {
    c.integrator.rel_tol = parse_double(key, value);
  } else if (key == "integrator.initial_step_fs") {
    c.integrator.initial_step_fs = parse_double(key, value);
  } else if (key == "integrator.max_step_fs") {
    c.integrator.max_step_fs = parse_double(key, value);
  } else if (key == "integrator.dense_output") {
    c.integrator.dense_output = parse_bool(key, value);
  } else if (key == "output.pairs") {
    c.pairs.clear();
    if (value != "all") {
      for (const auto& item : split(value, ',')) {
        const auto dash = item.find('-');
        if (dash == std::string::npos) throw ConfigError(key, "expected m-n, got '" + item + "'");
        PairIndex p{parse_int(key, trim(item.substr(0, dash))),
                    parse_int(key, trim(item.substr(dash + 1)))};
        if (p.m > p.n) std::swap(p.m, p.n);
        c.pairs.push_back(p);
      }
    }
  } else if (key == "analysis.death_threshold") {
    c.death_threshold = parse_double(key, value);
  } else if (key == "converge.n_min") {
    c.converge_n_min = parse_int(key, value);
  } else if (key == "converge.n_max") {
    c.converge_n_max = parse_int(key, value);
  } else {
    throw ConfigError(key, "unknown key");
  }
}

void apply_text(RunConfig& config, const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(number), "expected key = value");
    }
    apply_setting(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void apply_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot read '" + path + "'");
  std::ostringstream body;
  body << in.rdbuf();
  apply_text(config, body.str(), path);
}

void apply_override(RunConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("--set", "expected key=value, got '" + assignment + "'");
  apply_setting(config, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

std::string describe(const RunConfig& c) {
  std::ostringstream out;
  const auto& p = c.params;
  std::vector<double> h;
  for (int i = 0; i < p.n_sites; ++i) {
    for (int j = 0; j < p.n_sites; ++j) h.push_back(p.hamiltonian_cm(i, j));
  }
  std::vector<std::string> pairs;
  for (const PairIndex& pair : c.resolved_pairs()) {
    pairs.push_back(std::to_string(pair.m) + "-" + std::to_string(pair.n));
  }
  out << "schema = " << kSchemaVersion << "\n";
  out << "initial.kind = " << (c.initial_kind == InitialKind::fret ? "fret" : "localized") << "\n";
  out << "initial.site = " << c.initial_site << "\n";
  out << "model.hamiltonian_cm = " << join(h) << "\n";
  out << "model.lambda_cm = " << join(p.lambda_cm) << "\n";
  out << "model.gamma_inv_fs = " << join(p.gamma_inv_fs) << "\n";
  out << "model.temperature_K = " << format_double(p.temperature_K) << "\n";
  out << "model.trap_rate_inv_ps = " << format_double(p.trap_rate_inv_ps) << "\n";
  out << "model.trap_sites = " << (p.trap_sites.empty() ? "none" : join(p.trap_sites)) << "\n";
  out << "model.truncation_N = " << p.truncation_N << "\n";
  out << "time.t_end_fs = " << format_double(p.t_end_fs) << "\n";
  out << "time.dt_out_fs = " << format_double(p.dt_out_fs) << "\n";
  out << "integrator.abs_tol = " << format_double(c.integrator.abs_tol) << "\n";
  out << "integrator.rel_tol = " << format_double(c.integrator.rel_tol) << "\n";
  out << "integrator.initial_step_fs = " << format_double(c.integrator.initial_step_fs) << "\n";
  out << "integrator.max_step_fs = " << format_double(c.integrator.max_step_fs) << "\n";
  out << "integrator.dense_output = " << (c.integrator.dense_output ? "true" : "false") << "\n";
  out << "output.pairs = " << join(pairs) << "\n";
  out << "analysis.death_threshold = " << format_double(c.death_threshold) << "\n";
  out << "converge.n_min = " << c.converge_n_min << "\n";
  out << "converge.n_max = " << c.converge_n_max << "\n";
  return out.str();
}

}  // namespace fmo::cli
