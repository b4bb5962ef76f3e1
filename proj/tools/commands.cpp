#include "commands.hpp"

#include "fmoheom/analysis.hpp"
#include "fmoheom/dynamics.hpp"
#include "fmoheom/hierarchy.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fmo::cli {

namespace fs = std::filesystem;

namespace {

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, const std::vector<std::string>& header) : path_(path) {
    out_.open(path, std::ios::binary);
    if (!out_) throw std::runtime_error("output: cannot write '" + path.string() + "'");
    for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
    out_ << '\n';
  }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
  }

  void close() {
    out_.close();
    if (!out_) throw std::runtime_error("output: failed writing '" + path_.string() + "'");
  }

 private:
  fs::path path_;
  std::ofstream out_;
};

void write_text(const fs::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("output: cannot write '" + path.string() + "'");
  out << body;
  out.close();
  if (!out) throw std::runtime_error("output: failed writing '" + path.string() + "'");
}

void prepare(const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir)) {
    throw std::runtime_error("output: cannot create directory '" + out_dir.string() + "'");
  }
}

std::string manifest_header(const char* command, const RunConfig& config) {
  return std::string("command = ") + command + "\n" + describe(config);
}

std::string stats_lines(const Trajectory& traj) {
  std::ostringstream out;
  out << "hierarchy_nodes = " << traj.hierarchy_nodes << "\n";
  out << "accepted_steps = " << traj.stats.accepted << "\n";
  out << "rejected_steps = " << traj.stats.rejected << "\n";
  out << "rhs_evaluations = " << traj.stats.rhs_evaluations << "\n";
  return out.str();
}

Trajectory run(const RunConfig& config) {
  config.validate();
  return integrate(config.initial_state(), config.params, config.integrator);
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

Paths simulate(const RunConfig& config, const fs::path& out_dir) {
  prepare(out_dir);
  const Trajectory traj = run(config);
  const int dim = config.params.n_sites;
  Paths written;

  std::vector<std::string> header = {"t_fs"};
  for (int k = 1; k <= dim; ++k) header.push_back("rho_" + std::to_string(k) + std::to_string(k));
  header.push_back("trace");
  written.push_back(out_dir / "populations.csv");
  CsvWriter pops(written.back(), header);
  for (std::size_t i = 0; i < traj.rho.size(); ++i) {
    std::vector<std::string> cells = {format_number(traj.times_fs[i])};
    for (int k = 0; k < dim; ++k) cells.push_back(format_number(traj.rho[i](k, k).real()));
    cells.push_back(format_number(traj.rho[i].trace().real()));
    pops.row(cells);
  }
  pops.close();

  for (const PairIndex& pair : config.resolved_pairs()) {
    const CorrelationTimeSeries s = correlation_series(traj, pair);
    written.push_back(out_dir /
                      ("measures_" + std::to_string(pair.m) + "_" + std::to_string(pair.n) + ".csv"));
    CsvWriter csv(written.back(), {"t_fs", "B", "C", "l1", "mu1", "mu3"});
    for (std::size_t i = 0; i < s.times_fs.size(); ++i) {
      csv.row({format_number(s.times_fs[i]), format_number(s.B[i]), format_number(s.C[i]),
               format_number(s.l1[i]), format_number(s.mu1[i]), format_number(s.mu3[i])});
    }
    csv.close();
  }

  written.push_back(out_dir / "run_manifest.txt");
  write_text(written.back(), manifest_header("simulate", config) + stats_lines(traj));
  return written;
}

Paths converge(const RunConfig& config, const fs::path& out_dir) {
  config.validate();
  prepare(out_dir);
  std::ostringstream counts;
  const auto points = convergence_study(
      config.initial_state(), config.params, config.converge_n_min, config.converge_n_max,
      config.integrator, {}, [&](int level, const Trajectory& traj) {
        counts << "hierarchy_nodes_N" << level << " = " << traj.hierarchy_nodes << "\n";
      });

  Paths written{out_dir / "convergence.csv"};
  CsvWriter csv(written.back(), {"N", "log10_D"});
  for (const ConvergencePoint& p : points) {
    csv.row({std::to_string(p.truncation), format_number(p.log10_distance)});
  }
  csv.close();
  written.push_back(out_dir / "run_manifest.txt");
  write_text(written.back(), manifest_header("converge", config) + counts.str());
  return written;
}

Paths sudden_death(const RunConfig& config, const fs::path& out_dir) {
  prepare(out_dir);
  const Trajectory traj = run(config);
  Paths written{out_dir / "sudden_death.csv"};
  CsvWriter csv(written.back(),
                {"m", "n", "death_time_fs", "peak_B", "peak_time_fs", "threshold"});
  for (const PairIndex& pair : config.resolved_pairs()) {
    const SuddenDeathReport r =
        detect_sudden_death(correlation_series(traj, pair), config.death_threshold);
    csv.row({std::to_string(r.pair.m), std::to_string(r.pair.n),
             r.death_time_fs ? format_number(*r.death_time_fs) : "none", format_number(r.peak_B),
             format_number(r.peak_time_fs), format_number(r.threshold)});
  }
  csv.close();
  written.push_back(out_dir / "run_manifest.txt");
  write_text(written.back(), manifest_header("sudden-death", config) + stats_lines(traj));
  return written;
}

Paths oracle(const RunConfig& config, const fs::path& out_dir) {
  config.validate();
  prepare(out_dir);
  const ComplexMatrix h = build_hamiltonian(config.params);
  Paths written{out_dir / "short_time_oracle.csv"};
  CsvWriter csv(written.back(), {"x", "m", "n", "slope_C", "slope_B", "quadratic_C_coeff"});
  for (const ShortTimePrediction& p : short_time_oracle(config.initial_site, h)) {
    csv.row({std::to_string(config.initial_site), std::to_string(p.pair.m),
             std::to_string(p.pair.n), format_number(p.slope_C), format_number(p.slope_B),
             format_number(p.quadratic_C_coeff)});
  }
  csv.close();

  written.push_back(out_dir / "dominant_pair.csv");
  CsvWriter dom(written.back(), {"x", "m", "n"});
  for (int x = 1; x <= config.params.n_sites; ++x) {
    const auto pair = dominant_pair(x, h);
    dom.row({std::to_string(x), pair ? std::to_string(pair->m) : "none",
             pair ? std::to_string(pair->n) : "none"});
  }
  dom.close();
  return written;
}

Paths fret_report(const RunConfig& config, const fs::path& out_dir) {
  config.validate();
  prepare(out_dir);
  std::optional<PairIndex> pair;
  if (config.pairs.size() == 1) pair = config.pairs.front();
  const FretInterferenceReport r =
      fret_interference_report(config.initial_site, exciton_basis(config.params), pair);

  std::ostringstream out;
  out << "x = " << r.x << "\n";
  out << "reference_case = " << (r.reference_case ? "true" : "false") << "\n";
  out << "pair = " << r.pair.m << "-" << r.pair.n << "\n";
  for (std::size_t i = 0; i < r.weights.size(); ++i) {
    out << "weight_e" << i + 1 << " = " << format_number(r.weights[i]) << "\n";
  }
  out << "leading_weight_sum = " << format_number(r.leading_weight_sum) << "\n";
  for (const ExcitonContribution& e : r.leading) {
    const std::string p = "e" + std::to_string(e.exciton) + ".";
    out << p << "weight = " << format_number(e.weight) << "\n";
    out << p << "c_m = " << format_number(e.c_m) << "\n";
    out << p << "c_n = " << format_number(e.c_n) << "\n";
    out << p << "pure_state_value = " << format_number(e.pure_state_value) << "\n";
    out << p << "reduced_concurrence = " << format_number(e.reduced_concurrence) << "\n";
    out << p << "signed_coherence = " << format_number(e.signed_coherence) << "\n";
  }
  for (const auto& [label, m] : {std::pair{"two_state", r.two_state}, std::pair{"exact", r.exact}}) {
    const std::string p = std::string(label) + ".";
    out << p << "rho_mm = " << format_number(m.rho_mm) << "\n";
    out << p << "rho_nn = " << format_number(m.rho_nn) << "\n";
    out << p << "rho_mn = " << format_number(m.rho_mn) << "\n";
    out << p << "C = " << format_number(m.C) << "\n";
    out << p << "mu1 = " << format_number(m.mu1) << "\n";
    out << p << "mu3 = " << format_number(m.mu3) << "\n";
    out << p << "M = " << format_number(m.M) << "\n";
    out << p << "B = " << format_number(m.B) << "\n";
  }
  Paths written{out_dir / "fret_report.txt"};
  write_text(written.back(), out.str());
  return written;
}

}  // namespace fmo::cli
