#pragma once

// Run configuration for the command line tool. The file format is flat
// `dotted.key = value` lines; '#' starts a comment. Every key is optional
// and the defaults reproduce the reference FMO run (x = 1 localized, N = 12,
// 300 K, lambda = 35 cm^-1, gamma^-1 = 50 fs, r_trap^-1 = 1 ps, 1000 fs).

#include "fmoheom/correlation.hpp"
#include "fmoheom/dormand_prince.hpp"
#include "fmoheom/fmo_model.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fmo::cli {

inline constexpr int kSchemaVersion = 1;

enum class InitialKind { localized, fret };

struct RunConfig {
  InitialKind initial_kind = InitialKind::localized;
  int initial_site = 1;
  SystemParams params;
  IntegratorConfig integrator;
  /// Empty means all pairs.
  std::vector<PairIndex> pairs;
  double death_threshold = 1e-6;
  int converge_n_min = 2;
  int converge_n_max = 8;

  std::vector<PairIndex> resolved_pairs() const;
  ComplexMatrix initial_state() const;
  /// Throws ConfigError naming the first invalid key.
  void validate() const;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Applies one `key = value` assignment.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Applies every assignment of a config file body. `origin` labels errors.
void apply_text(RunConfig& config, const std::string& text, const std::string& origin);

/// Reads and applies a config file.
void apply_file(RunConfig& config, const std::string& path);

/// Applies a `key=value` override as given on the command line.
void apply_override(RunConfig& config, const std::string& assignment);

/// Every resolved setting as `key = value` lines, in a fixed order.
std::string describe(const RunConfig& config);

/// All recognised keys.
const std::vector<std::string>& known_keys();

}  // namespace fmo::cli
