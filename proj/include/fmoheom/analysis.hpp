#pragma once

// Post-processing on top of the dynamics: leading-order short-time
// predictions, the dominant-pair inequality, the t = 0 decomposition of FRET
// states into exciton contributions, and nonlocality sudden-death detection.
// Site and exciton indices are 1-based.

#include "fmoheom/correlation.hpp"
#include "fmoheom/dynamics.hpp"
#include "fmoheom/fmo_model.hpp"

#include <optional>
#include <vector>

namespace fmo {

struct ShortTimePrediction {
  PairIndex pair;
  /// dC/dt at t = 0 (rad/fs); nonzero only for pairs containing x.
  double slope_C = 0.0;
  /// dB/dt at t = 0 (rad/fs).
  double slope_B = 0.0;
  /// C ~ quadratic_C_coeff * t^2 for pairs not containing x ((rad/fs)^2).
  double quadratic_C_coeff = 0.0;
};

/// Leading-order behaviour of every pair after exciting site x, from the
/// couplings J_kl = H(k, l) of the Hamiltonian in rad/fs.
std::vector<ShortTimePrediction> short_time_oracle(int x, const ComplexMatrix& hamiltonian);

/// The pair (x, n) with J_xn^2 > sum_{l != x, n} J_xl^2, if any. The
/// inequality holds for at most one n.
std::optional<PairIndex> dominant_pair(int x, const ComplexMatrix& hamiltonian);

struct PairMeasures {
  double rho_mm = 0.0;
  double rho_nn = 0.0;
  double rho_mn = 0.0;  // signed, real for FRET states
  double trace = 1.0;
  double C = 0.0;
  double mu1 = 0.0;
  double mu3 = 0.0;
  double M = 0.0;
  double B = 0.0;
};

struct ExcitonContribution {
  int exciton = 0;
  double weight = 0.0;  // c_rx^2
  double c_m = 0.0;
  double c_n = 0.0;
  /// B = C of the pure pair state obtained by projecting |e_r> onto the
  /// one-excitation space of the pair: 2|c_rm c_rn| / (c_rm^2 + c_rn^2).
  double pure_state_value = 0.0;
  /// Concurrence of the unnormalized reduced state of |e_r>: 2|c_rm c_rn|.
  double reduced_concurrence = 0.0;
  /// weight * c_rm * c_rn.
  double signed_coherence = 0.0;
};

struct FretInterferenceReport {
  int x = 1;
  PairIndex pair;
  /// False for x outside {1, 6}.
  bool reference_case = true;
  std::vector<double> weights;  // c_rx^2 for r = 1..7
  /// The two excitons with the largest weights, largest first.
  std::vector<ExcitonContribution> leading;
  double leading_weight_sum = 0.0;
  PairMeasures two_state;
  PairMeasures exact;
};

/// t = 0 analysis of fret_state(x). Without an explicit pair the pair (x, n)
/// with the largest |rho_xn| is used.
FretInterferenceReport fret_interference_report(int x, const ExcitonBasis& basis,
                                                std::optional<PairIndex> pair = std::nullopt);

struct CorrelationTimeSeries {
  PairIndex pair;
  std::vector<double> times_fs;
  std::vector<double> B;
  std::vector<double> C;
  std::vector<double> l1;
  std::vector<double> mu1;
  std::vector<double> mu3;
  std::vector<double> population_m;
  std::vector<double> population_n;
  std::vector<double> trace;
};

/// Closed-form measures of one pair along a trajectory.
CorrelationTimeSeries correlation_series(const Trajectory& trajectory, PairIndex pair);

struct SuddenDeathReport {
  PairIndex pair;
  std::optional<double> death_time_fs;
  double peak_B = 0.0;
  double peak_time_fs = 0.0;
  double threshold = 0.0;
};

/// The death time is the linearly interpolated last downward crossing of the
/// threshold, after which B stays at or below it to the end of the grid.
/// None when B never exceeds the threshold or still exceeds it at the last
/// sample. Throws std::invalid_argument on an empty series or threshold <= 0.
SuddenDeathReport detect_sudden_death(const CorrelationTimeSeries& series,
                                      double threshold = 1e-6);

struct ShortTimeFit {
  PairIndex pair;
  double window_fs = 0.0;
  double slope_C = 0.0;
  double slope_B = 0.0;
  double quadratic_C_coeff = 0.0;
  ShortTimePrediction oracle;
};

/// Least-squares fits through the origin over (0, window_fs]: C ~ a t,
/// B ~ b t and C ~ q t^2. Throws std::invalid_argument when the window is not
/// positive or extends past the trajectory.
ShortTimeFit short_time_validation(const Trajectory& trajectory,
                                   const ShortTimePrediction& oracle, double window_fs = 5.0);

/// (fit - oracle) / |oracle|; the fitted value itself when the oracle is 0.
double relative_deviation(double fitted, double oracle);

}  // namespace fmo
