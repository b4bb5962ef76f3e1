#include "fmoheom/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace fmo {

namespace {

void require_site(int x, Eigen::Index dim, const char* what) {
  if (x < 1 || x > dim) {
    std::ostringstream msg;
    msg << what << ": site " << x << " outside 1.." << dim;
    throw std::invalid_argument(msg.str());
  }
}

// sum_{l != x, n} J_xl^2.
double competing_couplings(const ComplexMatrix& h, int x, int n) {
  double sum = 0.0;
  for (int l = 1; l <= h.rows(); ++l) {
    if (l != x && l != n) sum += std::norm(h(x - 1, l - 1));
  }
  return sum;
}

PairMeasures measures(double pm, double pn, double coherence, double trace) {
  ReducedPairState r;
  r.source_trace = trace;
  r.matrix(0, 0) = trace - pm - pn;
  r.matrix(1, 1) = pn;
  r.matrix(2, 2) = pm;
  r.matrix(2, 1) = coherence;
  r.matrix(1, 2) = coherence;
  const ClosedFormMeasures c = closed_form_measures(r);
  PairMeasures out;
  out.rho_mm = pm;
  out.rho_nn = pn;
  out.rho_mn = coherence;
  out.trace = trace;
  out.C = c.C;
  out.mu1 = c.mu1;
  out.mu3 = c.mu3;
  out.M = horodecki_M(r.matrix);
  out.B = c.B;
  return out;
}

}  // namespace

std::vector<ShortTimePrediction> short_time_oracle(int x, const ComplexMatrix& hamiltonian) {
  require_site(x, hamiltonian.rows(), "short_time_oracle");
  std::vector<ShortTimePrediction> out;
  for (const PairIndex& p : all_pairs(static_cast<int>(hamiltonian.rows()))) {
    ShortTimePrediction s;
    s.pair = p;
    if (p.m == x || p.n == x) {
      const int other = p.m == x ? p.n : p.m;
      const double j2 = std::norm(hamiltonian(x - 1, other - 1));
      s.slope_C = 2.0 * std::sqrt(j2);
      s.slope_B = 2.0 * std::sqrt(std::max(j2 - competing_couplings(hamiltonian, x, other), 0.0));
    } else {
      s.quadratic_C_coeff =
          2.0 * std::abs(hamiltonian(p.m - 1, x - 1)) * std::abs(hamiltonian(x - 1, p.n - 1));
    }
    out.push_back(s);
  }
  return out;
}

std::optional<PairIndex> dominant_pair(int x, const ComplexMatrix& hamiltonian) {
  require_site(x, hamiltonian.rows(), "dominant_pair");
  for (int n = 1; n <= hamiltonian.rows(); ++n) {
    if (n == x) continue;
    if (std::norm(hamiltonian(x - 1, n - 1)) > competing_couplings(hamiltonian, x, n)) {
      return PairIndex{std::min(x, n), std::max(x, n)};
    }
  }
  return std::nullopt;
}

FretInterferenceReport fret_interference_report(int x, const ExcitonBasis& basis,
                                                std::optional<PairIndex> pair) {
  const auto dim = static_cast<int>(basis.coeffs.rows());
  require_site(x, dim, "fret_interference_report");
  const RealMatrix& c = basis.coeffs;

  FretInterferenceReport report;
  report.x = x;
  report.reference_case = x == 1 || x == 6;
  for (int r = 0; r < dim; ++r) report.weights.push_back(c(r, x - 1) * c(r, x - 1));

  const RealMatrix rho =
      c.transpose() * Eigen::VectorXd::Map(report.weights.data(), dim).asDiagonal() * c;
  if (pair) {
    require_site(pair->m, dim, "fret_interference_report");
    require_site(pair->n, dim, "fret_interference_report");
    if (pair->m == pair->n) {
      throw std::invalid_argument("fret_interference_report: sites must differ");
    }
    report.pair = {std::min(pair->m, pair->n), std::max(pair->m, pair->n)};
  } else {
    int best = x == 1 ? 2 : 1;
    for (int n = 1; n <= dim; ++n) {
      if (n != x && std::abs(rho(x - 1, n - 1)) > std::abs(rho(x - 1, best - 1))) best = n;
    }
    report.pair = {std::min(x, best), std::max(x, best)};
  }
  const int m = report.pair.m;
  const int n = report.pair.n;

  std::vector<int> order(static_cast<std::size_t>(dim));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return report.weights[static_cast<std::size_t>(a)] > report.weights[static_cast<std::size_t>(b)];
  });

  double pm = 0.0, pn = 0.0, coherence = 0.0;
  for (int i = 0; i < std::min(dim, 2); ++i) {
    const int r = order[static_cast<std::size_t>(i)];
    ExcitonContribution e;
    e.exciton = r + 1;
    e.weight = report.weights[static_cast<std::size_t>(r)];
    e.c_m = c(r, m - 1);
    e.c_n = c(r, n - 1);
    const double local = e.c_m * e.c_m + e.c_n * e.c_n;
    e.pure_state_value = local > 0.0 ? 2.0 * std::abs(e.c_m * e.c_n) / local : 0.0;
    e.reduced_concurrence = 2.0 * std::abs(e.c_m * e.c_n);
    e.signed_coherence = e.weight * e.c_m * e.c_n;
    report.leading_weight_sum += e.weight;
    pm += e.weight * e.c_m * e.c_m;
    pn += e.weight * e.c_n * e.c_n;
    coherence += e.signed_coherence;
    report.leading.push_back(e);
  }
  report.two_state = measures(pm, pn, coherence, 1.0);
  report.exact = measures(rho(m - 1, m - 1), rho(n - 1, n - 1), rho(m - 1, n - 1), rho.trace());
  return report;
}

CorrelationTimeSeries correlation_series(const Trajectory& trajectory, PairIndex pair) {
  CorrelationTimeSeries s;
  s.pair = {std::min(pair.m, pair.n), std::max(pair.m, pair.n)};
  const std::size_t count = trajectory.rho.size();
  for (auto* v : {&s.B, &s.C, &s.l1, &s.mu1, &s.mu3, &s.population_m, &s.population_n, &s.trace}) {
    v->reserve(count);
  }
  s.times_fs = trajectory.times_fs;
  for (const ComplexMatrix& rho : trajectory.rho) {
    const ReducedPairState r = reduce_pair(rho, pair.m, pair.n);
    const ClosedFormMeasures c = closed_form_measures(r);
    s.B.push_back(c.B);
    s.C.push_back(c.C);
    s.l1.push_back(c.l1);
    s.mu1.push_back(c.mu1);
    s.mu3.push_back(c.mu3);
    s.population_m.push_back(r.population_m());
    s.population_n.push_back(r.population_n());
    s.trace.push_back(r.source_trace);
  }
  return s;
}

SuddenDeathReport detect_sudden_death(const CorrelationTimeSeries& series, double threshold) {
  if (series.B.empty() || series.B.size() != series.times_fs.size()) {
    throw std::invalid_argument("detect_sudden_death: empty or inconsistent series");
  }
  if (!(threshold > 0.0)) throw std::invalid_argument("detect_sudden_death: threshold must be > 0");

  SuddenDeathReport report;
  report.pair = series.pair;
  report.threshold = threshold;
  const auto peak = std::max_element(series.B.begin(), series.B.end());
  report.peak_B = *peak;
  report.peak_time_fs = series.times_fs[static_cast<std::size_t>(peak - series.B.begin())];

  std::size_t last_alive = series.B.size();
  for (std::size_t i = series.B.size(); i-- > 0;) {
    if (series.B[i] > threshold) {
      last_alive = i;
      break;
    }
  }
  if (last_alive == series.B.size() || last_alive + 1 == series.B.size()) return report;

  const double b0 = series.B[last_alive];
  const double b1 = series.B[last_alive + 1];
  const double t0 = series.times_fs[last_alive];
  const double t1 = series.times_fs[last_alive + 1];
  report.death_time_fs = t0 + (b0 - threshold) / (b0 - b1) * (t1 - t0);
  return report;
}

ShortTimeFit short_time_validation(const Trajectory& trajectory, const ShortTimePrediction& oracle,
                                   double window_fs) {
  if (!(window_fs > 0.0)) throw std::invalid_argument("short_time_validation: window must be > 0");
  if (trajectory.times_fs.empty() || trajectory.times_fs.back() < window_fs * (1.0 - 1e-12)) {
    throw std::invalid_argument("short_time_validation: window extends past the trajectory");
  }
  const CorrelationTimeSeries s = correlation_series(trajectory, oracle.pair);
  double tt = 0.0, t4 = 0.0, tc = 0.0, tb = 0.0, t2c = 0.0;
  for (std::size_t i = 0; i < s.times_fs.size(); ++i) {
    const double t = s.times_fs[i] - s.times_fs.front();
    if (t <= 0.0) continue;
    if (t > window_fs * (1.0 + 1e-12)) break;
    tt += t * t;
    t4 += t * t * t * t;
    tc += t * s.C[i];
    tb += t * s.B[i];
    t2c += t * t * s.C[i];
  }
  if (tt == 0.0) throw std::invalid_argument("short_time_validation: no samples inside the window");

  ShortTimeFit fit;
  fit.pair = s.pair;
  fit.window_fs = window_fs;
  fit.slope_C = tc / tt;
  fit.slope_B = tb / tt;
  fit.quadratic_C_coeff = t2c / t4;
  fit.oracle = oracle;
  return fit;
}

double relative_deviation(double fitted, double oracle) {
  return oracle == 0.0 ? fitted : (fitted - oracle) / std::abs(oracle);
}

}  // namespace fmo
