#include "fmoheom/dormand_prince.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fmo {

namespace {

// Dormand & Prince (1980) 5(4) tableau, FSAL.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
// Fifth minus fourth order weights.
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

// Continuous extension (Hairer, Norsett & Wanner, DOPRI5 dense output).
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

// PI controller (Hairer, Norsett & Wanner, DOPRI5 defaults).
constexpr double kBeta = 0.04;
constexpr double kExpo = 0.2 - 0.75 * kBeta;
constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 10.0;

}  // namespace

void IntegratorConfig::validate() const {
  if (!(abs_tol > 0.0)) throw std::invalid_argument("IntegratorConfig.abs_tol: must be > 0");
  if (!(rel_tol > 0.0)) throw std::invalid_argument("IntegratorConfig.rel_tol: must be > 0");
  if (!(initial_step_fs >= 0.0)) {
    throw std::invalid_argument("IntegratorConfig.initial_step_fs: must be >= 0");
  }
  if (!(max_step_fs >= 0.0)) throw std::invalid_argument("IntegratorConfig.max_step_fs: must be >= 0");
  if (!(min_step_fs > 0.0)) throw std::invalid_argument("IntegratorConfig.min_step_fs: must be > 0");
  if (max_steps == 0) throw std::invalid_argument("IntegratorConfig.max_steps: must be > 0");
}

DormandPrince::DormandPrince(Rhs rhs, IntegratorConfig config)
    : rhs_(std::move(rhs)), config_(config) {
  config_.validate();
}

double DormandPrince::error_norm(std::span<const Complex> y, std::span<const Complex> y_new,
                                 std::span<const Complex> err) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double scale =
        config_.abs_tol +
        config_.rel_tol * std::sqrt(std::max(std::norm(y[i]), std::norm(y_new[i])));
    sum += std::norm(err[i]) / (scale * scale);
  }
  return std::sqrt(sum / static_cast<double>(std::max<std::size_t>(y.size(), 1)));
}

double DormandPrince::initial_step(double t, std::span<const Complex> y,
                                   std::span<const Complex> f0, double span_fs) {
  const std::vector<Complex> zero(y.size());
  const double d0 = error_norm(zero, y, y);
  const double d1 = error_norm(zero, y, f0);
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  h0 = std::min(h0, span_fs);

  std::vector<Complex>& y1 = stage_;
  for (std::size_t i = 0; i < y.size(); ++i) y1[i] = y[i] + h0 * f0[i];
  std::vector<Complex>& f1 = k_[1];
  rhs_(t + h0, y1, f1);
  ++evaluations_;
  for (std::size_t i = 0; i < y.size(); ++i) err_[i] = f1[i] - f0[i];
  const double d2 = error_norm(zero, y, err_) / h0;

  const double dmax = std::max(d1, d2);
  const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 0.2);
  return std::min({100.0 * h0, h1, span_fs});
}

void DormandPrince::interpolate(std::span<const Complex> y_old, std::span<const Complex> y_new,
                                double h, double theta, std::size_t count) {
  const auto& k1 = k_[0];
  const auto& k3 = k_[2];
  const auto& k4 = k_[3];
  const auto& k5 = k_[4];
  const auto& k6 = k_[5];
  const auto& k7 = k_[6];
  const double s = 1.0 - theta;
  for (std::size_t i = 0; i < count; ++i) {
    const Complex r2 = y_new[i] - y_old[i];
    const Complex r3 = h * k1[i] - r2;
    const Complex r4 = r2 - h * k7[i] - r3;
    const Complex r5 =
        h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
    dense_[i] = y_old[i] + theta * (r2 + s * (r3 + theta * (r4 + s * r5)));
  }
}

IntegrationStats DormandPrince::integrate(std::vector<Complex>& y, double t0, double dt_out,
                                          std::size_t steps, const Observer& observer,
                                          std::size_t output_components,
                                          const StepObserver& on_step) {
  if (!(dt_out > 0.0)) throw std::invalid_argument("DormandPrince::integrate: dt_out must be > 0");
  const std::size_t n = y.size();
  const std::size_t out_n = output_components == 0 ? n : std::min(output_components, n);
  for (auto& k : k_) k.assign(n, Complex{});
  stage_.assign(n, Complex{});
  y_new_.assign(n, Complex{});
  err_.assign(n, Complex{});
  dense_.assign(out_n, Complex{});
  evaluations_ = 0;

  auto emit = [&](std::size_t index, double time, const Complex* data) {
    if (observer) observer(index, time, std::span<const Complex>(data, out_n));
  };

  IntegrationStats stats;
  emit(0, t0, y.data());
  if (steps == 0) return stats;

  double t = t0;
  rhs_(t, y, k_[0]);
  ++evaluations_;

  double h = config_.initial_step_fs > 0.0 ? config_.initial_step_fs
                                          : initial_step(t, y, k_[0], dt_out);
  if (config_.max_step_fs > 0.0) h = std::min(h, config_.max_step_fs);
  double err_old = 1e-4;

  auto grid_time = [&](std::size_t index) { return t0 + static_cast<double>(index) * dt_out; };
  auto stage = [&](double time, auto&& combine, std::vector<Complex>& out) {
    for (std::size_t i = 0; i < n; ++i) stage_[i] = y[i] + combine(i);
    rhs_(time, stage_, out);
    ++evaluations_;
  };

  std::size_t next = 1;
  while (next <= steps) {
    const double target = grid_time(config_.dense_output ? steps : next);
    const double remaining = target - t;
    // Land exactly on the target when the step would reach or nearly reach it.
    const bool clipped = h >= remaining * (1.0 - 1e-10);
    const double step = clipped ? remaining : h;

    const auto& k1 = k_[0];
    auto& k2 = k_[1];
    auto& k3 = k_[2];
    auto& k4 = k_[3];
    auto& k5 = k_[4];
    auto& k6 = k_[5];
    auto& k7 = k_[6];
    stage(t + c2 * step, [&](std::size_t i) { return step * (a21 * k1[i]); }, k2);
    stage(t + c3 * step, [&](std::size_t i) { return step * (a31 * k1[i] + a32 * k2[i]); }, k3);
    stage(t + c4 * step,
          [&](std::size_t i) { return step * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]); }, k4);
    stage(t + c5 * step,
          [&](std::size_t i) {
            return step * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
          },
          k5);
    stage(t + step,
          [&](std::size_t i) {
            return step * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
          },
          k6);
    for (std::size_t i = 0; i < n; ++i) {
      y_new_[i] =
          y[i] + step * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    }
    const double t_new = clipped ? target : t + step;
    rhs_(t_new, y_new_, k7);
    ++evaluations_;

    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex e =
          step * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double scale =
          config_.abs_tol +
          config_.rel_tol * std::sqrt(std::max(std::norm(y[i]), std::norm(y_new_[i])));
      sum += std::norm(e) / (scale * scale);
    }
    const double err = std::sqrt(sum / static_cast<double>(std::max<std::size_t>(n, 1)));

    if (std::isfinite(err) && err <= 1.0) {
      ++stats.accepted;
      if (config_.dense_output) {
        for (; next < steps && grid_time(next) <= t_new; ++next) {
          interpolate(y, y_new_, step, (grid_time(next) - t) / step, out_n);
          emit(next, grid_time(next), dense_.data());
        }
        if (clipped) {
          emit(steps, target, y_new_.data());
          next = steps + 1;
        }
      } else if (clipped) {
        emit(next, target, y_new_.data());
        ++next;
      }
      t = t_new;
      y.swap(y_new_);
      std::swap(k_[0], k_[6]);
      if (on_step) on_step(t, y);
      stats.last_step_fs = step;
      double factor = std::pow(std::max(err, 1e-300), kExpo) / std::pow(err_old, kBeta);
      factor = std::clamp(factor / kSafety, 1.0 / kMaxFactor, 1.0 / kMinFactor);
      err_old = std::max(err, 1e-4);
      const double proposed = step / factor;
      // A clipped step says nothing against the larger step in hand.
      h = clipped ? std::max(proposed, h) : proposed;
    } else {
      ++stats.rejected;
      const double factor = std::isfinite(err)
                                ? std::min(1.0 / kMinFactor, std::pow(err, kExpo) / kSafety)
                                : 1.0 / kMinFactor;
      h = step / factor;
    }
    if (config_.max_step_fs > 0.0) h = std::min(h, config_.max_step_fs);

    if (h < config_.min_step_fs) {
      std::ostringstream msg;
      msg << "DormandPrince: step-size underflow (h = " << h << " fs) at t = " << t
          << " fs; tolerance cannot be met";
      throw std::runtime_error(msg.str());
    }
    if (stats.accepted + stats.rejected >= config_.max_steps) {
      std::ostringstream msg;
      msg << "DormandPrince: exceeded " << config_.max_steps << " steps at t = " << t << " fs";
      throw std::runtime_error(msg.str());
    }
  }
  stats.rhs_evaluations = evaluations_;
  return stats;
}

}  // namespace fmo
