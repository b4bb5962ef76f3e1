#include "fmoheom/dormand_prince.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

using namespace fmo;

namespace {

// y' = (i w - d) y componentwise, exact solution y0 exp((i w - d) t).
DormandPrince::Rhs rotation(std::vector<Complex> rates) {
  return [rates](double, std::span<const Complex> y, std::span<Complex> f) {
    for (std::size_t i = 0; i < y.size(); ++i) f[i] = rates[i] * y[i];
  };
}

}  // namespace

TEST_CASE("config validation") {
  IntegratorConfig c;
  c.abs_tol = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.rel_tol = -1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.max_step_fs = -1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.max_steps = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("linear test problem hits the grid and the exact solution") {
  const std::vector<Complex> rates = {Complex(-0.01, 0.3), Complex(-0.2, -0.05), Complex(0.0, 1.1)};
  for (bool dense : {true, false}) {
    IntegratorConfig c;
    c.dense_output = dense;
    DormandPrince dp(rotation(rates), c);
    std::vector<Complex> y = {1.0, Complex(0.5, -0.5), Complex(0.0, 2.0)};
    const std::vector<Complex> y0 = y;
    std::vector<double> times;
    double worst = 0.0;
    const auto stats = dp.integrate(y, 0.0, 0.5, 100, [&](std::size_t i, double t, std::span<const Complex> v) {
      CHECK(i == times.size());
      times.push_back(t);
      for (std::size_t k = 0; k < v.size(); ++k) {
        worst = std::max(worst, std::abs(v[k] - y0[k] * std::exp(rates[k] * t)));
      }
    });
    CHECK(times.size() == 101);
    for (std::size_t i = 0; i < times.size(); ++i) CHECK(times[i] == 0.5 * static_cast<double>(i));
    CHECK(worst <= 1e-6);
    CHECK(stats.accepted > 0);
    CHECK(stats.rhs_evaluations >= 6 * stats.accepted);
    for (std::size_t k = 0; k < y.size(); ++k) {
      CHECK(std::abs(y[k] - y0[k] * std::exp(rates[k] * 50.0)) <= 1e-6);
    }
  }
}

TEST_CASE("dense output samples agree with clipped steps") {
  const std::vector<Complex> rates = {Complex(-0.05, 0.7), Complex(-0.01, -0.2)};
  std::vector<std::vector<Complex>> samples[2];
  std::size_t accepted[2];
  for (int mode = 0; mode < 2; ++mode) {
    IntegratorConfig c;
    c.dense_output = mode == 0;
    DormandPrince dp(rotation(rates), c);
    std::vector<Complex> y = {1.0, 1.0};
    accepted[mode] = dp.integrate(y, 0.0, 0.25, 200, [&](std::size_t, double, std::span<const Complex> v) {
      samples[mode].emplace_back(v.begin(), v.end());
    }).accepted;
  }
  CHECK(accepted[0] < accepted[1]);
  for (std::size_t i = 0; i < samples[0].size(); ++i) {
    for (std::size_t k = 0; k < 2; ++k) CHECK(std::abs(samples[0][i][k] - samples[1][i][k]) <= 1e-6);
  }
}

TEST_CASE("observer sees only the requested leading components") {
  DormandPrince dp(rotation({Complex(0, 1), Complex(0, 2), Complex(0, 3)}), {});
  std::vector<Complex> y = {1.0, 1.0, 1.0};
  std::size_t full_steps = 0;
  dp.integrate(
      y, 0.0, 1.0, 3, [&](std::size_t, double, std::span<const Complex> v) { CHECK(v.size() == 2); }, 2,
      [&](double, std::span<const Complex> v) {
        CHECK(v.size() == 3);
        ++full_steps;
      });
  CHECK(full_steps > 0);
}

TEST_CASE("failures raise runtime errors") {
  IntegratorConfig c;
  DormandPrince nan_rhs(
      [](double t, std::span<const Complex> y, std::span<Complex> f) {
        for (std::size_t i = 0; i < y.size(); ++i) {
          f[i] = t > 0.5 ? Complex(std::numeric_limits<double>::quiet_NaN(), 0.0) : Complex(0.0, 1.0);
        }
      },
      c);
  std::vector<Complex> y = {1.0};
  CHECK_THROWS_WITH_AS(nan_rhs.integrate(y, 0.0, 1.0, 2, {}), doctest::Contains("underflow"),
                       std::runtime_error);

  c.max_steps = 3;
  DormandPrince limited(rotation({Complex(0.0, 10.0)}), c);
  y = {1.0};
  CHECK_THROWS_WITH_AS(limited.integrate(y, 0.0, 10.0, 1, {}), doctest::Contains("exceeded"),
                       std::runtime_error);
  CHECK_THROWS_AS(limited.integrate(y, 0.0, 0.0, 1, {}), std::invalid_argument);
}
