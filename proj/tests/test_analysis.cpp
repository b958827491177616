#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tpmab/analysis.hpp"

using namespace tpmab;

namespace {

// K=2 worked instance: one suboptimal arm with rbar=100, gap=10, alpha=10,
// phi=10 (tau_max=100).
BoundInputs worked_instance() {
  BoundInputs inputs;
  inputs.gaps = {10.0};
  inputs.rbar = {100.0};
  inputs.mu = {40.0};
  inputs.mu_star = 50.0;
  inputs.rbar_max = 100.0;
  inputs.alpha = 10;
  inputs.phi = 10;
  inputs.tau_max = 100;
  return inputs;
}

// Independent second route at extended precision.
long double fr_bound_ld(long double rbar, long double gap, long double alpha,
                        long double phi, long double T) {
  const long double pi = 3.141592653589793238462643383279502884L;
  const long double lnT = std::log(T);
  return 4.0L * rbar * rbar * lnT / (alpha * gap) *
             (1.0L + std::sqrt(1.0L + alpha * (alpha + 1.0L) * phi * gap / (2.0L * rbar * lnT))) +
         (alpha + 1.0L) * phi * rbar + (1.0L + pi * pi / 3.0L) * gap;
}

}  // namespace

TEST_CASE("kl_bernoulli golden values") {
  CHECK(kl_bernoulli(0.5, 0.5) == 0.0);
  CHECK(kl_bernoulli(0.25, 0.5) == doctest::Approx(0.13081203594113696).epsilon(1e-13));
  CHECK(kl_bernoulli(0.0, 0.5) == doctest::Approx(0.69314718055994531).epsilon(1e-13));
  CHECK(kl_bernoulli(1.0, 0.5) == doctest::Approx(0.69314718055994531).epsilon(1e-13));
  CHECK(kl_bernoulli(0.4, 0.6) == doctest::Approx(0.081093021621632840).epsilon(1e-13));
  CHECK(kl_bernoulli(0.0, 0.0) == 0.0);
  CHECK(kl_bernoulli(1.0, 1.0) == 0.0);
  CHECK_THROWS_AS(kl_bernoulli(0.5, 0.0), Error);
  CHECK_THROWS_AS(kl_bernoulli(0.5, 1.0), Error);
  CHECK_THROWS_AS(kl_bernoulli(-0.1, 0.5), Error);
}

TEST_CASE("lower bound curve composition and the alpha factor") {
  BoundInputs inputs;
  inputs.gaps = {20.0};
  inputs.rbar = {100.0};
  inputs.mu = {40.0};
  inputs.mu_star = 60.0;
  inputs.rbar_max = 100.0;
  inputs.alpha = 1;
  inputs.phi = 1;
  inputs.tau_max = 1;

  // At T = e the plain curve is the bare coefficient 20 / KL(0.4, 0.6);
  // evaluated on an integer grid instead: value(T) = coeff * ln T.
  const std::vector<int64_t> grid = {2, 3, 10, 100, 10000};
  std::vector<double> plain = lower_bound_curve(inputs, false, grid);
  const double coeff = 20.0 / kl_bernoulli(0.4, 0.6);
  CHECK(coeff == doctest::Approx(246.63034623764328).epsilon(1e-12));
  for (size_t i = 0; i < grid.size(); ++i) {
    CHECK(plain[i] ==
          doctest::Approx(coeff * std::log(static_cast<double>(grid[i]))).epsilon(1e-12));
  }

  // alpha = 1: the smoothness flag changes nothing.
  std::vector<double> smooth1 = lower_bound_curve(inputs, true, grid);
  CHECK(smooth1 == plain);

  // The smooth curve is exactly the plain curve divided by alpha.
  inputs.alpha = 20;
  std::vector<double> smooth20 = lower_bound_curve(inputs, true, grid);
  std::vector<double> plain20 = lower_bound_curve(inputs, false, grid);
  for (size_t i = 0; i < grid.size(); ++i) {
    CHECK(smooth20[i] == plain20[i] / 20.0);  // exact
  }
}

TEST_CASE("fr upper bound matches the extended-precision route") {
  BoundInputs inputs = worked_instance();
  CHECK(fr_upper_bound(inputs, 10000) ==
        doctest::Approx(24454.514176608473).epsilon(1e-12));
  const double second_route = static_cast<double>(
      fr_bound_ld(100.0L, 10.0L, 10.0L, 10.0L, 10000.0L));
  CHECK(fr_upper_bound(inputs, 10000) == doctest::Approx(second_route).epsilon(1e-12));
}

TEST_CASE("ew and baseline upper bounds match the extended-precision values") {
  BoundInputs inputs = worked_instance();
  CHECK(ew_upper_bound(inputs, 10000) ==
        doctest::Approx(75011.709789179107).epsilon(1e-12));
  BaselineBounds baselines = baseline_upper_bounds(inputs, 10000);
  CHECK(baselines.ucb1 == doctest::Approx(73725.621657146426).epsilon(1e-12));
  CHECK(baselines.delayed == doctest::Approx(74725.621657146426).epsilon(1e-12));
}

TEST_CASE("delayed bound exceeds the ucb1 bound by exactly tau_max * sum of gaps") {
  BoundInputs inputs = worked_instance();
  for (int64_t T : {10, 1000, 100000}) {
    BaselineBounds baselines = baseline_upper_bounds(inputs, T);
    CHECK(baselines.delayed - baselines.ucb1 ==
          doctest::Approx(100.0 * 10.0).epsilon(1e-12));
  }
  inputs.tau_max = 1;
  BaselineBounds degenerate = baseline_upper_bounds(inputs, 1000);
  CHECK(degenerate.delayed - degenerate.ucb1 == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("ew bound at alpha=phi=tau=1 equals the ucb1 bound exactly") {
  BoundInputs inputs = worked_instance();
  inputs.alpha = 1;
  inputs.phi = 1;
  inputs.tau_max = 1;
  for (int64_t T : {2, 50, 12345}) {
    CHECK(ew_upper_bound(inputs, T) == baseline_upper_bounds(inputs, T).ucb1);
  }
}

TEST_CASE("fr bound at alpha=phi=1 collapses to the classical-MAB form") {
  // alpha = phi = tau_max = 1: C_i/2 * lnT * (1 + sqrt(1 + gap/(rbar lnT)))
  // + 2 sum rbar + (1 + pi^2/3) sum gap, written out independently.
  BoundInputs inputs = worked_instance();
  inputs.alpha = 1;
  inputs.phi = 1;
  inputs.tau_max = 1;
  for (int64_t T : {10, 1000}) {
    const double lnT = std::log(static_cast<double>(T));
    const double c_half = 4.0 * 100.0 * 100.0 / 10.0;
    const double row =
        c_half * lnT * (1.0 + std::sqrt(1.0 + 1.0 * 2.0 * 1.0 * 10.0 / (2.0 * 100.0 * lnT))) +
        2.0 * 100.0 + (1.0 + M_PI * M_PI / 3.0) * 10.0;
    CHECK(fr_upper_bound(inputs, T) == doctest::Approx(row).epsilon(1e-12));
  }
}

TEST_CASE("dominant fr term halves when alpha doubles") {
  // A tiny gap sends the inner sqrt to 1, isolating the 1/alpha prefactor;
  // the T-independent terms cancel in the difference.
  BoundInputs a = worked_instance();
  BoundInputs b = worked_instance();
  a.gaps[0] = 1e-6;
  b.gaps[0] = 1e-6;
  b.alpha = 20;
  b.phi = 5;
  const int64_t T0 = 100, T = 1000000;
  const double ratio = (fr_upper_bound(b, T) - fr_upper_bound(b, T0)) /
                       (fr_upper_bound(a, T) - fr_upper_bound(a, T0));
  CHECK(ratio == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("bound curves are non-decreasing in T") {
  BoundInputs inputs = worked_instance();
  double prev_fr = 0.0, prev_ew = 0.0, prev_u = 0.0, prev_d = 0.0;
  for (int64_t T = 3; T <= 3000; T = T * 3 / 2 + 1) {
    CHECK(fr_upper_bound(inputs, T) >= prev_fr);
    CHECK(ew_upper_bound(inputs, T) >= prev_ew);
    BaselineBounds baselines = baseline_upper_bounds(inputs, T);
    CHECK(baselines.ucb1 >= prev_u);
    CHECK(baselines.delayed >= prev_d);
    prev_fr = fr_upper_bound(inputs, T);
    prev_ew = ew_upper_bound(inputs, T);
    prev_u = baselines.ucb1;
    prev_d = baselines.delayed;
  }
}

TEST_CASE("fr bound dominates its own dominant term") {
  BoundInputs inputs = worked_instance();
  for (int64_t T : {10, 100, 100000}) {
    const double lnT = std::log(static_cast<double>(T));
    const double dominant =
        4.0 * 100.0 * 100.0 * lnT / (10.0 * 10.0) *
        (1.0 + std::sqrt(1.0 + 10.0 * 11.0 * 10.0 * 10.0 / (2.0 * 100.0 * lnT)));
    CHECK(fr_upper_bound(inputs, T) >= dominant);
  }
}

TEST_CASE("gap validation") {
  BoundInputs inputs = worked_instance();
  inputs.gaps[0] = 0.0;
  CHECK_THROWS_AS(fr_upper_bound(inputs, 100), Error);
  CHECK_THROWS_AS(ew_upper_bound(inputs, 100), Error);
  CHECK_THROWS_AS(baseline_upper_bounds(inputs, 100), Error);
  std::vector<int64_t> grid = {10};
  CHECK_THROWS_AS(lower_bound_curve(inputs, true, grid), Error);
}

TEST_CASE("beta constant and improvement thresholds") {
  BoundInputs inputs = worked_instance();
  // beta = (mu*/rmax)(1 - mu*/rmax) = 0.5 * 0.5 = 0.25.
  CHECK(beta_constant(inputs) == doctest::Approx(0.25));
  std::vector<double> thresholds = alpha_improvement_thresholds(inputs);
  REQUIRE(thresholds.size() == 1);
  CHECK(thresholds[0] == doctest::Approx(4.0 * 100.0 * 100.0 / 0.25));
}

TEST_CASE("make_bound_inputs drops zero-gap arms") {
  auto env = scenario_library("setting1");
  BoundInputs inputs = make_bound_inputs(*env);
  CHECK(inputs.gaps.size() == 9);  // arm 10 is optimal
  CHECK(inputs.mu_star == doctest::Approx(500.0));
  CHECK(inputs.rbar_max == doctest::Approx(1000.0));
  for (size_t i = 0; i < inputs.gaps.size(); ++i) {
    CHECK(inputs.gaps[i] == doctest::Approx(500.0 - 50.0 * (i + 1)));
  }
}
