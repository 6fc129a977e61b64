#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <urc/specfun.hpp>
#include <urc/validate.hpp>

#include "test_oracles.hpp"

using urc::ConvergenceError;
using urc::EvalConfig;
using urc::ModelParams;

namespace {
double rel_err(double value, double reference) {
  return std::abs(value - reference) / std::max(1e-300, std::abs(reference));
}
}  // namespace

TEST_CASE("ln_gamma matches high-precision references", "[specfun]") {
  for (const auto& ref : oracle::kLnGamma) {
    INFO("x = " << ref.x);
    CHECK(std::abs(urc::ln_gamma(ref.x) - ref.value) <=
          1e-13 * std::max(1.0, std::abs(ref.value)));
  }
  CHECK(urc::ln_gamma(0.5) == Catch::Approx(std::log(std::sqrt(oracle::kPi))).epsilon(1e-14));
  CHECK(urc::ln_gamma(5.0) == Catch::Approx(std::log(24.0)).epsilon(1e-14));
  CHECK(urc::ln_gamma(1.0) == Catch::Approx(0.0).margin(1e-14));
  CHECK(urc::ln_gamma(2.0) == Catch::Approx(0.0).margin(1e-14));
}

TEST_CASE("ln_gamma rejects arguments outside its domain", "[specfun]") {
  CHECK_THROWS_AS(urc::ln_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(urc::ln_gamma(-3.5), std::domain_error);
  CHECK_THROWS_AS(urc::ln_gamma(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
  CHECK_THROWS_AS(urc::ln_gamma(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("coverage constant matches references and limits", "[specfun]") {
  for (const auto& ref : oracle::kCoverageConstant) {
    INFO("n = " << ref.n << ", alpha = " << ref.alpha);
    CHECK(rel_err(urc::coverage_constant(ModelParams(ref.alpha, ref.n)), ref.value) <= 1e-13);
  }
  CHECK(urc::coverage_constant(ModelParams(4.0, 1)) ==
        Catch::Approx(oracle::kPi / 2.0).epsilon(1e-14));
  CHECK(urc::coverage_constant(ModelParams(4.0, 2)) ==
        Catch::Approx(3.0 * oracle::kPi / 4.0).epsilon(1e-14));
  // c_n -> 1 as alpha grows without bound
  CHECK(std::abs(urc::coverage_constant(ModelParams(1e6, 5)) - 1.0) < 1e-4);
}

TEST_CASE("model parameter validation", "[specfun]") {
  CHECK_THROWS_AS(ModelParams(2.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams(1.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams(std::numeric_limits<double>::infinity(), 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(ModelParams(4.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams(4.0, -2), std::invalid_argument);
  CHECK_NOTHROW(ModelParams(2.0000001, 1));

  CHECK_THROWS_AS(EvalConfig(0.0, 1000), std::invalid_argument);
  CHECK_THROWS_AS(EvalConfig(1e-2, 1000), std::invalid_argument);
  CHECK_THROWS_AS(EvalConfig(1e-12, 50), std::invalid_argument);
  CHECK_NOTHROW(EvalConfig());
  CHECK_NOTHROW(EvalConfig(1e-10, 100));
}

TEST_CASE("series denominator matches high-precision references", "[specfun]") {
  for (const auto& ref : oracle::kDenominator) {
    INFO("n = " << ref.n << ", alpha = " << ref.alpha << ", t = " << ref.t);
    const double value = urc::hyp2f1_coverage_denominator(ModelParams(ref.alpha, ref.n), ref.t);
    CHECK(rel_err(value, ref.value) <= ref.rel_tol);
  }
}

TEST_CASE("series special values and asymptote", "[specfun]") {
  CHECK(urc::hyp2f1_coverage_denominator(ModelParams(3.1, 7), 0.0) == 1.0);
  CHECK(urc::pfaff_series_factor(ModelParams(5.0, 4), 0.0) == 1.0);

  // F(1, -1/2; 1/2; -1) = 1 + pi/4 at alpha = 4
  CHECK(urc::hyp2f1_coverage_denominator(ModelParams(4.0, 1), 1.0) ==
        Catch::Approx(1.0 + oracle::kPi / 4.0).epsilon(1e-12));

  // large-t asymptote: F ~ c_n t^{2/alpha}
  const ModelParams params(4.0, 2);
  const double asymptote = urc::coverage_constant(params) * std::sqrt(1e4);
  CHECK(std::abs(urc::hyp2f1_coverage_denominator(params, 1e4) / asymptote - 1.0) < 0.02);
}

TEST_CASE("series factor stays within [1, c_n]", "[specfun]") {
  for (double t : {1e-4, 1e-2, 1.0, 1e2, 1e4}) {
    const ModelParams params(3.0, 3);
    const double g = urc::pfaff_series_factor(params, t);
    CHECK(g >= 1.0);
    CHECK(g <= urc::coverage_constant(params) * (1.0 + 1e-9));
  }
}

TEST_CASE("series rejects bad inputs and exhausted budgets", "[specfun]") {
  const ModelParams params(4.0, 1);
  CHECK_THROWS_AS(urc::pfaff_series_factor(params, -0.5), std::domain_error);
  CHECK_THROWS_AS(urc::pfaff_series_factor(params, std::numeric_limits<double>::infinity()),
                  std::domain_error);
  CHECK_THROWS_AS(urc::pfaff_series_factor(params, std::numeric_limits<double>::quiet_NaN()),
                  std::domain_error);
  // far past the default budget's reach
  CHECK_THROWS_AS(urc::pfaff_series_factor(params, 1e6), ConvergenceError);
  // a hobbled budget fails even at moderate t
  CHECK_THROWS_AS(urc::pfaff_series_factor(params, 50.0, EvalConfig(1e-12, 100)),
                  ConvergenceError);
  // a wider budget handles what the default cannot
  CHECK_NOTHROW(urc::pfaff_series_factor(params, 1e6, EvalConfig(1e-8, 1000000)));
}

TEST_CASE("tighter tolerances change the result within the coarser tolerance", "[specfun]") {
  const ModelParams params(2.5, 2);
  const double coarse = urc::pfaff_series_factor(params, 3.0, EvalConfig(1e-6, 100000));
  const double fine = urc::pfaff_series_factor(params, 3.0, EvalConfig(1e-13, 100000));
  CHECK(std::abs(coarse - fine) <= 1e-6 * fine);
}

TEST_CASE("specfun validation suite is green", "[specfun][suite]") {
  for (const auto& result : urc::validate::suite_specfun()) {
    INFO(result.name << ": " << result.detail);
    CHECK(result.passed);
  }
}
