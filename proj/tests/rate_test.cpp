#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <urc/rate.hpp>
#include <urc/validate.hpp>

#include "test_oracles.hpp"

using urc::BoundKind;
using urc::ModelParams;

namespace {

double rel_err(double value, double reference) {
  return std::abs(value - reference) / std::max(1e-300, std::abs(reference));
}

/// Brute-force maximization of p_1(t) ln(1+t) at alpha = 4 on the closed
/// form: coarse log scan, then a fine scan around the best coarse point.
struct ScanResult {
  double t;
  double rate;
};
ScanResult scan_optimum_alpha4() {
  auto objective = [](double t) { return oracle::p1_alpha4(t) * std::log1p(t); };
  const double lo = std::log(1e-6);
  const double hi = std::log(1e4);
  const int coarse = 100000;
  int best = 0;
  double best_value = -1.0;
  for (int i = 0; i <= coarse; ++i) {
    const double value = objective(std::exp(lo + (hi - lo) * i / coarse));
    if (value > best_value) {
      best_value = value;
      best = i;
    }
  }
  const double step = (hi - lo) / coarse;
  const double center = lo + step * best;
  ScanResult result{0.0, -1.0};
  for (int j = -2000; j <= 2000; ++j) {
    const double t = std::exp(center + step * j / 2000.0);
    const double value = objective(t);
    if (value > result.rate) result = {t, value};
  }
  return result;
}

}  // namespace

TEST_CASE("closed-form rate expressions at reference points", "[rate]") {
  const ModelParams params(4.0, 1);
  CHECK(urc::rate_bound(params, 0.9, BoundKind::kLbC) ==
        Catch::Approx(0.0948245).margin(1e-6));
  CHECK(urc::rate_bound(params, 0.9, BoundKind::kUbC) ==
        Catch::Approx(0.0998097).margin(1e-6));
  CHECK(urc::rate_bound(params, 0.9, BoundKind::kLbB) ==
        Catch::Approx(0.1).epsilon(1e-14));  // (4-2)(1-0.9)/2

  // the Pfaff rate at n = 1, alpha = 4, eta = 0.5 in explicit closed form
  const double lb_plus = 0.5 * std::log1p(4.0 / (oracle::kPi * oracle::kPi) * 3.0);
  CHECK(urc::rate_bound(params, 0.5, BoundKind::kLbPlus) ==
        Catch::Approx(lb_plus).epsilon(1e-14));

  CHECK_THROWS_AS(urc::rate_bound(params, 0.9, BoundKind::kExact), std::invalid_argument);
  CHECK_THROWS_AS(urc::rate_bound(params, 0.9, BoundKind::kLbA), std::invalid_argument);
  CHECK_THROWS_AS(urc::rate_bound(params, 1.0, BoundKind::kLbC), std::domain_error);
  CHECK_THROWS_AS(urc::rate_bound(params, 0.0, BoundKind::kLbC), std::domain_error);
}

TEST_CASE("LbX and LbC rates coincide at n = 1", "[rate]") {
  const ModelParams params(3.0, 1);
  for (double eta : {0.35, 0.6, 0.9, 0.99})
    CHECK(rel_err(urc::rate_bound(params, eta, BoundKind::kLbX),
                  urc::rate_bound(params, eta, BoundKind::kLbC)) <= 1e-13);
}

TEST_CASE("exact rate solution in the binding regime", "[rate]") {
  const ModelParams params(4.0, 1);
  const double eta = 0.5600991535115573759105;  // = p_1(1), so t_hat = 1
  const urc::RateSolution solution = urc::rate_max_exact(params, eta);
  CHECK(solution.binding);
  CHECK(solution.kind == BoundKind::kExact);
  CHECK(solution.eta == eta);
  CHECK(std::abs(solution.t_hat - 1.0) < 1e-6);
  CHECK(solution.rate_nats == Catch::Approx(eta * std::log(2.0)).epsilon(1e-6));

  // rate collapses as eta -> 1
  const urc::RateSolution strict = urc::rate_max_exact(params, 1.0 - 1e-9);
  CHECK(strict.binding);
  CHECK(strict.rate_nats > 0.0);
  CHECK(strict.rate_nats < 1e-8);

  // bracket at a less extreme level
  const ModelParams p34(4.0, 3);
  const urc::RateSolution mid = urc::rate_max_exact(p34, 0.9);
  CHECK(urc::rate_bound(p34, 0.9, BoundKind::kLbC) < mid.rate_nats);
  CHECK(mid.rate_nats < urc::rate_bound(p34, 0.9, BoundKind::kUbC));
}

TEST_CASE("unconstrained optimum against a closed-form scan", "[rate]") {
  const ModelParams params(4.0, 1);
  const urc::UnconstrainedOptimum optimum = urc::unconstrained_optimum(params);
  const ScanResult scan = scan_optimum_alpha4();
  CHECK(std::abs(std::log(optimum.t) - std::log(scan.t)) < 1e-4);
  CHECK(rel_err(optimum.rate_nats, scan.rate) < 1e-6);
  CHECK(optimum.t == Catch::Approx(oracle::kOptT14).margin(1e-5));
  CHECK(optimum.rate_nats == Catch::Approx(oracle::kOptRate14).margin(1e-6));

  // local optimality of the reported point
  auto objective = [&](double t) {
    return urc::coverage_exact(params, t) * std::log1p(t);
  };
  CHECK(optimum.rate_nats >= objective(optimum.t * 1.001) - 1e-12);
  CHECK(optimum.rate_nats >= objective(optimum.t * 0.999) - 1e-12);
}

TEST_CASE("binding switches at the unconstrained coverage level", "[rate]") {
  const ModelParams params(4.0, 1);
  // p_1 at the unconstrained peak is ~0.2890595
  CHECK(urc::check_binding(params, 0.29));
  CHECK_FALSE(urc::check_binding(params, 0.288));
  CHECK(urc::check_binding(params, 0.9));
  CHECK_FALSE(urc::check_binding(params, 1e-4));

  const urc::RateSolution loose = urc::rate_max_exact(params, 1e-4);
  const urc::UnconstrainedOptimum peak = urc::unconstrained_optimum(params);
  CHECK_FALSE(loose.binding);
  CHECK(loose.t_hat == peak.t);
  CHECK(loose.rate_nats == peak.rate_nats);
  CHECK(loose.rate_nats == Catch::Approx(peak.rate_nats).epsilon(1e-12));

  CHECK_THROWS_AS(urc::check_binding(params, 0.0), std::domain_error);
  CHECK_THROWS_AS(urc::check_binding(params, 1.0), std::domain_error);
}

TEST_CASE("full-CSI average rate", "[rate]") {
  for (const auto& ref : oracle::kFullCsi) {
    INFO("alpha = " << ref.alpha);
    const urc::FullCsiRate rate = urc::fullcsi_average_rate(ref.alpha);
    CHECK(std::abs(rate.exact - ref.value) < 1e-5);
    CHECK(rate.lower < rate.exact);
    CHECK(rate.exact < rate.upper);
    CHECK(rate.lower == (ref.alpha - 2.0) / 2.0);
    CHECK(rate.upper == ref.alpha / 2.0);
    CHECK(rate.approx == (ref.alpha - 1.0) / 2.0);
  }

  // dual route at alpha = 4: adaptive Simpson on the closed form
  auto integrand = [](double x) { return oracle::p1_alpha4(std::expm1(x)); };
  const double simpson = oracle::simpson(integrand, 0.0, 60.0, 1e-9);
  CHECK(std::abs(urc::fullcsi_average_rate(4.0).exact - simpson) < 1e-5);

  CHECK(urc::fullcsi_average_rate(2.01).lower == Catch::Approx(0.005).epsilon(1e-12));
  CHECK_THROWS_AS(urc::fullcsi_average_rate(2.0), std::domain_error);
  CHECK_THROWS_AS(urc::fullcsi_average_rate(1.0), std::domain_error);
}

TEST_CASE("rate validation suite is green", "[rate][suite]") {
  for (const auto& result : urc::validate::suite_rate()) {
    INFO(result.name << ": " << result.detail);
    CHECK(result.passed);
  }
}
