#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <urc/sweep.hpp>

#include "test_oracles.hpp"

using urc::ModelParams;
using urc::SweepAxis;
using urc::SweepSpacing;
using urc::SweepSpec;

namespace {

struct Csv {
  std::vector<std::string> header_lines;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

Csv parse_csv(const std::string& text) {
  Csv csv;
  std::istringstream stream(text);
  std::string line;
  bool seen_columns = false;
  while (std::getline(stream, line)) {
    if (line.rfind("# ", 0) == 0) {
      csv.header_lines.push_back(line);
    } else if (!seen_columns) {
      csv.columns = split_fields(line);
      seen_columns = true;
    } else {
      csv.rows.push_back(split_fields(line));
    }
  }
  return csv;
}

double field_value(const Csv& csv, std::size_t row, const std::string& column) {
  for (std::size_t i = 0; i < csv.columns.size(); ++i)
    if (csv.columns[i] == column) return std::strtod(csv.rows[row][i].c_str(), nullptr);
  FAIL("no column named " << column);
  return 0.0;
}

}  // namespace

TEST_CASE("format_number round-trips doubles exactly", "[sweep]") {
  const double cases[] = {0.0,
                          1.0,
                          -1.0,
                          0.1,
                          1.0 / 3.0,
                          3.141592653589793,
                          1e-300,
                          -2.5e17,
                          6.02214076e23,
                          std::numeric_limits<double>::denorm_min(),
                          std::numeric_limits<double>::max()};
  for (double value : cases) {
    const std::string text = urc::format_number(value);
    CHECK(std::strtod(text.c_str(), nullptr) == value);
  }
  CHECK(urc::format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(urc::format_number(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(urc::format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("token parsers round-trip and reject junk", "[sweep]") {
  for (auto spacing :
       {SweepSpacing::kLinear, SweepSpacing::kLog, SweepSpacing::kLogitComplement})
    CHECK(urc::parse_spacing(urc::spacing_token(spacing)) == spacing);
  CHECK_FALSE(urc::parse_spacing("cubic").has_value());

  for (auto mode : {urc::MobilityMode::kStatic, urc::MobilityMode::kIid})
    CHECK(urc::parse_mobility_mode(urc::mobility_mode_token(mode)) == mode);
  CHECK_FALSE(urc::parse_mobility_mode("warp").has_value());

  for (auto unit : {urc::RateUnit::kNats, urc::RateUnit::kBits})
    CHECK(urc::parse_rate_unit(urc::rate_unit_token(unit)) == unit);
  CHECK_FALSE(urc::parse_rate_unit("baud").has_value());
}

TEST_CASE("axis generation pins endpoints and respects spacing", "[sweep]") {
  SweepSpec spec{ModelParams(4.0, 1)};
  spec.axis_min = 0.5;
  spec.axis_max = 32.0;
  spec.points = 7;
  spec.spacing = SweepSpacing::kLog;
  std::vector<double> log_values = urc::sweep_axis_values(spec);
  REQUIRE(log_values.size() == 7);
  CHECK(log_values.front() == 0.5);
  CHECK(log_values.back() == 32.0);
  for (std::size_t i = 1; i < log_values.size(); ++i) {
    CHECK(log_values[i] > log_values[i - 1]);
    // constant ratio of 2 between consecutive points on this grid
    CHECK(log_values[i] / log_values[i - 1] == Catch::Approx(2.0).epsilon(1e-12));
  }

  spec.spacing = SweepSpacing::kLinear;
  spec.axis_min = 0.0;
  spec.axis_max = 3.0;
  spec.points = 4;
  std::vector<double> linear_values = urc::sweep_axis_values(spec);
  REQUIRE(linear_values.size() == 4);
  CHECK(linear_values[0] == 0.0);
  CHECK(linear_values[1] == Catch::Approx(1.0).margin(1e-15));
  CHECK(linear_values[2] == Catch::Approx(2.0).margin(1e-15));
  CHECK(linear_values[3] == 3.0);

  SweepSpec logit{ModelParams(4.0, 1)};
  logit.axis = SweepAxis::kReliability;
  logit.axis_min = 0.9;
  logit.axis_max = 0.99999;
  logit.points = 5;
  logit.spacing = SweepSpacing::kLogitComplement;
  std::vector<double> eta = urc::sweep_axis_values(logit);
  REQUIRE(eta.size() == 5);
  CHECK(eta.front() == 0.9);
  CHECK(eta.back() == 0.99999);
  for (std::size_t i = 1; i < eta.size(); ++i) {
    CHECK(eta[i] > eta[i - 1]);
    // 1 - eta shrinks by a constant factor of 10 per step on this grid
    CHECK((1.0 - eta[i - 1]) / (1.0 - eta[i]) == Catch::Approx(10.0).epsilon(1e-9));
  }
}

TEST_CASE("sweep specs reject malformed grids", "[sweep]") {
  SweepSpec spec{ModelParams(4.0, 1)};
  spec.points = 1;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);

  spec = SweepSpec{ModelParams(4.0, 1)};
  spec.axis_min = 2.0;
  spec.axis_max = 2.0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);

  spec = SweepSpec{ModelParams(4.0, 1)};
  spec.axis_min = 0.0;
  spec.spacing = SweepSpacing::kLog;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);

  spec = SweepSpec{ModelParams(4.0, 1)};
  spec.axis_min = -0.5;
  spec.spacing = SweepSpacing::kLinear;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);

  spec = SweepSpec{ModelParams(4.0, 1)};
  spec.spacing = SweepSpacing::kLogitComplement;  // threshold axis
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);

  spec = SweepSpec{ModelParams(4.0, 1)};
  spec.axis = SweepAxis::kReliability;
  spec.axis_min = 0.2;
  spec.axis_max = 1.0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);

  // axis mismatch: each CSV writer accepts only its own axis
  spec = SweepSpec{ModelParams(4.0, 1)};
  spec.axis = SweepAxis::kReliability;
  spec.axis_min = 0.2;
  spec.axis_max = 0.8;
  CHECK_THROWS_AS(urc::coverage_sweep_csv(spec), std::invalid_argument);
  spec = SweepSpec{ModelParams(4.0, 1)};
  CHECK_THROWS_AS(urc::rate_sweep_csv(spec), std::invalid_argument);
}

TEST_CASE("coverage CSV layout and values", "[sweep]") {
  SweepSpec spec{ModelParams(4.0, 2)};
  spec.axis_min = 0.0;
  spec.axis_max = 10.0;
  spec.points = 6;
  spec.spacing = SweepSpacing::kLinear;
  const Csv csv = parse_csv(urc::coverage_sweep_csv(spec));

  REQUIRE(csv.columns.size() == 3 + 8);  // t, t_db, exact + all kinds minus exact
  CHECK(csv.columns[0] == "t");
  CHECK(csv.columns[1] == "t_db");
  CHECK(csv.columns[2] == "exact");
  REQUIRE(csv.rows.size() == 6);
  bool saw_alpha = false, saw_kinds = false;
  for (const std::string& line : csv.header_lines) {
    saw_alpha = saw_alpha || line == "# alpha=4";
    saw_kinds = saw_kinds || line.rfind("# kinds=", 0) == 0;
  }
  CHECK(saw_alpha);
  CHECK(saw_kinds);

  // row 0 is t = 0: exact 1, ub_b rendered inf, t_db -inf
  CHECK(csv.rows[0][0] == "0");
  CHECK(csv.rows[0][1] == "-inf");
  CHECK(field_value(csv, 0, "exact") == 1.0);
  bool found_ub_b = false;
  for (std::size_t i = 0; i < csv.columns.size(); ++i)
    if (csv.columns[i] == "ub_b") {
      found_ub_b = true;
      CHECK(csv.rows[0][i] == "inf");
    }
  CHECK(found_ub_b);

  for (std::size_t row = 1; row < csv.rows.size(); ++row) {
    const double t = field_value(csv, row, "t");
    CHECK(field_value(csv, row, "t_db") == Catch::Approx(10.0 * std::log10(t)).margin(1e-12));
    CHECK(field_value(csv, row, "exact") ==
          urc::coverage_exact(spec.params, t));  // byte-identical round trip
    CHECK(field_value(csv, row, "lb_c") == urc::coverage_bound(spec.params, t, urc::BoundKind::kLbC));
    CHECK(field_value(csv, row, "ub_a") == urc::coverage_bound(spec.params, t, urc::BoundKind::kUbA));
  }
}

TEST_CASE("coverage CSV honors a kind subset", "[sweep]") {
  SweepSpec spec{ModelParams(3.0, 1)};
  spec.axis_min = 0.1;
  spec.axis_max = 1.0;
  spec.points = 3;
  spec.kinds = {urc::BoundKind::kExact, urc::BoundKind::kLbC, urc::BoundKind::kUbC};
  const Csv csv = parse_csv(urc::coverage_sweep_csv(spec));
  REQUIRE(csv.columns.size() == 5);
  CHECK(csv.columns[3] == "lb_c");
  CHECK(csv.columns[4] == "ub_c");
}

TEST_CASE("rate CSV layout, binding flag, and units", "[sweep]") {
  SweepSpec spec{ModelParams(4.0, 1)};
  spec.axis = SweepAxis::kReliability;
  spec.axis_min = 0.1;
  spec.axis_max = 0.9;
  spec.points = 5;
  spec.spacing = SweepSpacing::kLinear;
  const Csv nats = parse_csv(urc::rate_sweep_csv(spec));
  REQUIRE(nats.columns.size() == 8);
  CHECK(nats.columns[0] == "eta");
  CHECK(nats.columns[1] == "exact");
  CHECK(nats.columns[2] == "binding");
  REQUIRE(nats.rows.size() == 5);

  // below the unconstrained coverage ~0.289 the constraint is slack
  for (std::size_t row = 0; row < nats.rows.size(); ++row) {
    const double eta = field_value(nats, row, "eta");
    const std::string& flag = nats.rows[row][2];
    CHECK((flag == "0" || flag == "1"));
    CHECK(flag == (eta < oracle::kOptCoverage14 ? "0" : "1"));
    const double exact = field_value(nats, row, "exact");
    if (flag == "1") {
      CHECK(field_value(nats, row, "lb_c") <= exact + 1e-12);
      CHECK(field_value(nats, row, "ub_c") >= exact - 1e-12);
    } else {
      CHECK(exact == Catch::Approx(oracle::kOptRate14).epsilon(1e-5));
    }
  }

  spec.unit = urc::RateUnit::kBits;
  const Csv bits = parse_csv(urc::rate_sweep_csv(spec));
  bool saw_unit = false;
  for (const std::string& line : bits.header_lines) saw_unit = saw_unit || line == "# unit=bits";
  CHECK(saw_unit);
  for (std::size_t row = 0; row < bits.rows.size(); ++row) {
    CHECK(field_value(bits, row, "exact") ==
          Catch::Approx(field_value(nats, row, "exact") * 1.4426950408889634).epsilon(1e-14));
    CHECK(bits.rows[row][2] == nats.rows[row][2]);
  }
}

TEST_CASE("simulate CSV is byte-stable across thread counts", "[sweep]") {
  urc::SimConfig config{ModelParams(4.0, 2), {0.5, 2.0}};
  config.region_radius = 12.0;
  config.trials = 800;
  config.seed = 321;
  const std::string one = urc::simulate_csv(config, 1);
  const std::string four = urc::simulate_csv(config, 4);
  CHECK(one == four);

  const Csv csv = parse_csv(one);
  REQUIRE(csv.columns.size() == 7);
  REQUIRE(csv.rows.size() == 2);
  bool saw_resamples = false;
  for (const std::string& line : csv.header_lines)
    saw_resamples = saw_resamples || line.rfind("# degenerate_resamples=", 0) == 0;
  CHECK(saw_resamples);
  for (std::size_t row = 0; row < csv.rows.size(); ++row) {
    CHECK(csv.rows[row][1] == "static");
    const double joint = field_value(csv, row, "joint");
    const double analytic = field_value(csv, row, "analytic_exact");
    const double se = field_value(csv, row, "std_error");
    const double z = field_value(csv, row, "z_score");
    CHECK(analytic ==
          urc::coverage_exact(config.params, field_value(csv, row, "threshold")));
    CHECK(z == Catch::Approx((joint - analytic) / se).margin(1e-9));
  }
}
