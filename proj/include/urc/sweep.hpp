#pragma once

#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "urc/coverage.hpp"
#include "urc/rate.hpp"
#include "urc/sim.hpp"

namespace urc {

enum class SweepAxis { kThreshold, kReliability };
enum class SweepSpacing { kLinear, kLog, kLogitComplement };
enum class RateUnit { kNats, kBits };

inline const char* spacing_token(SweepSpacing spacing) {
  switch (spacing) {
    case SweepSpacing::kLinear: return "linear";
    case SweepSpacing::kLog: return "log";
    case SweepSpacing::kLogitComplement: return "logit-complement";
  }
  return "?";
}

inline std::optional<SweepSpacing> parse_spacing(std::string_view token) {
  if (token == "linear") return SweepSpacing::kLinear;
  if (token == "log") return SweepSpacing::kLog;
  if (token == "logit-complement") return SweepSpacing::kLogitComplement;
  return std::nullopt;
}

inline const char* mobility_mode_token(MobilityMode mode) {
  return mode == MobilityMode::kStatic ? "static" : "iid";
}

inline std::optional<MobilityMode> parse_mobility_mode(std::string_view token) {
  if (token == "static") return MobilityMode::kStatic;
  if (token == "iid") return MobilityMode::kIid;
  return std::nullopt;
}

inline const char* rate_unit_token(RateUnit unit) {
  return unit == RateUnit::kNats ? "nats" : "bits";
}

inline std::optional<RateUnit> parse_rate_unit(std::string_view token) {
  if (token == "nats") return RateUnit::kNats;
  if (token == "bits") return RateUnit::kBits;
  return std::nullopt;
}

/// Grid description shared by the sweep commands. The axis is either the
/// SIR threshold t or the reliability level eta; logit-complement spacing
/// places points log-uniformly in 1 - eta, resolving the eta -> 1 regime.
struct SweepSpec {
  ModelParams params;
  SweepAxis axis = SweepAxis::kThreshold;
  double axis_min = 0.01;
  double axis_max = 100.0;
  int points = 200;
  SweepSpacing spacing = SweepSpacing::kLog;
  std::vector<BoundKind> kinds{std::begin(kAllBoundKinds), std::end(kAllBoundKinds)};
  RateUnit unit = RateUnit::kNats;

  void validate() const {
    if (!std::isfinite(axis_min) || !std::isfinite(axis_max) || !(axis_min < axis_max))
      throw std::invalid_argument("SweepSpec: need finite axis_min < axis_max");
    if (points < 2) throw std::invalid_argument("SweepSpec: points must be >= 2");
    if (axis == SweepAxis::kThreshold) {
      if (axis_min < 0.0) throw std::invalid_argument("SweepSpec: thresholds must be >= 0");
      if (spacing == SweepSpacing::kLog && !(axis_min > 0.0))
        throw std::invalid_argument("SweepSpec: log spacing needs axis_min > 0");
      if (spacing == SweepSpacing::kLogitComplement)
        throw std::invalid_argument("SweepSpec: logit-complement spacing is for reliability axes");
    } else {
      if (!(axis_min > 0.0) || !(axis_max < 1.0))
        throw std::invalid_argument("SweepSpec: reliability axis must lie inside (0, 1)");
    }
  }
};

/// The grid points, ascending, endpoints included.
inline std::vector<double> sweep_axis_values(const SweepSpec& spec) {
  spec.validate();
  std::vector<double> values(static_cast<std::size_t>(spec.points));
  const double steps = spec.points - 1.0;
  for (int i = 0; i < spec.points; ++i) {
    const double frac = i / steps;
    switch (spec.spacing) {
      case SweepSpacing::kLinear:
        values[i] = spec.axis_min + frac * (spec.axis_max - spec.axis_min);
        break;
      case SweepSpacing::kLog:
        values[i] = std::exp(std::log(spec.axis_min) +
                             frac * (std::log(spec.axis_max) - std::log(spec.axis_min)));
        break;
      case SweepSpacing::kLogitComplement:
        values[i] = 1.0 - std::exp(std::log1p(-spec.axis_min) +
                                   frac * (std::log1p(-spec.axis_max) - std::log1p(-spec.axis_min)));
        break;
    }
  }
  values.front() = spec.axis_min;
  values.back() = spec.axis_max;
  return values;
}

/// Shortest-exact decimal rendering (17 significant digits): parsing the
/// field back with strtod recovers the identical double. Locale-free.
inline std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto result =
      std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::general, 17);
  return std::string(buffer, result.ptr);
}

namespace detail {

inline void append_row_end(std::string& out) { out.push_back('\n'); }

inline void append_field(std::string& out, std::string_view field, bool first = false) {
  if (!first) out.push_back(',');
  out.append(field);
}

inline std::string kinds_csv(const std::vector<BoundKind>& kinds) {
  std::string out;
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    if (i) out.push_back(',');
    out.append(bound_kind_token(kinds[i]));
  }
  return out;
}

inline void append_header_line(std::string& out, std::string_view key, std::string_view value) {
  out.append("# ");
  out.append(key);
  out.push_back('=');
  out.append(value);
  out.push_back('\n');
}

inline void append_model_header(std::string& out, const ModelParams& params) {
  append_header_line(out, "alpha", format_number(params.alpha));
  append_header_line(out, "n", std::to_string(params.n));
}

}  // namespace detail

/// Coverage curves on the threshold grid. Columns: t, t in dB, the exact
/// probability, then one column per requested bound kind (exact itself is
/// skipped there; it already has its column). UbB has no value at t = 0
/// and is rendered as inf, matching its divergence.
inline std::string coverage_sweep_csv(const SweepSpec& spec) {
  spec.validate();
  if (spec.axis != SweepAxis::kThreshold)
    throw std::invalid_argument("coverage_sweep_csv: needs a threshold axis");
  std::vector<BoundKind> extra;
  for (BoundKind kind : spec.kinds)
    if (kind != BoundKind::kExact) extra.push_back(kind);

  std::string out;
  detail::append_header_line(out, "command", "coverage-sweep");
  detail::append_model_header(out, spec.params);
  detail::append_header_line(out, "t_min", format_number(spec.axis_min));
  detail::append_header_line(out, "t_max", format_number(spec.axis_max));
  detail::append_header_line(out, "points", std::to_string(spec.points));
  detail::append_header_line(out, "spacing", spacing_token(spec.spacing));
  detail::append_header_line(out, "kinds", detail::kinds_csv(spec.kinds));

  detail::append_field(out, "t", true);
  detail::append_field(out, "t_db");
  detail::append_field(out, "exact");
  for (BoundKind kind : extra) detail::append_field(out, bound_kind_token(kind));
  detail::append_row_end(out);

  for (double t : sweep_axis_values(spec)) {
    detail::append_field(out, format_number(t), true);
    detail::append_field(out, format_number(10.0 * std::log10(t)));
    detail::append_field(out, format_number(coverage_exact(spec.params, t)));
    for (BoundKind kind : extra) {
      const double value = (kind == BoundKind::kUbB && t == 0.0)
                               ? std::numeric_limits<double>::infinity()
                               : coverage_bound(spec.params, t, kind);
      detail::append_field(out, format_number(value));
    }
    detail::append_row_end(out);
  }
  return out;
}

/// Constrained rate curves on the reliability grid. Columns: eta, the exact
/// optimum, its binding flag, then the five closed-form rate expressions.
/// Rates are emitted in the requested unit (nats or bits).
inline std::string rate_sweep_csv(const SweepSpec& spec) {
  spec.validate();
  if (spec.axis != SweepAxis::kReliability)
    throw std::invalid_argument("rate_sweep_csv: needs a reliability axis");
  constexpr BoundKind kRateKinds[] = {BoundKind::kLbB, BoundKind::kLbC, BoundKind::kUbC,
                                      BoundKind::kLbX, BoundKind::kLbPlus};
  const double unit_scale = spec.unit == RateUnit::kBits ? 1.4426950408889634074 : 1.0;

  std::string out;
  detail::append_header_line(out, "command", "rate-sweep");
  detail::append_model_header(out, spec.params);
  detail::append_header_line(out, "eta_min", format_number(spec.axis_min));
  detail::append_header_line(out, "eta_max", format_number(spec.axis_max));
  detail::append_header_line(out, "points", std::to_string(spec.points));
  detail::append_header_line(out, "spacing", spacing_token(spec.spacing));
  detail::append_header_line(out, "unit", rate_unit_token(spec.unit));

  detail::append_field(out, "eta", true);
  detail::append_field(out, "exact");
  detail::append_field(out, "binding");
  for (BoundKind kind : kRateKinds) detail::append_field(out, bound_kind_token(kind));
  detail::append_row_end(out);

  for (double eta : sweep_axis_values(spec)) {
    const RateSolution solution = rate_max_exact(spec.params, eta);
    detail::append_field(out, format_number(eta), true);
    detail::append_field(out, format_number(solution.rate_nats * unit_scale));
    detail::append_field(out, solution.binding ? "1" : "0");
    for (BoundKind kind : kRateKinds)
      detail::append_field(out, format_number(rate_bound(spec.params, eta, kind) * unit_scale));
    detail::append_row_end(out);
  }
  return out;
}

/// Monte Carlo estimates next to the analytic curve. The thread count is
/// deliberately absent from the header: output bytes depend only on the
/// config, never on the parallelism that produced them.
inline std::string simulate_csv(const SimConfig& config, int threads = 0) {
  config.validate();
  const SimResult result = run_simulation(config, threads);

  std::string out;
  detail::append_header_line(out, "command", "simulate");
  detail::append_model_header(out, config.params);
  detail::append_header_line(out, "mode", mobility_mode_token(config.mode));
  detail::append_header_line(out, "trials", std::to_string(config.trials));
  detail::append_header_line(out, "seed", std::to_string(config.seed));
  detail::append_header_line(out, "bs_density", format_number(config.bs_density));
  detail::append_header_line(out, "region_radius", format_number(config.region_radius));
  {
    std::string list;
    for (std::size_t i = 0; i < config.thresholds.size(); ++i) {
      if (i) list.push_back(',');
      list.append(format_number(config.thresholds[i]));
    }
    detail::append_header_line(out, "thresholds", list);
  }
  detail::append_header_line(out, "degenerate_resamples",
                             std::to_string(result.degenerate_resamples));

  detail::append_field(out, "threshold", true);
  detail::append_field(out, "mode");
  detail::append_field(out, "joint");
  detail::append_field(out, "std_error");
  detail::append_field(out, "marginal");
  detail::append_field(out, "analytic_exact");
  detail::append_field(out, "z_score");
  detail::append_row_end(out);

  for (const SimEstimate& estimate : result.estimates) {
    const double analytic = coverage_exact(config.params, estimate.threshold);
    const double gap = estimate.joint_coverage - analytic;
    const double z = estimate.std_error > 0.0
                         ? gap / estimate.std_error
                         : (gap == 0.0 ? 0.0 : std::copysign(
                                                   std::numeric_limits<double>::infinity(), gap));
    detail::append_field(out, format_number(estimate.threshold), true);
    detail::append_field(out, mobility_mode_token(config.mode));
    detail::append_field(out, format_number(estimate.joint_coverage));
    detail::append_field(out, format_number(estimate.std_error));
    detail::append_field(out, format_number(estimate.marginal_coverage));
    detail::append_field(out, format_number(analytic));
    detail::append_field(out, format_number(z));
    detail::append_row_end(out);
  }
  return out;
}

}  // namespace urc
