#include "bowtie/reliability.hpp"

#include <algorithm>
#include <cmath>

namespace bowtie {

namespace {

// Time since the last reset for a sawtooth of the given period.
// Right side: tau = 0 exactly at a reset (the element was just repaired).
// Left side: tau = period at a reset (limit from below).
double time_since_reset(double t, double period, Side side) {
  double tau = t - period * std::floor(t / period);
  if (side == Side::left && tau == 0.0 && t > 0.0) {
    tau = period;
  }
  return tau;
}

}  // namespace

CompensatedSum& CompensatedSum::operator+=(double term) {
  const double next = sum_ + term;
  if (std::abs(sum_) >= std::abs(term)) {
    compensation_ += (sum_ - next) + term;
  } else {
    compensation_ += (term - next) + sum_;
  }
  sum_ = next;
  return *this;
}

void ComponentReliability::validate() const {
  if (id.empty()) throw ModelError("component id must not be empty");
  if (!(lambda_total > 0.0))
    throw ModelError("component '" + id + "': lambda_total must be > 0");
  if (!(sff >= 0.0 && sff < 1.0))
    throw ModelError("component '" + id + "': sff must be in [0,1)");
  if (!(t1_hours > 0.0))
    throw ModelError("component '" + id + "': t1_hours must be > 0");
  if (partial_test) {
    if (!(partial_test->t2_hours > 0.0 && partial_test->t2_hours < t1_hours))
      throw ModelError("component '" + id + "': t2_hours must satisfy 0 < t2 < t1");
    if (!(partial_test->ptc > 0.0 && partial_test->ptc <= 1.0))
      throw ModelError("component '" + id + "': ptc must be in (0,1]");
  }
  if (beta && !(*beta >= 0.0 && *beta <= 1.0))
    throw ModelError("component '" + id + "': beta must be in [0,1]");
}

double TestedModel::effective_rate() const {
  const double du = component.lambda_du();
  if (role == CcfRole::common) {
    if (!component.beta || !(*component.beta > 0.0)) {
      throw MisuseError("component '" + component.id +
                        "': common-cause role requires beta > 0");
    }
    return *component.beta * du;
  }
  return (1.0 - component.beta.value_or(0.0)) * du;
}

UnavailabilityCurve::UnavailabilityCurve(const UnavailabilityModel& model) {
  if (std::holds_alternative<FrequencyModel>(model)) {
    throw MisuseError("a frequency model has no unavailability; "
                      "use it as an initiating-event rate");
  }
  if (const auto* constant = std::get_if<ConstantModel>(&model)) {
    if (!(constant->p >= 0.0 && constant->p <= 1.0))
      throw DomainError("constant probability must be in [0,1]");
    constant_p_ = constant->p;
    return;
  }
  const auto& tested = std::get<TestedModel>(model);
  tested.component.validate();
  const double rate = tested.effective_rate();
  period_full_ = tested.component.t1_hours;
  if (tested.component.partial_test) {
    // Coverage split; the full-test share is the exact remainder so that
    // rate_partial_ + rate_full_ == rate holds bit-for-bit.
    rate_partial_ = tested.component.partial_test->ptc * rate;
    rate_full_ = rate - rate_partial_;
    period_partial_ = tested.component.partial_test->t2_hours;
  } else {
    rate_full_ = rate;
  }
}

double UnavailabilityCurve::at(double t, Side side) const {
  if (t < 0.0) throw DomainError("time must be >= 0");
  if (constant_p_ >= 0.0) return constant_p_;
  double survival = std::exp(-rate_full_ * time_since_reset(t, period_full_, side));
  if (period_partial_ > 0.0) {
    survival *= std::exp(-rate_partial_ * time_since_reset(t, period_partial_, side));
  }
  return 1.0 - survival;
}

void UnavailabilityCurve::collect_periods(std::vector<double>& out) const {
  if (constant_p_ >= 0.0) return;
  out.push_back(period_full_);
  if (period_partial_ > 0.0) out.push_back(period_partial_);
}

double instantaneous_unavailability(const UnavailabilityModel& model, double t_hours,
                                    Side side) {
  return UnavailabilityCurve(model).at(t_hours, side);
}

std::vector<double> build_time_grid(std::span<const double> periods, double horizon,
                                    double step) {
  if (!(horizon > 0.0)) throw DomainError("horizon must be > 0");
  if (!(step > 0.0 && step <= horizon))
    throw DomainError("grid step must satisfy 0 < step <= horizon");

  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(horizon / step) + periods.size() + 2);
  // Grid points are k*step, not an accumulated sum: one rounding per point.
  for (std::size_t k = 0;; ++k) {
    const double t = static_cast<double>(k) * step;
    if (t >= horizon) break;
    grid.push_back(t);
  }
  grid.push_back(horizon);
  for (double period : periods) {
    if (!(period > 0.0)) continue;
    for (std::size_t k = 1;; ++k) {
      const double t = static_cast<double>(k) * period;
      if (t >= horizon) break;
      grid.push_back(t);
    }
  }
  std::sort(grid.begin(), grid.end());
  const double eps = horizon * 1e-12;
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [eps](double a, double b) { return b - a <= eps; }),
             grid.end());
  return grid;
}

double average_unavailability(const UnavailabilityModel& model, double horizon_hours,
                              double grid_step_hours) {
  const UnavailabilityCurve curve(model);
  std::vector<double> periods;
  curve.collect_periods(periods);
  const auto grid = build_time_grid(periods, horizon_hours, grid_step_hours);

  CompensatedSum integral;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double a = grid[i];
    const double b = grid[i + 1];
    integral += 0.5 * (curve.at(a, Side::right) + curve.at(b, Side::left)) * (b - a);
  }
  return integral.value() / horizon_hours;
}

CcfSplit split_ccf(std::span<const ComponentReliability> group) {
  if (group.empty()) throw MisuseError("CCF group must not be empty");
  const auto& first = group.front();
  if (!first.beta || !(*first.beta > 0.0)) {
    throw MisuseError("CCF split requires beta > 0; "
                      "use plain independent models instead");
  }
  for (const auto& member : group) {
    member.validate();
    if (!member.beta || *member.beta != *first.beta)
      throw MisuseError("all CCF group members must carry the same beta");
    if (member.lambda_du() != first.lambda_du())
      throw UnsupportedConfigurationError(
          "CCF group members must have identical dangerous-undetected rates");
  }

  CcfSplit split;
  split.independent.reserve(group.size());
  for (const auto& member : group) {
    split.independent.push_back(TestedModel{member, CcfRole::independent});
  }
  split.common = TestedModel{first, CcfRole::common};
  return split;
}

}  // namespace bowtie
