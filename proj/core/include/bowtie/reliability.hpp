#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "bowtie/errors.hpp"

namespace bowtie {

inline constexpr double kHoursPerYear = 8760.0;

/// Periodic partial proof test: detects a fraction `ptc` of the
/// dangerous-undetected failures every `t2_hours`.
struct PartialTest {
  double t2_hours = 0.0;
  double ptc = 0.0;

  bool operator==(const PartialTest&) const = default;
};

/// Reliability and maintainability parameters of one hardware element.
struct ComponentReliability {
  std::string id;
  double lambda_total = 0.0;  ///< total failure rate, per hour
  double sff = 0.0;           ///< safe failure fraction, in [0,1)
  double t1_hours = 0.0;      ///< full proof-test interval
  std::optional<PartialTest> partial_test;
  std::optional<double> beta;  ///< common-cause fraction, in (0,1]

  /// Dangerous-undetected failure rate (1 - SFF) * lambda.
  double lambda_du() const { return (1.0 - sff) * lambda_total; }

  /// Throws ModelError on the first violated invariant.
  void validate() const;

  bool operator==(const ComponentReliability&) const = default;
};

/// Role of a periodically tested element under beta-factor splitting.
enum class CcfRole { independent, common };

/// Element whose dangerous-undetected failures accumulate between periodic
/// tests. The role adjusts the rate: independent -> (1-beta)*lambda_du,
/// common -> beta*lambda_du.
struct TestedModel {
  ComponentReliability component;
  CcfRole role = CcfRole::independent;

  /// Role-adjusted dangerous-undetected rate. Throws MisuseError for a
  /// common role without beta > 0.
  double effective_rate() const;

  bool operator==(const TestedModel&) const = default;
};

/// Constant on-demand failure probability (operator action, blast wall).
struct ConstantModel {
  double p = 0.0;

  bool operator==(const ConstantModel&) const = default;
};

/// Occurrence frequency for initiating events; never a probability.
struct FrequencyModel {
  double rate_per_year = 0.0;

  bool operator==(const FrequencyModel&) const = default;
};

using UnavailabilityModel = std::variant<TestedModel, ConstantModel, FrequencyModel>;

/// One-sided evaluation at test instants: the unavailability is a sawtooth,
/// right-continuous at every test (repair is instantaneous), so q(t-) and
/// q(t+) differ exactly at multiples of the test intervals.
enum class Side { left, right };

/// q(t): probability that the element is unavailable at time t.
/// Constant models return p for every t. Tested models follow
/// 1 - exp(-rate * tau) with tau the time since the last covering test;
/// with partial tests the element is the union of a T2-reset share
/// (ptc * rate) and a T1-reset share (rate - ptc * rate).
double instantaneous_unavailability(const UnavailabilityModel& model, double t_hours,
                                    Side side = Side::right);

/// Time average of q over [0, horizon] by the composite trapezoidal rule on
/// a grid with `grid_step` spacing plus every test instant.
double average_unavailability(const UnavailabilityModel& model, double horizon_hours,
                              double grid_step_hours);

/// Precompiled q(t) evaluator; cheap to call on a dense time grid.
/// Rejects frequency models with MisuseError.
class UnavailabilityCurve {
 public:
  explicit UnavailabilityCurve(const UnavailabilityModel& model);

  double at(double t_hours, Side side) const;

  /// Reset periods of this curve (empty for constants); used to place
  /// time-grid breakpoints at the discontinuities.
  void collect_periods(std::vector<double>& out) const;

 private:
  double constant_p_ = -1.0;        // >= 0 iff constant model
  double rate_partial_ = 0.0;       // reset every period_partial_
  double period_partial_ = 0.0;     // 0 when no partial test
  double rate_full_ = 0.0;          // reset every period_full_
  double period_full_ = 0.0;
};

/// Result of beta-factor splitting of a redundant group.
struct CcfSplit {
  std::vector<TestedModel> independent;  ///< one per member, rate (1-beta)*lambda_du
  TestedModel common;                    ///< single shared event, rate beta*lambda_du
};

/// Splits a group of identical components sharing one beta into per-member
/// independent models plus one common-cause model. All members must carry
/// the same beta > 0 and the same lambda_du.
CcfSplit split_ccf(std::span<const ComponentReliability> group);

/// Sorted, deduplicated grid over [0, horizon]: multiples of `step`, every
/// multiple of each period, 0 and horizon.
std::vector<double> build_time_grid(std::span<const double> periods, double horizon,
                                    double step);

/// Neumaier-compensated accumulator; the trapezoid sums run over ~10^4
/// segments and plain accumulation loses ~1e-13 relative, which the
/// grid-convergence checks would see.
class CompensatedSum {
 public:
  CompensatedSum& operator+=(double term);
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace bowtie
