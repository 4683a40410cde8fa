#include "bowtie/reliability.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "oracle_utils.hpp"

namespace bowtie {
namespace {

// Case-study components used across these tests.
ComponentReliability relief_valve() {
  return ComponentReliability{"RV", 1.392e-6, 0.5, 35040.0, std::nullopt, std::nullopt};
}

ComponentReliability esdv() {
  return ComponentReliability{"ESDV", 1.114e-5, 0.625, 35040.0,
                              PartialTest{4380.0, 0.9}, std::nullopt};
}

ComponentReliability sensor() {
  return ComponentReliability{"CP", 3.2e-6, 0.8, 35040.0, std::nullopt, 0.05};
}

TEST(Reliability, LambdaDuDerivation) {
  EXPECT_DOUBLE_EQ(relief_valve().lambda_du(), 6.96e-7);
  EXPECT_DOUBLE_EQ(esdv().lambda_du(), 4.1775e-6);
  EXPECT_DOUBLE_EQ(sensor().lambda_du(), 6.4e-7);
}

TEST(Reliability, FreshComponentAfterTest) {
  const UnavailabilityModel model = TestedModel{relief_valve()};
  EXPECT_EQ(instantaneous_unavailability(model, 0.0), 0.0);
  // Right-continuous drop at the proof-test instant.
  EXPECT_EQ(instantaneous_unavailability(model, 35040.0, Side::right), 0.0);
}

TEST(Reliability, ReliefValveJustBeforeFirstTest) {
  const UnavailabilityModel model = TestedModel{relief_valve()};
  const double q = instantaneous_unavailability(model, 35040.0, Side::left);
  EXPECT_NEAR(q, 1.0 - std::exp(-6.96e-7 * 35040.0), 1e-15);
  EXPECT_NEAR(q, 2.409e-2, 5e-6);
}

TEST(Reliability, EsdvAfterFirstPartialTest) {
  const UnavailabilityModel model = TestedModel{esdv()};
  // Just after the partial test only the non-partial-testable share survives.
  const double q = instantaneous_unavailability(model, 4380.0, Side::right);
  EXPECT_NEAR(q, 1.0 - std::exp(-0.1 * 4.1775e-6 * 4380.0), 1e-15);
  EXPECT_NEAR(q, 1.829e-3, 2e-6);
  // Just before, both shares are present.
  const double q_before = instantaneous_unavailability(model, 4380.0, Side::left);
  EXPECT_NEAR(q_before, 1.0 - std::exp(-4.1775e-6 * 4380.0), 1e-15);
  EXPECT_GT(q_before, q);
}

TEST(Reliability, ConstantModelIgnoresTime) {
  const UnavailabilityModel model = ConstantModel{0.1};
  EXPECT_DOUBLE_EQ(instantaneous_unavailability(model, 0.0), 0.1);
  EXPECT_DOUBLE_EQ(instantaneous_unavailability(model, 1e6), 0.1);
  EXPECT_DOUBLE_EQ(average_unavailability(model, 35040.0, 4.0), 0.1);
}

TEST(Reliability, FrequencyModelIsMisuse) {
  const UnavailabilityModel model = FrequencyModel{0.2};
  EXPECT_THROW(instantaneous_unavailability(model, 1.0), MisuseError);
  EXPECT_THROW(average_unavailability(model, 35040.0, 4.0), MisuseError);
}

TEST(Reliability, NegativeTimeIsDomainError) {
  const UnavailabilityModel model = TestedModel{relief_valve()};
  EXPECT_THROW(instantaneous_unavailability(model, -1.0), DomainError);
}

TEST(Reliability, SawtoothShape) {
  const UnavailabilityModel model = TestedModel{esdv()};
  const UnavailabilityCurve curve(model);
  // Non-decreasing between consecutive test instants.
  double previous = curve.at(4380.0, Side::right);
  for (double t = 4384.0; t < 8760.0; t += 4.0) {
    const double q = curve.at(t, Side::right);
    EXPECT_GE(q, previous);
    previous = q;
  }
  // Drop at every partial-test instant, reset to zero at the full test.
  for (int k = 1; k <= 8; ++k) {
    const double t = 4380.0 * k;
    EXPECT_LT(curve.at(t, Side::right), curve.at(t, Side::left));
  }
  EXPECT_EQ(curve.at(35040.0, Side::right), 0.0);
  // Bounded by the never-partially-tested envelope.
  const double bound = 1.0 - std::exp(-4.1775e-6 * 35040.0);
  for (double t = 0.0; t <= 70080.0; t += 1000.0) {
    EXPECT_LE(curve.at(t, Side::right), bound);
    EXPECT_GE(curve.at(t, Side::right), 0.0);
  }
}

TEST(Reliability, AverageMatchesSeriesExpansion) {
  const UnavailabilityModel model = TestedModel{relief_valve()};
  const double average = average_unavailability(model, 35040.0, 4.0);
  EXPECT_NEAR(average, 1.209539365e-2, 1e-9);
  const double a = 6.96e-7 * 35040.0;
  const double series = a / 2.0 - a * a / 6.0;
  EXPECT_NEAR(average, series, 0.001 * series);
}

TEST(Reliability, SeriesBoundHoldsForAllComponents) {
  const ComponentReliability components[] = {
      sensor(),
      {"AC", 3.0e-6, 0.835, 35040.0, std::nullopt, std::nullopt},
      {"AS", 2.0e-6, 0.95, 35040.0, std::nullopt, std::nullopt},
      {"CV", 3.26e-6, 0.65, 35040.0, std::nullopt, std::nullopt},
      relief_valve(),
  };
  for (const auto& component : components) {
    const TestedModel model{component};
    const double a = model.effective_rate() * component.t1_hours;
    ASSERT_LT(a, 0.05);
    const double average = average_unavailability(model, component.t1_hours, 4.0);
    EXPECT_LE(std::abs(average - a / 2.0), a * a / 6.0 + 1e-9);
  }
}

TEST(Reliability, AverageMatchesClosedFormOracle) {
  const UnavailabilityModel models[] = {
      TestedModel{relief_valve()},
      TestedModel{esdv()},
      TestedModel{sensor(), CcfRole::independent},
      TestedModel{sensor(), CcfRole::common},
  };
  for (const auto& model : models) {
    const double trapezoid = average_unavailability(model, 35040.0, 4.0);
    const double exact = testing::closed_form_average(model, 35040.0);
    EXPECT_NEAR(trapezoid, exact, 1e-3 * exact);
  }
}

TEST(Reliability, GridConvergence) {
  const UnavailabilityModel model = TestedModel{esdv()};
  const double coarse = average_unavailability(model, 35040.0, 4.0);
  const double fine = average_unavailability(model, 35040.0, 2.0);
  EXPECT_NEAR(coarse, fine, 5e-4 * coarse);
}

TEST(Reliability, PartialSplitConservesRateExactly) {
  const auto component = esdv();
  const double rate = component.lambda_du();
  const double partial = component.partial_test->ptc * rate;
  const double full = rate - partial;
  EXPECT_EQ(partial + full, rate);
}

TEST(Reliability, FullCoveragePartialTestEqualsShortSawtooth) {
  auto component = esdv();
  component.partial_test->ptc = 1.0;
  const double with_partial =
      average_unavailability(TestedModel{component}, 35040.0, 4.0);

  ComponentReliability short_cycle = esdv();
  short_cycle.partial_test.reset();
  short_cycle.t1_hours = 4380.0;
  const double sawtooth = average_unavailability(TestedModel{short_cycle}, 35040.0, 4.0);
  EXPECT_NEAR(with_partial, sawtooth, 1e-12);

  const double linearized = component.lambda_du() * 4380.0 / 2.0;
  EXPECT_NEAR(with_partial, linearized, 0.01 * linearized);
}

TEST(Reliability, CcfRoleAdjustsRate) {
  const TestedModel independent{sensor(), CcfRole::independent};
  const TestedModel common{sensor(), CcfRole::common};
  EXPECT_DOUBLE_EQ(independent.effective_rate(), 0.95 * 6.4e-7);
  EXPECT_DOUBLE_EQ(common.effective_rate(), 0.05 * 6.4e-7);
  // Common role without beta is a misuse.
  const TestedModel no_beta{relief_valve(), CcfRole::common};
  EXPECT_THROW(no_beta.effective_rate(), MisuseError);
}

TEST(Reliability, SplitCcfGroup) {
  const std::vector<ComponentReliability> group(5, sensor());
  const CcfSplit split = split_ccf(group);
  ASSERT_EQ(split.independent.size(), 5u);
  for (const auto& member : split.independent) {
    EXPECT_DOUBLE_EQ(member.effective_rate(), 6.08e-7);
  }
  EXPECT_DOUBLE_EQ(split.common.effective_rate(), 3.2e-8);

  const double common_average =
      average_unavailability(split.common, 35040.0, 4.0);
  EXPECT_NEAR(common_average, 5.60430514e-4, 1e-10);
  EXPECT_NEAR(common_average, 5.6e-4, 1e-6);
}

TEST(Reliability, SplitCcfRejectsDegenerateGroups) {
  auto no_beta = sensor();
  no_beta.beta.reset();
  EXPECT_THROW(split_ccf(std::vector<ComponentReliability>{no_beta}), MisuseError);

  auto zero_beta = sensor();
  zero_beta.beta = 0.0;
  EXPECT_THROW(split_ccf(std::vector<ComponentReliability>{zero_beta}), MisuseError);

  auto other = sensor();
  other.lambda_total = 4.0e-6;
  EXPECT_THROW(split_ccf(std::vector<ComponentReliability>{sensor(), other}),
               UnsupportedConfigurationError);
}

TEST(Reliability, ValidateRejectsBadParameters) {
  auto bad_sff = sensor();
  bad_sff.sff = 1.0;
  EXPECT_THROW(bad_sff.validate(), ModelError);

  auto bad_partial = esdv();
  bad_partial.partial_test->t2_hours = 40000.0;
  EXPECT_THROW(bad_partial.validate(), ModelError);

  auto bad_ptc = esdv();
  bad_ptc.partial_test->ptc = 0.0;
  EXPECT_THROW(bad_ptc.validate(), ModelError);
}

}  // namespace
}  // namespace bowtie
