#include "bowtie/event_tree.hpp"

#include <gtest/gtest.h>

namespace bowtie {
namespace {

// The separator consequence tree: immediate ignition, else delayed
// ignition, explosion vs fire, blast-wall split on every dangerous limb.
EventTreePtr case_study_tree() {
  const auto wall = [](const char* yes, const char* no) {
    return EventTreeNode::branch("blast_wall_failure", ConstantProb{0.01},
                                 EventTreeNode::outcome(yes),
                                 EventTreeNode::outcome(no));
  };
  return EventTreeNode::branch(
      "immediate_ignition", ConstantProb{0.7}, wall("PhD2", "PhD1"),
      EventTreeNode::branch(
          "delayed_ignition", ConstantProb{1.0},
          EventTreeNode::branch("explosion", ConstantProb{0.4},
                                wall("PhD4", "PhD3"), wall("PhD6", "PhD5")),
          EventTreeNode::outcome("PhD7")));
}

TEST(EventTree, CaseStudyRatios) {
  const double erc = 2.07e-4;
  const PhdFrequencies out = propagate(erc, case_study_tree());
  ASSERT_EQ(out.size(), 7u);
  const std::map<std::string, double> ratios{
      {"PhD1", 0.693},  {"PhD2", 0.007},  {"PhD3", 0.1188}, {"PhD4", 0.0012},
      {"PhD5", 0.1782}, {"PhD6", 0.0018}, {"PhD7", 0.0}};
  for (const auto& [label, ratio] : ratios) {
    EXPECT_NEAR(out.at(label) / erc, ratio, 1e-12) << label;
  }
  // Reference spot values at the published ERC.
  EXPECT_NEAR(out.at("PhD1"), 1.434e-4, 5e-7);
  EXPECT_NEAR(out.at("PhD4"), 2.48e-7, 5e-10);
  EXPECT_EQ(out.at("PhD7"), 0.0);
}

TEST(EventTree, ConservesFrequency) {
  const double erc = 3.14159e-3;
  const PhdFrequencies out = propagate(erc, case_study_tree());
  double total = 0.0;
  for (const auto& [label, value] : out) total += value;
  EXPECT_NEAR(total, erc, 1e-12 * erc);
}

TEST(EventTree, Homogeneity) {
  const PhdFrequencies base = propagate(1.0, case_study_tree());
  const PhdFrequencies scaled = propagate(2.5, case_study_tree());
  for (const auto& [label, value] : base) {
    EXPECT_NEAR(scaled.at(label), 2.5 * value, 1e-15);
  }
}

TEST(EventTree, ZeroFrequencyGivesZeroOutcomes) {
  for (const auto& [label, value] : propagate(0.0, case_study_tree())) {
    EXPECT_EQ(value, 0.0) << label;
  }
}

TEST(EventTree, BarrierSourcedBranch) {
  const auto tree = EventTreeNode::branch(
      "protection_fails", BarrierRefProb{"RV"},
      EventTreeNode::outcome("bad"), EventTreeNode::outcome("ok"));
  const PhdFrequencies out =
      propagate(1.0, tree, [](const std::string& id) {
        EXPECT_EQ(id, "RV");
        return 0.024;
      });
  EXPECT_NEAR(out.at("bad"), 0.024, 1e-15);
  EXPECT_NEAR(out.at("ok"), 0.976, 1e-15);
  // Without a resolver the reference cannot be satisfied.
  EXPECT_THROW(propagate(1.0, tree), ModelError);
}

TEST(EventTree, RejectsInvalidProbability) {
  const auto tree = EventTreeNode::branch("x", ConstantProb{1.5},
                                          EventTreeNode::outcome("a"),
                                          EventTreeNode::outcome("b"));
  EXPECT_THROW(propagate(1.0, tree), ModelError);
}

TEST(EventTree, RejectsDuplicateOutcomeLabels) {
  const auto tree = EventTreeNode::branch("x", ConstantProb{0.5},
                                          EventTreeNode::outcome("same"),
                                          EventTreeNode::outcome("same"));
  EXPECT_THROW(validate_event_tree(tree), ModelError);
}

TEST(EventTree, RejectsNegativeFrequency) {
  EXPECT_THROW(propagate(-1.0, case_study_tree()), DomainError);
}

}  // namespace
}  // namespace bowtie
