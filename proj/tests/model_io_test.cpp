#include "bowtie/model_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include <json.hpp>

namespace bowtie {
namespace {

bool has_error(const ParseResult& result, const std::string& path_fragment,
               const std::string& message_fragment) {
  return std::any_of(result.errors.begin(), result.errors.end(),
                     [&](const Diagnostic& d) {
                       return d.path.find(path_fragment) != std::string::npos &&
                              d.message.find(message_fragment) != std::string::npos;
                     });
}

TEST(ModelIo, BundledCaseStudyInventory) {
  const BowTieModel model = load_case_study();
  EXPECT_EQ(model.components.size(), 6u);
  EXPECT_EQ(model.barriers.size(), 3u);
  EXPECT_EQ(model.initiating_events.size(), 4u);
  EXPECT_EQ(model.cases.size(), 5u);
  EXPECT_EQ(model.basic_events.size(), 14u);

  // Seven labeled outcomes.
  PhdFrequencies outcomes = propagate(1.0, model.event_tree);
  EXPECT_EQ(outcomes.size(), 7u);
}

TEST(ModelIo, BundledFileMatchesEmbeddedText) {
  std::ifstream in(BOWTIE_CASE_STUDY_PATH, std::ios::binary);
  ASSERT_TRUE(in) << "missing " << BOWTIE_CASE_STUDY_PATH;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  EXPECT_EQ(buffer.str(), case_study_text());
}

TEST(ModelIo, Table5Golden) {
  const BowTieModel model = load_case_study();
  const auto& cp = model.component("CP");
  EXPECT_EQ(cp.lambda_total, 3.2e-6);
  EXPECT_EQ(cp.sff, 0.8);
  EXPECT_EQ(cp.t1_hours, 35040.0);
  ASSERT_TRUE(cp.beta);
  EXPECT_EQ(*cp.beta, 0.05);

  EXPECT_EQ(model.component("AC").lambda_total, 3.0e-6);
  EXPECT_EQ(model.component("AC").sff, 0.835);
  EXPECT_EQ(model.component("AS").lambda_total, 2.0e-6);
  EXPECT_EQ(model.component("AS").sff, 0.95);
  EXPECT_EQ(model.component("CV").lambda_total, 3.26e-6);
  EXPECT_EQ(model.component("CV").sff, 0.65);

  const auto& esdv = model.component("ESDV");
  EXPECT_EQ(esdv.lambda_total, 1.114e-5);
  EXPECT_EQ(esdv.sff, 0.625);
  ASSERT_TRUE(esdv.partial_test);
  EXPECT_EQ(esdv.partial_test->t2_hours, 4380.0);
  EXPECT_EQ(esdv.partial_test->ptc, 0.9);

  EXPECT_EQ(model.component("RV").lambda_total, 1.392e-6);
  EXPECT_EQ(model.component("RV").sff, 0.5);
}

TEST(ModelIo, RoundTripIsStable) {
  const BowTieModel model = load_case_study();
  const std::string first = serialize_model(model);
  const BowTieModel reparsed = parse_model_or_throw(first);
  EXPECT_TRUE(model == reparsed);
  EXPECT_EQ(serialize_model(reparsed), first);
  EXPECT_EQ(model_hash(model), model_hash(reparsed));
}

TEST(ModelIo, InvalidJsonIsSingleDiagnostic) {
  const ParseResult result = parse_model("{ not json");
  EXPECT_FALSE(result.ok());
  ASSERT_EQ(result.errors.size(), 1u);
  EXPECT_NE(result.errors[0].message.find("JSON"), std::string::npos);
}

TEST(ModelIo, KoonArityErrorNamesTheGate) {
  nlohmann::json doc = nlohmann::json::parse(case_study_text());
  doc["barriers"][1]["tree"]["or"][2]["koon"]["k"] = 4;
  const ParseResult result = parse_model(doc.dump());
  EXPECT_FALSE(result.ok());
  EXPECT_TRUE(has_error(result, "barriers[1].tree.or[2].koon", "k=4"));
}

TEST(ModelIo, DanglingBarrierReference) {
  nlohmann::json doc = nlohmann::json::parse(case_study_text());
  doc["ei_barrier_map"]["EI4"] = {"RVx"};
  const ParseResult result = parse_model(doc.dump());
  EXPECT_FALSE(result.ok());
  EXPECT_TRUE(has_error(result, "ei_barrier_map.EI4", "unknown barrier 'RVx'"));
}

TEST(ModelIo, SffRangeErrorAtFieldPath) {
  nlohmann::json doc = nlohmann::json::parse(case_study_text());
  doc["components"][0]["sff"] = 1.2;
  const ParseResult result = parse_model(doc.dump());
  EXPECT_FALSE(result.ok());
  EXPECT_TRUE(has_error(result, "components[0].sff", "[0,1)"));
}

TEST(ModelIo, MissingEventTreeSection) {
  nlohmann::json doc = nlohmann::json::parse(case_study_text());
  doc.erase("event_tree");
  const ParseResult result = parse_model(doc.dump());
  EXPECT_FALSE(result.ok());
  EXPECT_TRUE(has_error(result, "event_tree", "missing"));
}

TEST(ModelIo, AllErrorsAreCollected) {
  nlohmann::json doc = nlohmann::json::parse(case_study_text());
  doc["components"][0]["sff"] = 1.2;                 // range error
  doc["ei_barrier_map"]["EI4"] = {"RVx"};            // dangling reference
  doc["barriers"][1]["tree"]["or"][2]["koon"]["k"] = 9;  // arity error
  const ParseResult result = parse_model(doc.dump());
  EXPECT_FALSE(result.ok());
  EXPECT_GE(result.errors.size(), 3u);
  EXPECT_TRUE(has_error(result, "components[0].sff", ""));
  EXPECT_TRUE(has_error(result, "ei_barrier_map.EI4", ""));
  EXPECT_TRUE(has_error(result, "barriers[1]", ""));
}

TEST(ModelIo, UnmappedInitiatingEventIsAnError) {
  nlohmann::json doc = nlohmann::json::parse(case_study_text());
  doc["ei_barrier_map"].erase("EI3");
  const ParseResult result = parse_model(doc.dump());
  EXPECT_FALSE(result.ok());
  EXPECT_TRUE(has_error(result, "ei_barrier_map", "EI3"));
}

TEST(ModelIo, EmptyBarrierListIsValid) {
  nlohmann::json doc = nlohmann::json::parse(case_study_text());
  doc["ei_barrier_map"]["EI4"] = nlohmann::json::array();
  EXPECT_TRUE(parse_model(doc.dump()).ok());
}

TEST(ModelIo, InitiatorInsideBarrierTreeIsRejected) {
  nlohmann::json doc = nlohmann::json::parse(case_study_text());
  doc["basic_events"].push_back({{"id", "F"}, {"kind", "frequency"},
                                 {"rate_per_year", 0.1}});
  doc["barriers"][2]["tree"]["or"].push_back({{"event", "F"}});
  const ParseResult result = parse_model(doc.dump());
  EXPECT_FALSE(result.ok());
  EXPECT_TRUE(has_error(result, "barriers[2].tree", "initiator"));
}

TEST(ApplyCase, Cas1ScalesFailureRates) {
  const BowTieModel model = load_case_study();
  const BowTieModel scaled = apply_case(model, model.case_transform("cas1"));
  EXPECT_DOUBLE_EQ(scaled.component("RV").lambda_total, 6.96e-6);
  EXPECT_DOUBLE_EQ(scaled.component("RV").lambda_du(), 3.48e-6);
  // Everything else untouched.
  EXPECT_EQ(scaled.component("RV").sff, 0.5);
  EXPECT_EQ(scaled.component("ESDV").partial_test->t2_hours, 4380.0);
  // Original not mutated.
  EXPECT_EQ(model.component("RV").lambda_total, 1.392e-6);
}

TEST(ApplyCase, Cas2HalvesSff) {
  const BowTieModel model = load_case_study();
  const BowTieModel scaled = apply_case(model, model.case_transform("cas2"));
  EXPECT_DOUBLE_EQ(scaled.component("AS").sff, 0.475);
  EXPECT_DOUBLE_EQ(scaled.component("AS").lambda_total, 2.0e-6);
}

TEST(ApplyCase, Cas3ScalesBothTestIntervals) {
  const BowTieModel model = load_case_study();
  const BowTieModel scaled = apply_case(model, model.case_transform("cas3"));
  EXPECT_DOUBLE_EQ(scaled.component("CP").t1_hours, 70080.0);
  EXPECT_DOUBLE_EQ(scaled.component("ESDV").partial_test->t2_hours, 8760.0);
}

TEST(ApplyCase, Cas0IsIdentity) {
  const BowTieModel model = load_case_study();
  const BowTieModel scaled = apply_case(model, model.case_transform("cas0"));
  EXPECT_TRUE(scaled == model);
}

TEST(ApplyCase, CompositionalOnMultiplicativeFields) {
  const BowTieModel model = load_case_study();
  const CaseTransform five{"x5", 5.0, 1.0, 1.0, 1.0};
  const CaseTransform quarter{"x025", 0.25, 1.0, 1.0, 1.0};
  const BowTieModel twice = apply_case(apply_case(model, five), quarter);
  const BowTieModel once = apply_case(model, CaseTransform{"x125", 1.25, 1.0, 1.0, 1.0});
  for (std::size_t i = 0; i < model.components.size(); ++i) {
    EXPECT_NEAR(twice.components[i].lambda_total, once.components[i].lambda_total,
                1e-21);
  }
}

TEST(ApplyCase, RejectsOutOfRangeResults) {
  const BowTieModel model = load_case_study();
  EXPECT_THROW(apply_case(model, CaseTransform{"bad_sff", 1.0, 2.0, 1.0, 1.0}),
               TransformError);
  EXPECT_THROW(apply_case(model, CaseTransform{"bad_beta", 1.0, 1.0, 1.0, 25.0}),
               TransformError);
  EXPECT_THROW(apply_case(model, CaseTransform{"bad_scale", -1.0, 1.0, 1.0, 1.0}),
               TransformError);
}

TEST(DeriveEi1, CaseStudyControlLoop) {
  const BowTieModel model = load_case_study();
  const Ei1Derivation derivation = derive_ei1_frequency(model);
  // (3.2e-6 + 3.0e-6 + 2 * 3.26e-6) * 8760
  EXPECT_NEAR(derivation.total_per_year, 0.1114272, 1e-12);
  ASSERT_EQ(derivation.by_cause.size(), 5u);
  EXPECT_EQ(derivation.by_cause[0].first, "EI1_CP1_ind");
  EXPECT_NEAR(derivation.by_cause[0].second, 0.95 * 3.2e-6 * 8760.0, 1e-15);
  EXPECT_NEAR(derivation.by_cause[1].second, 0.05 * 3.2e-6 * 8760.0, 1e-15);
  EXPECT_NEAR(derivation.by_cause[2].second, 3.0e-6 * 8760.0, 1e-15);

  // The independent and common shares rebuild the total rate.
  EXPECT_NEAR(derivation.by_cause[0].second + derivation.by_cause[1].second,
              3.2e-6 * 8760.0, 1e-15);
}

TEST(DeriveEi1, ScalesWithCas1) {
  const BowTieModel model = load_case_study();
  const BowTieModel scaled = apply_case(model, model.case_transform("cas1"));
  EXPECT_NEAR(derive_ei1_frequency(scaled).total_per_year, 5.0 * 0.1114272, 1e-12);
}

TEST(DeriveEi1, ErrorsOnFixedEvent) {
  const BowTieModel model = load_case_study();
  EXPECT_THROW(derive_ei1_frequency(model, "EI2"), MisuseError);
  EXPECT_THROW(derive_ei1_frequency(model, "nope"), ModelError);
}

TEST(ModelIo, UnknownCaseIsAnError) {
  const BowTieModel model = load_case_study();
  EXPECT_THROW(model.case_transform("cas9"), ModelError);
}

}  // namespace
}  // namespace bowtie
