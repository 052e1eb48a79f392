#include <gtest/gtest.h>

#include "tripartite/json_io.hpp"

using namespace tripartite;

TEST(ParseState, Named) {
  const StateSpec s = parse_state(json::parse(R"({"named": "BS2"})"));
  EXPECT_EQ(s.label, "BS2");
  EXPECT_EQ(s.state.amplitudes(), named(NamedState::BS2).amplitudes());
}

TEST(ParseState, Generic) {
  const StateSpec s = parse_state(json::parse(R"({"label": "g", "generic": {"a": [0.5, 0, 0.7071067811865476, 0, 0.5], "theta": 0}})"));
  EXPECT_EQ(s.label, "g");
  EXPECT_NEAR(tangle(s.state).xxx_expectation, 0.5, 1e-12);
  EXPECT_NEAR(tangle(s.state).tangle, 0.25, 1e-12);
}

TEST(ParseState, Amplitudes) {
  const StateSpec s = parse_state(json::parse(R"({"amplitudes": [[0,0],[0,1],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0]]})"), "fallback");
  EXPECT_EQ(s.label, "fallback");
  EXPECT_EQ(s.state[1], Complex(0, 1));
}

TEST(ParseState, Array) {
  const auto v = parse_states(json::parse(R"([{"named": "GHZ"}, {"named": "Sep", "label": "zero"}])"), "f");
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0].label, "GHZ");
  EXPECT_EQ(v[1].label, "zero");
}

TEST(ParseState, Errors) {
  const char* bad[] = {
      R"([1, 2])",
      R"({})",
      R"({"named": "GHZ", "generic": {"a": [1,0,0,0,0], "theta": 0}})",
      R"({"named": "NOPE"})",
      R"({"named": 3})",
      R"({"generic": {"a": [1, 0, 0, 0], "theta": 0}})",
      R"({"generic": {"a": [1, 0, 0, 0, 0]}})",
      R"({"generic": {"a": [0.5, 0, 0, 0, 0], "theta": 0}})",
      R"({"generic": {"a": [1, 0, 0, 0, 0], "theta": 4}})",
      R"({"generic": {"a": [1, 0, 0, "x", 0], "theta": 0}})",
      R"({"amplitudes": [[1,0]]})",
      R"({"amplitudes": [[1,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[1,0]]})",
      R"({"amplitudes": [[1],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0]]})",
      R"({"label": 5, "named": "W"})",
  };
  for (const char* text : bad) {
    const json doc = json::parse(text);
    EXPECT_THROW(parse_states(doc, "x"), StateFormatError) << text;
  }
}

TEST(LoadStateFile, MissingAndMalformed) {
  EXPECT_THROW(load_state_file("/nonexistent/state.json"), StateFormatError);
  const std::string path = testing::TempDir() + "malformed.json";
  std::ofstream(path) << "{ not json";
  EXPECT_THROW(load_state_file(path), StateFormatError);
}

TEST(Serialize, ReportFields) {
  const ClassificationReport r = classify_state(named(NamedState::GHZ), MeasurementMode::exact());
  const json j = to_json(r);
  EXPECT_EQ(j["label"], "GHZ");
  EXPECT_DOUBLE_EQ(j["witnesses"]["g1"].get<double>(), r.witnesses.g1);
  EXPECT_DOUBLE_EQ(j["tangle"]["xxx"].get<double>(), r.tangle.xxx_expectation);
  EXPECT_DOUBLE_EQ(j["tangle"]["value"].get<double>(), r.tangle.tangle);
  EXPECT_TRUE(j["margins"].contains("tangle"));
  EXPECT_EQ(j["thresholds"]["zero_tol_g"], 0.05);
  EXPECT_TRUE(j["warnings"].is_array());
}

TEST(Serialize, TomographyResult) {
  const DensityOperator rho = density_of(named(NamedState::W));
  const json j = to_json(tomograph(rho, NoiseSpec{}), rho);
  EXPECT_EQ(j["expectations"].size(), 63u);
  EXPECT_TRUE(j["expectations"].contains("XZY"));
  EXPECT_EQ(j["rho"].size(), 8u);
  EXPECT_EQ(j["rho"][0].size(), 8u);
  EXPECT_EQ(j["rho"][0][0].size(), 2u);
  EXPECT_NEAR(j["fidelity_to_target"].get<double>(), 1.0, 1e-10);
  EXPECT_EQ(j["provenance"], "circuit");
}
