#include <doctest.h>

#include <json.hpp>

#include <map>
#include <regex>
#include <sstream>

#include "property.hpp"
#include "ttstat/analysis.hpp"
#include "ttstat/errors.hpp"
#include "ttstat/report.hpp"
#include "ttstat/simulator.hpp"
#include "ttstat/trial_io.hpp"

using namespace ttstat;
using json = nlohmann::json;

namespace {

Rational q(long num, unsigned long den = 1) { return make_rational(num, den); }

ExperimentDataset restrepo() { return parse_trials_file(TTSTAT_DATA_DIR "/restrepo_replication.jsonl"); }
ExperimentDataset goostman() { return parse_trials_file(TTSTAT_DATA_DIR "/goostman_sessions.jsonl"); }

Rational from_json(const json& j) {
  auto part = [](const json& v) { return v.is_string() ? mpz_class(v.get<std::string>()) : mpz_class(v.get<long>()); };
  Rational r(part(j.at("num")), part(j.at("den")));
  r.canonicalize();
  return r;
}

// "name: a/b = ..." lines from a text report, keyed by name.
std::map<std::string, Rational> text_values(const std::string& text) {
  std::map<std::string, Rational> values;
  const std::regex line(R"(^([^:\n]+): (-?\d+(?:/\d+)?) = )");
  std::istringstream in(text);
  std::string l;
  while (std::getline(in, l)) {
    std::smatch m;
    if (std::regex_search(l, m, line)) values[m[1]] = parse_rational(m[2].str());
  }
  return values;
}

}  // namespace

TEST_CASE("experiment classification") {
  CHECK(classify_format({true, true}) == TestFormat::kThreePlayer);
  CHECK(classify_format({true, false}) == TestFormat::kTwoPlayer);
  CHECK(classify_format({false, true}) == TestFormat::kTwoPlayer);
  CHECK(classify_format({false, false}) == TestFormat::kTwoPlayer);
}

TEST_CASE("replication verdict at 1%") {
  const TestVerdict v = verdict(restrepo());
  const ObservationAnalysis* joint = v.find("joint");
  REQUIRE(joint != nullptr);
  CHECK(joint->rates.correct == BinomialObservation(10, 9));
  CHECK(joint->significance.tail_mass == q(11, 512));
  CHECK_FALSE(joint->significance.significant);
  CHECK(joint->compatible.compatible.front().lo == q(49, 100));
  CHECK(v.humanness_reference == q(1, 2));
  CHECK(v.humanness_point->ratio == q(1, 5));
  CHECK(v.humanness_bounds->hi == q(51, 50));
  CHECK(v.absolute_pass == false);
}

TEST_CASE("replication verdict at 5%") {
  AnalysisConfig cfg;
  cfg.level = q(5, 100);
  const TestVerdict v = verdict(restrepo(), cfg);
  CHECK(v.find("joint")->significance.significant);
  CHECK(v.find("joint")->compatible.compatible.front().lo == q(56, 100));
  CHECK(v.humanness_bounds->hi == q(22, 25));
}

TEST_CASE("two-player data without a human baseline") {
  const TestVerdict v = verdict(goostman());
  CHECK(v.format == TestFormat::kTwoPlayer);
  CHECK(v.find("human") == nullptr);
  CHECK(v.machine_misid_rate == q(1, 3));
  CHECK_FALSE(v.humanness_point.has_value());
  CHECK_FALSE(v.humanness_bounds.has_value());
  CHECK_FALSE(v.humanness_reference.has_value());
  REQUIRE(v.required_human_rate);
  CHECK(v.required_human_rate->value == q(5, 9));

  const std::string text = emit_report(v, ReportMode::kText);
  CHECK(text.find("human baseline: not reported") != std::string::npos);
  CHECK(text.find("required human rate: 5/9") != std::string::npos);
  CHECK(text.find("above 55.56%") != std::string::npos);
  const json j = json::parse(emit_report(v, ReportMode::kJson));
  CHECK(j["humanness_point"].is_null());
  CHECK(j["humanness_bounds"].is_null());
  CHECK(from_json(j["required_human_rate"]["value"]) == q(5, 9));
}

TEST_CASE("two-player data with a human baseline") {
  std::vector<TrialRecord> trials;
  for (int i = 0; i < 20; ++i) {
    trials.push_back({"m" + std::to_string(i), TestFormat::kTwoPlayer,
                      {{RespondentKind::kMachine, verdict_for(RespondentKind::kMachine, i >= 10)}}, {}, {}});
  }
  for (int i = 0; i < 20; ++i) {
    trials.push_back({"h" + std::to_string(i), TestFormat::kTwoPlayer,
                      {{RespondentKind::kHuman, verdict_for(RespondentKind::kHuman, i < 15)}}, {}, {}});
  }
  const TestVerdict v = verdict(ExperimentDataset(TestFormat::kTwoPlayer, trials));
  CHECK(v.humanness_reference == q(3, 4));
  CHECK(v.humanness_point->ratio == q(2, 3));
  REQUIRE(v.humanness_bounds);
  const auto& misid = *v.find("machine")->misid_bounds;
  CHECK(v.humanness_bounds->lo == misid.lo / q(3, 4));
  CHECK(v.humanness_bounds->hi == misid.hi / q(3, 4));
  CHECK(v.absolute_pass == false);
}

TEST_CASE("pipeline errors carry the stage") {
  std::vector<TrialRecord> trials{
      {"m1", TestFormat::kTwoPlayer, {{RespondentKind::kMachine, Verdict::kDeclaredHuman}}, {}, {}},
      {"h1", TestFormat::kTwoPlayer, {{RespondentKind::kHuman, Verdict::kDeclaredMachine}}, {}, {}}};
  try {
    verdict(ExperimentDataset(TestFormat::kTwoPlayer, trials));
    FAIL("expected an error");
  } catch (const StageError& e) {
    CHECK(e.stage() == "humanness");
    CHECK(e.category() == ErrorCategory::kStatisticalPrecondition);
  }
  AnalysisConfig cfg;
  cfg.level = q(2);
  try {
    verdict(restrepo(), cfg);
    FAIL("expected an error");
  } catch (const StageError& e) {
    CHECK(e.stage() == "exact_significance");
  }
  try {
    verdict(ExperimentDataset(TestFormat::kThreePlayer, {}));
    FAIL("expected an error");
  } catch (const StageError& e) {
    CHECK(e.stage() == "estimate_rates");
  }
}

TEST_CASE("json report schema") {
  const json j = json::parse(emit_report(verdict(restrepo()), ReportMode::kJson));
  CHECK(j["schema"] == "tt-verdict/1");
  CHECK(j["format"] == "three-player");
  const json& obs = j["observations"][0];
  CHECK(obs["label"] == "joint");
  CHECK(obs["significance"]["tail_mass"] == json{{"num", 11}, {"den", 512}});
  CHECK(obs["significance"]["contributing_outcomes"] == json{0, 1, 9, 10});
  CHECK(obs["significance"]["significant"] == false);
  CHECK(from_json(obs["compatible_set"]["compatible"][0]["lo"]) == q(49, 100));
  CHECK(from_json(j["humanness_bounds"]["hi"]) == q(51, 50));
}

TEST_CASE("text and json agree on every number") {
  for (const auto& [dataset, level] : {std::pair{restrepo(), q(1, 100)}, std::pair{restrepo(), q(5, 100)},
                                       std::pair{goostman(), q(1, 100)}}) {
    AnalysisConfig cfg;
    cfg.level = level;
    const TestVerdict v = verdict(dataset, cfg);
    const json j = json::parse(emit_report(v, ReportMode::kJson));
    const auto text = text_values(emit_report(v, ReportMode::kText));
    for (const json& obs : j["observations"]) {
      const std::string p = "[" + obs["label"].get<std::string>() + "] ";
      CHECK(text.at(p + "correct rate") == from_json(obs["correct_rate"]));
      CHECK(text.at(p + "pmf at k") == from_json(obs["significance"]["pmf_at_k"]));
      CHECK(text.at(p + "tail mass") == from_json(obs["significance"]["tail_mass"]));
    }
    if (!j["machine_misid_rate"].is_null())
      CHECK(text.at("machine misidentification rate") == from_json(j["machine_misid_rate"]));
    if (!j["humanness_point"].is_null())
      CHECK(text.at("humanness point") == from_json(j["humanness_point"]["ratio"]));
    if (!j["required_human_rate"].is_null())
      CHECK(text.at("required human rate") == from_json(j["required_human_rate"]["value"]));
    if (!j["humanness_reference"].is_null())
      CHECK(text.at("human baseline") == from_json(j["humanness_reference"]));
  }
}

TEST_CASE("reports are deterministic and keep full precision") {
  const auto d = simulate({make_two_player_model(q(1, 3), q(5, 7)), 37, 23, 99});
  const std::string a = emit_report(verdict(d), ReportMode::kJson);
  CHECK(a == emit_report(verdict(d), ReportMode::kJson));
  // Two-decimal display must not leak into stored values.
  const json j = json::parse(a);
  const TestVerdict v = verdict(d);
  CHECK(from_json(j["machine_misid_rate"]) == *v.machine_misid_rate);
  CHECK(from_json(j["humanness_point"]["ratio"]) == v.humanness_point->ratio);
}

TEST_CASE("tail-mass curve") {
  const std::string csv = emit_curve(BinomialObservation(10, 9), q(1, 100));
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "p,tail_mass,significant");
  std::map<std::string, std::pair<std::string, std::string>> rows;
  std::size_t count = 0;
  while (std::getline(in, line)) {
    ++count;
    const auto c1 = line.find(','), c2 = line.rfind(',');
    rows[line.substr(0, c1)] = {line.substr(c1 + 1, c2 - c1 - 1), line.substr(c2 + 1)};
  }
  CHECK(count == 101);
  CHECK(rows.at("0.50") == std::pair<std::string, std::string>{"0.021484375", "false"});
  CHECK(rows.at("1.00") == std::pair<std::string, std::string>{"0", "true"});
  CHECK(rows.at("0.48").second == "true");
  CHECK(rows.at("0.49").second == "false");
  CHECK(parse_rational(rows.at("0.37").first) ==
        exact_significance(BinomialObservation(10, 9), q(37, 100), q(1, 100)).tail_mass);
}
