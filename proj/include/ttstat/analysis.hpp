#pragma once

// The verdict pipeline: rates -> significance -> compatible set ->
// misidentification bounds -> humanness bounds.

#include <optional>
#include <string>
#include <vector>

#include "ttstat/criteria.hpp"
#include "ttstat/dataset.hpp"
#include "ttstat/exact_stats.hpp"

namespace ttstat {

// How an experiment was run.
struct ExperimentDescriptor {
  bool paired_conversations;           // interrogator talks to both respondents
  bool forced_complementary_verdicts;  // must name exactly one of them human
};

// Three-player only when both conditions hold; parallel sessions without
// forced complementary verdicts are a kind of two-player test.
TestFormat classify_format(const ExperimentDescriptor& descriptor);

struct AnalysisConfig {
  Rational p0{1, 2};
  Rational level{1, 100};
  Rational grid_step{1, 100};
  bool refine = false;
  Rational humanness_threshold = turing_humanness_threshold();
};

struct ObservationAnalysis {
  std::string label;  // "joint", "machine" or "human"
  KindRates rates;
  SignificanceResult<Rational> significance;
  CompatibleSet compatible;
  // Incorrect-identification probabilities compatible with the data.
  std::optional<Interval<Rational>> misid_bounds;
};

struct TestVerdict {
  TestFormat format;
  std::string source;
  AnalysisConfig config;
  std::vector<ObservationAnalysis> analyses;

  std::optional<Rational> machine_misid_rate;
  // 1/2 for three-player; the measured human correct rate for two-player,
  // absent when the data hold no human sessions.
  std::optional<Rational> humanness_reference;
  std::optional<HumannessScore<Rational>> humanness_point;
  std::optional<Interval<Rational>> humanness_bounds;
  std::optional<bool> absolute_pass;
  std::optional<RequiredHumanRate<Rational>> required_human_rate;

  const ObservationAnalysis* find(std::string_view label) const;
};

// Errors from each component are rethrown as StageError naming the stage.
TestVerdict verdict(const ExperimentDataset& dataset, const AnalysisConfig& config = {});

}  // namespace ttstat
