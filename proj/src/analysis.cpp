#include "ttstat/analysis.hpp"

#include <utility>

#include "ttstat/errors.hpp"

namespace ttstat {

TestFormat classify_format(const ExperimentDescriptor& descriptor) {
  return descriptor.paired_conversations && descriptor.forced_complementary_verdicts
             ? TestFormat::kThreePlayer
             : TestFormat::kTwoPlayer;
}

const ObservationAnalysis* TestVerdict::find(std::string_view label) const {
  for (const ObservationAnalysis& a : analyses) {
    if (a.label == label) return &a;
  }
  return nullptr;
}

namespace {

template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(name, e);
  }
}

ObservationAnalysis analyze(std::string label, const KindRates& rates, const AnalysisConfig& cfg) {
  auto significance = stage("exact_significance", [&] {
    return exact_significance<Rational>(rates.correct, cfg.p0, cfg.level);
  });
  auto compatible = stage("compatible_set", [&] {
    return compatible_set(rates.correct, cfg.level, cfg.grid_step, cfg.refine);
  });
  auto bounds = stage("misid_bounds_from_correct", [&] { return misid_bounds_from_correct(compatible); });
  return {std::move(label), rates, std::move(significance), std::move(compatible), std::move(bounds)};
}

}  // namespace

TestVerdict verdict(const ExperimentDataset& dataset, const AnalysisConfig& config) {
  const RateEstimate rates = stage("estimate_rates", [&] { return estimate_rates(dataset); });

  TestVerdict v{dataset.format(), dataset.source(), config, {}, {}, {}, {}, {}, {}, {}};
  const ObservationAnalysis* machine = nullptr;
  if (rates.joint) {
    v.analyses.push_back(analyze("joint", *rates.joint, config));
  }
  if (rates.machine) v.analyses.push_back(analyze("machine", *rates.machine, config));
  if (rates.human) v.analyses.push_back(analyze("human", *rates.human, config));
  machine = v.find(rates.joint ? "joint" : "machine");
  if (machine == nullptr) return v;

  v.machine_misid_rate = machine->rates.misid_rate;
  v.required_human_rate = stage("required_human_rate", [&] {
    return required_human_rate(*v.machine_misid_rate, config.humanness_threshold);
  });

  std::optional<ExactModel> model;
  if (dataset.format() == TestFormat::kThreePlayer) {
    v.humanness_reference = Rational(1, 2);
    model = stage("model", [&] { return make_three_player_model(*v.machine_misid_rate); });
  } else if (rates.human) {
    v.humanness_reference = rates.human->correct_rate;
    model = stage("model", [&] {
      return make_two_player_model(*v.machine_misid_rate, rates.human->correct_rate);
    });
  }
  if (!model) return v;

  v.absolute_pass = absolute_pass(*model);
  v.humanness_point = stage("humanness", [&] { return humanness(*model); });
  if (machine->misid_bounds) {
    v.humanness_bounds = stage("humanness_bounds", [&] {
      return humanness_bounds(machine->misid_bounds->lo, machine->misid_bounds->hi,
                              *v.humanness_reference);
    });
  }
  return v;
}

}  // namespace ttstat
