#include "ttstat/dataset.hpp"

#include <algorithm>
#include <unordered_set>

#include "ttstat/errors.hpp"

namespace ttstat {

const Response& TrialRecord::response(RespondentKind kind) const {
  auto it = std::find_if(responses.begin(), responses.end(),
                         [kind](const Response& r) { return r.respondent == kind; });
  if (it == responses.end()) {
    throw ValidationError("trial has no " + std::string(to_string(kind)) + " response", 0,
                          trial_id);
  }
  return *it;
}

bool TrialRecord::correct() const {
  if (format == TestFormat::kThreePlayer) return response(RespondentKind::kMachine).correct();
  return responses.front().correct();
}

void normalize_and_validate(TrialRecord& record) {
  auto fail = [&](const std::string& msg) {
    return ValidationError("trial '" + record.trial_id + "': " + msg, 0, record.trial_id);
  };
  if (record.trial_id.empty()) throw ValidationError("trial_id must be non-empty");
  if (record.format == TestFormat::kTwoPlayer) {
    if (record.responses.size() != 1) throw fail("two-player trials carry exactly one response");
    return;
  }
  if (record.responses.size() != 2) throw fail("three-player trials carry exactly two responses");
  std::stable_sort(record.responses.begin(), record.responses.end(),
                   [](const Response& a, const Response& b) {
                     return a.respondent == RespondentKind::kMachine &&
                            b.respondent == RespondentKind::kHuman;
                   });
  const Response& machine = record.responses[0];
  const Response& human = record.responses[1];
  if (machine.respondent != RespondentKind::kMachine || human.respondent != RespondentKind::kHuman) {
    throw fail("three-player trials need one machine and one human response");
  }
  if (machine.verdict == human.verdict) {
    throw fail("three-player verdicts must be complementary (one human, one machine), both were '" +
               std::string(to_string(machine.verdict)) + "'");
  }
}

ExperimentDataset::ExperimentDataset(TestFormat format, std::vector<TrialRecord> trials,
                                     std::string source)
    : format_(format), trials_(std::move(trials)), source_(std::move(source)) {
  std::unordered_set<std::string> seen;
  for (TrialRecord& t : trials_) {
    if (t.format != format_) {
      throw ValidationError("trial '" + t.trial_id + "' is " + std::string(to_string(t.format)) +
                                " but the dataset is " + std::string(to_string(format_)),
                            0, t.trial_id);
    }
    normalize_and_validate(t);
    if (!seen.insert(t.trial_id).second) {
      throw ValidationError("duplicate trial_id '" + t.trial_id + "'", 0, t.trial_id);
    }
  }
}

}  // namespace ttstat
