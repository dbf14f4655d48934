#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ttstat/probability_model.hpp"

namespace ttstat {

struct Response {
  RespondentKind respondent;
  Verdict verdict;

  bool correct() const { return is_correct(respondent, verdict); }

  friend bool operator==(const Response&, const Response&) = default;
};

// One interrogation. Two-player records hold one response; three-player
// records hold two, machine first, with complementary verdicts.
struct TrialRecord {
  std::string trial_id;
  TestFormat format = TestFormat::kThreePlayer;
  std::vector<Response> responses;
  std::optional<std::string> duration_note;  // free text, no semantics
  std::map<std::string, std::string> metadata;

  const Response& response(RespondentKind kind) const;

  // Three-player: both identifications correct. Two-player: the one response.
  bool correct() const;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

// Sorts three-player responses machine-first and checks the record's shape.
// Throws ValidationError citing the trial id.
void normalize_and_validate(TrialRecord& record);

class ExperimentDataset {
 public:
  // Validates every trial, format agreement and id uniqueness.
  ExperimentDataset(TestFormat format, std::vector<TrialRecord> trials, std::string source = {});

  TestFormat format() const { return format_; }
  const std::vector<TrialRecord>& trials() const { return trials_; }
  const std::string& source() const { return source_; }
  std::size_t size() const { return trials_.size(); }
  bool empty() const { return trials_.empty(); }

  friend bool operator==(const ExperimentDataset& a, const ExperimentDataset& b) {
    return a.format_ == b.format_ && a.trials_ == b.trials_;
  }

 private:
  TestFormat format_;
  std::vector<TrialRecord> trials_;
  std::string source_;
};

}  // namespace ttstat
