#pragma once

// Trial file formats.
//
// JSON lines ("tt-trial/1"), one trial object per line:
//   {"schema":"tt-trial/1","trial_id":"r01","format":"three-player",
//    "responses":[{"respondent":"machine","verdict":"machine","correct":true},
//                 {"respondent":"human","verdict":"human","correct":true}]}
//   {"schema":"tt-trial/1","trial_id":"g01","format":"two-player",
//    "respondent":"machine","verdict":"human","correct":false}
// Each response needs a verdict, a correct flag, or both (which must agree).
// Optional "duration_note" (string) and "metadata" (object of strings).
//
// CSV with the fixed header trial_id,format,respondent,verdict,correct. A
// three-player trial spans two consecutive rows sharing a trial_id.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "ttstat/dataset.hpp"

namespace ttstat {

inline constexpr const char* kTrialSchema = "tt-trial/1";
inline constexpr const char* kTrialCsvHeader = "trial_id,format,respondent,verdict,correct";

enum class TrialFileFormat { kAuto, kJsonLines, kCsv };

std::optional<TestFormat> parse_test_format(std::string_view text);

// Throws ValidationError naming the 1-based line for malformed input, the
// trial id for inconsistent trials, and for empty input or mixed formats.
// `format_hint`, when set, fills in missing per-trial formats and must agree
// with any that are given.
ExperimentDataset parse_trials(std::istream& in, std::optional<TestFormat> format_hint = {},
                               TrialFileFormat file_format = TrialFileFormat::kAuto,
                               std::string source = "<stream>");

// kAuto picks CSV for a .csv extension and sniffs the first line otherwise.
ExperimentDataset parse_trials_file(const std::filesystem::path& path,
                                    std::optional<TestFormat> format_hint = {},
                                    TrialFileFormat file_format = TrialFileFormat::kAuto);

void write_jsonl(const ExperimentDataset& dataset, std::ostream& out);
void write_csv(const ExperimentDataset& dataset, std::ostream& out);

}  // namespace ttstat
