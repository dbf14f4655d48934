#include "ttstat/trial_io.hpp"

#include <json.hpp>

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "ttstat/errors.hpp"

namespace ttstat {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::optional<TestFormat> parse_test_format(std::string_view text) {
  if (text == "three-player") return TestFormat::kThreePlayer;
  if (text == "two-player") return TestFormat::kTwoPlayer;
  return std::nullopt;
}

namespace {

std::optional<RespondentKind> parse_kind(std::string_view text) {
  if (text == "machine") return RespondentKind::kMachine;
  if (text == "human") return RespondentKind::kHuman;
  return std::nullopt;
}

std::optional<Verdict> parse_verdict(std::string_view text) {
  if (text == "human") return Verdict::kDeclaredHuman;
  if (text == "machine") return Verdict::kDeclaredMachine;
  return std::nullopt;
}

// Shared by both readers: resolves verdict/correct redundancy.
Response make_response(RespondentKind kind, std::optional<Verdict> verdict,
                       std::optional<bool> correct, std::size_t line, const std::string& id) {
  if (!verdict && !correct) {
    throw ValidationError("line " + std::to_string(line) + ": trial '" + id +
                              "' response needs a verdict or a correct flag",
                          line, id);
  }
  if (verdict && correct && is_correct(kind, *verdict) != *correct) {
    throw ValidationError("line " + std::to_string(line) + ": trial '" + id + "' " +
                              std::string(to_string(kind)) + " verdict '" +
                              std::string(to_string(*verdict)) + "' contradicts correct=" +
                              (*correct ? "true" : "false"),
                          line, id);
  }
  return {kind, verdict ? *verdict : verdict_for(kind, *correct)};
}

std::optional<TestFormat> resolve_format(std::optional<TestFormat> given,
                                         std::optional<TestFormat> hint, std::size_t line,
                                         const std::string& id) {
  if (given && hint && *given != *hint) {
    throw ValidationError("line " + std::to_string(line) + ": trial '" + id + "' is " +
                              std::string(to_string(*given)) + " but " +
                              std::string(to_string(*hint)) + " was requested",
                          line, id);
  }
  return given ? given : hint;
}

class JsonLineReader {
 public:
  JsonLineReader(const json& obj, std::size_t line) : obj_(obj), line_(line) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw ValidationError("line " + std::to_string(line_) + ": " + msg, line_);
  }

  const json* find(const json& from, const char* key) const {
    auto it = from.find(key);
    return it == from.end() ? nullptr : &*it;
  }

  std::string required_string(const json& from, const char* key) const {
    const json* v = find(from, key);
    if (v == nullptr) fail(std::string("missing field '") + key + "'");
    if (!v->is_string()) fail(std::string("field '") + key + "' must be a string");
    return v->get<std::string>();
  }

  std::optional<std::string> optional_string(const json& from, const char* key) const {
    const json* v = find(from, key);
    if (v == nullptr || v->is_null()) return std::nullopt;
    if (!v->is_string()) fail(std::string("field '") + key + "' must be a string");
    return v->get<std::string>();
  }

  Response response(const json& from, const std::string& id) const {
    const std::string kind_text = required_string(from, "respondent");
    auto kind = parse_kind(kind_text);
    if (!kind) fail("unknown respondent '" + kind_text + "'");
    std::optional<Verdict> verdict;
    if (auto v = optional_string(from, "verdict")) {
      verdict = parse_verdict(*v);
      if (!verdict) fail("unknown verdict '" + *v + "'");
    }
    std::optional<bool> correct;
    if (const json* c = find(from, "correct"); c != nullptr && !c->is_null()) {
      if (!c->is_boolean()) fail("field 'correct' must be a boolean");
      correct = c->get<bool>();
    }
    return make_response(*kind, verdict, correct, line_, id);
  }

  TrialRecord trial(std::optional<TestFormat> hint) const {
    if (!obj_.is_object()) fail("expected a JSON object");
    const std::string schema = required_string(obj_, "schema");
    if (schema != kTrialSchema) fail("unsupported schema '" + schema + "'");

    TrialRecord t;
    t.trial_id = required_string(obj_, "trial_id");
    std::optional<TestFormat> given;
    if (auto f = optional_string(obj_, "format")) {
      given = parse_test_format(*f);
      if (!given) fail("unknown format '" + *f + "'");
    }
    auto format = resolve_format(given, hint, line_, t.trial_id);
    if (!format) fail("trial '" + t.trial_id + "' has no format and no format hint was given");
    t.format = *format;

    if (t.format == TestFormat::kThreePlayer) {
      const json* responses = find(obj_, "responses");
      if (responses == nullptr || !responses->is_array()) {
        fail("three-player trial '" + t.trial_id + "' needs a 'responses' array");
      }
      for (const json& r : *responses) {
        if (!r.is_object()) fail("each response must be an object");
        t.responses.push_back(response(r, t.trial_id));
      }
    } else {
      if (find(obj_, "responses") != nullptr) {
        fail("two-player trial '" + t.trial_id + "' takes a single top-level response");
      }
      t.responses.push_back(response(obj_, t.trial_id));
    }

    t.duration_note = optional_string(obj_, "duration_note");
    if (const json* meta = find(obj_, "metadata"); meta != nullptr && !meta->is_null()) {
      if (!meta->is_object()) fail("field 'metadata' must be an object");
      for (const auto& [key, value] : meta->items()) {
        if (!value.is_string()) fail("metadata value for '" + key + "' must be a string");
        t.metadata.emplace(key, value.get<std::string>());
      }
    }
    try {
      normalize_and_validate(t);
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(line_) + ": " + e.what(), line_,
                            t.trial_id);
    }
    return t;
  }

 private:
  const json& obj_;
  std::size_t line_;
};

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

ExperimentDataset finish(std::vector<TrialRecord> trials, std::string source) {
  if (trials.empty()) throw ValidationError("input contains no trials");
  const TestFormat format = trials.front().format;
  for (const TrialRecord& t : trials) {
    if (t.format != format) {
      throw ValidationError("mixed test formats: trial '" + t.trial_id + "' is " +
                                std::string(to_string(t.format)) + " but trial '" +
                                trials.front().trial_id + "' is " +
                                std::string(to_string(format)),
                            0, t.trial_id);
    }
  }
  return ExperimentDataset(format, std::move(trials), std::move(source));
}

ExperimentDataset parse_jsonl(std::istream& in, std::optional<TestFormat> hint,
                              std::string source) {
  std::vector<TrialRecord> trials;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ValidationError("line " + std::to_string(line_no) + ": malformed JSON (" + e.what() +
                                ")",
                            line_no);
    }
    trials.push_back(JsonLineReader(obj, line_no).trial(hint));
  }
  return finish(std::move(trials), std::move(source));
}

// RFC 4180 fields without embedded newlines.
std::vector<std::string> split_csv(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  if (quoted) throw ValidationError("line " + std::to_string(line_no) + ": unterminated quote", line_no);
  fields.push_back(std::move(field));
  return fields;
}

std::optional<bool> parse_bool_field(const std::string& text, std::size_t line_no) {
  if (text.empty()) return std::nullopt;
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ValidationError("line " + std::to_string(line_no) + ": 'correct' must be true/false, got '" +
                            text + "'",
                        line_no);
}

ExperimentDataset parse_csv(std::istream& in, std::optional<TestFormat> hint, std::string source) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<TrialRecord> trials;
  std::vector<std::size_t> first_line;  // line each trial started on
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!have_header) {
      if (line != kTrialCsvHeader) {
        throw ValidationError("line " + std::to_string(line_no) + ": expected CSV header '" +
                                  kTrialCsvHeader + "'",
                              line_no);
      }
      have_header = true;
      continue;
    }
    const std::vector<std::string> f = split_csv(line, line_no);
    if (f.size() != 5) {
      throw ValidationError("line " + std::to_string(line_no) + ": expected 5 fields, got " +
                                std::to_string(f.size()),
                            line_no);
    }
    const std::string& id = f[0];
    if (id.empty()) throw ValidationError("line " + std::to_string(line_no) + ": empty trial_id", line_no);
    std::optional<TestFormat> given;
    if (!f[1].empty()) {
      given = parse_test_format(f[1]);
      if (!given) {
        throw ValidationError("line " + std::to_string(line_no) + ": unknown format '" + f[1] + "'",
                              line_no, id);
      }
    }
    auto format = resolve_format(given, hint, line_no, id);
    if (!format) {
      throw ValidationError("line " + std::to_string(line_no) + ": trial '" + id +
                                "' has no format and no format hint was given",
                            line_no, id);
    }
    auto kind = parse_kind(f[2]);
    if (!kind) {
      throw ValidationError("line " + std::to_string(line_no) + ": unknown respondent '" + f[2] + "'",
                            line_no, id);
    }
    std::optional<Verdict> verdict;
    if (!f[3].empty()) {
      verdict = parse_verdict(f[3]);
      if (!verdict) {
        throw ValidationError("line " + std::to_string(line_no) + ": unknown verdict '" + f[3] + "'",
                              line_no, id);
      }
    }
    Response r = make_response(*kind, verdict, parse_bool_field(f[4], line_no), line_no, id);

    const bool continues = *format == TestFormat::kThreePlayer && !trials.empty() &&
                           trials.back().trial_id == id &&
                           trials.back().format == TestFormat::kThreePlayer &&
                           trials.back().responses.size() == 1;
    if (continues) {
      trials.back().responses.push_back(r);
      continue;
    }
    TrialRecord t;
    t.trial_id = id;
    t.format = *format;
    t.responses.push_back(r);
    trials.push_back(std::move(t));
    first_line.push_back(line_no);
  }
  if (!have_header) throw ValidationError("input contains no trials");
  for (std::size_t i = 0; i < trials.size(); ++i) {
    try {
      normalize_and_validate(trials[i]);
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(first_line[i]) + ": " + e.what(),
                            first_line[i], trials[i].trial_id);
    }
  }
  return finish(std::move(trials), std::move(source));
}

TrialFileFormat sniff(std::istream& in) {
  const std::streampos start = in.tellg();
  std::string line;
  TrialFileFormat result = TrialFileFormat::kJsonLines;
  while (std::getline(in, line)) {
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos) continue;
    result = line[pos] == '{' ? TrialFileFormat::kJsonLines : TrialFileFormat::kCsv;
    break;
  }
  in.clear();
  in.seekg(start);
  return result;
}

}  // namespace

ExperimentDataset parse_trials(std::istream& in, std::optional<TestFormat> format_hint,
                               TrialFileFormat file_format, std::string source) {
  if (file_format == TrialFileFormat::kAuto) {
    // Streams that cannot seek are treated as JSON lines.
    file_format = in.tellg() == std::streampos(-1) ? TrialFileFormat::kJsonLines : sniff(in);
  }
  if (file_format == TrialFileFormat::kCsv) return parse_csv(in, format_hint, std::move(source));
  return parse_jsonl(in, format_hint, std::move(source));
}

ExperimentDataset parse_trials_file(const std::filesystem::path& path,
                                    std::optional<TestFormat> format_hint,
                                    TrialFileFormat file_format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open trial file '" + path.string() + "'");
  if (file_format == TrialFileFormat::kAuto && path.extension() == ".csv") {
    file_format = TrialFileFormat::kCsv;
  }
  return parse_trials(in, format_hint, file_format, path.string());
}

namespace {

ordered_json response_json(const Response& r) {
  ordered_json j;
  j["respondent"] = std::string(to_string(r.respondent));
  j["verdict"] = std::string(to_string(r.verdict));
  j["correct"] = r.correct();
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_jsonl(const ExperimentDataset& dataset, std::ostream& out) {
  for (const TrialRecord& t : dataset.trials()) {
    ordered_json j;
    j["schema"] = kTrialSchema;
    j["trial_id"] = t.trial_id;
    j["format"] = std::string(to_string(t.format));
    if (t.format == TestFormat::kThreePlayer) {
      ordered_json responses = ordered_json::array();
      for (const Response& r : t.responses) responses.push_back(response_json(r));
      j["responses"] = std::move(responses);
    } else {
      const ordered_json single = response_json(t.responses.front());
      for (const auto& [key, value] : single.items()) j[key] = value;
    }
    if (t.duration_note) j["duration_note"] = *t.duration_note;
    if (!t.metadata.empty()) {
      ordered_json meta = ordered_json::object();
      for (const auto& [key, value] : t.metadata) meta[key] = value;
      j["metadata"] = std::move(meta);
    }
    out << j.dump() << '\n';
  }
}

void write_csv(const ExperimentDataset& dataset, std::ostream& out) {
  out << kTrialCsvHeader << '\n';
  for (const TrialRecord& t : dataset.trials()) {
    for (const Response& r : t.responses) {
      out << csv_field(t.trial_id) << ',' << to_string(t.format) << ',' << to_string(r.respondent)
          << ',' << to_string(r.verdict) << ',' << (r.correct() ? "true" : "false") << '\n';
    }
  }
}

}  // namespace ttstat
