// ttstat: command-line front end for the Turing-test statistics library.
//
// Exit codes: 0 analysis completed, 2 input validation failure,
// 3 statistical precondition failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ttstat/analysis.hpp"
#include "ttstat/errors.hpp"
#include "ttstat/report.hpp"
#include "ttstat/simulator.hpp"
#include "ttstat/trial_io.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;
using namespace ttstat;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitPrecondition = 3;

ordered_json rj(const Rational& r) { return ordered_json::parse(rational_json(r)); }

std::string show(const Rational& r) {
  return to_fraction_string(r) + " = " + to_decimal_string(r) + " (" + to_fixed_string(r, 2) + ")";
}

std::string show(const Interval<Rational>& iv) {
  return "[" + to_fraction_string(iv.lo) + ", " + to_fraction_string(iv.hi) + "] = [" +
         to_fixed_string(iv.lo, 2) + ", " + to_fixed_string(iv.hi, 2) + "]";
}

TestFormat require_format(const std::string& text) {
  auto f = parse_test_format(text);
  if (!f) throw ValidationError("unknown format '" + text + "' (use three-player or two-player)");
  return *f;
}

bool parse_flag(const std::string& text) {
  if (text == "true" || text == "yes" || text == "1") return true;
  if (text == "false" || text == "no" || text == "0") return false;
  throw ValidationError("expected true/false, got '" + text + "'");
}

std::string join(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? ", " : "") + std::to_string(values[i]);
  return out;
}

struct Options {
  std::string file;
  std::string p0 = "1/2";
  std::string level = "0.01";
  std::string grid_step = "0.01";
  std::string threshold = "3/5";
  std::string format;
  std::string input_format = "auto";
  bool refine = false;
  bool json = false;
  bool use_float = false;

  std::int64_t n = 0;
  std::int64_t k = 0;
  std::string p;

  std::string misid;
  std::string human_correct;
  std::string misid_low;
  std::string misid_high;
  std::string denominator;

  std::string p_misid = "1/2";
  std::string p_human;
  std::uint64_t trials_machine = 0;
  std::uint64_t trials_human = 0;
  std::uint64_t seed = 0;
  std::string out;
  bool csv = false;

  std::string p_true;
  std::vector<int> trial_counts;
  std::uint64_t replications = 1000;

  std::string paired;
  std::string forced;
};

int run_analyze(const Options& o) {
  std::optional<TestFormat> hint;
  if (!o.format.empty()) hint = require_format(o.format);
  TrialFileFormat ff = TrialFileFormat::kAuto;
  if (o.input_format == "jsonl") ff = TrialFileFormat::kJsonLines;
  else if (o.input_format == "csv") ff = TrialFileFormat::kCsv;
  else if (o.input_format != "auto") throw ValidationError("unknown input format '" + o.input_format + "'");

  AnalysisConfig cfg;
  cfg.p0 = parse_rational(o.p0);
  cfg.level = parse_rational(o.level);
  cfg.grid_step = parse_rational(o.grid_step);
  cfg.refine = o.refine;
  cfg.humanness_threshold = parse_rational(o.threshold);
  const ExperimentDataset data = parse_trials_file(o.file, hint, ff);
  std::cout << emit_report(verdict(data, cfg), o.json ? ReportMode::kJson : ReportMode::kText);
  return kExitOk;
}

int run_pmf(const Options& o) {
  const BinomialObservation obs(o.n, o.k);
  const Rational p = parse_rational(o.p);
  if (o.use_float) {
    std::ostringstream s;
    s.precision(17);
    s << binomial_pmf<double>(obs, to_double(p));
    std::cout << (o.json ? "{\"pmf\": \"" + s.str() + "\"}" : "pmf: " + s.str()) << "\n";
    return kExitOk;
  }
  const Rational value = binomial_pmf<Rational>(obs, p);
  if (o.json) {
    ordered_json j;
    j["n"] = obs.n();
    j["k"] = obs.k();
    j["p"] = rj(p);
    j["pmf"] = rj(value);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "pmf: " << show(value) << "\n";
  }
  return kExitOk;
}

int run_significance(const Options& o) {
  const BinomialObservation obs(o.n, o.k);
  const Rational p0 = parse_rational(o.p0);
  const Rational level = parse_rational(o.level);
  if (o.use_float) {
    const auto r = exact_significance<double>(obs, to_double(p0), to_double(level));
    std::ostringstream s;
    s.precision(17);
    s << "pmf at k: " << r.pmf_at_k << "\ntail mass: " << r.tail_mass
      << "\ncontributing outcomes: {" << join(r.contributing_outcomes) << "}\nsignificant="
      << (r.significant ? "true" : "false") << "\n";
    std::cout << s.str();
    return kExitOk;
  }
  const auto r = exact_significance<Rational>(obs, p0, level);
  if (o.json) {
    ordered_json j;
    j["n"] = obs.n();
    j["k"] = obs.k();
    j["p0"] = rj(p0);
    j["level"] = rj(level);
    j["pmf_at_k"] = rj(r.pmf_at_k);
    j["tail_mass"] = rj(r.tail_mass);
    j["significant"] = r.significant;
    j["contributing_outcomes"] = r.contributing_outcomes;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "pmf at k: " << show(r.pmf_at_k) << "\n"
              << "tail mass: " << show(r.tail_mass) << "\n"
              << "contributing outcomes: {" << join(r.contributing_outcomes) << "}\n"
              << "significant=" << (r.significant ? "true" : "false") << "\n";
  }
  return kExitOk;
}

int run_interval(const Options& o) {
  const BinomialObservation obs(o.n, o.k);
  const CompatibleSet set = compatible_set(obs, parse_rational(o.level),
                                           parse_rational(o.grid_step), o.refine);
  const auto misid = misid_bounds_from_correct(set);
  if (o.json) {
    auto intervals = [](const std::vector<Interval<Rational>>& ivs) {
      ordered_json arr = ordered_json::array();
      for (const auto& iv : ivs) arr.push_back({{"lo", rj(iv.lo)}, {"hi", rj(iv.hi)}});
      return arr;
    };
    ordered_json j;
    j["n"] = obs.n();
    j["k"] = obs.k();
    j["level"] = rj(set.level);
    j["grid_step"] = rj(set.grid_step);
    j["refined"] = set.refined;
    j["compatible"] = intervals(set.compatible);
    j["significant"] = intervals(set.significant);
    j["undetermined"] = intervals(set.undetermined);
    ordered_json b = ordered_json::array();
    for (const Boundary& x : set.boundaries) {
      b.push_back({{"lo", rj(x.lo)}, {"hi", rj(x.hi)}, {"crossing", rj(x.crossing)},
                   {"compatible_below", x.compatible_below}});
    }
    j["boundaries"] = std::move(b);
    j["misid_bounds"] = misid ? ordered_json{{"lo", rj(misid->lo)}, {"hi", rj(misid->hi)}}
                              : ordered_json(nullptr);
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }
  auto print = [](const char* name, const std::vector<Interval<Rational>>& ivs) {
    std::cout << name << ":";
    if (ivs.empty()) std::cout << " none";
    for (const auto& iv : ivs) std::cout << " " << show(iv);
    std::cout << "\n";
  };
  print("compatible", set.compatible);
  print("significant", set.significant);
  if (set.refined) {
    for (const Boundary& b : set.boundaries) {
      std::cout << "boundary: " << to_decimal_string(b.crossing, 8) << " (compatible "
                << (b.compatible_below ? "below" : "above") << ")\n";
    }
  } else {
    std::cout << "undetermined:";
    if (set.undetermined.empty()) std::cout << " none";
    for (const auto& iv : set.undetermined) {
      std::cout << " (" << to_fixed_string(iv.lo, 2) << ", " << to_fixed_string(iv.hi, 2) << ")";
    }
    std::cout << "\n";
  }
  std::cout << "misidentification bounds: " << (misid ? show(*misid) : std::string("none")) << "\n";
  return kExitOk;
}

int run_humanness(const Options& o) {
  const Rational threshold = parse_rational(o.threshold);
  if (!o.misid_low.empty() || !o.misid_high.empty()) {
    if (o.misid_low.empty() || o.misid_high.empty() || o.denominator.empty()) {
      throw ValidationError("bounds mode needs --misid-low, --misid-high and --denominator");
    }
    const auto b = humanness_bounds(parse_rational(o.misid_low), parse_rational(o.misid_high),
                                    parse_rational(o.denominator));
    std::cout << "humanness bounds: " << show(b) << "\n";
    return kExitOk;
  }
  if (o.misid.empty()) throw ValidationError("--misid is required");
  const Rational misid = parse_rational(o.misid);
  const TestFormat format = require_format(o.format.empty() ? "three-player" : o.format);
  std::optional<ExactModel> model;
  if (format == TestFormat::kThreePlayer) {
    model = make_three_player_model(misid);
  } else if (!o.human_correct.empty()) {
    model = make_two_player_model(misid, parse_rational(o.human_correct));
  }
  const auto required = required_human_rate(misid, threshold);
  if (o.json) {
    ordered_json j;
    j["format"] = std::string(to_string(format));
    if (model) {
      const auto score = humanness(*model);
      j["ratio"] = rj(score.ratio);
      j["denominator"] = rj(score.denominator);
      j["absolute_pass"] = absolute_pass(*model);
    } else {
      j["ratio"] = nullptr;
    }
    j["required_human_rate"] = {{"value", rj(required.value)}, {"overflow", required.overflow}};
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }
  if (model) {
    const auto score = humanness(*model);
    std::cout << "humanness: " << show(score.ratio) << "\n"
              << "reference: " << show(score.denominator) << "\n"
              << "absolute pass: " << (absolute_pass(*model) ? "true" : "false") << "\n";
  } else {
    std::cout << "human baseline: not reported\n";
  }
  std::cout << "required human rate: " << show(required.value)
            << (required.overflow ? " (exceeds 1: threshold cannot be missed)" : "") << "\n";
  return kExitOk;
}

int run_simulate(const Options& o) {
  const TestFormat format = require_format(o.format.empty() ? "three-player" : o.format);
  const Rational misid = parse_rational(o.p_misid);
  SimulationConfig cfg{format == TestFormat::kThreePlayer
                           ? make_three_player_model(misid)
                           : make_two_player_model(misid, parse_rational(o.p_human.empty() ? "1/2" : o.p_human)),
                       o.trials_machine, o.trials_human, o.seed};
  const ExperimentDataset data = simulate(cfg);
  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out, std::ios::binary);
    if (!file) throw ValidationError("cannot write '" + o.out + "'");
  }
  std::ostream& out = o.out.empty() ? std::cout : file;
  if (o.csv) {
    write_csv(data, out);
  } else {
    write_jsonl(data, out);
  }
  return kExitOk;
}

int run_curve(const Options& o) {
  std::cout << emit_curve(BinomialObservation(o.n, o.k), parse_rational(o.level),
                          parse_rational(o.grid_step));
  return kExitOk;
}

int run_classify(const Options& o) {
  const TestFormat f = classify_format({parse_flag(o.paired), parse_flag(o.forced)});
  std::cout << to_string(f) << "\n";
  return kExitOk;
}

int run_power(const Options& o) {
  const auto rows = power_sweep(parse_rational(o.p_true), parse_rational(o.p0),
                                parse_rational(o.level), o.trial_counts, o.replications, o.seed);
  std::cout << "n,replications,rejections,frequency\n";
  for (const PowerRow& r : rows) {
    std::cout << r.n << "," << r.replications << "," << r.rejections << ","
              << to_decimal_string(r.frequency, 6) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact binomial analysis of Turing-test experiments"};
  app.require_subcommand(1);
  Options o;

  auto add_stats = [&](CLI::App* sub, bool with_p0) {
    if (with_p0) sub->add_option("--p0", o.p0, "null success probability (default 1/2)");
    sub->add_option("--level", o.level, "significance level (default 0.01)");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "run the verdict pipeline on a trial file");
  analyze->add_option("file", o.file, "trial file (JSON lines or CSV)")->required();
  add_stats(analyze, true);
  analyze->add_option("--grid-step", o.grid_step, "compatible-set grid step (default 0.01)");
  analyze->add_flag("--refine", o.refine, "bisect classification changes to width 1e-6");
  analyze->add_option("--threshold", o.threshold, "humanness threshold (default 3/5)");
  analyze->add_option("--format", o.format, "expected test format: three-player or two-player");
  analyze->add_option("--input-format", o.input_format, "auto, jsonl or csv");
  analyze->add_flag("--json", o.json, "emit tt-verdict/1 JSON");

  CLI::App* pmf = app.add_subcommand("pmf", "binomial probability of k successes in n trials");
  pmf->add_option("--n", o.n, "trials")->required();
  pmf->add_option("--k", o.k, "successes")->required();
  pmf->add_option("--p", o.p, "success probability")->required();
  pmf->add_flag("--float", o.use_float, "double precision instead of exact");
  pmf->add_flag("--json", o.json, "JSON output");

  CLI::App* sig = app.add_subcommand("significance", "equally-or-less-probable significance test");
  sig->add_option("--n", o.n, "trials")->required();
  sig->add_option("--k", o.k, "successes")->required();
  add_stats(sig, true);
  sig->add_flag("--float", o.use_float, "double precision instead of exact");
  sig->add_flag("--json", o.json, "JSON output");

  CLI::App* interval = app.add_subcommand("interval", "compatible success probabilities");
  interval->add_option("--n", o.n, "trials")->required();
  interval->add_option("--k", o.k, "successes")->required();
  add_stats(interval, false);
  interval->add_option("--grid-step", o.grid_step, "grid step (default 0.01)");
  interval->add_flag("--refine", o.refine, "bisect classification changes to width 1e-6");
  interval->add_flag("--json", o.json, "JSON output");

  CLI::App* hum = app.add_subcommand("humanness", "degree of humanness and threshold checks");
  hum->add_option("--format", o.format, "three-player (default) or two-player");
  hum->add_option("--misid", o.misid, "machine misidentification probability");
  hum->add_option("--human-correct", o.human_correct, "human correct-identification probability");
  hum->add_option("--threshold", o.threshold, "humanness threshold (default 3/5)");
  hum->add_option("--misid-low", o.misid_low, "lower misidentification bound");
  hum->add_option("--misid-high", o.misid_high, "upper misidentification bound");
  hum->add_option("--denominator", o.denominator, "reference probability for bounds");
  hum->add_flag("--json", o.json, "JSON output");

  CLI::App* simulate_cmd = app.add_subcommand("simulate", "generate a synthetic trial file");
  simulate_cmd->add_option("--format", o.format, "three-player (default) or two-player");
  simulate_cmd->add_option("--p-misid", o.p_misid, "machine misidentification probability");
  simulate_cmd->add_option("--p-human", o.p_human, "human correct-identification probability");
  simulate_cmd->add_option("--trials-machine", o.trials_machine, "joint trials or machine sessions")
      ->required();
  simulate_cmd->add_option("--trials-human", o.trials_human, "human sessions (two-player)");
  simulate_cmd->add_option("--seed", o.seed, "64-bit seed");
  simulate_cmd->add_option("--out", o.out, "output path (default stdout)");
  simulate_cmd->add_flag("--csv", o.csv, "write CSV instead of JSON lines");

  CLI::App* curve = app.add_subcommand("curve", "tail mass over a probability grid as CSV");
  curve->add_option("--n", o.n, "trials")->required();
  curve->add_option("--k", o.k, "successes")->required();
  add_stats(curve, false);
  curve->add_option("--grid-step", o.grid_step, "grid step (default 0.01)");

  CLI::App* classify = app.add_subcommand("classify", "three-player or two-player from the design");
  classify->add_option("--paired", o.paired, "interrogator converses with both respondents")
      ->required();
  classify->add_option("--forced-complementary", o.forced,
                       "interrogator must name exactly one respondent human")
      ->required();

  CLI::App* power = app.add_subcommand("power", "rejection frequency by trial count");
  power->add_option("--p-true", o.p_true, "true success probability")->required();
  add_stats(power, true);
  power->add_option("--n", o.trial_counts, "trial counts")->required()->delimiter(',');
  power->add_option("--replications", o.replications, "replications per trial count");
  power->add_option("--seed", o.seed, "64-bit seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (analyze->parsed()) return run_analyze(o);
    if (pmf->parsed()) return run_pmf(o);
    if (sig->parsed()) return run_significance(o);
    if (interval->parsed()) return run_interval(o);
    if (hum->parsed()) return run_humanness(o);
    if (simulate_cmd->parsed()) return run_simulate(o);
    if (curve->parsed()) return run_curve(o);
    if (classify->parsed()) return run_classify(o);
    if (power->parsed()) return run_power(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.category() == ErrorCategory::kInputValidation ? kExitValidation : kExitPrecondition;
  }
  return kExitValidation;
}
