#include "ttstat/report.hpp"

#include <json.hpp>

#include <sstream>

namespace ttstat {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json integer_json(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

ordered_json to_json(const Rational& r) {
  ordered_json j;
  j["num"] = integer_json(r.get_num());
  j["den"] = integer_json(r.get_den());
  return j;
}

ordered_json to_json(const Interval<Rational>& iv) {
  ordered_json j;
  j["lo"] = to_json(iv.lo);
  j["hi"] = to_json(iv.hi);
  return j;
}

template <class T>
ordered_json optional_json(const std::optional<T>& v) {
  return v ? to_json(*v) : ordered_json(nullptr);
}

ordered_json intervals_json(const std::vector<Interval<Rational>>& ivs) {
  ordered_json arr = ordered_json::array();
  for (const auto& iv : ivs) arr.push_back(to_json(iv));
  return arr;
}

ordered_json analysis_json(const ObservationAnalysis& a) {
  ordered_json j;
  j["label"] = a.label;
  j["n"] = a.rates.correct.n();
  j["k"] = a.rates.correct.k();
  j["correct_rate"] = to_json(a.rates.correct_rate);
  j["misid_rate"] = to_json(a.rates.misid_rate);

  ordered_json sig;
  sig["pmf_at_k"] = to_json(a.significance.pmf_at_k);
  sig["tail_mass"] = to_json(a.significance.tail_mass);
  sig["level"] = to_json(a.significance.level);
  sig["significant"] = a.significance.significant;
  sig["contributing_outcomes"] = a.significance.contributing_outcomes;
  j["significance"] = std::move(sig);

  ordered_json cs;
  cs["grid_step"] = to_json(a.compatible.grid_step);
  cs["level"] = to_json(a.compatible.level);
  cs["refined"] = a.compatible.refined;
  cs["compatible"] = intervals_json(a.compatible.compatible);
  cs["significant"] = intervals_json(a.compatible.significant);
  cs["undetermined"] = intervals_json(a.compatible.undetermined);
  ordered_json boundaries = ordered_json::array();
  for (const Boundary& b : a.compatible.boundaries) {
    ordered_json bj;
    bj["lo"] = to_json(b.lo);
    bj["hi"] = to_json(b.hi);
    bj["crossing"] = to_json(b.crossing);
    bj["compatible_below"] = b.compatible_below;
    boundaries.push_back(std::move(bj));
  }
  cs["boundaries"] = std::move(boundaries);
  j["compatible_set"] = std::move(cs);
  j["misid_bounds"] = optional_json(a.misid_bounds);
  return j;
}

std::string json_report(const TestVerdict& v) {
  ordered_json j;
  j["schema"] = kVerdictSchema;
  j["format"] = std::string(to_string(v.format));
  j["source"] = v.source;

  ordered_json cfg;
  cfg["p0"] = to_json(v.config.p0);
  cfg["level"] = to_json(v.config.level);
  cfg["grid_step"] = to_json(v.config.grid_step);
  cfg["refine"] = v.config.refine;
  cfg["humanness_threshold"] = to_json(v.config.humanness_threshold);
  j["config"] = std::move(cfg);

  ordered_json analyses = ordered_json::array();
  for (const ObservationAnalysis& a : v.analyses) analyses.push_back(analysis_json(a));
  j["observations"] = std::move(analyses);

  j["machine_misid_rate"] = optional_json(v.machine_misid_rate);
  j["humanness_reference"] = optional_json(v.humanness_reference);
  if (v.humanness_point) {
    ordered_json hp;
    hp["ratio"] = to_json(v.humanness_point->ratio);
    hp["numerator"] = to_json(v.humanness_point->numerator);
    hp["denominator"] = to_json(v.humanness_point->denominator);
    j["humanness_point"] = std::move(hp);
  } else {
    j["humanness_point"] = nullptr;
  }
  j["humanness_bounds"] = optional_json(v.humanness_bounds);
  j["absolute_pass"] = v.absolute_pass ? ordered_json(*v.absolute_pass) : ordered_json(nullptr);
  if (v.required_human_rate) {
    ordered_json rr;
    rr["threshold"] = to_json(v.config.humanness_threshold);
    rr["value"] = to_json(v.required_human_rate->value);
    rr["overflow"] = v.required_human_rate->overflow;
    j["required_human_rate"] = std::move(rr);
  } else {
    j["required_human_rate"] = nullptr;
  }
  return j.dump(2) + "\n";
}

std::string show(const Rational& r) {
  return to_fraction_string(r) + " = " + to_decimal_string(r) + " (" + to_fixed_string(r, 2) + ")";
}

std::string show(const Interval<Rational>& iv, char open = '[', char close = ']') {
  return open + to_fraction_string(iv.lo) + ", " + to_fraction_string(iv.hi) + close + " = " +
         open + to_fixed_string(iv.lo, 2) + ", " + to_fixed_string(iv.hi, 2) + close;
}

std::string show_all(const std::vector<Interval<Rational>>& ivs, char open = '[',
                     char close = ']') {
  if (ivs.empty()) return "none";
  std::string out;
  for (std::size_t i = 0; i < ivs.size(); ++i) {
    if (i > 0) out += "; ";
    out += show(ivs[i], open, close);
  }
  return out;
}

std::string text_report(const TestVerdict& v) {
  std::ostringstream out;
  out << "verdict: " << to_string(v.format) << " test\n";
  out << "source: " << v.source << "\n";
  out << "p0: " << to_fraction_string(v.config.p0) << "\n";
  out << "level: " << to_fraction_string(v.config.level) << "\n";
  out << "grid step: " << to_fraction_string(v.config.grid_step)
      << (v.config.refine ? " (refined)" : "") << "\n";
  out << "humanness threshold: " << to_fraction_string(v.config.humanness_threshold) << "\n";

  for (const ObservationAnalysis& a : v.analyses) {
    const std::string p = "[" + a.label + "] ";
    out << p << "observation: n=" << a.rates.correct.n() << " k=" << a.rates.correct.k()
        << " correct identifications\n";
    out << p << "correct rate: " << show(a.rates.correct_rate) << "\n";
    out << p << "pmf at k: " << show(a.significance.pmf_at_k) << "\n";
    out << p << "tail mass: " << show(a.significance.tail_mass) << "\n";
    out << p << "contributing outcomes: {";
    for (std::size_t i = 0; i < a.significance.contributing_outcomes.size(); ++i) {
      out << (i > 0 ? ", " : "") << a.significance.contributing_outcomes[i];
    }
    out << "}\n";
    out << p << "significant=" << (a.significance.significant ? "true" : "false") << " ("
        << (a.significance.significant ? "tail mass < level: reject p0"
                                       : "tail mass >= level: cannot reject p0")
        << ")\n";
    out << p << "compatible: " << show_all(a.compatible.compatible) << "\n";
    out << p << "significant region: " << show_all(a.compatible.significant) << "\n";
    if (a.compatible.refined) {
      out << p << "boundaries:";
      if (a.compatible.boundaries.empty()) out << " none";
      for (const Boundary& b : a.compatible.boundaries) {
        out << " " << to_decimal_string(b.crossing, 8) << " (compatible "
            << (b.compatible_below ? "below" : "above") << ")";
      }
      out << "\n";
    } else {
      out << p << "undetermined: " << show_all(a.compatible.undetermined, '(', ')') << "\n";
    }
    out << p << "misidentification bounds: "
        << (a.misid_bounds ? show(*a.misid_bounds) : std::string("none")) << "\n";
  }

  if (v.machine_misid_rate) {
    out << "machine misidentification rate: " << show(*v.machine_misid_rate) << "\n";
  }
  if (v.humanness_reference) {
    out << "human baseline: " << show(*v.humanness_reference)
        << (v.format == TestFormat::kThreePlayer ? " [three-player optimum]" : "") << "\n";
  } else {
    out << "human baseline: not reported\n";
  }
  out << "humanness point: "
      << (v.humanness_point ? show(v.humanness_point->ratio) : std::string("not available")) << "\n";
  out << "humanness bounds: "
      << (v.humanness_bounds ? show(*v.humanness_bounds) : std::string("not available")) << "\n";
  if (v.absolute_pass) {
    out << "absolute pass (point estimate): " << (*v.absolute_pass ? "true" : "false") << "\n";
  }
  if (v.required_human_rate) {
    const auto& rr = *v.required_human_rate;
    out << "required human rate: " << show(rr.value) << "\n";
    if (rr.overflow) {
      out << "threshold check: no human baseline can put the machine below humanness "
          << to_fraction_string(v.config.humanness_threshold) << "\n";
    } else {
      out << "threshold check: a human correct-identification rate above "
          << to_fixed_string(rr.value * 100, 2) << "% means humanness below "
          << to_fraction_string(v.config.humanness_threshold) << "\n";
    }
  }
  return out.str();
}

std::string grid_decimal(const Rational& p, const Rational& step) {
  // Pad to the step's decimal places when the step has a terminating expansion.
  if (!has_terminating_decimal(step) || !has_terminating_decimal(p)) return to_decimal_string(p, 20);
  const std::string step_text = to_decimal_string(step);
  const auto dot = step_text.find('.');
  const int places = dot == std::string::npos ? 0 : static_cast<int>(step_text.size() - dot - 1);
  const std::string exact = to_decimal_string(p);
  const auto p_dot = exact.find('.');
  const int p_places = p_dot == std::string::npos ? 0 : static_cast<int>(exact.size() - p_dot - 1);
  return p_places > places ? exact : to_fixed_string(p, places);
}

// Exact when the expansion terminates within 30 places, otherwise rounded.
std::string curve_decimal(const Rational& value) {
  const std::string exact = to_decimal_string(value, 30);
  if (exact.find("...") == std::string::npos && exact.size() <= 32) return exact;
  return to_fixed_string(value, 30);
}

}  // namespace

std::string rational_json(const Rational& value) { return to_json(value).dump(); }

std::string emit_report(const TestVerdict& verdict, ReportMode mode) {
  return mode == ReportMode::kJson ? json_report(verdict) : text_report(verdict);
}

std::string emit_curve(const BinomialObservation& obs, const Rational& level,
                       const Rational& grid_step) {
  const CompatibleSet set = compatible_set(obs, level, grid_step, false);
  std::ostringstream out;
  out << kCurveCsvHeader << "\n";
  for (const GridPoint& pt : set.points) {
    out << grid_decimal(pt.p, grid_step) << "," << curve_decimal(pt.tail_mass) << ","
        << (pt.significant ? "true" : "false") << "\n";
  }
  return out.str();
}

}  // namespace ttstat
