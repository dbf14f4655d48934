#pragma once

#include <string>

#include "ttstat/analysis.hpp"

namespace ttstat {

inline constexpr const char* kVerdictSchema = "tt-verdict/1";
inline constexpr const char* kCurveCsvHeader = "p,tail_mass,significant";

enum class ReportMode { kText, kJson };

// Text: one "name: value" line per quantity, rationals shown as
// "num/den = decimal (two-decimal)". JSON: schema tt-verdict/1 with every
// rational as {"num": ..., "den": ...} (integers, or decimal strings when they
// exceed 64 bits).
std::string emit_report(const TestVerdict& verdict, ReportMode mode);

// One CSV row per grid point: p,tail_mass,significant.
std::string emit_curve(const BinomialObservation& obs, const Rational& level,
                       const Rational& grid_step = Rational(1, 100));

// {"num": n, "den": d}
std::string rational_json(const Rational& value);

}  // namespace ttstat
