#pragma once

// Pass criteria for both test formats.
//
// Absolute: the machine performs optimally when its misidentification
// probability equals the human's correct-identification probability.
// Relative ("degree of humanness"): the ratio of the machine's
// misidentification probability to the optimal reference, which is 1/2 in
// the three-player format and the measured human correct rate in the
// two-player format. Ratios above 1 are reported unclamped.

#include "ttstat/interval.hpp"
#include "ttstat/probability_model.hpp"

namespace ttstat {

// 6/10 of optimal: Turing's 30% misidentification measured against 50%.
inline Rational turing_humanness_threshold() { return Rational(3, 5); }

template <Scalar T>
struct HumannessScore {
  T ratio;
  T numerator;    // machine misidentification probability
  T denominator;  // optimal-performance reference
  TestFormat format;
};

template <Scalar T>
struct RequiredHumanRate {
  T value;
  // value > 1: no human baseline can push the ratio below the threshold.
  bool overflow;
};

template <Scalar T>
bool absolute_pass(const BernoulliModel<T>& model, const T& tolerance = default_tolerance<T>());

// Throws UndefinedRatioError for a two-player model whose human baseline is 0.
template <Scalar T>
HumannessScore<T> humanness(const BernoulliModel<T>& model);

// [misid_low / denominator, misid_high / denominator]. Throws DomainError on
// inverted or out-of-range bounds or a nonpositive denominator.
template <Scalar T>
Interval<T> humanness_bounds(const T& misid_low, const T& misid_high, const T& denominator);

// The human correct-identification rate above which a machine with the given
// misidentification rate falls below `humanness_threshold`.
template <Scalar T>
RequiredHumanRate<T> required_human_rate(const T& machine_misid_rate, const T& humanness_threshold);

}  // namespace ttstat
