#pragma once

// Exact binomial machinery.
//
// The significance test here is the "equally or less probable" construction:
// an observed count k out of n is significant at level alpha under success
// probability p0 when the total mass of every outcome j with
// pmf(j) <= pmf(k) is strictly below alpha. The compatible set is the set of
// p for which the observation is not significant.

#include <cstdint>
#include <optional>
#include <vector>

#include "ttstat/dataset.hpp"
#include "ttstat/interval.hpp"
#include "ttstat/rational.hpp"

namespace ttstat {

inline constexpr int kMaxTrials = 100000;

class BinomialObservation {
 public:
  // Throws DomainError unless 1 <= n <= kMaxTrials and 0 <= k <= n.
  BinomialObservation(std::int64_t n, std::int64_t k);

  int n() const { return n_; }
  int k() const { return k_; }

  friend bool operator==(const BinomialObservation&, const BinomialObservation&) = default;

 private:
  int n_;
  int k_;
};

// C(n, k) by the multiplicative recurrence, exact.
mpz_class binomial_coefficient(int n, int k);

// C(n,k) p^k (1-p)^(n-k). Exact for rationals; uses 0^0 = 1.
template <Scalar T>
T binomial_pmf(const BinomialObservation& obs, const T& p);

// pmf(j) for j = 0..n.
template <Scalar T>
std::vector<T> binomial_pmf_table(int n, const T& p);

template <Scalar T>
struct SignificanceResult {
  T pmf_at_k;
  T tail_mass;  // mass of all outcomes with pmf <= pmf_at_k
  T level;
  bool significant;  // tail_mass < level, strictly
  std::vector<int> contributing_outcomes;
};

// Ties are exact for rationals and within relative 1e-12 for doubles.
// Throws DomainError unless p0 in [0,1] and 0 < level < 1. An observation
// that is impossible under p0 yields tail_mass 0 and significant = true.
template <Scalar T>
SignificanceResult<T> exact_significance(const BinomialObservation& obs, const T& p0,
                                         const T& level);

// rejects[k] == exact_significance({n, k}, p0, level).significant for every k,
// computed from one pmf table.
std::vector<bool> rejection_table(int n, const Rational& p0, const Rational& level);

struct GridPoint {
  Rational p;
  Rational tail_mass;
  bool significant;
};

// A classification change located between two probabilities.
struct Boundary {
  Rational lo;
  Rational hi;
  Rational crossing;       // midpoint of [lo, hi]
  bool compatible_below;   // lo side is compatible
};

struct CompatibleSet {
  BinomialObservation observation;
  Rational grid_step;
  Rational level;
  bool refined = false;
  std::vector<GridPoint> points;
  std::vector<Interval<Rational>> compatible;    // closed, maximal, sorted
  std::vector<Interval<Rational>> significant;   // closed, maximal, sorted
  // Open gaps between neighbouring grid points of different classes.
  // Populated only when not refined.
  std::vector<Interval<Rational>> undetermined;
  // Refined crossings, one per gap; populated only when refined.
  std::vector<Boundary> boundaries;
};

// Refinement stops once a gap is at most this wide.
Rational refinement_width();

// Grid {0, step, 2 step, ...} up to 1, with 1 appended when step does not
// divide it. Throws DomainError for step <= 0 or step > 1.
std::vector<Rational> probability_grid(const Rational& grid_step);

// Throws DomainError for grid_step <= 0 or a level outside (0,1).
CompatibleSet compatible_set(const BinomialObservation& obs, const Rational& level,
                             const Rational& grid_step = Rational(1, 100), bool refine = false);

// Complement each interval of correct-identification probabilities into
// misidentification probabilities and return the hull; nullopt when empty.
std::optional<Interval<Rational>> misid_bounds_from_correct(
    const std::vector<Interval<Rational>>& correct);
std::optional<Interval<Rational>> misid_bounds_from_correct(const CompatibleSet& set);

struct KindRates {
  BinomialObservation correct;  // k = correct identifications
  Rational correct_rate;
  Rational misid_rate;
};

// Three-player data reduce to one joint observation per trial. Two-player data
// give independent machine and human observations; an absent kind stays
// nullopt rather than reading as zero.
struct RateEstimate {
  TestFormat format;
  std::optional<KindRates> joint;
  std::optional<KindRates> machine;
  std::optional<KindRates> human;
};

// Throws DomainError for an empty dataset.
RateEstimate estimate_rates(const ExperimentDataset& dataset);

}  // namespace ttstat
