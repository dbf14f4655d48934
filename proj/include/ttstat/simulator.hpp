#pragma once

// Seeded Monte Carlo generation of synthetic experiments.
//
// Generator: xoshiro256** (Blackman & Vigna), state filled from SplitMix64.
// Stream s of seed S starts SplitMix64 at S ^ mix64(s), where mix64 is the
// SplitMix64 output finalizer. A Bernoulli(p) draw takes the top 53 bits u of
// one output and succeeds iff u < p * 2^53, evaluated exactly, so p = 0 never
// succeeds and p = 1 always does.

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

#include "ttstat/dataset.hpp"
#include "ttstat/probability_model.hpp"
#include "ttstat/rational.hpp"

namespace ttstat {

std::uint64_t mix64(std::uint64_t z);

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  std::uint64_t next();

 private:
  std::uint64_t state_;
};

class Xoshiro256StarStar {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256StarStar(std::uint64_t seed);
  static Xoshiro256StarStar for_stream(std::uint64_t seed, std::uint64_t stream);
  static Xoshiro256StarStar from_state(const std::array<std::uint64_t, 4>& state);

  result_type operator()();

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

 private:
  Xoshiro256StarStar() = default;

  std::array<std::uint64_t, 4> s_{};
};

class BernoulliSampler {
 public:
  // Throws DomainError unless 0 <= p <= 1.
  explicit BernoulliSampler(const Rational& p);

  bool operator()(Xoshiro256StarStar& rng) const { return (rng() >> 11) < threshold_; }

 private:
  std::uint64_t threshold_;  // ceil(p * 2^53)
};

struct SimulationConfig {
  ExactModel model;
  // Joint trial count for three-player models, machine sessions otherwise.
  std::uint64_t trials_machine = 0;
  // Must be 0 for three-player models.
  std::uint64_t trials_human = 0;
  std::uint64_t seed = 0;
};

// Three-player: one draw per trial, emitted as a machine and a human response
// with complementary verdicts. Two-player: independent machine and human
// session streams. Deterministic in the config. Throws DomainError on an
// invalid config.
ExperimentDataset simulate(const SimulationConfig& config);

struct PowerRow {
  int n;
  std::uint64_t replications;
  std::uint64_t rejections;
  Rational frequency;
};

// For each n, the fraction of `replications` simulated Binomial(n, p_true)
// experiments in which exact_significance rejects p0 at `level`.
// Replication r draws from stream r of `seed`.
std::vector<PowerRow> power_sweep(const Rational& p_true, const Rational& p0, const Rational& level,
                                  const std::vector<int>& trial_counts,
                                  std::uint64_t replications, std::uint64_t seed);

}  // namespace ttstat
