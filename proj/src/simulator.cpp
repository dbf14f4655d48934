#include "ttstat/simulator.hpp"

#include <cstdio>
#include <string>

#include "ttstat/errors.hpp"
#include "ttstat/exact_stats.hpp"

namespace ttstat {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return mix64(state_);
}

Xoshiro256StarStar::Xoshiro256StarStar(std::uint64_t seed) {
  SplitMix64 sm(seed);
  for (std::uint64_t& word : s_) word = sm.next();
}

Xoshiro256StarStar Xoshiro256StarStar::for_stream(std::uint64_t seed, std::uint64_t stream) {
  return Xoshiro256StarStar(seed ^ mix64(stream));
}

Xoshiro256StarStar Xoshiro256StarStar::from_state(const std::array<std::uint64_t, 4>& state) {
  Xoshiro256StarStar rng;
  rng.s_ = state;
  return rng;
}

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Xoshiro256StarStar::result_type Xoshiro256StarStar::operator()() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

BernoulliSampler::BernoulliSampler(const Rational& p) {
  require_probability(p, "Bernoulli probability");
  mpz_class scaled = p.get_num() << 53;
  mpz_cdiv_q(scaled.get_mpz_t(), scaled.get_mpz_t(), p.get_den().get_mpz_t());
  threshold_ = static_cast<std::uint64_t>(scaled.get_ui());
}

namespace {

std::string numbered_id(char prefix, std::uint64_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c%06llu", prefix, static_cast<unsigned long long>(index));
  return buf;
}

TrialRecord two_player_record(std::string id, RespondentKind kind, bool correct) {
  TrialRecord t;
  t.trial_id = std::move(id);
  t.format = TestFormat::kTwoPlayer;
  t.responses.push_back({kind, verdict_for(kind, correct)});
  return t;
}

}  // namespace

ExperimentDataset simulate(const SimulationConfig& config) {
  if (config.trials_machine == 0) throw DomainError("trials_machine must be positive");
  const ExactModel& model = config.model;
  std::vector<TrialRecord> trials;
  const std::string source = "simulate(seed=" + std::to_string(config.seed) + ")";

  if (model.format() == TestFormat::kThreePlayer) {
    if (config.trials_human != 0) {
      throw DomainError("three-player simulations count joint trials; trials_human must be 0");
    }
    Xoshiro256StarStar rng = Xoshiro256StarStar::for_stream(config.seed, 0);
    const BernoulliSampler misidentified(model.p_machine_misid());
    trials.reserve(config.trials_machine);
    for (std::uint64_t i = 1; i <= config.trials_machine; ++i) {
      const bool correct = !misidentified(rng);
      TrialRecord t;
      t.trial_id = numbered_id('t', i);
      t.format = TestFormat::kThreePlayer;
      const Verdict machine_verdict = verdict_for(RespondentKind::kMachine, correct);
      t.responses.push_back({RespondentKind::kMachine, machine_verdict});
      t.responses.push_back({RespondentKind::kHuman, opposite(machine_verdict)});
      trials.push_back(std::move(t));
    }
    return ExperimentDataset(TestFormat::kThreePlayer, std::move(trials), source);
  }

  Xoshiro256StarStar machine_rng = Xoshiro256StarStar::for_stream(config.seed, 0);
  Xoshiro256StarStar human_rng = Xoshiro256StarStar::for_stream(config.seed, 1);
  const BernoulliSampler machine_misidentified(model.p_machine_misid());
  const BernoulliSampler human_correct(model.p_human_correct());
  trials.reserve(config.trials_machine + config.trials_human);
  for (std::uint64_t i = 1; i <= config.trials_machine; ++i) {
    trials.push_back(two_player_record(numbered_id('m', i), RespondentKind::kMachine,
                                       !machine_misidentified(machine_rng)));
  }
  for (std::uint64_t i = 1; i <= config.trials_human; ++i) {
    trials.push_back(
        two_player_record(numbered_id('h', i), RespondentKind::kHuman, human_correct(human_rng)));
  }
  return ExperimentDataset(TestFormat::kTwoPlayer, std::move(trials), source);
}

std::vector<PowerRow> power_sweep(const Rational& p_true, const Rational& p0, const Rational& level,
                                  const std::vector<int>& trial_counts,
                                  std::uint64_t replications, std::uint64_t seed) {
  for (const Rational* p : {&p_true, &p0, &level}) {
    if (!(*p > 0 && *p < 1)) throw DomainError("power_sweep probabilities must lie in (0,1)");
  }
  if (replications == 0) throw DomainError("replications must be positive");
  if (trial_counts.empty()) throw DomainError("trial_counts must be non-empty");

  std::vector<std::vector<bool>> rejects;
  std::vector<PowerRow> rows;
  for (int n : trial_counts) {
    if (n < 1 || n > kMaxTrials) throw DomainError("trial counts must be positive");
    rejects.push_back(rejection_table(n, p0, level));
    rows.push_back({n, replications, 0, Rational(0)});
  }

  const BernoulliSampler success(p_true);
  for (std::uint64_t r = 0; r < replications; ++r) {
    Xoshiro256StarStar rng = Xoshiro256StarStar::for_stream(seed, r);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      int k = 0;
      for (int trial = 0; trial < rows[i].n; ++trial) k += success(rng) ? 1 : 0;
      if (rejects[i][static_cast<std::size_t>(k)]) ++rows[i].rejections;
    }
  }
  for (PowerRow& row : rows) {
    row.frequency = Rational(mpz_class(static_cast<unsigned long>(row.rejections)),
                             mpz_class(static_cast<unsigned long>(row.replications)));
    row.frequency.canonicalize();
  }
  return rows;
}

}  // namespace ttstat
