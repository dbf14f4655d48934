#include <doctest.h>

#include <cmath>
#include <sstream>

#include "property.hpp"
#include "ttstat/errors.hpp"
#include "ttstat/exact_stats.hpp"
#include "ttstat/simulator.hpp"
#include "ttstat/trial_io.hpp"

using namespace ttstat;

namespace {

Rational q(long num, unsigned long den = 1) { return make_rational(num, den); }

double correct_fraction(const ExperimentDataset& d, RespondentKind kind) {
  std::size_t n = 0, correct = 0;
  for (const TrialRecord& t : d.trials()) {
    for (const Response& r : t.responses) {
      if (r.respondent != kind) continue;
      ++n;
      correct += r.correct() ? 1 : 0;
    }
  }
  return static_cast<double>(correct) / static_cast<double>(n);
}

}  // namespace

TEST_CASE("generator reference values") {
  auto rng = Xoshiro256StarStar::from_state({1, 2, 3, 4});
  CHECK(rng() == 11520ULL);
  CHECK(rng() == 0ULL);
  CHECK(rng() == 1509978240ULL);
  CHECK(rng() == 1215971899390074240ULL);

  SplitMix64 sm(0);
  CHECK(sm.next() == 0xe220a8397b1dcdafULL);

  Xoshiro256StarStar a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 8; ++i) {
    const auto x = a();
    CHECK(x == b());
    differs = differs || x != c();
  }
  CHECK(differs);
}

TEST_CASE("bernoulli sampler is exact at the endpoints") {
  Xoshiro256StarStar rng(7);
  const BernoulliSampler never(q(0)), always(q(1));
  for (int i = 0; i < 10000; ++i) {
    CHECK_FALSE(never(rng));
    CHECK(always(rng));
  }
  CHECK_THROWS_AS(BernoulliSampler(q(3, 2)), DomainError);
}

TEST_CASE("simulation is deterministic in the seed") {
  const SimulationConfig cfg{make_three_player_model(q(1, 2)), 10, 0, 1234};
  const ExperimentDataset a = simulate(cfg);
  const ExperimentDataset b = simulate(cfg);
  CHECK(a == b);
  std::ostringstream sa, sb;
  write_jsonl(a, sa);
  write_jsonl(b, sb);
  CHECK(sa.str() == sb.str());
  const auto est = estimate_rates(a);
  CHECK(est.joint->correct.n() == 10);
}

TEST_CASE("a perfect interrogator identifies every trial") {
  const auto d = simulate({make_three_player_model(q(0)), 500, 0, 9});
  for (const TrialRecord& t : d.trials()) CHECK(t.correct());
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(simulate({make_three_player_model(q(1, 2)), 10, 5, 0}), DomainError);
  CHECK_THROWS_AS(simulate({make_three_player_model(q(1, 2)), 0, 0, 0}), DomainError);
  const auto two = simulate({make_two_player_model(q(1, 2), q(3, 4)), 5, 0, 0});
  CHECK(two.size() == 5);
}

TEST_CASE("three-player correlation and convergence") {
  for (const Rational& p : {q(1, 10), q(1, 2), q(9, 10)}) {
    const auto d = simulate({make_three_player_model(p), 100000, 0, 2024});
    std::size_t complementary = 0;
    for (const TrialRecord& t : d.trials()) {
      const auto& m = t.response(RespondentKind::kMachine);
      const auto& h = t.response(RespondentKind::kHuman);
      complementary += (m.verdict != h.verdict && m.correct() == h.correct()) ? 1 : 0;
    }
    CHECK(complementary == d.size());
    const double misid = 1.0 - correct_fraction(d, RespondentKind::kMachine);
    const double pd = to_double(p);
    const double sigma = std::sqrt(pd * (1 - pd) / 100000.0);
    CHECK(std::abs(misid - pd) <= 4 * sigma);
  }
}

TEST_CASE("three-player at one half lands within three standard errors") {
  const auto d = simulate({make_three_player_model(q(1, 2)), 100000, 0, 77});
  CHECK(std::abs(correct_fraction(d, RespondentKind::kMachine) - 0.5) <= 0.00474);
}

TEST_CASE("two-player streams are independent") {
  const auto d = simulate({make_two_player_model(q(3, 10), q(7, 10)), 100000, 100000, 5});
  std::vector<double> machine, human;
  for (const TrialRecord& t : d.trials()) {
    const Response& r = t.responses.front();
    (r.respondent == RespondentKind::kMachine ? machine : human).push_back(r.correct() ? 1.0 : 0.0);
  }
  REQUIRE(machine.size() == human.size());
  const double n = static_cast<double>(machine.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < machine.size(); ++i) {
    mx += machine[i];
    my += human[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < machine.size(); ++i) {
    sxy += (machine[i] - mx) * (human[i] - my);
    sxx += (machine[i] - mx) * (machine[i] - mx);
    syy += (human[i] - my) * (human[i] - my);
  }
  CHECK(std::abs(sxy / std::sqrt(sxx * syy)) < 0.02);
  CHECK(std::abs((1 - mx) - 0.3) <= 4 * std::sqrt(0.21 / n));
  CHECK(std::abs(my - 0.7) <= 4 * std::sqrt(0.21 / n));
}

TEST_CASE("power sweep") {
  SUBCASE("ten trials cannot always reject at 1%") {
    const auto rows = power_sweep(q(9, 10), q(1, 2), q(1, 100), {10}, 2000, 11);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].frequency < 1);
    // Only k = 10 (or 0) rejects at n = 10, so the rate tracks 0.9^10 ~ 0.349.
    CHECK(std::abs(to_double(rows[0].frequency) - std::pow(0.9, 10)) < 0.05);
  }
  SUBCASE("size under the null") {
    const std::uint64_t reps = 4000;
    const auto rows = power_sweep(q(1, 2), q(1, 2), q(5, 100), {10, 25, 60}, reps, 3);
    for (const PowerRow& r : rows) {
      const double margin = 3 * std::sqrt(0.05 * 0.95 / static_cast<double>(reps));
      CHECK(to_double(r.frequency) <= 0.05 + margin);
    }
  }
  SUBCASE("a hundred trials reject almost always") {
    const auto a = power_sweep(q(9, 10), q(1, 2), q(1, 100), {100}, 10000, 1);
    const auto b = power_sweep(q(9, 10), q(1, 2), q(1, 100), {100}, 10000, 0xdecafbad);
    CHECK(a[0].frequency >= q(99, 100));
    CHECK(b[0].frequency >= q(99, 100));
  }
  SUBCASE("deterministic and validated") {
    CHECK(power_sweep(q(7, 10), q(1, 2), q(5, 100), {20}, 500, 8)[0].rejections ==
          power_sweep(q(7, 10), q(1, 2), q(5, 100), {20}, 500, 8)[0].rejections);
    CHECK_THROWS_AS(power_sweep(q(1), q(1, 2), q(5, 100), {20}, 10, 0), DomainError);
    CHECK_THROWS_AS(power_sweep(q(1, 2), q(1, 2), q(5, 100), {20}, 0, 0), DomainError);
  }
}

TEST_CASE("simulation properties") {
  prop::for_all("seeded determinism", [](prop::Gen& g, std::ostream& note) {
    const bool three = g.boolean();
    const Rational a = g.probability(), b = g.probability();
    const std::uint64_t seed = g.u64();
    const std::uint64_t nm = static_cast<std::uint64_t>(g.integer(1, 40));
    const std::uint64_t nh = three ? 0 : static_cast<std::uint64_t>(g.integer(0, 40));
    note << "seed=" << seed;
    const SimulationConfig cfg{three ? make_three_player_model(a) : make_two_player_model(a, b), nm, nh,
                               seed};
    std::ostringstream x, y;
    write_jsonl(simulate(cfg), x);
    write_jsonl(simulate(cfg), y);
    return x.str() == y.str();
  });

  prop::for_all("three-player records are always complementary", [](prop::Gen& g, std::ostream& note) {
    const Rational p = g.probability();
    const std::uint64_t seed = g.u64();
    note << "p=" << to_fraction_string(p) << " seed=" << seed;
    const ExperimentDataset d = simulate({make_three_player_model(p), 50, 0, seed});
    for (const TrialRecord& t : d.trials()) {
      if (t.responses[0].verdict == t.responses[1].verdict) return false;
    }
    return true;
  });
}
