#include "ttstat/exact_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ttstat/errors.hpp"
#include "ttstat/probability_model.hpp"

namespace ttstat {

BinomialObservation::BinomialObservation(std::int64_t n, std::int64_t k) {
  if (n < 1 || n > kMaxTrials) {
    throw ValidationError("trial count n must lie in [1, " + std::to_string(kMaxTrials) + "], got " +
                      std::to_string(n));
  }
  if (k < 0 || k > n) {
    throw ValidationError("success count k must lie in [0, n], got k=" + std::to_string(k) +
                      ", n=" + std::to_string(n));
  }
  n_ = static_cast<int>(n);
  k_ = static_cast<int>(k);
}

mpz_class binomial_coefficient(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  mpz_class c = 1;
  for (int i = 1; i <= k; ++i) {
    // c * (n - k + i) is always divisible by i at this point.
    c *= static_cast<unsigned long>(n - k + i);
    mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(i));
  }
  return c;
}

namespace {

std::vector<Rational> exact_table(int n, const Rational& p) {
  const mpz_class a = p.get_num();
  const mpz_class b = p.get_den();
  const mpz_class q = b - a;
  std::vector<mpz_class> a_pow(static_cast<std::size_t>(n) + 1);
  std::vector<mpz_class> q_pow(static_cast<std::size_t>(n) + 1);
  a_pow[0] = 1;
  q_pow[0] = 1;
  for (int j = 1; j <= n; ++j) {
    a_pow[j] = a_pow[j - 1] * a;
    q_pow[j] = q_pow[j - 1] * q;
  }
  mpz_class b_pow_n;
  mpz_pow_ui(b_pow_n.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(n));

  std::vector<Rational> table(static_cast<std::size_t>(n) + 1);
  mpz_class c = 1;
  for (int j = 0; j <= n; ++j) {
    if (j > 0) {
      c *= static_cast<unsigned long>(n - j + 1);
      mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(j));
    }
    table[j] = Rational(c * a_pow[j] * q_pow[n - j], b_pow_n);
    table[j].canonicalize();
  }
  return table;
}

double float_pmf(int n, int k, double p) {
  if (p == 0.0) return k == 0 ? 1.0 : 0.0;
  if (p == 1.0) return k == n ? 1.0 : 0.0;
  if (n <= 64) {
    const double c = binomial_coefficient(n, k).get_d();
    return c * std::pow(p, k) * std::pow(1.0 - p, n - k);
  }
  const double log_c = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
  return std::exp(log_c + k * std::log(p) + (n - k) * std::log1p(-p));
}

template <Scalar T>
void require_level(const T& level) {
  if (!(level > 0 && level < 1)) throw DomainError("significance level must lie in (0,1)");
}

}  // namespace

template <Scalar T>
std::vector<T> binomial_pmf_table(int n, const T& p) {
  require_probability(p, "success probability");
  if (n < 0) throw DomainError("trial count must be nonnegative");
  if constexpr (kIsExact<T>) {
    return exact_table(n, p);
  } else {
    std::vector<double> table(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) table[j] = float_pmf(n, j, p);
    return table;
  }
}

template <Scalar T>
T binomial_pmf(const BinomialObservation& obs, const T& p) {
  require_probability(p, "success probability");
  if constexpr (kIsExact<T>) {
    const mpz_class a = p.get_num();
    const mpz_class b = p.get_den();
    mpz_class num = binomial_coefficient(obs.n(), obs.k());
    mpz_class factor;
    mpz_pow_ui(factor.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(obs.k()));
    num *= factor;
    const mpz_class q = b - a;
    mpz_pow_ui(factor.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(obs.n() - obs.k()));
    num *= factor;
    mpz_class den;
    mpz_pow_ui(den.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(obs.n()));
    Rational r(num, den);
    r.canonicalize();
    return r;
  } else {
    return float_pmf(obs.n(), obs.k(), p);
  }
}

template <Scalar T>
SignificanceResult<T> exact_significance(const BinomialObservation& obs, const T& p0,
                                         const T& level) {
  require_probability(p0, "null probability p0");
  require_level(level);
  const std::vector<T> table = binomial_pmf_table(obs.n(), p0);
  const T& at_k = table[obs.k()];

  SignificanceResult<T> result{at_k, T(0), level, false, {}};
  for (int j = 0; j <= obs.n(); ++j) {
    if (less_or_tied(table[j], at_k)) {
      result.tail_mass += table[j];
      result.contributing_outcomes.push_back(j);
    }
  }
  if constexpr (!kIsExact<T>) {
    result.tail_mass = std::min(result.tail_mass, 1.0);
  }
  result.significant = result.tail_mass < level;
  return result;
}

std::vector<bool> rejection_table(int n, const Rational& p0, const Rational& level) {
  require_probability(p0, "null probability p0");
  require_level(level);
  const std::vector<Rational> table = exact_table(n, p0);
  std::vector<int> order(table.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return table[a] < table[b]; });

  std::vector<bool> rejects(table.size(), false);
  Rational running = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t group_end = i;
    while (group_end < order.size() && table[order[group_end]] == table[order[i]]) {
      running += table[order[group_end]];
      ++group_end;
    }
    const bool significant = running < level;
    for (std::size_t g = i; g < group_end; ++g) rejects[order[g]] = significant;
    i = group_end;
  }
  return rejects;
}

Rational refinement_width() { return Rational(1, 1000000); }

std::vector<Rational> probability_grid(const Rational& grid_step) {
  if (grid_step <= 0) throw DomainError("grid step must be positive");
  if (grid_step > 1) throw DomainError("grid step must not exceed 1");
  const Rational steps_q = 1 / grid_step;
  const mpz_class steps = steps_q.get_num() / steps_q.get_den();
  if (steps > 10000000) throw DomainError("grid step too fine (more than 1e7 points)");

  std::vector<Rational> grid;
  const unsigned long count = steps.get_ui();
  grid.reserve(count + 2);
  for (unsigned long i = 0; i <= count; ++i) grid.emplace_back(grid_step * i);
  if (grid.back() != 1) grid.emplace_back(1);
  return grid;
}

namespace {

bool is_significant_at(const BinomialObservation& obs, const Rational& p, const Rational& level) {
  return exact_significance<Rational>(obs, p, level).significant;
}

Boundary bisect(const BinomialObservation& obs, const Rational& level, Rational lo, Rational hi,
                bool lo_significant) {
  const Rational width = refinement_width();
  while (hi - lo > width) {
    Rational mid = (lo + hi) / 2;
    if (is_significant_at(obs, mid, level) == lo_significant) {
      lo = std::move(mid);
    } else {
      hi = std::move(mid);
    }
  }
  Rational crossing = (lo + hi) / 2;
  return {std::move(lo), std::move(hi), std::move(crossing), !lo_significant};
}

}  // namespace

CompatibleSet compatible_set(const BinomialObservation& obs, const Rational& level,
                             const Rational& grid_step, bool refine) {
  require_level(level);
  const std::vector<Rational> grid = probability_grid(grid_step);

  CompatibleSet set{obs, grid_step, level, refine, {}, {}, {}, {}, {}};
  set.points.reserve(grid.size());
  for (const Rational& p : grid) {
    SignificanceResult<Rational> r = exact_significance<Rational>(obs, p, level);
    set.points.push_back({p, std::move(r.tail_mass), r.significant});
  }

  std::size_t run_start = 0;
  for (std::size_t i = 1; i <= set.points.size(); ++i) {
    const bool run_ends =
        i == set.points.size() || set.points[i].significant != set.points[run_start].significant;
    if (!run_ends) continue;
    Interval<Rational> run{set.points[run_start].p, set.points[i - 1].p};
    (set.points[run_start].significant ? set.significant : set.compatible).push_back(run);
    if (i < set.points.size()) {
      const Rational& gap_lo = set.points[i - 1].p;
      const Rational& gap_hi = set.points[i].p;
      if (refine) {
        set.boundaries.push_back(
            bisect(obs, level, gap_lo, gap_hi, set.points[i - 1].significant));
      } else {
        set.undetermined.push_back({gap_lo, gap_hi});
      }
    }
    run_start = i;
  }
  return set;
}

std::optional<Interval<Rational>> misid_bounds_from_correct(
    const std::vector<Interval<Rational>>& correct) {
  if (correct.empty()) return std::nullopt;
  Rational lo = 1;
  Rational hi = 0;
  for (const Interval<Rational>& iv : correct) {
    Rational a = 1 - iv.hi;
    Rational b = 1 - iv.lo;
    if (a < lo) lo = a;
    if (b > hi) hi = b;
  }
  return Interval<Rational>{lo, hi};
}

std::optional<Interval<Rational>> misid_bounds_from_correct(const CompatibleSet& set) {
  return misid_bounds_from_correct(set.compatible);
}

namespace {

KindRates make_rates(std::int64_t n, std::int64_t correct) {
  BinomialObservation obs(n, correct);
  Rational rate(correct, n);
  rate.canonicalize();
  Rational misid = 1 - rate;
  return {obs, rate, misid};
}

}  // namespace

RateEstimate estimate_rates(const ExperimentDataset& dataset) {
  if (dataset.empty()) throw DomainError("cannot estimate rates from an empty dataset");
  RateEstimate est{dataset.format(), std::nullopt, std::nullopt, std::nullopt};

  if (dataset.format() == TestFormat::kThreePlayer) {
    std::int64_t correct = 0;
    for (const TrialRecord& t : dataset.trials()) correct += t.correct() ? 1 : 0;
    est.joint = make_rates(static_cast<std::int64_t>(dataset.size()), correct);
    return est;
  }

  std::int64_t machine_n = 0, machine_k = 0, human_n = 0, human_k = 0;
  for (const TrialRecord& t : dataset.trials()) {
    const Response& r = t.responses.front();
    if (r.respondent == RespondentKind::kMachine) {
      ++machine_n;
      machine_k += r.correct() ? 1 : 0;
    } else {
      ++human_n;
      human_k += r.correct() ? 1 : 0;
    }
  }
  if (machine_n > 0) est.machine = make_rates(machine_n, machine_k);
  if (human_n > 0) est.human = make_rates(human_n, human_k);
  return est;
}

#define TTSTAT_INSTANTIATE(T)                                                           \
  template T binomial_pmf<T>(const BinomialObservation&, const T&);                     \
  template std::vector<T> binomial_pmf_table<T>(int, const T&);                         \
  template SignificanceResult<T> exact_significance<T>(const BinomialObservation&,      \
                                                       const T&, const T&);

TTSTAT_INSTANTIATE(Rational)
TTSTAT_INSTANTIATE(double)

#undef TTSTAT_INSTANTIATE

}  // namespace ttstat
