#include "ttstat/criteria.hpp"

#include "ttstat/errors.hpp"

namespace ttstat {

template <Scalar T>
bool absolute_pass(const BernoulliModel<T>& model, const T& tolerance) {
  return is_equal_recognition_point(model, tolerance);
}

template <Scalar T>
HumannessScore<T> humanness(const BernoulliModel<T>& model) {
  T denominator = model.format() == TestFormat::kThreePlayer ? T(from_rational<T>(Rational(1, 2)))
                                                             : model.p_human_correct();
  if (denominator <= 0) {
    throw UndefinedRatioError("humanness is undefined: human correct-identification rate is 0");
  }
  T ratio = model.p_machine_misid() / denominator;
  return {std::move(ratio), model.p_machine_misid(), std::move(denominator), model.format()};
}

template <Scalar T>
Interval<T> humanness_bounds(const T& misid_low, const T& misid_high, const T& denominator) {
  require_probability(misid_low, "lower misidentification bound");
  require_probability(misid_high, "upper misidentification bound");
  if (misid_low > misid_high) throw DomainError("misidentification bounds are inverted");
  if (denominator <= 0) throw DomainError("humanness denominator must be positive");
  return {T(misid_low / denominator), T(misid_high / denominator)};
}

template <Scalar T>
RequiredHumanRate<T> required_human_rate(const T& machine_misid_rate,
                                         const T& humanness_threshold) {
  require_probability(machine_misid_rate, "machine misidentification rate");
  if (humanness_threshold <= 0) throw DomainError("humanness threshold must be positive");
  T value = machine_misid_rate / humanness_threshold;
  const bool overflow = value > 1;
  return {std::move(value), overflow};
}

#define TTSTAT_INSTANTIATE(T)                                                            \
  template bool absolute_pass<T>(const BernoulliModel<T>&, const T&);                    \
  template HumannessScore<T> humanness<T>(const BernoulliModel<T>&);                     \
  template Interval<T> humanness_bounds<T>(const T&, const T&, const T&);                \
  template RequiredHumanRate<T> required_human_rate<T>(const T&, const T&);

TTSTAT_INSTANTIATE(Rational)
TTSTAT_INSTANTIATE(double)

#undef TTSTAT_INSTANTIATE

}  // namespace ttstat
