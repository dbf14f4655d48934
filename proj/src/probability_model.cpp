#include "ttstat/probability_model.hpp"

#include <cmath>
#include <string>

#include "ttstat/errors.hpp"

namespace ttstat {

std::string_view to_string(Verdict v) {
  return v == Verdict::kDeclaredHuman ? "human" : "machine";
}

std::string_view to_string(RespondentKind k) {
  return k == RespondentKind::kHuman ? "human" : "machine";
}

std::string_view to_string(TestFormat f) {
  return f == TestFormat::kThreePlayer ? "three-player" : "two-player";
}

std::string_view to_string(JointOutcome o) {
  return o == JointOutcome::kBothCorrect ? "both-correct" : "both-misidentified";
}

template <Scalar T>
void require_probability(const T& p, std::string_view what) {
  bool ok = p >= 0 && p <= 1;
  if constexpr (!kIsExact<T>) ok = ok && std::isfinite(p);
  if (!ok) {
    std::string shown;
    if constexpr (kIsExact<T>) {
      shown = to_fraction_string(p);
    } else {
      shown = std::to_string(p);
    }
    throw DomainError(std::string(what) + " must lie in [0,1], got " + shown);
  }
}

template <Scalar T>
BernoulliModel<T> BernoulliModel<T>::three_player(T p_machine_misid) {
  require_probability(p_machine_misid, "machine misidentification probability");
  return BernoulliModel(TestFormat::kThreePlayer, std::move(p_machine_misid), T(0));
}

template <Scalar T>
BernoulliModel<T> BernoulliModel<T>::two_player(T p_machine_misid, T p_human_correct) {
  require_probability(p_machine_misid, "machine misidentification probability");
  require_probability(p_human_correct, "human correct-identification probability");
  return BernoulliModel(TestFormat::kTwoPlayer, std::move(p_machine_misid),
                        std::move(p_human_correct));
}

template <Scalar T>
T BernoulliModel<T>::p_human_correct() const {
  if (format_ == TestFormat::kThreePlayer) return T(1 - machine_misid_);
  return human_correct_;
}

template <Scalar T>
T event_probability(const BernoulliModel<T>& model, OutcomeEvent event) {
  if (event.kind == RespondentKind::kMachine) {
    return event.correct ? T(1 - model.p_machine_misid()) : model.p_machine_misid();
  }
  const T human_correct = model.p_human_correct();
  return event.correct ? human_correct : T(1 - human_correct);
}

template <Scalar T>
T joint_probability(const BernoulliModel<T>& model, JointOutcome outcome) {
  if (model.format() != TestFormat::kThreePlayer) {
    throw FormatError("joint outcomes are undefined for two-player models");
  }
  return outcome == JointOutcome::kBothMisidentified ? model.p_machine_misid()
                                                     : T(1 - model.p_machine_misid());
}

template <Scalar T>
bool is_equal_recognition_point(const BernoulliModel<T>& model, const T& tolerance) {
  if (tolerance < 0) throw DomainError("tolerance must be nonnegative");
  T diff = model.p_machine_misid() - model.p_human_correct();
  if (diff < 0) diff = -diff;
  return diff <= tolerance;
}

#define TTSTAT_INSTANTIATE(T)                                                      \
  template class BernoulliModel<T>;                                                \
  template void require_probability<T>(const T&, std::string_view);                \
  template T event_probability<T>(const BernoulliModel<T>&, OutcomeEvent);         \
  template T joint_probability<T>(const BernoulliModel<T>&, JointOutcome);         \
  template bool is_equal_recognition_point<T>(const BernoulliModel<T>&, const T&);

TTSTAT_INSTANTIATE(Rational)
TTSTAT_INSTANTIATE(double)

#undef TTSTAT_INSTANTIATE

}  // namespace ttstat
