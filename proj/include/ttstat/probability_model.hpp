#pragma once

// Outcome spaces and probability assignments for the two test formats.
//
// A three-player session is two logically linked Bernoulli experiments: the
// interrogator must label one respondent "human" and the other "machine", so
// misidentifying the machine happens exactly when the human is misidentified.
// A two-player session questions one respondent at a time and the two
// experiments carry independent probabilities.
//
// Event naming follows the machine's point of view: a "success" for the
// machine (S_m) is being declared human; for the human (S_h) it is being
// correctly declared human.

#include <string_view>

#include "ttstat/rational.hpp"

namespace ttstat {

enum class Verdict { kDeclaredHuman, kDeclaredMachine };

enum class RespondentKind { kMachine, kHuman };

enum class TestFormat { kThreePlayer, kTwoPlayer };

// The single-experiment view of a three-player session.
enum class JointOutcome {
  kBothMisidentified,  // machine called human, human called machine
  kBothCorrect         // machine called machine, human called human
};

struct OutcomeEvent {
  RespondentKind kind;
  bool correct;

  friend bool operator==(const OutcomeEvent&, const OutcomeEvent&) = default;
};

// An identification is correct iff the verdict names the respondent's kind.
constexpr bool is_correct(RespondentKind kind, Verdict verdict) {
  return (kind == RespondentKind::kHuman) == (verdict == Verdict::kDeclaredHuman);
}

constexpr Verdict verdict_for(RespondentKind kind, bool correct) {
  const bool declared_human = (kind == RespondentKind::kHuman) == correct;
  return declared_human ? Verdict::kDeclaredHuman : Verdict::kDeclaredMachine;
}

constexpr Verdict opposite(Verdict v) {
  return v == Verdict::kDeclaredHuman ? Verdict::kDeclaredMachine : Verdict::kDeclaredHuman;
}

std::string_view to_string(Verdict v);
std::string_view to_string(RespondentKind k);
std::string_view to_string(TestFormat f);
std::string_view to_string(JointOutcome o);

template <Scalar T>
class BernoulliModel {
 public:
  // Throws DomainError if p_machine_misid is outside [0,1].
  static BernoulliModel three_player(T p_machine_misid);
  // Throws DomainError if either probability is outside [0,1].
  static BernoulliModel two_player(T p_machine_misid, T p_human_correct);

  TestFormat format() const { return format_; }

  // p_m(S_m): machine declared human.
  const T& p_machine_misid() const { return machine_misid_; }

  // p_h(S_h): human declared human. Derived as 1 - p_m(S_m) for three-player
  // models; nothing independent is stored in that case.
  T p_human_correct() const;

 private:
  BernoulliModel(TestFormat format, T machine_misid, T human_correct)
      : format_(format),
        machine_misid_(std::move(machine_misid)),
        human_correct_(std::move(human_correct)) {}

  TestFormat format_;
  T machine_misid_;
  T human_correct_;  // meaningful for kTwoPlayer only
};

using ExactModel = BernoulliModel<Rational>;

template <Scalar T>
BernoulliModel<T> make_three_player_model(T p_machine_misid) {
  return BernoulliModel<T>::three_player(std::move(p_machine_misid));
}

template <Scalar T>
BernoulliModel<T> make_two_player_model(T p_machine_misid, T p_human_correct) {
  return BernoulliModel<T>::two_player(std::move(p_machine_misid), std::move(p_human_correct));
}

template <Scalar T>
T event_probability(const BernoulliModel<T>& model, OutcomeEvent event);

// Defined for three-player models only; throws FormatError otherwise.
template <Scalar T>
T joint_probability(const BernoulliModel<T>& model, JointOutcome outcome);

// 0 for rationals, 1e-12 for doubles.
template <Scalar T>
T default_tolerance() {
  if constexpr (kIsExact<T>) {
    return T(0);
  } else {
    return 1e-12;
  }
}

// |p_m(S_m) - p_h(S_h)| <= tolerance. For three-player models this holds
// exactly when both probabilities are 1/2. Throws DomainError on negative
// tolerance.
template <Scalar T>
bool is_equal_recognition_point(const BernoulliModel<T>& model,
                                const T& tolerance = default_tolerance<T>());

// Throws DomainError unless 0 <= p <= 1.
template <Scalar T>
void require_probability(const T& p, std::string_view what);

}  // namespace ttstat
