#pragma once

#include <stdexcept>
#include <string>

namespace ttstat {

// Broad classes of failure; the CLI maps these onto its exit codes.
enum class ErrorCategory {
  kInputValidation,         // malformed or inconsistent input data
  kStatisticalPrecondition  // a value outside an operation's domain
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

// Probability out of [0,1], negative tolerance, inverted bounds, ...
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what)
      : Error(ErrorCategory::kStatisticalPrecondition, what) {}
};

// Operation not defined for the model's test format.
class FormatError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Humanness ratio with a zero human baseline.
class UndefinedRatioError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Bad trial data. Carries the 1-based input line and/or the trial id when known.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what, std::size_t line = 0,
                           std::string trial_id = {})
      : Error(ErrorCategory::kInputValidation, what),
        line_(line),
        trial_id_(std::move(trial_id)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& trial_id() const noexcept { return trial_id_; }

 private:
  std::size_t line_;
  std::string trial_id_;
};

// An error raised inside the verdict pipeline, tagged with the stage that failed.
class StageError : public Error {
 public:
  StageError(std::string stage, const Error& cause)
      : Error(cause.category(), stage + ": " + cause.what()),
        stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace ttstat
