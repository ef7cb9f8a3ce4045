#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mtd {

// Codes for config-level invariant violations. validate_config collects every
// violation before failing, so a bad config reports all its problems at once.
enum class IssueCode {
  InvalidInterval,
  NegativeCost,
  NonMonotoneReward,
  BadDistribution,
};

struct ValidationIssue {
  IssueCode code;
  std::string message;
};

const char* issue_code_name(IssueCode code);

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<ValidationIssue> issues);
  const std::vector<ValidationIssue>& issues() const { return issues_; }

 private:
  std::vector<ValidationIssue> issues_;
};

// An operation argument fell outside the game's action intervals.
class OutOfDomain : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A distribution model was queried at a negative time or rate.
class NegativeInput : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Adaptive integration hit its refinement cap with the error estimate still
// above the acceptable bound.
class QuadratureNotConverged : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A closed-form operation was called on a game whose reward or collocation
// model it does not cover; numeric fallbacks handle those instantiations.
class WrongInstantiation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The back-off check only makes sense when the attacker may stand down
// entirely, i.e. the rate interval starts at zero.
class RequiresZeroLambdaMin : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Raised only on request (require_existence): the solver found no strategy
// pair that survives deviation verification.
class NoEquilibriumFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mtd
