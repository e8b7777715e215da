#ifndef IPROOF_CHECKER_HPP
#define IPROOF_CHECKER_HPP

#include <optional>
#include <string>
#include <vector>

#include "iproof/derivation.hpp"

namespace iproof {

struct StepError {
  enum class Kind {
    RuleNotInCalculus,
    SchemaMismatch,
    SideConditionViolated,
    EigenvariableClash,
    MissingPrincipalCopy,
    BadInstance,
  };
  Kind kind;
  std::string detail;
};

std::string to_string(const StepError& e);

// The premise sequents demanded by (conclusion, instance). Thrown as
// CheckFailure when the instance does not fit the conclusion. Shared by the
// checker and every derivation-building transform.
struct CheckFailure : std::runtime_error {
  StepError error;
  explicit CheckFailure(StepError e) : std::runtime_error(to_string(e)), error(std::move(e)) {}
};

std::vector<LabelledSequent> premises_of(const Calculus& c, const LabelledSequent& concl,
                                         const RuleInstance& inst);
std::vector<NestedSequent> premises_of(const Calculus& c, const NestedSequent& concl,
                                       const RuleInstance& inst);

std::optional<StepError> check_step(const Calculus& c, const Sequent& concl,
                                    const RuleInstance& inst,
                                    const std::vector<Sequent>& premises);

struct CheckError {
  std::string path;  // premise indices from the root, e.g. "" or "0.1"
  StepError error;
};

std::vector<CheckError> check_derivation(const Calculus& c, const Derivation& d);
bool checks(const Calculus& c, const Derivation& d);

// Convenience node constructor that validates the step as it builds it;
// throws CheckFailure on schema violations (a transform bug, not user error).
Derivation make_step(const Calculus& c, Sequent concl, RuleInstance inst,
                     std::vector<Derivation> premises);

}  // namespace iproof

#endif
