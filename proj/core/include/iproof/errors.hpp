#ifndef IPROOF_ERRORS_HPP
#define IPROOF_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace iproof {

struct ParseError : std::runtime_error {
  std::size_t position;
  std::string expected;
  ParseError(std::size_t pos, const std::string& what_expected)
      : std::runtime_error("parse error at " + std::to_string(pos) + ": expected " + what_expected),
        position(pos),
        expected(what_expected) {}
};

struct ArityError : std::runtime_error {
  std::string predicate;
  ArityError(const std::string& pred, std::size_t seen, std::size_t now)
      : std::runtime_error("predicate '" + pred + "' used with arity " + std::to_string(now) +
                           " after arity " + std::to_string(seen)),
        predicate(pred) {}
};

struct FreeVariableError : std::runtime_error {
  std::string variable;
  explicit FreeVariableError(const std::string& var)
      : std::runtime_error("formula is not parameter-closed: free variable '" + var + "'"),
        variable(var) {}
};

struct NotTreelike : std::runtime_error {
  NotTreelike() : std::runtime_error("labelled sequent is not treelike") {}
};

struct PositionNotFound : std::runtime_error {
  explicit PositionNotFound(const std::string& pos)
      : std::runtime_error("no component at position '" + pos + "'") {}
};

struct NotNestedlike : std::runtime_error {
  NotNestedlike() : std::runtime_error("labelled sequent is not nestedlike") {}
};

struct NotNestedForm : std::runtime_error {
  NotNestedForm() : std::runtime_error("derivation is not in nested form") {}
};

struct MissingDomainAtom : std::runtime_error {
  explicit MissingDomainAtom(const std::string& param)
      : std::runtime_error("no domain atom for parameter '" + param + "' in the supplied context") {}
};

struct UnsupportedBot : std::runtime_error {
  UnsupportedBot() : std::runtime_error("bot occurs outside a negation pattern in the end sequent") {}
};

struct StructuralRulePresent : std::runtime_error {
  explicit StructuralRulePresent(const std::string& rule)
      : std::runtime_error("derivation still contains a '" + rule + "' inference") {}
};

struct Unsupported : std::runtime_error {
  explicit Unsupported(const std::string& what_failed) : std::runtime_error(what_failed) {}
};

struct NotApplicable : std::runtime_error {
  explicit NotApplicable(const std::string& why) : std::runtime_error(why) {}
};

struct ShapeMismatch : std::runtime_error {
  explicit ShapeMismatch(const std::string& why) : std::runtime_error(why) {}
};

// Internal invariant violations in transforms; seeing one is a bug.
struct TransformError : std::logic_error {
  explicit TransformError(const std::string& why) : std::logic_error(why) {}
};

}  // namespace iproof

#endif
