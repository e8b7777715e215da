#ifndef IPROOF_DERIVATION_HPP
#define IPROOF_DERIVATION_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "iproof/calculus.hpp"
#include "iproof/sequent.hpp"

namespace iproof {

// A reference into a conclusion, or an auxiliary name the schema needs.
//
// Labelled sequents use Rel/Ante/Succ with an index into the multiset
// vector, plus LabelArg for labels that appear only in the premise (the w of
// ref, the carrier of ihd, the v of the in/ic quantifier rules). Nested
// sequents additionally carry the component position; Child refers to a
// child slot of that component (for rules that create or touch one).
struct SeqRef {
  enum class Kind { Rel, Ante, Succ, LabelArg, Child };
  Kind kind;
  std::size_t index = 0;  // Rel/Ante/Succ
  std::string pos;        // nested component position; Child: the child position
  std::string label;      // LabelArg

  static SeqRef rel(std::size_t i) { return {Kind::Rel, i, "", ""}; }
  static SeqRef ante(std::size_t i, std::string pos = "") { return {Kind::Ante, i, std::move(pos), ""}; }
  static SeqRef succ(std::size_t i, std::string pos = "") { return {Kind::Succ, i, std::move(pos), ""}; }
  static SeqRef label_arg(std::string w) { return {Kind::LabelArg, 0, "", std::move(w)}; }
  static SeqRef child(std::string pos) { return {Kind::Child, 0, std::move(pos), ""}; }
};

struct Witness {
  std::string param;
  std::string var;
};

struct Renaming {
  enum class Kind { Label, Param };
  Kind kind;
  std::string from;  // name replaced throughout the premise
  std::string to;    // replacement
};

struct CutFormula {
  std::string at;  // label (labelled) or component position (nested)
  FormulaPtr formula;
};

// Per-step instantiation data. Required fields per rule are documented with
// the schema builders in checker.cpp.
struct RuleInstance {
  RuleId rule;
  std::vector<SeqRef> principal;
  std::vector<std::string> eigen;  // labels and/or parameters claimed fresh
  std::optional<Witness> witness;
  std::optional<Renaming> subst;
  std::optional<CutFormula> cut;
};

using Sequent = std::variant<LabelledSequent, NestedSequent>;

struct Derivation {
  Sequent conclusion;
  RuleInstance inst;
  std::vector<Derivation> premises;

  const LabelledSequent& labelled() const { return std::get<LabelledSequent>(conclusion); }
  const NestedSequent& nested() const { return std::get<NestedSequent>(conclusion); }
  bool is_labelled() const { return std::holds_alternative<LabelledSequent>(conclusion); }
};

// Number of sequents on the longest branch; a zero-premise step has height 1.
std::size_t height(const Derivation& d);

// All rule ids used anywhere in the tree.
std::set<RuleId> rules_used(const Derivation& d);

std::string to_string(const Sequent& s);

}  // namespace iproof

#endif
