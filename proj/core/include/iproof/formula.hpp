#ifndef IPROOF_FORMULA_HPP
#define IPROOF_FORMULA_HPP

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace iproof {

// A term is either a parameter (#a in the concrete syntax) or a bound
// variable. The two namespaces are disjoint in the syntax, so a plain name
// suffices.
struct Term {
  enum class Kind { Param, Var };
  Kind kind;
  std::string name;

  static Term param(std::string n) { return {Kind::Param, std::move(n)}; }
  static Term var(std::string n) { return {Kind::Var, std::move(n)}; }
  bool is_param() const { return kind == Kind::Param; }
};

bool operator==(const Term& a, const Term& b);
bool operator<(const Term& a, const Term& b);

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

class Formula {
 public:
  enum class Kind { Atom, Bot, Neg, And, Or, Imp, Forall, Exists };

  Kind kind;
  std::string head;        // predicate name (Atom) or bound variable (quantifiers)
  std::vector<Term> args;  // Atom only
  FormulaPtr lhs, rhs;     // lhs: Neg/quantifier body and binary left; rhs: binary right

  static FormulaPtr atom(std::string pred, std::vector<Term> args = {});
  static FormulaPtr bot();
  static FormulaPtr neg(FormulaPtr a);
  static FormulaPtr conj(FormulaPtr a, FormulaPtr b);
  static FormulaPtr disj(FormulaPtr a, FormulaPtr b);
  static FormulaPtr imp(FormulaPtr a, FormulaPtr b);
  static FormulaPtr forall(std::string var, FormulaPtr body);
  static FormulaPtr exists(std::string var, FormulaPtr body);
};

int compare(const FormulaPtr& a, const FormulaPtr& b);
bool equal(const FormulaPtr& a, const FormulaPtr& b);

struct FormulaLess {
  bool operator()(const FormulaPtr& a, const FormulaPtr& b) const { return compare(a, b) < 0; }
};

std::string to_string(const Term& t);
std::string to_string(const FormulaPtr& f);

// Substitution of a term for a parameter or for a free variable. Only
// parameters and fresh variables are ever inserted, so capture cannot occur.
FormulaPtr subst_param(const FormulaPtr& f, const std::string& from, const Term& to);
FormulaPtr subst_var(const FormulaPtr& f, const std::string& from, const Term& to);

std::set<std::string> free_parameters(const FormulaPtr& f);
bool parameter_closed(const FormulaPtr& f);

// Universal closure: parameters are replaced in name order by fresh bound
// variables x0, x1, ... and quantified universally, outermost first.
FormulaPtr universal_closure(const FormulaPtr& f);

enum class NegMode { Expand, Fold };
// Expand rewrites ~A to A -> bot everywhere; Fold rewrites A -> bot to ~A.
FormulaPtr neg_normalize(const FormulaPtr& f, NegMode mode);

// A as_neg view: matches ~A and also the pattern A -> bot.
FormulaPtr as_negation(const FormulaPtr& f);

// True when every Bot occurrence in f is the right-hand side of an
// implication (the negation pattern).
bool bot_only_in_neg_patterns(const FormulaPtr& f);

}  // namespace iproof

#endif
