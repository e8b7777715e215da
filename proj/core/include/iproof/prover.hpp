#ifndef IPROOF_PROVER_HPP
#define IPROOF_PROVER_HPP

#include "iproof/checker.hpp"

namespace iproof {

struct SearchLimits {
  std::size_t max_depth = 12;    // quantifier-rule applications per branch
  std::size_t max_nodes = 100000;
};

struct ProveResult {
  enum class Status { Proved, Unprovable, Unknown };
  Status status;
  std::optional<Derivation> derivation;  // set iff Proved

  bool proved() const { return status == Status::Proved; }
};

struct QuantifierInPropositionalGoal : std::runtime_error {
  QuantifierInPropositionalGoal()
      : std::runtime_error("NInt goals must be quantifier-free") {}
};

// Backward search for the nested calculi. Propositional NInt is a decision
// procedure (saturation with loop blocking); the first-order systems answer
// Proved or Unknown.
ProveResult prove(const Calculus& c, const NestedSequent& goal, const SearchLimits& limits = {});

// Proves " -> f" after closing f universally when it carries parameters.
ProveResult prove_formula(const Calculus& c, const FormulaPtr& f, const SearchLimits& limits = {});

}  // namespace iproof

#endif
