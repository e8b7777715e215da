#ifndef IPROOF_BACKWARD_HPP
#define IPROOF_BACKWARD_HPP

#include "iproof/checker.hpp"

namespace iproof {

struct BackwardApplication {
  RuleInstance inst;
  std::vector<Sequent> premises;  // empty: the match closes the branch
};

// Every instance of a rule of the calculus whose conclusion matches s, up to
// a canonical choice of fresh names. Admissible rules are not enumerated.
std::vector<BackwardApplication> backward_applications(const Calculus& c, const Sequent& s);

}  // namespace iproof

#endif
