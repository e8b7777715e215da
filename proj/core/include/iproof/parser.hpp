#ifndef IPROOF_PARSER_HPP
#define IPROOF_PARSER_HPP

#include <string>

#include "iproof/formula.hpp"
#include "iproof/sequent.hpp"

namespace iproof {

FormulaPtr parse_formula(const std::string& text);

// Sequent parsers insist on parameter-closed formulas (FreeVariableError).
//
// Labelled grammar:
//   seq   := items "=>" lfs
//   items := (rel | lf) ("," (rel | lf))* | epsilon
//   rel   := LABEL "<=" LABEL | "#" IDENT "in" "D(" LABEL ")"
//   lf    := LABEL ":" formula
LabelledSequent parse_labelled(const std::string& text);

// Nested grammar:
//   nseq  := flist "->" flist ("," "[" nseq "]")*
//   flist := formula ("," formula)* | epsilon
// The separating "->" is the last top-level arrow that splits the text into
// two well-formed formula lists; implications appearing as whole succedent
// formulas therefore parse without parentheses, and the printer adds
// parentheses around top-level implications to keep round trips exact.
NestedSequent parse_nested(const std::string& text);

}  // namespace iproof

#endif
