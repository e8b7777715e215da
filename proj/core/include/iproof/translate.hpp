#ifndef IPROOF_TRANSLATE_HPP
#define IPROOF_TRANSLATE_HPP

#include <map>

#include "iproof/sequent.hpp"

namespace iproof {

// Labelled -> nested over the root's downward closure. Requires a treelike
// input (NotTreelike otherwise); domain atoms have no nested counterpart and
// are dropped. Children follow the first occurrence of their edge in rel.
NestedSequent to_nested(const LabelledSequent& s);

// Nested -> labelled with fresh labels w0, w1, ... in DFS preorder, one
// <=-atom per tree edge and one domain atom per distinct parameter of each
// component. `positions`, when given, receives position -> label.
LabelledSequent to_labelled(const NestedSequent& s,
                            std::map<std::string, Label>* positions = nullptr);

// Labels each component by its dotted position ("0.1.2" becomes w0_1_2);
// stable when rules extend the tree, which proof translation relies on.
LabelledSequent to_labelled_positional(const NestedSequent& s);

bool is_nestedlike(const LabelledSequent& s);

}  // namespace iproof

#endif
