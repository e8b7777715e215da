#ifndef IPROOF_DOT_HPP
#define IPROOF_DOT_HPP

#include <string>

#include "iproof/derivation.hpp"

namespace iproof {

// DOT rendering of a sequent graph: one node per vertex labelled with its
// component, one edge per accessibility atom.
std::string to_dot(const SequentGraph& g, const std::string& name = "sequent");
std::string to_dot(const LabelledSequent& s);
std::string to_dot(const NestedSequent& s);

// DOT rendering of a derivation: one cluster per proof node holding that
// sequent's graph, with premise->conclusion links between clusters.
std::string to_dot(const Derivation& d);

}  // namespace iproof

#endif
