#ifndef IPROOF_SEQUENT_HPP
#define IPROOF_SEQUENT_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "iproof/formula.hpp"

namespace iproof {

using Label = std::string;

// Relational atom: w <= v or #a in D(w).
struct RelAtom {
  enum class Kind { Le, Dom };
  Kind kind;
  std::string a;  // Le: from label; Dom: parameter
  std::string b;  // Le: to label;   Dom: carrier label

  static RelAtom le(Label from, Label to) { return {Kind::Le, std::move(from), std::move(to)}; }
  static RelAtom dom(std::string param, Label at) { return {Kind::Dom, std::move(param), std::move(at)}; }
  bool is_le() const { return kind == Kind::Le; }
};

bool operator==(const RelAtom& x, const RelAtom& y);
bool operator<(const RelAtom& x, const RelAtom& y);
std::string to_string(const RelAtom& r);

using LabelledFormula = std::pair<Label, FormulaPtr>;

// R, Gamma => Delta with multiset semantics; vectors preserve duplicates.
struct LabelledSequent {
  std::vector<RelAtom> rel;
  std::vector<LabelledFormula> ante;
  std::vector<LabelledFormula> succ;
};

struct NestedSequent {
  std::vector<FormulaPtr> ante;
  std::vector<FormulaPtr> succ;
  std::vector<NestedSequent> children;
};

struct SequentGraph {
  std::vector<Label> vertices;  // insertion order
  std::set<std::pair<Label, Label>> edges;
  std::map<Label, std::pair<std::vector<FormulaPtr>, std::vector<FormulaPtr>>> lambda;
};

std::string to_string(const LabelledSequent& s);
std::string to_string(const NestedSequent& s);

// Multiset equality (duplicates matter, order does not).
bool multiset_equal(const LabelledSequent& a, const LabelledSequent& b);
bool multiset_equal(const std::vector<FormulaPtr>& a, const std::vector<FormulaPtr>& b);

// Structural comparisons used for canonical forms.
int compare(const NestedSequent& a, const NestedSequent& b);
bool equal(const NestedSequent& a, const NestedSequent& b);
bool equal(const LabelledSequent& a, const LabelledSequent& b);  // multiset equality

SequentGraph graph_of(const LabelledSequent& s);
SequentGraph graph_of(const NestedSequent& s);

std::set<Label> labels_of(const LabelledSequent& s);
std::set<std::string> parameters_of(const LabelledSequent& s);
std::set<std::string> parameters_of(const NestedSequent& s);

// Root label when the graph is a tree (connected, acyclic, no backwards
// branching); nullopt otherwise.
std::optional<Label> is_treelike(const LabelledSequent& s);

enum class PathMode { Directed, Undirected };
bool path_exists(const std::vector<RelAtom>& rel, const Label& from, const Label& to, PathMode mode);
// The unique directed path root..to in a treelike relation (inclusive).
std::vector<Label> tree_path(const std::vector<RelAtom>& rel, const Label& from, const Label& to);

// Component positions are dotted strings: root "0", children "0.0", "0.1", ...
const NestedSequent* component_at(const NestedSequent& s, const std::string& position);
NestedSequent* component_at(NestedSequent& s, const std::string& position);
std::set<std::string> available_parameters(const NestedSequent& s, const std::string& position);

FormulaPtr iota(const NestedSequent& s);

LabelledSequent apply_label_renaming(const LabelledSequent& s, const std::map<Label, Label>& r);
LabelledSequent apply_param_renaming(const LabelledSequent& s, const std::map<std::string, std::string>& r);
NestedSequent apply_param_renaming(const NestedSequent& s, const std::map<std::string, std::string>& r);

NestedSequent canonical_form(const NestedSequent& s);
LabelledSequent canonical_form(const LabelledSequent& s);  // throws NotTreelike

bool iso_equal(const LabelledSequent& a, const LabelledSequent& b);
bool iso_equal(const NestedSequent& a, const NestedSequent& b);

}  // namespace iproof

#endif
