#include "iproof/translate.hpp"

#include <algorithm>
#include <functional>

#include "iproof/errors.hpp"

namespace iproof {
namespace {

// Children of w ordered by first occurrence of the edge (w, v) in rel.
std::vector<Label> children_in_order(const LabelledSequent& s, const Label& w) {
  std::vector<Label> out;
  for (const auto& r : s.rel)
    if (r.is_le() && r.a == w && std::find(out.begin(), out.end(), r.b) == out.end())
      out.push_back(r.b);
  return out;
}

NestedSequent nested_at(const LabelledSequent& s, const Label& w) {
  NestedSequent n;
  for (const auto& [v, f] : s.ante)
    if (v == w) n.ante.push_back(f);
  for (const auto& [v, f] : s.succ)
    if (v == w) n.succ.push_back(f);
  for (const auto& c : children_in_order(s, w)) n.children.push_back(nested_at(s, c));
  return n;
}

void labelled_at(const NestedSequent& n, const std::string& pos, const Label& w,
                 const std::function<Label(const std::string&)>& name_of,
                 LabelledSequent& out, std::map<std::string, Label>* positions) {
  if (positions) (*positions)[pos] = w;
  std::vector<Label> child_labels;
  for (std::size_t i = 0; i < n.children.size(); ++i)
    child_labels.push_back(name_of(pos + "." + std::to_string(i)));
  for (const auto& c : child_labels) out.rel.push_back(RelAtom::le(w, c));
  std::set<std::string> params;
  for (const auto& f : n.ante)
    for (const auto& p : free_parameters(f)) params.insert(p);
  for (const auto& f : n.succ)
    for (const auto& p : free_parameters(f)) params.insert(p);
  for (const auto& p : params) out.rel.push_back(RelAtom::dom(p, w));
  for (const auto& f : n.ante) out.ante.emplace_back(w, f);
  for (const auto& f : n.succ) out.succ.emplace_back(w, f);
  for (std::size_t i = 0; i < n.children.size(); ++i)
    labelled_at(n.children[i], pos + "." + std::to_string(i), child_labels[i], name_of, out, positions);
}

}  // namespace

NestedSequent to_nested(const LabelledSequent& s) {
  auto root = is_treelike(s);
  if (!root) throw NotTreelike();
  return nested_at(s, *root);
}

LabelledSequent to_labelled(const NestedSequent& s, std::map<std::string, Label>* positions) {
  LabelledSequent out;
  std::size_t next = 0;
  std::map<std::string, Label> names;
  // DFS preorder numbering: assign on first request, which happens in
  // preorder because parents name their children before recursing.
  std::function<Label(const std::string&)> name_of = [&](const std::string& pos) -> Label {
    auto it = names.find(pos);
    if (it != names.end()) return it->second;
    Label w = "w" + std::to_string(next++);
    names[pos] = w;
    return w;
  };
  labelled_at(s, "0", name_of("0"), name_of, out, positions);
  return out;
}

LabelledSequent to_labelled_positional(const NestedSequent& s) {
  LabelledSequent out;
  auto name_of = [](const std::string& pos) -> Label {
    std::string w = "w";
    for (char c : pos) w += (c == '.') ? '_' : c;
    return w;
  };
  labelled_at(s, "0", name_of("0"), name_of, out, nullptr);
  return out;
}

bool is_nestedlike(const LabelledSequent& s) {
  auto root = is_treelike(s);
  if (!root) return false;
  return iso_equal(to_labelled(to_nested(s)), s);
}

}  // namespace iproof
