#include "iproof/sequent.hpp"

#include <algorithm>
#include <queue>

#include "iproof/errors.hpp"

namespace iproof {

bool operator==(const RelAtom& x, const RelAtom& y) {
  return x.kind == y.kind && x.a == y.a && x.b == y.b;
}

bool operator<(const RelAtom& x, const RelAtom& y) {
  if (x.kind != y.kind) return x.kind < y.kind;
  if (x.a != y.a) return x.a < y.a;
  return x.b < y.b;
}

std::string to_string(const RelAtom& r) {
  if (r.is_le()) return r.a + " <= " + r.b;
  return "#" + r.a + " in D(" + r.b + ")";
}

namespace {

// Top-level implications are parenthesized inside sequent formula lists so
// that the printed form reparses to the same tree.
std::string guarded(const FormulaPtr& f) {
  std::string s = to_string(f);
  if (f->kind == Formula::Kind::Imp) return "(" + s + ")";
  return s;
}

int compare_lf(const LabelledFormula& a, const LabelledFormula& b) {
  if (a.first != b.first) return a.first < b.first ? -1 : 1;
  return compare(a.second, b.second);
}

}  // namespace

std::string to_string(const LabelledSequent& s) {
  std::string out;
  bool first = true;
  auto sep = [&] {
    if (!first) out += ", ";
    first = false;
  };
  for (const auto& r : s.rel) {
    sep();
    out += to_string(r);
  }
  for (const auto& [w, f] : s.ante) {
    sep();
    out += w + ": " + to_string(f);
  }
  out += first ? "=>" : " =>";
  first = true;
  for (const auto& [w, f] : s.succ) {
    out += first ? " " : ", ";
    first = false;
    out += w + ": " + to_string(f);
  }
  return out;
}

std::string to_string(const NestedSequent& s) {
  std::string out;
  for (std::size_t i = 0; i < s.ante.size(); ++i) {
    if (i) out += ", ";
    out += guarded(s.ante[i]);
  }
  out += s.ante.empty() ? "->" : " ->";
  for (std::size_t i = 0; i < s.succ.size(); ++i) {
    out += i ? ", " : " ";
    out += guarded(s.succ[i]);
  }
  for (const auto& c : s.children) out += ", [" + to_string(c) + "]";
  return out;
}

bool multiset_equal(const std::vector<FormulaPtr>& a, const std::vector<FormulaPtr>& b) {
  if (a.size() != b.size()) return false;
  auto x = a, y = b;
  std::sort(x.begin(), x.end(), FormulaLess{});
  std::sort(y.begin(), y.end(), FormulaLess{});
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!equal(x[i], y[i])) return false;
  return true;
}

namespace {

bool multiset_equal_lf(std::vector<LabelledFormula> a, std::vector<LabelledFormula> b) {
  if (a.size() != b.size()) return false;
  auto lt = [](const LabelledFormula& x, const LabelledFormula& y) { return compare_lf(x, y) < 0; };
  std::sort(a.begin(), a.end(), lt);
  std::sort(b.begin(), b.end(), lt);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (compare_lf(a[i], b[i]) != 0) return false;
  return true;
}

}  // namespace

bool multiset_equal(const LabelledSequent& a, const LabelledSequent& b) {
  auto ra = a.rel, rb = b.rel;
  std::sort(ra.begin(), ra.end());
  std::sort(rb.begin(), rb.end());
  return ra == rb && multiset_equal_lf(a.ante, b.ante) && multiset_equal_lf(a.succ, b.succ);
}

bool equal(const LabelledSequent& a, const LabelledSequent& b) { return multiset_equal(a, b); }

int compare(const NestedSequent& a, const NestedSequent& b) {
  auto cmp_list = [](std::vector<FormulaPtr> x, std::vector<FormulaPtr> y) {
    std::sort(x.begin(), x.end(), FormulaLess{});
    std::sort(y.begin(), y.end(), FormulaLess{});
    if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (int c = compare(x[i], y[i]); c != 0) return c;
    return 0;
  };
  if (int c = cmp_list(a.ante, b.ante); c != 0) return c;
  if (int c = cmp_list(a.succ, b.succ); c != 0) return c;
  if (a.children.size() != b.children.size()) return a.children.size() < b.children.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (int c = compare(a.children[i], b.children[i]); c != 0) return c;
  return 0;
}

bool equal(const NestedSequent& a, const NestedSequent& b) {
  if (!multiset_equal(a.ante, b.ante) || !multiset_equal(a.succ, b.succ)) return false;
  if (a.children.size() != b.children.size()) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!equal(a.children[i], b.children[i])) return false;
  return true;
}

std::set<Label> labels_of(const LabelledSequent& s) {
  std::set<Label> out;
  for (const auto& r : s.rel) {
    if (r.is_le()) out.insert(r.a);
    out.insert(r.b);
  }
  for (const auto& [w, f] : s.ante) out.insert(w);
  for (const auto& [w, f] : s.succ) out.insert(w);
  return out;
}

std::set<std::string> parameters_of(const LabelledSequent& s) {
  std::set<std::string> out;
  for (const auto& r : s.rel)
    if (!r.is_le()) out.insert(r.a);
  for (const auto& [w, f] : s.ante)
    for (const auto& p : free_parameters(f)) out.insert(p);
  for (const auto& [w, f] : s.succ)
    for (const auto& p : free_parameters(f)) out.insert(p);
  return out;
}

std::set<std::string> parameters_of(const NestedSequent& s) {
  std::set<std::string> out;
  for (const auto& f : s.ante)
    for (const auto& p : free_parameters(f)) out.insert(p);
  for (const auto& f : s.succ)
    for (const auto& p : free_parameters(f)) out.insert(p);
  for (const auto& c : s.children)
    for (const auto& p : parameters_of(c)) out.insert(p);
  return out;
}

SequentGraph graph_of(const LabelledSequent& s) {
  SequentGraph g;
  auto add_vertex = [&](const Label& w) {
    if (!g.lambda.count(w)) {
      g.vertices.push_back(w);
      g.lambda[w] = {};
    }
  };
  for (const auto& r : s.rel) {
    if (r.is_le()) {
      add_vertex(r.a);
      add_vertex(r.b);
      g.edges.emplace(r.a, r.b);
    } else {
      add_vertex(r.b);
    }
  }
  for (const auto& [w, f] : s.ante) {
    add_vertex(w);
    g.lambda[w].first.push_back(f);
  }
  for (const auto& [w, f] : s.succ) {
    add_vertex(w);
    g.lambda[w].second.push_back(f);
  }
  return g;
}

namespace {

void build_nested_graph(const NestedSequent& s, const std::string& pos, SequentGraph& g) {
  g.vertices.push_back(pos);
  g.lambda[pos] = {s.ante, s.succ};
  for (std::size_t i = 0; i < s.children.size(); ++i) {
    std::string child = pos + "." + std::to_string(i);
    g.edges.emplace(pos, child);
    build_nested_graph(s.children[i], child, g);
  }
}

}  // namespace

SequentGraph graph_of(const NestedSequent& s) {
  SequentGraph g;
  build_nested_graph(s, "0", g);
  return g;
}

std::optional<Label> is_treelike(const LabelledSequent& s) {
  SequentGraph g = graph_of(s);
  // The image of the empty nested sequent is a labelled sequent with no
  // occurring labels; it counts as treelike with an implicit root.
  if (g.vertices.empty()) return Label("w0");
  std::map<Label, int> indeg;
  for (const auto& v : g.vertices) indeg[v] = 0;
  for (const auto& [a, b] : g.edges) {
    if (a == b) return std::nullopt;  // self-loop
    ++indeg[b];
  }
  if (g.edges.size() != g.vertices.size() - 1) return std::nullopt;
  Label root;
  int roots = 0;
  for (const auto& [v, d] : indeg) {
    if (d == 0) {
      root = v;
      ++roots;
    } else if (d != 1) {
      return std::nullopt;  // backwards branching
    }
  }
  if (roots != 1) return std::nullopt;
  // |E| = |V|-1 with unique in-edges and a single root: reachability from the
  // root decides connectivity (and with it acyclicity).
  std::set<Label> seen{root};
  std::queue<Label> q;
  q.push(root);
  while (!q.empty()) {
    Label v = q.front();
    q.pop();
    for (const auto& [a, b] : g.edges)
      if (a == v && seen.insert(b).second) q.push(b);
  }
  if (seen.size() != g.vertices.size()) return std::nullopt;
  return root;
}

bool path_exists(const std::vector<RelAtom>& rel, const Label& from, const Label& to, PathMode mode) {
  if (from == to) return true;
  std::set<Label> seen{from};
  std::queue<Label> q;
  q.push(from);
  while (!q.empty()) {
    Label v = q.front();
    q.pop();
    for (const auto& r : rel) {
      if (!r.is_le()) continue;
      if (r.a == v && seen.insert(r.b).second) {
        if (r.b == to) return true;
        q.push(r.b);
      }
      if (mode == PathMode::Undirected && r.b == v && seen.insert(r.a).second) {
        if (r.a == to) return true;
        q.push(r.a);
      }
    }
  }
  return false;
}

std::vector<Label> tree_path(const std::vector<RelAtom>& rel, const Label& from, const Label& to) {
  std::vector<Label> path{to};
  Label cur = to;
  while (cur != from) {
    bool step = false;
    for (const auto& r : rel) {
      if (r.is_le() && r.b == cur && r.a != cur) {
        cur = r.a;
        path.push_back(cur);
        step = true;
        break;
      }
    }
    if (!step) return {};
  }
  std::reverse(path.begin(), path.end());
  return path;
}

const NestedSequent* component_at(const NestedSequent& s, const std::string& position) {
  return component_at(const_cast<NestedSequent&>(s), position);
}

NestedSequent* component_at(NestedSequent& s, const std::string& position) {
  if (position.empty() || position[0] != '0') return nullptr;
  NestedSequent* cur = &s;
  std::size_t i = 1;
  while (i < position.size()) {
    if (position[i] != '.') return nullptr;
    std::size_t j = ++i;
    while (j < position.size() && position[j] != '.') ++j;
    std::size_t idx = 0;
    if (j == i) return nullptr;
    for (std::size_t k = i; k < j; ++k) {
      if (!isdigit(static_cast<unsigned char>(position[k]))) return nullptr;
      idx = idx * 10 + static_cast<std::size_t>(position[k] - '0');
    }
    if (idx >= cur->children.size()) return nullptr;
    cur = &cur->children[idx];
    i = j;
  }
  return cur;
}

std::set<std::string> available_parameters(const NestedSequent& s, const std::string& position) {
  std::set<std::string> out;
  if (position.empty() || position[0] != '0') throw PositionNotFound(position);
  const NestedSequent* cur = &s;
  auto absorb = [&](const NestedSequent& n) {
    for (const auto& f : n.ante)
      for (const auto& p : free_parameters(f)) out.insert(p);
    for (const auto& f : n.succ)
      for (const auto& p : free_parameters(f)) out.insert(p);
  };
  absorb(*cur);
  std::size_t i = 1;
  while (i < position.size()) {
    if (position[i] != '.') throw PositionNotFound(position);
    std::size_t j = ++i;
    while (j < position.size() && position[j] != '.') ++j;
    std::size_t idx = 0;
    if (j == i) throw PositionNotFound(position);
    for (std::size_t k = i; k < j; ++k) {
      if (!isdigit(static_cast<unsigned char>(position[k]))) throw PositionNotFound(position);
      idx = idx * 10 + static_cast<std::size_t>(position[k] - '0');
    }
    if (idx >= cur->children.size()) throw PositionNotFound(position);
    cur = &cur->children[idx];
    absorb(*cur);
    i = j;
  }
  return out;
}

namespace {

FormulaPtr big_and(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) return Formula::imp(Formula::bot(), Formula::bot());  // the top element
  FormulaPtr out = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) out = Formula::conj(fs[i], out);
  return out;
}

FormulaPtr big_or(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) return Formula::bot();
  FormulaPtr out = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) out = Formula::disj(fs[i], out);
  return out;
}

}  // namespace

FormulaPtr iota(const NestedSequent& s) {
  std::vector<FormulaPtr> succ = s.succ;
  for (const auto& c : s.children) succ.push_back(iota(c));
  return Formula::imp(big_and(s.ante), big_or(succ));
}

LabelledSequent apply_label_renaming(const LabelledSequent& s, const std::map<Label, Label>& r) {
  auto ren = [&](const Label& w) {
    auto it = r.find(w);
    return it == r.end() ? w : it->second;
  };
  LabelledSequent out;
  for (const auto& a : s.rel)
    out.rel.push_back(a.is_le() ? RelAtom::le(ren(a.a), ren(a.b)) : RelAtom::dom(a.a, ren(a.b)));
  for (const auto& [w, f] : s.ante) out.ante.emplace_back(ren(w), f);
  for (const auto& [w, f] : s.succ) out.succ.emplace_back(ren(w), f);
  return out;
}

namespace {

FormulaPtr rename_params_in(const FormulaPtr& f, const std::map<std::string, std::string>& r) {
  // Simultaneous replacement via a two-pass rename through reserved temps.
  FormulaPtr cur = f;
  std::size_t i = 0;
  std::vector<std::pair<std::string, std::string>> temps;
  for (const auto& [from, to] : r) {
    std::string tmp = "#tmp" + std::to_string(i++);
    temps.emplace_back(tmp, to);
    cur = subst_param(cur, from, Term::param(tmp));
  }
  for (const auto& [tmp, to] : temps) cur = subst_param(cur, tmp, Term::param(to));
  return cur;
}

}  // namespace

LabelledSequent apply_param_renaming(const LabelledSequent& s, const std::map<std::string, std::string>& r) {
  auto ren = [&](const std::string& p) {
    auto it = r.find(p);
    return it == r.end() ? p : it->second;
  };
  LabelledSequent out;
  for (const auto& a : s.rel)
    out.rel.push_back(a.is_le() ? a : RelAtom::dom(ren(a.a), a.b));
  for (const auto& [w, f] : s.ante) out.ante.emplace_back(w, rename_params_in(f, r));
  for (const auto& [w, f] : s.succ) out.succ.emplace_back(w, rename_params_in(f, r));
  return out;
}

NestedSequent apply_param_renaming(const NestedSequent& s, const std::map<std::string, std::string>& r) {
  NestedSequent out;
  for (const auto& f : s.ante) out.ante.push_back(rename_params_in(f, r));
  for (const auto& f : s.succ) out.succ.push_back(rename_params_in(f, r));
  for (const auto& c : s.children) out.children.push_back(apply_param_renaming(c, r));
  return out;
}

NestedSequent canonical_form(const NestedSequent& s) {
  NestedSequent out;
  out.ante = s.ante;
  out.succ = s.succ;
  std::sort(out.ante.begin(), out.ante.end(), FormulaLess{});
  std::sort(out.succ.begin(), out.succ.end(), FormulaLess{});
  for (const auto& c : s.children) out.children.push_back(canonical_form(c));
  std::sort(out.children.begin(), out.children.end(),
            [](const NestedSequent& a, const NestedSequent& b) { return compare(a, b) < 0; });
  return out;
}

namespace {

// Label-invariant signature of a subtree, used to order the canonical DFS.
struct TreeInfo {
  std::map<Label, std::vector<std::pair<Label, int>>> children;  // with edge multiplicities
  std::map<Label, std::pair<std::vector<FormulaPtr>, std::vector<FormulaPtr>>> content;
  std::map<Label, std::vector<std::string>> doms;
};

std::string signature(const TreeInfo& t, const Label& w) {
  std::string sig = "(";
  auto [ante, succ] = t.content.at(w);
  std::sort(ante.begin(), ante.end(), FormulaLess{});
  std::sort(succ.begin(), succ.end(), FormulaLess{});
  for (const auto& f : ante) sig += to_string(f) + ";";
  sig += "|";
  for (const auto& f : succ) sig += to_string(f) + ";";
  sig += "|";
  auto doms = t.doms.at(w);
  std::sort(doms.begin(), doms.end());
  for (const auto& p : doms) sig += p + ";";
  sig += "|";
  std::vector<std::string> kids;
  for (const auto& [c, mult] : t.children.at(w))
    kids.push_back(std::to_string(mult) + "*" + signature(t, c));
  std::sort(kids.begin(), kids.end());
  for (const auto& k : kids) sig += k;
  return sig + ")";
}

void assign_labels(const TreeInfo& t, const Label& w, std::map<Label, Label>& out) {
  out[w] = "w" + std::to_string(out.size());
  auto kids = t.children.at(w);
  std::stable_sort(kids.begin(), kids.end(),
                   [&](const auto& x, const auto& y) { return signature(t, x.first) < signature(t, y.first); });
  for (const auto& [c, mult] : kids) assign_labels(t, c, out);
}

}  // namespace

LabelledSequent canonical_form(const LabelledSequent& s) {
  auto root = is_treelike(s);
  if (!root) throw NotTreelike();
  if (labels_of(s).empty()) return s;
  TreeInfo t;
  for (const auto& w : labels_of(s)) {
    t.children[w] = {};
    t.content[w] = {};
    t.doms[w] = {};
  }
  std::map<std::pair<Label, Label>, int> mult;
  for (const auto& r : s.rel) {
    if (r.is_le()) ++mult[{r.a, r.b}];
    else t.doms[r.b].push_back(r.a);
  }
  for (const auto& [e, m] : mult) t.children[e.first].emplace_back(e.second, m);
  for (const auto& [w, f] : s.ante) t.content[w].first.push_back(f);
  for (const auto& [w, f] : s.succ) t.content[w].second.push_back(f);
  std::map<Label, Label> renaming;
  assign_labels(t, *root, renaming);
  LabelledSequent out = apply_label_renaming(s, renaming);
  std::sort(out.rel.begin(), out.rel.end());
  auto lf_lt = [](const LabelledFormula& x, const LabelledFormula& y) { return compare_lf(x, y) < 0; };
  std::sort(out.ante.begin(), out.ante.end(), lf_lt);
  std::sort(out.succ.begin(), out.succ.end(), lf_lt);
  return out;
}

bool iso_equal(const LabelledSequent& a, const LabelledSequent& b) {
  return multiset_equal(canonical_form(a), canonical_form(b));
}

bool iso_equal(const NestedSequent& a, const NestedSequent& b) {
  return compare(canonical_form(a), canonical_form(b)) == 0;
}

}  // namespace iproof
