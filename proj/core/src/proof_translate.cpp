#include "iproof/translate.hpp"
#include "transform_util.hpp"

namespace iproof {
namespace {

// Children ordered by the first occurrence of their edge, matching to_nested.
std::vector<Label> children_of(const LabelledSequent& s, const Label& w) {
  std::vector<Label> out;
  for (const auto& r : s.rel)
    if (r.is_le() && r.a == w && std::find(out.begin(), out.end(), r.b) == out.end())
      out.push_back(r.b);
  return out;
}

void map_positions(const LabelledSequent& s, const Label& w, const std::string& pos,
                   std::map<Label, std::string>& out) {
  out[w] = pos;
  auto kids = children_of(s, w);
  for (std::size_t i = 0; i < kids.size(); ++i)
    map_positions(s, kids[i], pos + "." + std::to_string(i), out);
}

std::map<Label, std::string> label_positions(const LabelledSequent& s) {
  auto root = is_treelike(s);
  if (!root) throw NotTreelike();
  std::map<Label, std::string> out;
  map_positions(s, *root, "0", out);
  return out;
}

// Index of a labelled ante/succ entry within its component's formula list.
std::size_t component_index(const std::vector<LabelledFormula>& v, std::size_t idx) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < idx; ++i)
    if (v[i].first == v[idx].first) ++n;
  return n;
}

CalculusName nested_of(CalculusName refined) {
  switch (refined) {
    case CalculusName::IntL: return CalculusName::NInt;
    case CalculusName::IntQL: return CalculusName::NIntQ;
    case CalculusName::IntQCL: return CalculusName::NIntQC;
    default: throw Unsupported("proof_to_nested expects a refined labelled calculus");
  }
}

CalculusName refined_of(CalculusName nested) {
  switch (nested) {
    case CalculusName::NInt: return CalculusName::IntL;
    case CalculusName::NIntQ: return CalculusName::IntQL;
    case CalculusName::NIntQC: return CalculusName::IntQCL;
    default: throw Unsupported("proof_to_labelled expects a nested calculus");
  }
}

struct ToNested {
  Calculus refined;
  Calculus target;

  // Position of `fresh` in the premise tree: rules append edges, but the
  // surrounding context fixes where the new component lands among siblings.
  static std::string child_pos_in(const LabelledSequent& premise, const Label& fresh) {
    auto pm = label_positions(premise);
    auto it = pm.find(fresh);
    if (it == pm.end()) throw TransformError("translation: fresh label " + fresh + " not in premise");
    return it->second;
  }

  Derivation run(const Derivation& d) {
    const LabelledSequent& concl = d.labelled();
    NestedSequent nc = to_nested(concl);
    auto posmap = label_positions(concl);
    const RuleInstance& li = d.inst;
    auto pos_of = [&](const Label& w) {
      auto it = posmap.find(w);
      if (it == posmap.end()) throw TransformError("translation: unknown label " + w);
      return it->second;
    };
    auto n_ante = [&](std::size_t i) {
      return SeqRef::ante(component_index(concl.ante, i), pos_of(concl.ante[i].first));
    };
    auto n_succ = [&](std::size_t i) {
      return SeqRef::succ(component_index(concl.succ, i), pos_of(concl.succ[i].first));
    };
    RuleInstance ni;
    switch (li.rule) {
      case RuleId::id_star:
        ni.rule = RuleId::n_id;
        ni.principal = {n_ante(li.principal[0].index), n_succ(li.principal[1].index)};
        break;
      case RuleId::id_q_n:
      case RuleId::id_q_c:
        ni.rule = RuleId::n_id_q;
        ni.principal = {n_ante(li.principal[0].index), n_succ(li.principal[1].index)};
        break;
      case RuleId::bot_l:
        ni.rule = RuleId::n_bot_l;
        ni.principal = {n_ante(li.principal[0].index)};
        break;
      case RuleId::and_l:
        ni.rule = RuleId::n_and_l;
        ni.principal = {n_ante(li.principal[0].index)};
        break;
      case RuleId::and_r:
        ni.rule = RuleId::n_and_r;
        ni.principal = {n_succ(li.principal[0].index)};
        break;
      case RuleId::or_l:
        ni.rule = RuleId::n_or_l;
        ni.principal = {n_ante(li.principal[0].index)};
        break;
      case RuleId::or_r:
        ni.rule = RuleId::n_or_r;
        ni.principal = {n_succ(li.principal[0].index)};
        break;
      case RuleId::imp_l_star:
        ni.rule = RuleId::n_imp_l;
        ni.principal = {n_ante(li.principal[0].index)};
        break;
      case RuleId::neg_l:
        ni.rule = RuleId::n_neg_l;
        ni.principal = {n_ante(li.principal[0].index)};
        break;
      case RuleId::imp_r:
      case RuleId::neg_r: {
        ni.rule = li.rule == RuleId::imp_r ? RuleId::n_imp_r : RuleId::n_neg_r;
        ni.principal = {n_succ(li.principal[0].index),
                        SeqRef::child(child_pos_in(d.premises[0].labelled(), li.eigen.at(0)))};
        break;
      }
      case RuleId::forall_r: {
        ni.rule = RuleId::n_forall_r_n;
        ni.principal = {n_succ(li.principal[0].index),
                        SeqRef::child(child_pos_in(d.premises[0].labelled(), li.eigen.at(0)))};
        ni.eigen = {li.eigen.at(1)};
        ni.witness = li.witness;
        break;
      }
      case RuleId::forall_r_c:
        ni.rule = RuleId::n_forall_r_c;
        ni.principal = {n_succ(li.principal[0].index)};
        ni.eigen = li.eigen;
        ni.witness = li.witness;
        break;
      case RuleId::lift: {
        const RelAtom& edge = concl.rel[li.principal[0].index];
        ni.rule = RuleId::n_lift;
        ni.principal = {n_ante(li.principal[1].index), SeqRef::child(pos_of(edge.b))};
        break;
      }
      case RuleId::exists_l:
        ni.rule = RuleId::n_exists_l;
        ni.principal = {n_ante(li.principal[0].index)};
        ni.eigen = li.eigen;
        ni.witness = li.witness;
        break;
      case RuleId::exists_r_n:
      case RuleId::exists_r_c:
      case RuleId::exists_r_in:
      case RuleId::exists_r_ic:
        ni.rule = RuleId::n_exists_r;
        ni.principal = {n_succ(li.principal[0].index)};
        ni.witness = li.witness;
        break;
      case RuleId::forall_l_n:
      case RuleId::forall_l_c:
        ni.rule = RuleId::n_forall_l;
        ni.principal = {n_ante(li.principal[1].index)};
        ni.witness = li.witness;
        break;
      case RuleId::forall_l_in:
      case RuleId::forall_l_ic:
        ni.rule = RuleId::n_forall_l;
        ni.principal = {n_ante(li.principal[0].index)};
        ni.witness = li.witness;
        break;
      default:
        throw TransformError("proof_to_nested: untranslatable rule " + rule_name(li.rule));
    }
    std::vector<Derivation> prem;
    for (const auto& p : d.premises) prem.push_back(run(p));
    return make_step(target, Sequent{std::move(nc)}, std::move(ni), std::move(prem));
  }
};

}  // namespace

bool is_nested_form(const Calculus& c, const Derivation& d) {
  if (!is_nestedlike(d.labelled())) return false;
  struct Walk {
    static bool ok(const Derivation& n) {
      if (n.inst.rule == RuleId::exists_r_n || n.inst.rule == RuleId::forall_l_n) {
        const LabelledSequent& concl = n.labelled();
        std::size_t formula_slot = n.inst.rule == RuleId::exists_r_n ? 0 : 1;
        const auto& r = n.inst.principal[formula_slot];
        Label w = r.kind == SeqRef::Kind::Succ ? concl.succ[r.index].first : concl.ante[r.index].first;
        std::string a = n.inst.witness ? n.inst.witness->param : "";
        bool witnessed = false;
        auto scan = [&](const std::vector<LabelledFormula>& part) {
          for (const auto& [u, b] : part)
            if (free_parameters(b).count(a) && path_exists(concl.rel, u, w, PathMode::Directed))
              witnessed = true;
        };
        scan(concl.ante);
        scan(concl.succ);
        if (!witnessed) return false;
      }
      for (const auto& p : n.premises)
        if (!ok(p)) return false;
      return true;
    }
  };
  (void)c;
  return Walk::ok(d);
}

CalculusDerivation proof_to_nested(const Calculus& refined, const Derivation& d) {
  Calculus target{nested_of(refined.name)};
  if (!is_nestedlike(d.labelled())) throw NotNestedlike();
  if (refined.name == CalculusName::IntQL && !is_nested_form(refined, d)) throw NotNestedForm();
  Derivation prepared = specialize_identity(refined, d);
  ToNested t{refined, target};
  return {target, t.run(prepared)};
}

namespace {

Label positional_label(const std::string& pos) {
  std::string w = "w";
  for (char c : pos) w += c == '.' ? '_' : c;
  return w;
}

struct ToLabelled {
  Calculus nested;
  Calculus target;   // the refined calculus
  Calculus star;     // its inflated superset, used by the repair transforms

  static std::string parent(const std::string& pos) { return pos.substr(0, pos.rfind('.')); }

  // Walks the undirected tree path between two positions (dotted strings):
  // up from `from` to the common prefix, then down to `to`.
  static std::vector<std::string> tree_route(const std::string& from, const std::string& to) {
    auto split = [](const std::string& p) {
      std::vector<std::string> parts{"0"};
      std::string cur = "0";
      for (std::size_t i = 1; i < p.size();) {
        auto j = p.find('.', i + 1);
        if (j == std::string::npos) j = p.size();
        cur += p.substr(i, j - i);
        parts.push_back(cur);
        i = j;
      }
      return parts;
    };
    auto a = split(from), b = split(to);
    std::size_t common = 0;
    while (common < a.size() && common < b.size() && a[common] == b[common]) ++common;
    std::vector<std::string> route;
    for (std::size_t i = a.size(); i-- > common;) route.push_back(a[i]);
    route.push_back(a[common - 1]);
    for (std::size_t i = common; i < b.size(); ++i) route.push_back(b[i]);
    return route;
  }

  // Brings `cur`, a derivation of `have`, to `want` by weakening in missing
  // domain atoms and deleting surplus ones along tree paths.
  Derivation fix_domains(Derivation cur, const LabelledSequent& want) {
    LabelledSequent have = cur.labelled();
    auto doms = [](const LabelledSequent& s) {
      std::vector<RelAtom> out;
      for (const auto& r : s.rel)
        if (!r.is_le()) out.push_back(r);
      return out;
    };
    auto missing = [&]() {
      auto rest = doms(cur.labelled());
      std::vector<RelAtom> out;
      for (const auto& r : doms(want)) {
        bool hit = false;
        for (std::size_t i = 0; i < rest.size(); ++i)
          if (rest[i] == r) {
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
            hit = true;
            break;
          }
        if (!hit) out.push_back(r);
      }
      return out;
    };
    auto surplus = [&]() {
      auto rest = doms(want);
      std::vector<RelAtom> out;
      for (const auto& r : doms(cur.labelled())) {
        bool hit = false;
        for (std::size_t i = 0; i < rest.size(); ++i)
          if (rest[i] == r) {
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
            hit = true;
            break;
          }
        if (!hit) out.push_back(r);
      }
      return out;
    };

    LabelledSequent add;
    add.rel = missing();
    cur = weaken(star, cur, add);
    // Delete surplus atoms along the tree, bridging with intermediate copies.
    auto pos_of_label = [&](const Label& w) {
      std::string pos = "0";
      std::string body = w.substr(1);
      std::string out;
      for (char ch : body) out += ch == '_' ? '.' : ch;
      return out;
    };
    for (const auto& atom : surplus()) {
      // nearest source copy of the same parameter
      const std::string from_pos = pos_of_label(atom.b);
      std::string best;
      std::size_t best_len = SIZE_MAX;
      for (const auto& r : cur.labelled().rel) {
        if (r.is_le() || r.a != atom.a || r.b == atom.b) continue;
        auto route = tree_route(pos_of_label(r.b), from_pos);
        if (route.size() < best_len) {
          best_len = route.size();
          best = pos_of_label(r.b);
        }
      }
      if (best.empty()) throw TransformError("no surviving domain atom for #" + atom.a);
      auto route = tree_route(best, from_pos);  // source ... target
      // bridge the interior of the route
      LabelledSequent bridge;
      for (std::size_t i = 1; i + 1 < route.size(); ++i) {
        RelAtom at = RelAtom::dom(atom.a, positional_label(route[i]));
        if (!has_rel(cur.labelled(), at)) bridge.rel.push_back(at);
      }
      cur = weaken(star, cur, bridge);
      // delete from the target backwards
      for (std::size_t i = route.size(); i-- > 1;) {
        Label here = positional_label(route[i]);
        Label prev = positional_label(route[i - 1]);
        if (!has_rel(cur.labelled(), RelAtom::dom(atom.a, here))) continue;
        if (route[i - 1] == parent(route[i]))
          cur = admissible_nd(star, cur, prev, here, atom.a);
        else
          cur = admissible_cd(star, cur, here, prev, atom.a);
      }
    }
    if (!multiset_equal(cur.labelled(), want))
      throw TransformError("domain repair missed the target premise");
    return cur;
  }

  Derivation run(const Derivation& d) {
    const NestedSequent& nc = d.nested();
    LabelledSequent lc = to_labelled_positional(nc);
    const RuleInstance& ni = d.inst;
    auto lab = [&](const std::string& pos) { return positional_label(pos); };
    auto l_ante = [&](std::size_t k) {
      const auto& r = ni.principal[k];
      const auto* comp = component_at(nc, r.pos);
      return SeqRef::ante(find_ante(lc, lab(r.pos), comp->ante[r.index]));
    };
    auto l_succ = [&](std::size_t k) {
      const auto& r = ni.principal[k];
      const auto* comp = component_at(nc, r.pos);
      return SeqRef::succ(find_succ(lc, lab(r.pos), comp->succ[r.index]));
    };

    RuleInstance li;
    switch (ni.rule) {
      case RuleId::n_id:
        li.rule = target.name == CalculusName::IntL
                      ? RuleId::id_star
                      : (target.constant_domain() ? RuleId::id_q_c : RuleId::id_q_n);
        li.principal = {l_ante(0), l_succ(1)};
        break;
      case RuleId::n_id_q:
        li.rule = target.constant_domain() ? RuleId::id_q_c : RuleId::id_q_n;
        li.principal = {l_ante(0), l_succ(1)};
        break;
      case RuleId::n_bot_l:
        li.rule = RuleId::bot_l;
        li.principal = {l_ante(0)};
        break;
      case RuleId::n_and_l:
        li.rule = RuleId::and_l;
        li.principal = {l_ante(0)};
        break;
      case RuleId::n_and_r:
        li.rule = RuleId::and_r;
        li.principal = {l_succ(0)};
        break;
      case RuleId::n_or_l:
        li.rule = RuleId::or_l;
        li.principal = {l_ante(0)};
        break;
      case RuleId::n_or_r:
        li.rule = RuleId::or_r;
        li.principal = {l_succ(0)};
        break;
      case RuleId::n_imp_l:
        li.rule = RuleId::imp_l_star;
        li.principal = {l_ante(0)};
        break;
      case RuleId::n_neg_l:
        li.rule = RuleId::neg_l;
        li.principal = {l_ante(0)};
        break;
      case RuleId::n_imp_r:
      case RuleId::n_neg_r:
        li.rule = ni.rule == RuleId::n_imp_r ? RuleId::imp_r : RuleId::neg_r;
        li.principal = {l_succ(0)};
        li.eigen = {lab(ni.principal[1].pos)};
        break;
      case RuleId::n_forall_r_n:
        li.rule = RuleId::forall_r;
        li.principal = {l_succ(0)};
        li.eigen = {lab(ni.principal[1].pos), ni.eigen.at(0)};
        li.witness = ni.witness;
        break;
      case RuleId::n_forall_r_c:
        li.rule = RuleId::forall_r_c;
        li.principal = {l_succ(0)};
        li.eigen = ni.eigen;
        li.witness = ni.witness;
        break;
      case RuleId::n_lift: {
        const auto& r = ni.principal[1];
        li.rule = RuleId::lift;
        li.principal = {SeqRef::rel(find_rel(lc, RelAtom::le(lab(parent(r.pos)), lab(r.pos)))),
                        l_ante(0)};
        break;
      }
      case RuleId::n_exists_l:
        li.rule = RuleId::exists_l;
        li.principal = {l_ante(0)};
        li.eigen = ni.eigen;
        li.witness = ni.witness;
        break;
      case RuleId::n_exists_r:
      case RuleId::n_forall_l: {
        bool is_exists = ni.rule == RuleId::n_exists_r;
        const std::string pos = ni.principal[0].pos;
        const std::string a = ni.witness->param;
        bool eigen = parameters_of(nc).count(a) == 0;
        if (eigen) {
          li.rule = is_exists
                        ? (target.constant_domain() ? RuleId::exists_r_ic : RuleId::exists_r_in)
                        : (target.constant_domain() ? RuleId::forall_l_ic : RuleId::forall_l_in);
          li.principal = {is_exists ? l_succ(0) : l_ante(0), SeqRef::label_arg(lab(pos))};
          li.eigen = {a};
          li.witness = ni.witness;
          break;
        }
        // available witness: use a domain atom at the closest component that
        // carries the parameter
        std::string upos;
        if (target.constant_domain()) {
          // any component works; prefer the component itself, then preorder
          struct Scan {
            static bool find(const NestedSequent& n, const std::string& p, const std::string& par,
                             std::string& out) {
              auto used = [&](const std::vector<FormulaPtr>& fs) {
                for (const auto& f : fs)
                  if (free_parameters(f).count(par)) return true;
                return false;
              };
              if (used(n.ante) || used(n.succ)) {
                out = p;
                return true;
              }
              for (std::size_t i = 0; i < n.children.size(); ++i)
                if (find(n.children[i], p + "." + std::to_string(i), par, out)) return true;
              return false;
            }
          };
          const auto* self = component_at(nc, pos);
          auto here = [&] {
            for (const auto& f : self->ante)
              if (free_parameters(f).count(a)) return true;
            for (const auto& f : self->succ)
              if (free_parameters(f).count(a)) return true;
            return false;
          }();
          if (here) upos = pos;
          else if (!Scan::find(nc, "0", a, upos))
            throw TransformError("available witness not found in the conclusion");
        } else {
          // ancestor-or-self chain
          std::string cur = pos;
          for (;;) {
            const auto* comp = component_at(nc, cur);
            bool here = false;
            for (const auto& f : comp->ante)
              if (free_parameters(f).count(a)) here = true;
            for (const auto& f : comp->succ)
              if (free_parameters(f).count(a)) here = true;
            if (here) {
              upos = cur;
              break;
            }
            if (cur == "0") throw TransformError("witness is not available at " + pos);
            cur = parent(cur);
          }
        }
        li.rule = is_exists
                      ? (target.constant_domain() ? RuleId::exists_r_c : RuleId::exists_r_n)
                      : (target.constant_domain() ? RuleId::forall_l_c : RuleId::forall_l_n);
        SeqRef dom = SeqRef::rel(find_rel(lc, RelAtom::dom(a, lab(upos))));
        if (is_exists) li.principal = {l_succ(0), dom};
        else li.principal = {dom, l_ante(0)};
        li.witness = ni.witness;
        break;
      }
      default:
        throw TransformError("proof_to_labelled: untranslatable rule " + rule_name(ni.rule));
    }

    auto expected = premises_of(target, lc, li);
    std::vector<Derivation> prem;
    for (std::size_t k = 0; k < d.premises.size(); ++k)
      prem.push_back(fix_domains(run(d.premises[k]), expected[k]));
    return make_step(target, Sequent{std::move(lc)}, std::move(li), std::move(prem));
  }
};

}  // namespace

CalculusDerivation proof_to_labelled(const Calculus& nested, const Derivation& d) {
  Calculus target{refined_of(nested.name)};
  Calculus star{inflated(target.name)};
  ToLabelled t{nested, target, star};
  Derivation out = t.run(d);
  // canonical labels for the end sequent, matching to_labelled
  std::map<std::string, Label> canon;
  to_labelled(d.nested(), &canon);
  std::map<Label, Label> bij;
  for (const auto& [pos, w] : canon) bij[positional_label(pos)] = w;
  out = relabel(target, out, bij);
  return {target, std::move(out)};
}

}  // namespace iproof
