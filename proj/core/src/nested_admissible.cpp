#include "iproof/translate.hpp"
#include "transform_util.hpp"

namespace iproof {
namespace {

std::map<std::string, Label> canonical_positions(const NestedSequent& s) {
  std::map<std::string, Label> m;
  to_labelled(s, &m);
  return m;
}

// All positions of the subtree rooted at `pos` (inclusive, preorder).
void subtree_positions(const NestedSequent& root, const std::string& pos,
                       std::vector<std::string>& out) {
  out.push_back(pos);
  const auto* comp = component_at(root, pos);
  for (std::size_t i = 0; i < comp->children.size(); ++i)
    subtree_positions(root, pos + "." + std::to_string(i), out);
}

// Contracts every duplicated relational atom away (used after label merges).
Derivation dedupe_rel(const Calculus& star, Derivation d) {
  for (;;) {
    const auto& rel = d.labelled().rel;
    bool again = false;
    for (std::size_t i = 0; i < rel.size() && !again; ++i)
      for (std::size_t j = i + 1; j < rel.size() && !again; ++j)
        if (rel[i] == rel[j]) {
          d = contract_rel(star, d, rel[i]);
          again = true;
        }
    if (!again) return d;
  }
}

}  // namespace

Derivation nested_structural(const Calculus& c, RuleId rule, const NestedStructuralArgs& args,
                             const Derivation& d) {
  if (rule == RuleId::n_lwr || rule == RuleId::n_cut)
    throw Unsupported(rule_name(rule) + ": the transform routes through labelled cut admissibility");
  if (!c.nested()) throw Unsupported("nested_structural expects a nested calculus");

  auto lab = proof_to_labelled(c, d);
  const Calculus target = lab.calculus;
  const Calculus star{inflated(target.name)};
  const NestedSequent& prem_nested = d.nested();
  auto posmap = canonical_positions(prem_nested);
  auto at = [&](const std::string& pos) {
    auto it = posmap.find(pos);
    if (it == posmap.end()) throw NotApplicable("no component at " + pos);
    return it->second;
  };
  Derivation cur = lab.derivation;

  switch (rule) {
    case RuleId::n_wk_l:
    case RuleId::n_wk_r: {
      Label w = at(args.pos);
      LabelledSequent extra;
      std::set<std::string> params;
      const auto& fs = rule == RuleId::n_wk_l ? args.ante : args.succ;
      for (const auto& f : fs) {
        if (rule == RuleId::n_wk_l) extra.ante.emplace_back(w, f);
        else extra.succ.emplace_back(w, f);
        for (const auto& p : free_parameters(f)) params.insert(p);
      }
      for (const auto& p : params)
        if (!has_rel(cur.labelled(), RelAtom::dom(p, w))) extra.rel.push_back(RelAtom::dom(p, w));
      cur = weaken(star, cur, extra);
      break;
    }
    case RuleId::n_psub: {
      cur = rename_param(star, cur, args.from, args.to);
      cur = dedupe_rel(star, std::move(cur));
      break;
    }
    case RuleId::n_ctr_l: {
      Label w = at(args.pos);
      for (const auto& f : args.ante) cur = contract_ante(star, cur, w, f);
      break;
    }
    case RuleId::n_ctr_r: {
      Label w = at(args.pos);
      for (const auto& f : args.succ) cur = contract_succ(star, cur, w, f);
      break;
    }
    case RuleId::n_nr: {
      std::set<std::string> used = labels_of(cur.labelled());
      Label root = at("0");
      Label fresh = fresh_label(used, "w");
      LabelledSequent extra;
      extra.rel.push_back(RelAtom::le(fresh, root));
      cur = weaken(star, cur, extra);
      break;
    }
    case RuleId::n_mrg1: {
      // merge the identical subtree at args.child2 onto the one at args.child
      std::vector<std::string> keep, gone;
      subtree_positions(prem_nested, args.child, keep);
      subtree_positions(prem_nested, args.child2, gone);
      if (keep.size() != gone.size()) throw NotApplicable("n_mrg1: subtrees differ");
      const auto* a = component_at(prem_nested, args.child);
      const auto* b = component_at(prem_nested, args.child2);
      if (!a || !b || !equal(*a, *b)) throw NotApplicable("n_mrg1: children are not identical");
      for (std::size_t i = 0; i < gone.size(); ++i)
        cur = rename_label(star, cur, at(gone[i]), at(keep[i]));
      // contract every duplicated atom and formula of the kept subtree
      cur = dedupe_rel(star, std::move(cur));
      for (std::size_t i = 0; i < keep.size(); ++i) {
        Label w = at(keep[i]);
        const auto* comp = component_at(prem_nested, keep[i]);
        for (const auto& f : comp->ante) cur = contract_ante(star, cur, w, f);
        for (const auto& f : comp->succ) cur = contract_succ(star, cur, w, f);
      }
      break;
    }
    case RuleId::n_mrg2: {
      Label child = at(args.child);
      Label parent = at(args.child.substr(0, args.child.rfind('.')));
      cur = rename_label(star, cur, child, parent);
      cur = admissible_ref(star, cur, parent);
      cur = dedupe_rel(star, std::move(cur));
      break;
    }
    case RuleId::n_ew1: {
      if (!args.subtree) throw NotApplicable("n_ew1 needs the subtree to add");
      Label w = at(args.pos);
      std::set<std::string> used = labels_of(cur.labelled());
      LabelledSequent sub;
      std::size_t next = 0;
      std::map<std::string, Label> names;
      std::function<Label(const std::string&)> name_of = [&](const std::string& pos) -> Label {
        auto it = names.find(pos);
        if (it != names.end()) return it->second;
        Label cand;
        do {
          cand = "u" + std::to_string(next++);
        } while (used.count(cand));
        names[pos] = cand;
        return cand;
      };
      // labelled image of the new subtree, hung under w
      struct Hang {
        static void run(const NestedSequent& n, const std::string& pos, const Label& here,
                        const std::function<Label(const std::string&)>& name_of,
                        LabelledSequent& out) {
          std::set<std::string> params;
          for (const auto& f : n.ante) {
            out.ante.emplace_back(here, f);
            for (const auto& p : free_parameters(f)) params.insert(p);
          }
          for (const auto& f : n.succ) {
            out.succ.emplace_back(here, f);
            for (const auto& p : free_parameters(f)) params.insert(p);
          }
          for (const auto& p : params) out.rel.push_back(RelAtom::dom(p, here));
          for (std::size_t i = 0; i < n.children.size(); ++i) {
            std::string cpos = pos + "." + std::to_string(i);
            Label c = name_of(cpos);
            out.rel.push_back(RelAtom::le(here, c));
            run(n.children[i], cpos, c, name_of, out);
          }
        }
      };
      Label top = name_of("s");
      sub.rel.push_back(RelAtom::le(w, top));
      Hang::run(*args.subtree, "s", top, name_of, sub);
      cur = weaken(star, cur, sub);
      break;
    }
    case RuleId::n_ew2: {
      Label child = at(args.child);
      Label parent = at(args.child.substr(0, args.child.rfind('.')));
      std::set<std::string> used = labels_of(cur.labelled());
      Label mid = fresh_label(used, "u");
      LabelledSequent extra;
      extra.rel.push_back(RelAtom::le(parent, mid));
      extra.rel.push_back(RelAtom::le(mid, child));
      cur = weaken(star, cur, extra);
      cur = admissible_tra(star, cur, parent, mid, child);
      break;
    }
    default:
      throw Unsupported("unsupported nested structural rule " + rule_name(rule));
  }

  if (!is_nestedlike(cur.labelled()))
    throw TransformError("nested structural transform left a non-nestedlike sequent");
  auto back = proof_to_nested(target, cur);
  return back.derivation;
}

namespace {

Derivation embed_labelled(const Calculus& src, const Calculus& dst, const Derivation& d) {
  std::vector<Derivation> prem;
  for (const auto& p : d.premises) prem.push_back(embed_labelled(src, dst, p));
  RuleInstance inst = d.inst;
  switch (inst.rule) {
    case RuleId::id_q_n: inst.rule = RuleId::id_q_c; break;
    case RuleId::exists_r_n: inst.rule = RuleId::exists_r_c; break;
    case RuleId::exists_r_in: inst.rule = RuleId::exists_r_ic; break;
    case RuleId::forall_l_n: inst.rule = RuleId::forall_l_c; break;
    case RuleId::forall_l_in: inst.rule = RuleId::forall_l_ic; break;
    case RuleId::forall_r: {
      // rename the eigenlabel onto the principal label, remove the loop, and
      // close with the constant-domain right rule
      const LabelledSequent& concl = d.labelled();
      const auto& [w, f] = concl.succ[inst.principal[0].index];
      Calculus star{inflated(dst.name)};
      Derivation p = rename_label(star, prem[0], inst.eigen[0], w);
      p = admissible_ref(star, p, w);
      RuleInstance fr;
      fr.rule = RuleId::forall_r_c;
      fr.principal = inst.principal;
      fr.eigen = {inst.eigen[1]};
      fr.witness = inst.witness;
      return make_step(dst, d.conclusion, std::move(fr), {std::move(p)});
    }
    default:
      break;
  }
  return make_step(dst, d.conclusion, std::move(inst), std::move(prem));
}

Derivation embed_nested(const Calculus& src, const Calculus& dst, const Derivation& d) {
  std::vector<Derivation> prem;
  for (const auto& p : d.premises) prem.push_back(embed_nested(src, dst, p));
  RuleInstance inst = d.inst;
  if (inst.rule != RuleId::n_forall_r_n)
    return make_step(dst, d.conclusion, std::move(inst), std::move(prem));
  // (forall right) via merging the fresh component back into its parent
  NestedStructuralArgs args;
  args.child = inst.principal[1].pos;
  Derivation merged = nested_structural(dst, RuleId::n_mrg2, args, prem[0]);
  const NestedSequent& concl = d.nested();
  const auto* comp = component_at(concl, inst.principal[0].pos);
  FormulaPtr quant = comp->succ[inst.principal[0].index];
  FormulaPtr instf = subst_var(quant->lhs, quant->head, Term::param(inst.witness->param));
  NestedSequent expect = concl;
  auto* ecomp = component_at(expect, inst.principal[0].pos);
  ecomp->succ.erase(ecomp->succ.begin() + static_cast<std::ptrdiff_t>(inst.principal[0].index));
  ecomp->succ.push_back(instf);
  if (!equal(merged.nested(), expect))
    throw TransformError("embedding: merge produced an unexpected sequent");
  RuleInstance fr;
  fr.rule = RuleId::n_forall_r_c;
  fr.principal = {inst.principal[0]};
  fr.eigen = inst.eigen;
  fr.witness = inst.witness;
  return make_step(dst, d.conclusion, std::move(fr), {std::move(merged)});
}

}  // namespace

CalculusDerivation embed_q_in_qc(const Calculus& c, const Derivation& d) {
  if (c.name == CalculusName::IntQL) {
    Calculus dst{CalculusName::IntQCL, c.allow_admissible};
    return {dst, embed_labelled(c, dst, d)};
  }
  if (c.name == CalculusName::NIntQ) {
    Calculus dst{CalculusName::NIntQC, c.allow_admissible};
    return {dst, embed_nested(c, dst, d)};
  }
  throw Unsupported("embed_q_in_qc expects IntQL or NIntQ");
}

}  // namespace iproof
