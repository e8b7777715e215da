#include "transform_util.hpp"

namespace iproof {
namespace {

using detail::rebind_all;

bool principal_matches(const Derivation& d, const Label& w, const FormulaPtr& f, bool ante_side) {
  for (const auto& r : d.inst.principal) {
    if (ante_side && r.kind == SeqRef::Kind::Ante) {
      const auto& lf = d.labelled().ante[r.index];
      if (lf.first == w && equal(lf.second, f)) return true;
    }
    if (!ante_side && r.kind == SeqRef::Kind::Succ) {
      const auto& lf = d.labelled().succ[r.index];
      if (lf.first == w && equal(lf.second, f)) return true;
    }
  }
  return false;
}

// ---- succedent inversions ----
//
// Tracks the single occurrence (w, f): removed from every succedent with
// `adds` appended; the node introducing it hands back its premise with the
// eigenvariables renamed to the requested ones. For the projection rules
// and_r/or_r the premise replaces the formula by the projected pieces.
struct SuccInverter {
  Calculus cal;
  Label w;
  FormulaPtr f;
  RuleId rule;
  LabelledSequent adds;            // for imp_r/neg_r/forall_r/forall_r_c
  std::vector<FormulaPtr> pieces;  // for and_r/or_r: what replaces (w, f)
  std::vector<std::string> eigen;  // requested names, aligned with the rule's
  std::size_t proj = 0;            // and_r projection index

  LabelledSequent edit(const LabelledSequent& s) const {
    LabelledSequent out = s;
    for (std::size_t i = 0; i < out.succ.size(); ++i)
      if (out.succ[i].first == w && equal(out.succ[i].second, f)) {
        out.succ.erase(out.succ.begin() + static_cast<std::ptrdiff_t>(i));
        break;
      }
    out.rel.insert(out.rel.end(), adds.rel.begin(), adds.rel.end());
    out.ante.insert(out.ante.end(), adds.ante.begin(), adds.ante.end());
    out.succ.insert(out.succ.end(), adds.succ.begin(), adds.succ.end());
    for (const auto& p : pieces) out.succ.emplace_back(w, p);
    return out;
  }

  Derivation run(const Derivation& d) const {
    if (d.inst.rule == RuleId::lsub || d.inst.rule == RuleId::psub)
      return run(inline_admissible(cal, d));
    if (d.inst.rule == rule && principal_matches(d, w, f, false)) {
      if (rule == RuleId::and_r) return d.premises[proj];
      Derivation prem = d.premises[0];
      for (std::size_t k = 0; k < eigen.size(); ++k) {
        if (d.inst.eigen[k] == eigen[k]) continue;
        bool is_label = rule == RuleId::imp_r || rule == RuleId::neg_r ||
                        (rule == RuleId::forall_r && k == 0);
        prem = is_label ? rename_label(cal, prem, d.inst.eigen[k], eigen[k])
                        : rename_param(cal, prem, d.inst.eigen[k], eigen[k]);
      }
      return prem;
    }
    const auto& concl = d.labelled();
    LabelledSequent new_concl = edit(concl);
    RuleInstance inst = rebind_all(concl, new_concl, d.inst);
    std::vector<Derivation> prem;
    for (const auto& p : d.premises) prem.push_back(run(p));
    return make_step(cal, Sequent{std::move(new_concl)}, std::move(inst), std::move(prem));
  }
};

// ---- antecedent inversions ----
//
// Tracks the labels whose copies of f get decomposed; lift spawns a new
// tracked copy one component down, which is what makes and_l and exists_l
// inversion lose height preservation.
struct AnteInverter {
  Calculus cal;
  FormulaPtr f;
  RuleId rule;           // and_l, or_l, exists_l
  std::size_t proj = 0;  // or_l projection
  std::set<std::string> reserved;
  std::map<Label, std::string> param_for;  // exists_l witness per label

  std::string witness_for(const Label& u) {
    auto it = param_for.find(u);
    if (it != param_for.end()) return it->second;
    std::string a = fresh_param(reserved, "a");
    reserved.insert(a);
    param_for[u] = a;
    return a;
  }

  void replacement(const Label& u, LabelledSequent& out) {
    switch (rule) {
      case RuleId::and_l:
        out.ante.emplace_back(u, f->lhs);
        out.ante.emplace_back(u, f->rhs);
        break;
      case RuleId::or_l:
        out.ante.emplace_back(u, proj == 0 ? f->lhs : f->rhs);
        break;
      case RuleId::exists_l: {
        std::string a = witness_for(u);
        out.rel.push_back(RelAtom::dom(a, u));
        out.ante.emplace_back(u, subst_var(f->lhs, f->head, Term::param(a)));
        break;
      }
      default:
        throw TransformError("not an antecedent inversion rule");
    }
  }

  LabelledSequent edit(const LabelledSequent& s, const std::set<Label>& tracked) {
    LabelledSequent out;
    out.rel = s.rel;
    out.succ = s.succ;
    for (const auto& [u, g] : s.ante) {
      if (tracked.count(u) && equal(g, f)) replacement(u, out);
      else out.ante.emplace_back(u, g);
    }
    return out;
  }

  Derivation run(const Derivation& d, const std::set<Label>& tracked) {
    if (d.inst.rule == RuleId::lsub || d.inst.rule == RuleId::psub)
      return run(inline_admissible(cal, d), tracked);
    const auto& concl = d.labelled();

    // The rule itself consuming a tracked copy.
    if (d.inst.rule == rule && !d.inst.principal.empty()) {
      for (const auto& r : d.inst.principal)
        if (r.kind == SeqRef::Kind::Ante) {
          const auto& lf = concl.ante[r.index];
          if (tracked.count(lf.first) && equal(lf.second, f)) {
            Label u = lf.first;
            if (rule == RuleId::and_l) return run(d.premises[0], tracked);
            if (rule == RuleId::or_l) return run(d.premises[proj], tracked);
            // exists_l: rename its eigenvariable to this label's witness
            std::string b = d.inst.eigen[0];
            Derivation sub = run(d.premises[0], tracked);
            return rename_param(cal, sub, b, witness_for(u));
          }
        }
    }

    // lift copying a tracked formula down an edge.
    if (d.inst.rule == RuleId::lift) {
      const RelAtom& edge = concl.rel[d.inst.principal[0].index];
      const auto& lf = concl.ante[d.inst.principal[1].index];
      if (tracked.count(lf.first) && equal(lf.second, f)) {
        Label u = lf.first, z = edge.b;
        if (detail::count_ante(concl, z, f) > 0) {
          // The lifted copy duplicates an existing one; contract it away and
          // drop the lift.
          Derivation merged = contract_ante(cal, d.premises[0], z, f);
          return run(merged, tracked);
        }
        std::set<Label> tracked2 = tracked;
        tracked2.insert(z);
        Derivation sub = run(d.premises[0], tracked2);
        LabelledSequent target = edit(concl, tracked);
        switch (rule) {
          case RuleId::and_l: {
            // two lifts put the pieces into the child
            LabelledSequent step1 = target;
            step1.ante.emplace_back(z, f->lhs);
            RuleInstance l2;
            l2.rule = RuleId::lift;
            l2.principal = {SeqRef::rel(find_rel(step1, edge)),
                            SeqRef::ante(find_ante(step1, u, f->rhs))};
            Derivation d2 = make_step(cal, Sequent{step1}, std::move(l2), {std::move(sub)});
            RuleInstance l1;
            l1.rule = RuleId::lift;
            l1.principal = {SeqRef::rel(find_rel(target, edge)),
                            SeqRef::ante(find_ante(target, u, f->lhs))};
            return make_step(cal, Sequent{target}, std::move(l1), {std::move(d2)});
          }
          case RuleId::or_l: {
            FormulaPtr piece = proj == 0 ? f->lhs : f->rhs;
            RuleInstance l1;
            l1.rule = RuleId::lift;
            l1.principal = {SeqRef::rel(find_rel(target, edge)),
                            SeqRef::ante(find_ante(target, u, piece))};
            return make_step(cal, Sequent{target}, std::move(l1), {std::move(sub)});
          }
          case RuleId::exists_l: {
            // unify the child's witness with the source label's, lift the
            // instance down, delete the child's domain atom with nd
            std::string au = witness_for(u), az = witness_for(z);
            Derivation sub2 = rename_param(cal, sub, az, au);
            FormulaPtr instf = subst_var(f->lhs, f->head, Term::param(au));
            LabelledSequent step1 = target;
            step1.rel.push_back(RelAtom::dom(au, z));
            RuleInstance l1;
            l1.rule = RuleId::lift;
            l1.principal = {SeqRef::rel(find_rel(step1, edge)),
                            SeqRef::ante(find_ante(step1, u, instf))};
            Derivation d2 = make_step(cal, Sequent{step1}, std::move(l1), {std::move(sub2)});
            RuleInstance ndi;
            ndi.rule = RuleId::nd;
            ndi.principal = {SeqRef::rel(find_rel(target, edge)),
                             SeqRef::rel(find_rel(target, RelAtom::dom(au, u)))};
            return make_step(cal, Sequent{target}, std::move(ndi), {std::move(d2)});
          }
          default:
            throw TransformError("unreachable");
        }
      }
    }

    LabelledSequent new_concl = edit(concl, tracked);
    RuleInstance inst = rebind_all(concl, new_concl, d.inst);
    std::vector<Derivation> prem;
    for (const auto& p : d.premises) prem.push_back(run(p, tracked));
    return make_step(cal, Sequent{std::move(new_concl)}, std::move(inst), std::move(prem));
  }
};

}  // namespace

Derivation invert(const Calculus& c, const Derivation& d, const RuleInstance& app,
                  std::size_t premise_index) {
  Calculus big{inflated(c.name), c.allow_admissible};
  const auto& concl = d.labelled();
  auto targets = premises_of(big, concl, app);
  if (premise_index >= targets.size()) throw ShapeMismatch("premise index out of range");
  const LabelledSequent& target = targets[premise_index];
  switch (app.rule) {
    case RuleId::imp_r:
    case RuleId::neg_r:
    case RuleId::forall_r:
    case RuleId::forall_r_c: {
      const auto& lf = concl.succ[app.principal[0].index];
      SuccInverter inv{big, lf.first, lf.second, app.rule,
                       detail::minus(target, [&] {
                         LabelledSequent base = concl;
                         base.succ.erase(base.succ.begin() +
                                         static_cast<std::ptrdiff_t>(app.principal[0].index));
                         return base;
                       }()),
                       {}, app.eigen};
      auto out = inv.run(d);
      if (!multiset_equal(out.labelled(), target))
        throw TransformError("inversion produced the wrong sequent");
      return out;
    }
    case RuleId::and_r: {
      const auto& lf = concl.succ[app.principal[0].index];
      SuccInverter inv{big, lf.first, lf.second, app.rule, {},
                       {premise_index == 0 ? lf.second->lhs : lf.second->rhs}, {}, premise_index};
      auto out = inv.run(d);
      if (!multiset_equal(out.labelled(), target))
        throw TransformError("inversion produced the wrong sequent");
      return out;
    }
    case RuleId::or_r: {
      const auto& lf = concl.succ[app.principal[0].index];
      SuccInverter inv{big, lf.first, lf.second, app.rule, {},
                       {lf.second->lhs, lf.second->rhs}, {}};
      auto out = inv.run(d);
      if (!multiset_equal(out.labelled(), target))
        throw TransformError("inversion produced the wrong sequent");
      return out;
    }
    case RuleId::and_l:
    case RuleId::or_l:
    case RuleId::exists_l: {
      const auto& lf = concl.ante[app.principal[0].index];
      AnteInverter inv{big, lf.second, app.rule, premise_index, detail::universe(d), {}};
      if (app.rule == RuleId::exists_l) {
        inv.reserved.insert(app.eigen.begin(), app.eigen.end());
        inv.param_for[lf.first] = app.eigen.at(0);
      }
      auto out = inv.run(d, {lf.first});
      if (!multiset_equal(out.labelled(), target))
        throw TransformError("inversion produced the wrong sequent");
      return out;
    }
    default: {
      // weakening-style inverse: the premise extends the conclusion
      return weaken(big, d, detail::minus(target, concl));
    }
  }
}

Derivation nested_invert(const Calculus& c, const Derivation& d, const RuleInstance& app,
                         std::size_t premise_index) {
  auto targets = premises_of(c, d.nested(), app);
  if (premise_index >= targets.size()) throw ShapeMismatch("premise index out of range");
  const NestedSequent& target = targets[premise_index];

  // Weakening-style nested inverses (the copy-retaining rules).
  switch (app.rule) {
    case RuleId::n_neg_l:
    case RuleId::n_imp_l:
    case RuleId::n_exists_r:
    case RuleId::n_forall_l:
    case RuleId::n_lift: {
      // premise = conclusion + one formula somewhere
      struct Delta {
        static bool find(const NestedSequent& a, const NestedSequent& b, const std::string& pos,
                         std::string& where, bool& in_ante, FormulaPtr& what) {
          if (a.children.size() != b.children.size()) return false;
          if (a.ante.size() + 1 == b.ante.size()) {
            auto rest = b.ante;
            for (const auto& g : a.ante)
              for (std::size_t i = 0; i < rest.size(); ++i)
                if (equal(rest[i], g)) {
                  rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
                  break;
                }
            if (rest.size() == 1) {
              where = pos;
              in_ante = true;
              what = rest[0];
              return true;
            }
          }
          if (a.succ.size() + 1 == b.succ.size()) {
            auto rest = b.succ;
            for (const auto& g : a.succ)
              for (std::size_t i = 0; i < rest.size(); ++i)
                if (equal(rest[i], g)) {
                  rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
                  break;
                }
            if (rest.size() == 1) {
              where = pos;
              in_ante = false;
              what = rest[0];
              return true;
            }
          }
          for (std::size_t i = 0; i < a.children.size(); ++i)
            if (find(a.children[i], b.children[i], pos + "." + std::to_string(i), where, in_ante, what))
              return true;
          return false;
        }
      };
      std::string where;
      bool in_ante = false;
      FormulaPtr what;
      if (!Delta::find(d.nested(), target, "0", where, in_ante, what))
        throw TransformError("nested inversion: could not isolate the weakening delta");
      return in_ante ? nested_weaken(c, d, where, {what}, {})
                     : nested_weaken(c, d, where, {}, {what});
    }
    default:
      break;
  }

  // Proper nested inversions by recursion on the derivation. The tracked
  // occurrence sits in the succedent (n_imp_r, n_neg_r, n_or_r, n_and_r,
  // n_forall_r_n, n_forall_r_c) or the antecedent (n_and_l, n_or_l,
  // n_exists_l); new children are appended at the end of the component, the
  // layout every prover-found proof uses.
  struct NIv {
    Calculus cal;
    RuleInstance app;
    std::size_t proj;

    std::string pos() const { return app.principal[0].pos; }

    NestedSequent edit(const NestedSequent& s, const FormulaPtr& f) const {
      NestedSequent out = s;
      auto* comp = component_at(out, pos());
      if (!comp) throw TransformError("nested inversion: component vanished");
      bool ante_side = app.principal[0].kind == SeqRef::Kind::Ante;
      auto& vec = ante_side ? comp->ante : comp->succ;
      bool removed = false;
      for (std::size_t i = 0; i < vec.size() && !removed; ++i)
        if (equal(vec[i], f)) {
          vec.erase(vec.begin() + static_cast<std::ptrdiff_t>(i));
          removed = true;
        }
      if (!removed) throw TransformError("nested inversion: tracked formula missing");
      switch (app.rule) {
        case RuleId::n_imp_r: {
          NestedSequent child;
          child.ante.push_back(f->lhs);
          child.succ.push_back(f->rhs);
          comp->children.push_back(child);
          break;
        }
        case RuleId::n_neg_r: {
          NestedSequent child;
          child.ante.push_back(as_negation(f));
          comp->children.push_back(child);
          break;
        }
        case RuleId::n_forall_r_n: {
          NestedSequent child;
          child.succ.push_back(subst_var(f->lhs, f->head, Term::param(app.witness->param)));
          comp->children.push_back(child);
          break;
        }
        case RuleId::n_forall_r_c:
          comp->succ.push_back(subst_var(f->lhs, f->head, Term::param(app.witness->param)));
          break;
        case RuleId::n_or_r:
          comp->succ.push_back(f->lhs);
          comp->succ.push_back(f->rhs);
          break;
        case RuleId::n_and_r:
          comp->succ.push_back(proj == 0 ? f->lhs : f->rhs);
          break;
        case RuleId::n_and_l:
          comp->ante.push_back(f->lhs);
          comp->ante.push_back(f->rhs);
          break;
        case RuleId::n_or_l:
          comp->ante.push_back(proj == 0 ? f->lhs : f->rhs);
          break;
        case RuleId::n_exists_l:
          comp->ante.push_back(subst_var(f->lhs, f->head, Term::param(app.witness->param)));
          break;
        default:
          throw Unsupported("nested inversion for " + rule_name(app.rule));
      }
      return out;
    }

    FormulaPtr principal_formula(const NestedSequent& s) const {
      const auto* comp = component_at(s, pos());
      if (!comp) throw TransformError("nested inversion: no principal component");
      bool ante_side = app.principal[0].kind == SeqRef::Kind::Ante;
      const auto& vec = ante_side ? comp->ante : comp->succ;
      return vec.at(app.principal[0].index);
    }

    bool is_principal_here(const Derivation& d, const FormulaPtr& f) const {
      if (d.inst.rule != app.rule) return false;
      for (const auto& r : d.inst.principal) {
        if (r.kind != app.principal[0].kind || r.pos != pos()) continue;
        const auto* comp = component_at(d.nested(), pos());
        const auto& vec = r.kind == SeqRef::Kind::Ante ? comp->ante : comp->succ;
        if (r.index < vec.size() && equal(vec[r.index], f)) return true;
      }
      return false;
    }

    Derivation run(const Derivation& d, const FormulaPtr& f) const {
      if (is_principal_here(d, f)) {
        if (app.rule == RuleId::n_and_r || app.rule == RuleId::n_or_l) return d.premises[proj];
        Derivation prem = d.premises[0];
        for (std::size_t k = 0; k < app.eigen.size(); ++k)
          if (d.inst.eigen[k] != app.eigen[k])
            prem = nested_rename_param(cal, prem, d.inst.eigen[k], app.eigen[k]);
        return prem;
      }
      NestedSequent new_concl = edit(d.nested(), f);
      // Succedent/antecedent indices below the removal shift by one; refs at
      // other components are untouched because the edit is local.
      RuleInstance inst = d.inst;
      bool ante_side = app.principal[0].kind == SeqRef::Kind::Ante;
      const auto* comp = component_at(d.nested(), pos());
      const auto& vec = ante_side ? comp->ante : comp->succ;
      std::size_t removed = vec.size();
      const FormulaPtr pf = f;
      for (std::size_t i = 0; i < vec.size(); ++i)
        if (equal(vec[i], pf)) {
          removed = i;
          break;
        }
      for (auto& r : inst.principal) {
        bool same_part = (ante_side && r.kind == SeqRef::Kind::Ante) ||
                         (!ante_side && r.kind == SeqRef::Kind::Succ);
        if (same_part && r.pos == pos() && r.index > removed) --r.index;
        else if (same_part && r.pos == pos() && r.index == removed)
          throw TransformError("nested inversion: tracked copy used by another rule");
      }
      std::vector<Derivation> prem;
      for (const auto& p : d.premises) prem.push_back(run(p, f));
      return make_step(cal, Sequent{std::move(new_concl)}, std::move(inst), std::move(prem));
    }
  };

  NIv inv{c, app, premise_index};
  auto out = inv.run(d, inv.principal_formula(d.nested()));
  if (!equal(out.nested(), target))
    throw TransformError("nested inversion produced the wrong sequent");
  return out;
}

}  // namespace iproof
