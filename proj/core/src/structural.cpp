#include <algorithm>

#include "iproof/instance.hpp"
#include "iproof/transform.hpp"

namespace iproof {
namespace {

void collect_universe(const Derivation& d, std::set<std::string>& labels,
                      std::set<std::string>& params) {
  if (d.is_labelled()) {
    for (const auto& l : labels_of(d.labelled())) labels.insert(l);
    for (const auto& p : parameters_of(d.labelled())) params.insert(p);
  } else {
    for (const auto& p : parameters_of(d.nested())) params.insert(p);
  }
  for (const auto& e : d.inst.eigen) {
    labels.insert(e);
    params.insert(e);
  }
  for (const auto& r : d.inst.principal)
    if (r.kind == SeqRef::Kind::LabelArg) labels.insert(r.label);
  if (d.inst.witness) params.insert(d.inst.witness->param);
  if (d.inst.subst) {
    labels.insert(d.inst.subst->from);
    labels.insert(d.inst.subst->to);
    params.insert(d.inst.subst->from);
    params.insert(d.inst.subst->to);
  }
  if (d.inst.cut) labels.insert(d.inst.cut->at);
  for (const auto& p : d.premises) collect_universe(p, labels, params);
}

// Positions of the eigen entries that are labels (the rest are parameters).
bool eigen_is_label(RuleId r, std::size_t k) {
  switch (r) {
    case RuleId::imp_r:
    case RuleId::neg_r:
      return true;
    case RuleId::forall_r:
      return k == 0;
    default:
      return false;
  }
}

Derivation rename_eigen(const Calculus& c, const Derivation& d, std::size_t k,
                        const std::string& fresh) {
  bool is_label = eigen_is_label(d.inst.rule, k);
  std::string old = d.inst.eigen[k];
  Derivation out = d;
  out.inst.eigen[k] = fresh;
  if (out.inst.witness && out.inst.witness->param == old && !is_label)
    out.inst.witness->param = fresh;
  for (auto& p : out.premises) {
    if (!p.is_labelled())
      p = nested_rename_param(c, p, old, fresh);
    else
      p = is_label ? rename_label(c, p, old, fresh) : rename_param(c, p, old, fresh);
  }
  return make_step(c, out.conclusion, out.inst, std::move(out.premises));
}

// Renames every eigenvariable of this node that clashes with `avoid`.
Derivation avoid_eigen_clashes(const Calculus& c, Derivation d, const std::set<std::string>& avoid) {
  for (std::size_t k = 0; k < d.inst.eigen.size(); ++k) {
    if (!avoid.count(d.inst.eigen[k])) continue;
    std::set<std::string> labels, params;
    collect_universe(d, labels, params);
    std::set<std::string> used = labels;
    used.insert(params.begin(), params.end());
    used.insert(avoid.begin(), avoid.end());
    d = rename_eigen(c, d, k, fresh_label(used, d.inst.eigen[k] + "_"));
  }
  return d;
}

LabelledSequent plus(const LabelledSequent& s, const LabelledSequent& extra) {
  LabelledSequent out = s;
  out.rel.insert(out.rel.end(), extra.rel.begin(), extra.rel.end());
  out.ante.insert(out.ante.end(), extra.ante.begin(), extra.ante.end());
  out.succ.insert(out.succ.end(), extra.succ.begin(), extra.succ.end());
  return out;
}

std::set<std::string> names_of(const LabelledSequent& s) {
  std::set<std::string> out = labels_of(s);
  for (const auto& p : parameters_of(s)) out.insert(p);
  return out;
}

}  // namespace

Derivation inline_admissible(const Calculus& c, const Derivation& d) {
  Derivation out = d;
  for (auto& p : out.premises) p = inline_admissible(c, p);
  switch (out.inst.rule) {
    case RuleId::wk: {
      LabelledSequent extra;
      const auto& concl = out.labelled();
      for (const auto& r : out.inst.principal) {
        if (r.kind == SeqRef::Kind::Rel) extra.rel.push_back(concl.rel[r.index]);
        else if (r.kind == SeqRef::Kind::Ante) extra.ante.push_back(concl.ante[r.index]);
        else if (r.kind == SeqRef::Kind::Succ) extra.succ.push_back(concl.succ[r.index]);
      }
      auto res = weaken(c, out.premises[0], extra);
      if (!multiset_equal(res.labelled(), concl)) throw TransformError("wk inline mismatch");
      return res;
    }
    case RuleId::lsub:
      return rename_label(c, out.premises[0], out.inst.subst->from, out.inst.subst->to);
    case RuleId::psub:
      return rename_param(c, out.premises[0], out.inst.subst->from, out.inst.subst->to);
    case RuleId::ctr_rel:
      return contract_rel(c, out.premises[0], out.labelled().rel[out.inst.principal[0].index]);
    case RuleId::ctr_l: {
      const auto& lf = out.labelled().ante[out.inst.principal[0].index];
      return contract_ante(c, out.premises[0], lf.first, lf.second);
    }
    case RuleId::ctr_r: {
      const auto& lf = out.labelled().succ[out.inst.principal[0].index];
      return contract_succ(c, out.premises[0], lf.first, lf.second);
    }
    default:
      return out;
  }
}

Derivation weaken(const Calculus& c, const Derivation& d, const LabelledSequent& extra) {
  if (extra.rel.empty() && extra.ante.empty() && extra.succ.empty()) return d;
  if (d.inst.rule == RuleId::lsub || d.inst.rule == RuleId::psub)
    return weaken(c, inline_admissible(c, d), extra);
  Derivation cur = avoid_eigen_clashes(c, d, names_of(extra));
  LabelledSequent concl = plus(cur.labelled(), extra);
  std::vector<Derivation> prem;
  for (const auto& p : cur.premises) prem.push_back(weaken(c, p, extra));
  return make_step(c, Sequent{std::move(concl)}, cur.inst, std::move(prem));
}

namespace {

Derivation rename_impl(const Calculus& c, const Derivation& d, const std::string& from,
                       const std::string& to, bool is_label) {
  if (d.inst.rule == RuleId::lsub || d.inst.rule == RuleId::psub)
    return rename_impl(c, inline_admissible(c, d), from, to, is_label);
  Derivation cur = avoid_eigen_clashes(c, d, {from, to});
  LabelledSequent concl =
      is_label ? apply_label_renaming(cur.labelled(), {{from, to}})
               : apply_param_renaming(cur.labelled(), std::map<std::string, std::string>{{from, to}});
  RuleInstance inst = cur.inst;
  auto ren = [&](std::string& s) {
    if (s == from) s = to;
  };
  for (auto& r : inst.principal)
    if (r.kind == SeqRef::Kind::LabelArg && is_label) ren(r.label);
  if (inst.witness && !is_label) ren(inst.witness->param);
  if (inst.cut) {
    if (is_label) ren(inst.cut->at);
    else inst.cut->formula = subst_param(inst.cut->formula, from, Term::param(to));
  }
  std::vector<Derivation> prem;
  for (const auto& p : cur.premises) prem.push_back(rename_impl(c, p, from, to, is_label));
  return make_step(c, Sequent{std::move(concl)}, std::move(inst), std::move(prem));
}

}  // namespace

Derivation rename_label(const Calculus& c, const Derivation& d, const std::string& from,
                        const std::string& to) {
  if (from == to) return d;
  return rename_impl(c, d, from, to, true);
}

Derivation rename_param(const Calculus& c, const Derivation& d, const std::string& from,
                        const std::string& to) {
  if (from == to) return d;
  return rename_impl(c, d, from, to, false);
}

Derivation relabel(const Calculus& c, const Derivation& d, const std::map<Label, Label>& bijection) {
  std::set<std::string> labels, params;
  collect_universe(d, labels, params);
  for (const auto& [x, y] : bijection) labels.insert(y);
  Derivation cur = d;
  std::vector<std::pair<std::string, std::string>> temps;
  for (const auto& [x, y] : bijection) {
    if (x == y) continue;
    std::string tmp = fresh_label(labels, "tmp");
    labels.insert(tmp);
    temps.emplace_back(tmp, y);
    cur = rename_label(c, cur, x, tmp);
  }
  for (const auto& [tmp, y] : temps) cur = rename_label(c, cur, tmp, y);
  return cur;
}

Derivation reparam(const Calculus& c, const Derivation& d,
                   const std::map<std::string, std::string>& bijection) {
  std::set<std::string> labels, params;
  collect_universe(d, labels, params);
  for (const auto& [x, y] : bijection) params.insert(y);
  Derivation cur = d;
  std::vector<std::pair<std::string, std::string>> temps;
  for (const auto& [x, y] : bijection) {
    if (x == y) continue;
    std::string tmp = fresh_param(params, "tmp");
    params.insert(tmp);
    temps.emplace_back(tmp, y);
    cur = rename_param(c, cur, x, tmp);
  }
  for (const auto& [tmp, y] : temps) cur = rename_param(c, cur, tmp, y);
  return cur;
}

namespace {

enum class Part { Rel, Ante, Succ };

// Shifts instance references after removing `idx` from one part; references
// equal to idx are rebound to the surviving copy.
RuleInstance reindex(const RuleInstance& inst, Part part, std::size_t idx, std::size_t rebind) {
  RuleInstance out = inst;
  for (auto& r : out.principal) {
    bool match = (part == Part::Rel && r.kind == SeqRef::Kind::Rel) ||
                 (part == Part::Ante && r.kind == SeqRef::Kind::Ante) ||
                 (part == Part::Succ && r.kind == SeqRef::Kind::Succ);
    if (!match) continue;
    if (r.index == idx) r.index = rebind > idx ? rebind - 1 : rebind;
    else if (r.index > idx) --r.index;
  }
  return out;
}

bool references(const RuleInstance& inst, Part part, std::size_t idx) {
  for (const auto& r : inst.principal) {
    bool match = (part == Part::Rel && r.kind == SeqRef::Kind::Rel) ||
                 (part == Part::Ante && r.kind == SeqRef::Kind::Ante) ||
                 (part == Part::Succ && r.kind == SeqRef::Kind::Succ);
    if (match && r.index == idx) return true;
  }
  return false;
}

template <typename T, typename Eq>
std::pair<std::size_t, std::size_t> two_copies(const std::vector<T>& v, const T& x, Eq eq) {
  std::vector<std::size_t> found;
  for (std::size_t i = 0; i < v.size() && found.size() < 2; ++i)
    if (eq(v[i], x)) found.push_back(i);
  if (found.size() < 2) throw NotApplicable("contraction needs two copies of the item");
  return {found[0], found[1]};
}

LabelledSequent erase_at(LabelledSequent s, Part part, std::size_t idx) {
  if (part == Part::Rel) s.rel.erase(s.rel.begin() + static_cast<std::ptrdiff_t>(idx));
  else if (part == Part::Ante) s.ante.erase(s.ante.begin() + static_cast<std::ptrdiff_t>(idx));
  else s.succ.erase(s.succ.begin() + static_cast<std::ptrdiff_t>(idx));
  return s;
}

}  // namespace

Derivation contract_rel(const Calculus& c, const Derivation& d, const RelAtom& atom) {
  if (d.inst.rule == RuleId::lsub || d.inst.rule == RuleId::psub)
    return contract_rel(c, inline_admissible(c, d), atom);
  const auto& concl = d.labelled();
  auto [i, j] = two_copies(concl.rel, atom, [](const RelAtom& a, const RelAtom& b) { return a == b; });
  if (d.inst.rule == RuleId::wk) {
    // Prefer deleting a weakened-in copy outright.
    for (std::size_t k = 0; k < d.inst.principal.size(); ++k) {
      const auto& r = d.inst.principal[k];
      if (r.kind == SeqRef::Kind::Rel && (r.index == i || r.index == j)) {
        std::size_t del = r.index;
        RuleInstance inst = d.inst;
        inst.principal.erase(inst.principal.begin() + static_cast<std::ptrdiff_t>(k));
        inst = reindex(inst, Part::Rel, del, del == i ? j : i);
        return make_step(c, Sequent{erase_at(concl, Part::Rel, del)}, inst, d.premises);
      }
    }
  }
  // Relational principals are never consumed on the way up, so uniform
  // deletion with rebinding is enough.
  std::size_t drop = references(d.inst, Part::Rel, j) && !references(d.inst, Part::Rel, i) ? i : j;
  std::size_t keep = drop == i ? j : i;
  RuleInstance inst = reindex(d.inst, Part::Rel, drop, keep);
  std::vector<Derivation> prem;
  for (const auto& p : d.premises) prem.push_back(contract_rel(c, p, atom));
  return make_step(c, Sequent{erase_at(concl, Part::Rel, drop)}, std::move(inst), std::move(prem));
}

namespace {

Derivation contract_formula(const Calculus& c, const Derivation& d, Part side, const Label& w,
                            const FormulaPtr& f);

// The principal occurrence was consumed by an invertible rule; invert the
// surviving copy inside each premise, contract the pieces, re-emit.
Derivation contract_via_inversion(const Calculus& c, const Derivation& d, Part side,
                                  const Label& w, const FormulaPtr& f, std::size_t keep,
                                  std::size_t drop) {
  const auto& concl = d.labelled();
  RuleId rule = d.inst.rule;
  const Calculus big{inflated(c.name), c.allow_admissible};
  auto inverted_on = [&](const Derivation& pd, std::size_t k) {
    const auto& ps = pd.labelled();
    RuleInstance app;
    app.rule = rule;
    std::size_t idx = side == Part::Ante ? find_ante(ps, w, f) : find_succ(ps, w, f);
    app.principal = {side == Part::Ante ? SeqRef::ante(idx) : SeqRef::succ(idx)};
    std::set<std::string> labels, params;
    collect_universe(pd, labels, params);
    labels.insert(params.begin(), params.end());
    switch (rule) {
      case RuleId::imp_r:
      case RuleId::neg_r:
        app.eigen = {fresh_label(labels, "v")};
        break;
      case RuleId::forall_r: {
        std::string v2 = fresh_label(labels, "v");
        labels.insert(v2);
        std::string a2 = fresh_param(labels, "a");
        app.eigen = {v2, a2};
        app.witness = Witness{a2, f->head};
        break;
      }
      case RuleId::forall_r_c:
      case RuleId::exists_l: {
        std::string a2 = fresh_param(labels, "a");
        app.eigen = {a2};
        app.witness = Witness{a2, f->head};
        break;
      }
      default:
        break;
    }
    return std::make_pair(invert(big, pd, app, k), app);
  };

  RuleInstance inst = reindex(d.inst, side, drop, keep);
  LabelledSequent new_concl = erase_at(concl, side, drop);
  switch (rule) {
    case RuleId::and_l: {
      auto inv = inverted_on(d.premises[0], 0).first;
      auto c1 = contract_formula(big, inv, Part::Ante, w, f->lhs);
      auto c2 = contract_formula(big, c1, Part::Ante, w, f->rhs);
      return make_step(c, Sequent{std::move(new_concl)}, inst, {std::move(c2)});
    }
    case RuleId::or_l: {
      auto inv1 = inverted_on(d.premises[0], 0).first;
      auto inv2 = inverted_on(d.premises[1], 1).first;
      auto p1 = contract_formula(big, inv1, Part::Ante, w, f->lhs);
      auto p2 = contract_formula(big, inv2, Part::Ante, w, f->rhs);
      return make_step(c, Sequent{std::move(new_concl)}, inst, {std::move(p1), std::move(p2)});
    }
    case RuleId::and_r: {
      auto inv1 = inverted_on(d.premises[0], 0).first;
      auto inv2 = inverted_on(d.premises[1], 1).first;
      auto p1 = contract_formula(big, inv1, Part::Succ, w, f->lhs);
      auto p2 = contract_formula(big, inv2, Part::Succ, w, f->rhs);
      return make_step(c, Sequent{std::move(new_concl)}, inst, {std::move(p1), std::move(p2)});
    }
    case RuleId::or_r: {
      auto inv = inverted_on(d.premises[0], 0).first;
      auto c1 = contract_formula(big, inv, Part::Succ, w, f->lhs);
      auto c2 = contract_formula(big, c1, Part::Succ, w, f->rhs);
      return make_step(c, Sequent{std::move(new_concl)}, inst, {std::move(c2)});
    }
    case RuleId::imp_r:
    case RuleId::neg_r: {
      std::string v = d.inst.eigen[0];
      auto body = rule == RuleId::imp_r ? f->lhs : as_negation(f);
      auto [inv, app] = inverted_on(d.premises[0], 0);
      auto uni = rename_label(big, inv, app.eigen[0], v);
      uni = contract_rel(big, uni, RelAtom::le(w, v));
      uni = contract_formula(big, uni, Part::Ante, v, body);
      if (rule == RuleId::imp_r) uni = contract_formula(big, uni, Part::Succ, v, f->rhs);
      return make_step(c, Sequent{std::move(new_concl)}, inst, {std::move(uni)});
    }
    case RuleId::forall_r: {
      std::string v = d.inst.eigen[0], a = d.inst.eigen[1];
      auto [inv, app] = inverted_on(d.premises[0], 0);
      auto uni = rename_label(big, inv, app.eigen[0], v);
      uni = rename_param(big, uni, app.eigen[1], a);
      uni = contract_rel(big, uni, RelAtom::le(w, v));
      uni = contract_rel(big, uni, RelAtom::dom(a, v));
      uni = contract_formula(big, uni, Part::Succ, v, subst_var(f->lhs, f->head, Term::param(a)));
      return make_step(c, Sequent{std::move(new_concl)}, inst, {std::move(uni)});
    }
    case RuleId::forall_r_c: {
      std::string a = d.inst.eigen[0];
      auto [inv, app] = inverted_on(d.premises[0], 0);
      auto uni = rename_param(big, inv, app.eigen[0], a);
      uni = contract_rel(big, uni, RelAtom::dom(a, w));
      uni = contract_formula(big, uni, Part::Succ, w, subst_var(f->lhs, f->head, Term::param(a)));
      return make_step(c, Sequent{std::move(new_concl)}, inst, {std::move(uni)});
    }
    case RuleId::exists_l: {
      std::string b = d.inst.eigen[0];
      auto [inv, app] = inverted_on(d.premises[0], 0);
      auto uni = rename_param(big, inv, app.eigen[0], b);
      uni = contract_rel(big, uni, RelAtom::dom(b, w));
      uni = contract_formula(big, uni, Part::Ante, w, subst_var(f->lhs, f->head, Term::param(b)));
      return make_step(c, Sequent{std::move(new_concl)}, inst, {std::move(uni)});
    }
    default:
      throw TransformError("contraction: unexpected consuming rule " + rule_name(rule));
  }
}

Derivation contract_formula(const Calculus& c, const Derivation& d, Part side, const Label& w,
                            const FormulaPtr& f) {
  if (d.inst.rule == RuleId::lsub || d.inst.rule == RuleId::psub)
    return contract_formula(c, inline_admissible(c, d), side, w, f);
  const auto& concl = d.labelled();
  auto eq = [&](const LabelledFormula& a, const LabelledFormula& b) {
    return a.first == b.first && equal(a.second, b.second);
  };
  auto [i, j] = side == Part::Ante ? two_copies(concl.ante, {w, f}, eq)
                                   : two_copies(concl.succ, {w, f}, eq);
  if (d.inst.rule == RuleId::wk) {
    for (std::size_t k = 0; k < d.inst.principal.size(); ++k) {
      const auto& r = d.inst.principal[k];
      bool match = (side == Part::Ante && r.kind == SeqRef::Kind::Ante) ||
                   (side == Part::Succ && r.kind == SeqRef::Kind::Succ);
      if (match && (r.index == i || r.index == j)) {
        std::size_t del = r.index;
        RuleInstance inst = d.inst;
        inst.principal.erase(inst.principal.begin() + static_cast<std::ptrdiff_t>(k));
        inst = reindex(inst, side, del, del == i ? j : i);
        return make_step(c, Sequent{erase_at(concl, side, del)}, inst, d.premises);
      }
    }
  }
  bool i_principal = references(d.inst, side, i);
  bool j_principal = references(d.inst, side, j);
  std::size_t keep = j_principal && !i_principal ? j : i;
  std::size_t drop = keep == i ? j : i;
  bool consuming = false;
  if (i_principal || j_principal) {
    switch (d.inst.rule) {
      case RuleId::and_l:
      case RuleId::or_l:
      case RuleId::exists_l:
        consuming = side == Part::Ante;
        break;
      case RuleId::and_r:
      case RuleId::or_r:
      case RuleId::imp_r:
      case RuleId::neg_r:
      case RuleId::forall_r:
      case RuleId::forall_r_c:
        consuming = side == Part::Succ;
        break;
      default:
        consuming = false;  // retained-copy rules and axioms
    }
  }
  if (consuming) return contract_via_inversion(c, d, side, w, f, keep, drop);
  RuleInstance inst = reindex(d.inst, side, drop, keep);
  std::vector<Derivation> prem;
  for (const auto& p : d.premises) prem.push_back(contract_formula(c, p, side, w, f));
  return make_step(c, Sequent{erase_at(concl, side, drop)}, std::move(inst), std::move(prem));
}

}  // namespace

Derivation contract_ante(const Calculus& c, const Derivation& d, const Label& w, const FormulaPtr& f) {
  return contract_formula(c, d, Part::Ante, w, f);
}

Derivation contract_succ(const Calculus& c, const Derivation& d, const Label& w, const FormulaPtr& f) {
  return contract_formula(c, d, Part::Succ, w, f);
}

Derivation nested_rename_param(const Calculus& c, const Derivation& d, const std::string& from,
                               const std::string& to) {
  if (from == to) return d;
  Derivation cur = d;
  for (std::size_t k = 0; k < cur.inst.eigen.size(); ++k) {
    if (cur.inst.eigen[k] != from && cur.inst.eigen[k] != to) continue;
    std::set<std::string> labels, params;
    collect_universe(cur, labels, params);
    params.insert(from);
    params.insert(to);
    std::string old = cur.inst.eigen[k];
    std::string e2 = fresh_param(params, old + "_");
    cur.inst.eigen[k] = e2;
    if (cur.inst.witness && cur.inst.witness->param == old) cur.inst.witness->param = e2;
    for (auto& p : cur.premises) p = nested_rename_param(c, p, old, e2);
  }
  NestedSequent concl =
      apply_param_renaming(cur.nested(), std::map<std::string, std::string>{{from, to}});
  RuleInstance inst = cur.inst;
  if (inst.witness && inst.witness->param == from) inst.witness->param = to;
  if (inst.cut) inst.cut->formula = subst_param(inst.cut->formula, from, Term::param(to));
  std::vector<Derivation> prem;
  for (const auto& p : cur.premises) prem.push_back(nested_rename_param(c, p, from, to));
  return make_step(c, Sequent{std::move(concl)}, std::move(inst), std::move(prem));
}

Derivation nested_weaken(const Calculus& c, const Derivation& d, const std::string& pos,
                         const std::vector<FormulaPtr>& ante, const std::vector<FormulaPtr>& succ) {
  if (ante.empty() && succ.empty()) return d;
  std::set<std::string> avoid;
  for (const auto& f : ante)
    for (const auto& p : free_parameters(f)) avoid.insert(p);
  for (const auto& f : succ)
    for (const auto& p : free_parameters(f)) avoid.insert(p);
  Derivation cur = avoid_eigen_clashes(c, d, avoid);
  NestedSequent concl = cur.nested();
  auto* comp = component_at(concl, pos);
  if (!comp) throw TransformError("nested_weaken: no component at " + pos);
  comp->ante.insert(comp->ante.end(), ante.begin(), ante.end());
  comp->succ.insert(comp->succ.end(), succ.begin(), succ.end());
  std::vector<Derivation> prem;
  for (const auto& p : cur.premises) prem.push_back(nested_weaken(c, p, pos, ante, succ));
  return make_step(c, Sequent{std::move(concl)}, cur.inst, std::move(prem));
}

}  // namespace iproof
