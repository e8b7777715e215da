#include "transform_util.hpp"

namespace iproof {
namespace {

bool refs_rel_index(const RuleInstance& inst, std::size_t i) {
  for (const auto& r : inst.principal)
    if (r.kind == SeqRef::Kind::Rel && r.index == i) return true;
  return false;
}

RuleInstance shift_rel_refs(const RuleInstance& inst, std::size_t removed) {
  RuleInstance out = inst;
  for (auto& r : out.principal) {
    if (r.kind != SeqRef::Kind::Rel) continue;
    if (r.index == removed) throw TransformError("elimination: active atom reached the context case");
    if (r.index > removed) --r.index;
  }
  return out;
}

LabelledSequent without_rel(const LabelledSequent& s, std::size_t i) {
  LabelledSequent out = s;
  out.rel.erase(out.rel.begin() + static_cast<std::ptrdiff_t>(i));
  return out;
}

RuleInstance simple(RuleId r, std::vector<SeqRef> p) {
  RuleInstance i;
  i.rule = r;
  i.principal = std::move(p);
  return i;
}

struct Eliminator {
  Calculus cal;  // a starred G3 calculus

  RuleId path_forall_l() const {
    return cal.constant_domain() ? RuleId::forall_l_c : RuleId::forall_l_n;
  }
  RuleId path_exists_r() const {
    return cal.constant_domain() ? RuleId::exists_r_c : RuleId::exists_r_n;
  }
  RuleId path_id_q() const { return cal.constant_domain() ? RuleId::id_q_c : RuleId::id_q_n; }
  // The propositional starred axiom only exists in G3Int*; the first-order
  // systems close the same instances through their id_q generalizations.
  RuleId star_id(RuleId base) const {
    if (base == RuleId::id && !cal.first_order()) return RuleId::id_star;
    return path_id_q();
  }
  RuleId eigen_exists_r() const {
    return cal.constant_domain() ? RuleId::exists_r_ic : RuleId::exists_r_in;
  }
  RuleId eigen_forall_l() const {
    return cal.constant_domain() ? RuleId::forall_l_ic : RuleId::forall_l_in;
  }

  Derivation lift_step(const LabelledSequent& concl, const Label& from, const Label& to,
                       const FormulaPtr& f, Derivation premise) {
    RuleInstance li = simple(RuleId::lift, {SeqRef::rel(find_rel(concl, RelAtom::le(from, to))),
                                            SeqRef::ante(find_ante(concl, from, f))});
    return make_step(cal, Sequent{concl}, std::move(li), {std::move(premise)});
  }

  // ---- (ref): removes one copy of w <= w from the end sequent ----
  Derivation push_ref(const Derivation& d, const Label& w) {
    const RelAtom alpha = RelAtom::le(w, w);
    const LabelledSequent& concl = d.labelled();
    std::vector<std::size_t> copies;
    for (std::size_t i = 0; i < concl.rel.size(); ++i)
      if (concl.rel[i] == alpha) copies.push_back(i);
    if (copies.empty()) throw TransformError("push_ref: atom not present");
    // context case: some copy is not referenced by the instance
    std::size_t drop = copies.back();
    bool active = true;
    for (auto it = copies.rbegin(); it != copies.rend(); ++it)
      if (!refs_rel_index(d.inst, *it)) {
        drop = *it;
        active = false;
        break;
      }
    if (!active) {
      LabelledSequent c2 = without_rel(concl, drop);
      RuleInstance inst = shift_rel_refs(d.inst, drop);
      std::vector<Derivation> prem;
      for (const auto& p : d.premises) prem.push_back(push_ref(p, w));
      return make_step(cal, Sequent{std::move(c2)}, std::move(inst), std::move(prem));
    }
    LabelledSequent target = without_rel(concl, drop);
    switch (d.inst.rule) {
      case RuleId::id:
      case RuleId::id_q: {
        // both endpoints coincide, so the starred axiom closes directly
        const auto& [x, pf] = concl.ante[d.inst.principal[1].index];
        RuleId r = star_id(d.inst.rule);
        return make_step(cal, Sequent{target},
                         simple(r, {SeqRef::ante(find_ante(target, x, pf)),
                                    SeqRef::succ(find_succ(target, x, pf))}),
                         {});
      }
      case RuleId::imp_l: {
        const auto& [x, f] = concl.ante[d.inst.principal[1].index];
        Derivation p1 = push_ref(d.premises[0], w);
        Derivation p2 = push_ref(d.premises[1], w);
        return make_step(cal, Sequent{target},
                         simple(RuleId::imp_l_star, {SeqRef::ante(find_ante(target, x, f))}),
                         {std::move(p1), std::move(p2)});
      }
      case RuleId::lift: {
        const auto& [x, f] = concl.ante[d.inst.principal[1].index];
        Derivation p = push_ref(d.premises[0], w);
        return contract_ante(cal, p, x, f);
      }
      case RuleId::forall_l: {
        const RelAtom& dom = concl.rel[d.inst.principal[1].index];
        const auto& [x, f] = concl.ante[d.inst.principal[2].index];
        Derivation p = push_ref(d.premises[0], w);
        RuleInstance fl = simple(path_forall_l(),
                                 {SeqRef::rel(find_rel(target, dom)),
                                  SeqRef::ante(find_ante(target, x, f))});
        fl.witness = d.inst.witness;
        return make_step(cal, Sequent{target}, std::move(fl), {std::move(p)});
      }
      case RuleId::nd:
      case RuleId::cd: {
        const RelAtom& dom = concl.rel[d.inst.principal[1].index];
        Derivation p = push_ref(d.premises[0], w);
        return contract_rel(cal, p, dom);
      }
      default:
        throw TransformError("push_ref: unexpected active rule " + rule_name(d.inst.rule));
    }
  }

  // ---- (tra): removes one copy of w <= u given w <= v, v <= u ----
  Derivation push_tra(const Derivation& d, const Label& w, const Label& v, const Label& u) {
    const RelAtom alpha = RelAtom::le(w, u);
    const LabelledSequent& concl = d.labelled();
    std::vector<std::size_t> copies;
    for (std::size_t i = 0; i < concl.rel.size(); ++i)
      if (concl.rel[i] == alpha) copies.push_back(i);
    if (copies.empty()) throw TransformError("push_tra: atom not present");
    std::size_t drop = copies.back();
    bool active = true;
    for (auto it = copies.rbegin(); it != copies.rend(); ++it)
      if (!refs_rel_index(d.inst, *it)) {
        drop = *it;
        active = false;
        break;
      }
    if (!active) {
      LabelledSequent c2 = without_rel(concl, drop);
      RuleInstance inst = shift_rel_refs(d.inst, drop);
      std::vector<Derivation> prem;
      for (const auto& p : d.premises) prem.push_back(push_tra(p, w, v, u));
      return make_step(cal, Sequent{std::move(c2)}, std::move(inst), std::move(prem));
    }
    LabelledSequent target = without_rel(concl, drop);
    switch (d.inst.rule) {
      case RuleId::id:
      case RuleId::id_q: {
        const auto& [x, pf] = concl.ante[d.inst.principal[1].index];  // x == w
        LabelledSequent top = target;
        top.ante.emplace_back(v, pf);
        top.ante.emplace_back(u, pf);
        RuleId r = star_id(d.inst.rule);
        Derivation leaf = make_step(
            cal, Sequent{top},
            simple(r, {SeqRef::ante(find_ante(top, u, pf)), SeqRef::succ(find_succ(top, u, pf))}),
            {});
        LabelledSequent mid = target;
        mid.ante.emplace_back(v, pf);
        Derivation l2 = lift_step(mid, v, u, pf, std::move(leaf));
        return lift_step(target, w, v, pf, std::move(l2));
      }
      case RuleId::imp_l: {
        const auto& [x, f] = concl.ante[d.inst.principal[1].index];
        Derivation p1 = push_tra(d.premises[0], w, v, u);
        Derivation p2 = push_tra(d.premises[1], w, v, u);
        LabelledSequent extra;
        extra.ante.emplace_back(v, f);
        extra.ante.emplace_back(u, f);
        p1 = weaken(cal, p1, extra);
        p2 = weaken(cal, p2, extra);
        auto star = target;
        star.ante.emplace_back(v, f);
        star.ante.emplace_back(u, f);
        Derivation mid = make_step(cal, Sequent{star},
                                   simple(RuleId::imp_l_star, {SeqRef::ante(find_ante(star, u, f))}),
                                   {std::move(p1), std::move(p2)});
        LabelledSequent after = target;
        after.ante.emplace_back(v, f);
        Derivation l2 = lift_step(after, v, u, f, std::move(mid));
        return lift_step(target, w, v, f, std::move(l2));
      }
      case RuleId::lift: {
        const auto& [x, f] = concl.ante[d.inst.principal[1].index];
        Derivation p = push_tra(d.premises[0], w, v, u);
        LabelledSequent extra;
        extra.ante.emplace_back(v, f);
        p = weaken(cal, p, extra);
        LabelledSequent after = target;
        after.ante.emplace_back(v, f);
        Derivation l2 = lift_step(after, v, u, f, std::move(p));
        return lift_step(target, w, v, f, std::move(l2));
      }
      case RuleId::forall_l: {
        const RelAtom& dom = concl.rel[d.inst.principal[1].index];  // #a in D(u)
        const auto& [x, f] = concl.ante[d.inst.principal[2].index];
        Derivation p = push_tra(d.premises[0], w, v, u);
        LabelledSequent extra;
        extra.ante.emplace_back(v, f);
        extra.ante.emplace_back(u, f);
        p = weaken(cal, p, extra);
        auto star = target;
        star.ante.emplace_back(v, f);
        star.ante.emplace_back(u, f);
        RuleInstance fl = simple(path_forall_l(), {SeqRef::rel(find_rel(star, dom)),
                                                   SeqRef::ante(find_ante(star, u, f))});
        fl.witness = d.inst.witness;
        Derivation mid = make_step(cal, Sequent{star}, std::move(fl), {std::move(p)});
        LabelledSequent after = target;
        after.ante.emplace_back(v, f);
        Derivation l2 = lift_step(after, v, u, f, std::move(mid));
        return lift_step(target, w, v, f, std::move(l2));
      }
      case RuleId::nd: {
        const RelAtom& dom = concl.rel[d.inst.principal[1].index];  // #a in D(w)
        std::string a = dom.a;
        Derivation p = push_tra(d.premises[0], w, v, u);
        LabelledSequent extra;
        extra.rel.push_back(RelAtom::dom(a, v));
        p = weaken(cal, p, extra);
        LabelledSequent mid = target;
        mid.rel.push_back(RelAtom::dom(a, v));
        RuleInstance n1 = simple(RuleId::nd, {SeqRef::rel(find_rel(mid, RelAtom::le(v, u))),
                                              SeqRef::rel(find_rel(mid, RelAtom::dom(a, v)))});
        Derivation d1 = make_step(cal, Sequent{mid}, std::move(n1), {std::move(p)});
        RuleInstance n2 = simple(RuleId::nd, {SeqRef::rel(find_rel(target, RelAtom::le(w, v))),
                                              SeqRef::rel(find_rel(target, RelAtom::dom(a, w)))});
        return make_step(cal, Sequent{target}, std::move(n2), {std::move(d1)});
      }
      case RuleId::cd: {
        const RelAtom& dom = concl.rel[d.inst.principal[1].index];  // #a in D(u)
        std::string a = dom.a;
        Derivation p = push_tra(d.premises[0], w, v, u);
        LabelledSequent extra;
        extra.rel.push_back(RelAtom::dom(a, v));
        p = weaken(cal, p, extra);
        LabelledSequent mid = target;
        mid.rel.push_back(RelAtom::dom(a, v));
        RuleInstance c1 = simple(RuleId::cd, {SeqRef::rel(find_rel(mid, RelAtom::le(w, v))),
                                              SeqRef::rel(find_rel(mid, RelAtom::dom(a, v)))});
        Derivation d1 = make_step(cal, Sequent{mid}, std::move(c1), {std::move(p)});
        RuleInstance c2 = simple(RuleId::cd, {SeqRef::rel(find_rel(target, RelAtom::le(v, u))),
                                              SeqRef::rel(find_rel(target, RelAtom::dom(a, u)))});
        return make_step(cal, Sequent{target}, std::move(c2), {std::move(d1)});
      }
      default:
        throw TransformError("push_tra: unexpected active rule " + rule_name(d.inst.rule));
    }
  }

  // ---- (nd)/(cd): removes one domain atom copy across the tree ----
  Derivation push_dom(const Derivation& d, const RelAtom& atom, const RelAtom& replacement) {
    const LabelledSequent& concl = d.labelled();
    std::vector<std::size_t> copies;
    for (std::size_t i = 0; i < concl.rel.size(); ++i)
      if (concl.rel[i] == atom) copies.push_back(i);
    if (copies.empty()) throw TransformError("push_dom: atom not present");
    std::size_t drop = copies.back();
    bool active = true;
    for (auto it = copies.rbegin(); it != copies.rend(); ++it)
      if (!refs_rel_index(d.inst, *it)) {
        drop = *it;
        active = false;
        break;
      }
    if (!active) {
      LabelledSequent c2 = without_rel(concl, drop);
      RuleInstance inst = shift_rel_refs(d.inst, drop);
      std::vector<Derivation> prem;
      for (const auto& p : d.premises) prem.push_back(push_dom(p, atom, replacement));
      return make_step(cal, Sequent{std::move(c2)}, std::move(inst), std::move(prem));
    }
    LabelledSequent target = without_rel(concl, drop);
    switch (d.inst.rule) {
      case RuleId::exists_r_n:
      case RuleId::exists_r_c:
      case RuleId::forall_l_n:
      case RuleId::forall_l_c: {
        // rebind the witnessing domain atom to the surviving copy
        Derivation p = push_dom(d.premises[0], atom, replacement);
        RuleInstance inst = d.inst;
        bool dom_first = d.inst.rule == RuleId::forall_l_n || d.inst.rule == RuleId::forall_l_c;
        std::size_t dom_slot = dom_first ? 0 : 1;
        std::size_t other = dom_first ? 1 : 0;
        inst.principal[dom_slot] = SeqRef::rel(find_rel(target, replacement));
        if (inst.principal[other].kind == SeqRef::Kind::Ante) {
          const auto& lf = concl.ante[inst.principal[other].index];
          inst.principal[other] = SeqRef::ante(find_ante(target, lf.first, lf.second));
        } else {
          const auto& lf = concl.succ[inst.principal[other].index];
          inst.principal[other] = SeqRef::succ(find_succ(target, lf.first, lf.second));
        }
        return make_step(cal, Sequent{target}, std::move(inst), {std::move(p)});
      }
      default:
        throw TransformError("push_dom: unexpected active rule " + rule_name(d.inst.rule));
    }
  }

  // ---- (ihd): deletes the eigen domain atom, absorbing path quantifier
  // rules into their in/ic variants ----
  Derivation push_ihd(const Derivation& d, const std::string& a, const Label& at) {
    const RelAtom atom = RelAtom::dom(a, at);
    const LabelledSequent& concl = d.labelled();
    std::vector<std::size_t> copies;
    for (std::size_t i = 0; i < concl.rel.size(); ++i)
      if (concl.rel[i] == atom) copies.push_back(i);
    if (copies.empty()) throw TransformError("push_ihd: atom not present");

    // absorption: a path quantifier rule witnessing with this very atom
    bool witnessing = false;
    if ((d.inst.rule == RuleId::exists_r_n || d.inst.rule == RuleId::exists_r_c ||
         d.inst.rule == RuleId::forall_l_n || d.inst.rule == RuleId::forall_l_c) &&
        d.inst.witness && d.inst.witness->param == a) {
      bool dom_first = d.inst.rule == RuleId::forall_l_n || d.inst.rule == RuleId::forall_l_c;
      std::size_t dom_slot = dom_first ? 0 : 1;
      const auto& r = d.inst.principal[dom_slot];
      if (r.kind == SeqRef::Kind::Rel && concl.rel[r.index] == atom) witnessing = true;
    }
    if (witnessing) {
      std::size_t drop = 0;
      bool dom_first = d.inst.rule == RuleId::forall_l_n || d.inst.rule == RuleId::forall_l_c;
      drop = d.inst.principal[dom_first ? 0 : 1].index;
      LabelledSequent target = without_rel(concl, drop);
      bool is_forall = d.inst.rule == RuleId::forall_l_n || d.inst.rule == RuleId::forall_l_c;
      RuleInstance inst;
      inst.rule = is_forall ? eigen_forall_l() : eigen_exists_r();
      std::size_t other = dom_first ? 1 : 0;
      if (is_forall) {
        const auto& lf = concl.ante[d.inst.principal[other].index];
        inst.principal = {SeqRef::ante(find_ante(target, lf.first, lf.second)),
                          SeqRef::label_arg(at)};
      } else {
        const auto& lf = concl.succ[d.inst.principal[other].index];
        inst.principal = {SeqRef::succ(find_succ(target, lf.first, lf.second)),
                          SeqRef::label_arg(at)};
      }
      inst.eigen = {a};
      inst.witness = d.inst.witness;
      return make_step(cal, Sequent{target}, std::move(inst), {d.premises[0]});
    }

    std::size_t drop = copies.back();
    for (auto it = copies.rbegin(); it != copies.rend(); ++it)
      if (!refs_rel_index(d.inst, *it)) {
        drop = *it;
        break;
      }
    if (refs_rel_index(d.inst, drop))
      throw TransformError("push_ihd: unexpected use of the eigen domain atom by " +
                           rule_name(d.inst.rule));
    LabelledSequent c2 = without_rel(concl, drop);
    RuleInstance inst = shift_rel_refs(d.inst, drop);
    std::vector<Derivation> prem;
    for (const auto& p : d.premises) prem.push_back(push_ihd(p, a, at));
    return make_step(cal, Sequent{std::move(c2)}, std::move(inst), std::move(prem));
  }

  // ---- node rewrites that prepare the eliminations ----

  // imp_l absorbed through imp_l_star and lift
  Derivation absorb_imp_l(const Derivation& d) {
    Derivation out = d;
    for (auto& p : out.premises) p = absorb_imp_l(p);
    if (out.inst.rule != RuleId::imp_l) {
      return Derivation{out.conclusion, out.inst, std::move(out.premises)};
    }
    const LabelledSequent& concl = out.labelled();
    const RelAtom edge = concl.rel[out.inst.principal[0].index];
    const auto lf = concl.ante[out.inst.principal[1].index];
    const Label w = lf.first, v = edge.b;
    const FormulaPtr f = lf.second;
    LabelledSequent extra;
    extra.ante.emplace_back(v, f);
    Derivation p1 = weaken(cal, out.premises[0], extra);
    Derivation p2 = weaken(cal, out.premises[1], extra);
    LabelledSequent star = concl;
    star.ante.emplace_back(v, f);
    Derivation mid = make_step(cal, Sequent{star},
                               simple(RuleId::imp_l_star, {SeqRef::ante(star.ante.size() - 1)}),
                               {std::move(p1), std::move(p2)});
    return lift_step(concl, w, v, f, std::move(mid));
  }

  // id/id_q specialized to their same-label forms (plus lift when needed)
  Derivation specialize_id(const Derivation& d) {
    Derivation out = d;
    for (auto& p : out.premises) p = specialize_id(p);
    if (out.inst.rule != RuleId::id && out.inst.rule != RuleId::id_q)
      return Derivation{out.conclusion, out.inst, std::move(out.premises)};
    const LabelledSequent& concl = out.labelled();
    const auto [w, pf] = concl.ante[out.inst.principal[1].index];
    const auto v = concl.succ[out.inst.principal[2].index].first;
    RuleId star = star_id(out.inst.rule);
    if (w == v)
      return make_step(cal, out.conclusion,
                       simple(star, {SeqRef::ante(find_ante(concl, w, pf)),
                                     SeqRef::succ(find_succ(concl, v, pf))}),
                       {});
    LabelledSequent top = concl;
    top.ante.emplace_back(v, pf);
    Derivation leaf = make_step(
        cal, Sequent{top},
        simple(star, {SeqRef::ante(find_ante(top, v, pf)), SeqRef::succ(find_succ(top, v, pf))}),
        {});
    return lift_step(concl, w, v, pf, std::move(leaf));
  }

  // base exists_r/forall_l/id_q to the path-generalized forms
  Derivation specialize_quantifiers(const Derivation& d) {
    Derivation out = d;
    for (auto& p : out.premises) p = specialize_quantifiers(p);
    switch (out.inst.rule) {
      case RuleId::id_q:
        return specialize_id(Derivation{out.conclusion, out.inst, std::move(out.premises)});
      case RuleId::exists_r: {
        RuleInstance inst = out.inst;
        inst.rule = path_exists_r();
        return make_step(cal, out.conclusion, std::move(inst), std::move(out.premises));
      }
      case RuleId::forall_l: {
        const LabelledSequent& concl = out.labelled();
        const RelAtom edge = concl.rel[out.inst.principal[0].index];
        const RelAtom dom = concl.rel[out.inst.principal[1].index];
        const auto lf = concl.ante[out.inst.principal[2].index];
        const Label w = lf.first, v = edge.b;
        const FormulaPtr f = lf.second;
        LabelledSequent extra;
        extra.ante.emplace_back(v, f);
        Derivation p = weaken(cal, out.premises[0], extra);
        LabelledSequent star = concl;
        star.ante.emplace_back(v, f);
        RuleInstance fl = simple(path_forall_l(), {SeqRef::rel(find_rel(star, dom)),
                                                   SeqRef::ante(star.ante.size() - 1)});
        fl.witness = out.inst.witness;
        Derivation mid = make_step(cal, Sequent{star}, std::move(fl), {std::move(p)});
        return lift_step(concl, w, v, f, std::move(mid));
      }
      default:
        return Derivation{out.conclusion, out.inst, std::move(out.premises)};
    }
  }

  // the constant-domain replacement of forall_r by forall_r_c
  Derivation specialize_forall_r(const Derivation& d) {
    Derivation out = d;
    for (auto& p : out.premises) p = specialize_forall_r(p);
    if (out.inst.rule != RuleId::forall_r)
      return Derivation{out.conclusion, out.inst, std::move(out.premises)};
    const LabelledSequent& concl = out.labelled();
    const auto lf = concl.succ[out.inst.principal[0].index];
    const Label w = lf.first;
    std::string v = out.inst.eigen[0];
    Derivation p = rename_label(cal, out.premises[0], v, w);
    p = push_ref(p, w);
    RuleInstance fr;
    fr.rule = RuleId::forall_r_c;
    fr.principal = {SeqRef::succ(find_succ(concl, w, lf.second))};
    fr.eigen = {out.inst.eigen[1]};
    fr.witness = out.inst.witness;
    return make_step(cal, out.conclusion, std::move(fr), {std::move(p)});
  }

  Derivation drop_ref_tra(const Derivation& d) {
    Derivation out = d;
    for (auto& p : out.premises) p = drop_ref_tra(p);
    if (out.inst.rule == RuleId::ref) {
      const Label w = out.inst.principal[0].label;
      return push_ref(out.premises[0], w);
    }
    if (out.inst.rule == RuleId::tra) {
      const LabelledSequent& concl = out.labelled();
      const RelAtom e1 = concl.rel[out.inst.principal[0].index];
      const RelAtom e2 = concl.rel[out.inst.principal[1].index];
      return push_tra(out.premises[0], e1.a, e1.b, e2.b);
    }
    return Derivation{out.conclusion, out.inst, std::move(out.premises)};
  }

  Derivation drop_nd_cd(const Derivation& d) {
    Derivation out = d;
    for (auto& p : out.premises) p = drop_nd_cd(p);
    if (out.inst.rule == RuleId::nd || out.inst.rule == RuleId::cd) {
      const LabelledSequent& concl = out.labelled();
      const RelAtom edge = concl.rel[out.inst.principal[0].index];
      const RelAtom dom = concl.rel[out.inst.principal[1].index];
      bool is_nd = out.inst.rule == RuleId::nd;
      RelAtom removed = is_nd ? RelAtom::dom(dom.a, edge.b) : RelAtom::dom(dom.a, edge.a);
      return push_dom(out.premises[0], removed, dom);
    }
    return Derivation{out.conclusion, out.inst, std::move(out.premises)};
  }

  Derivation drop_ihd(const Derivation& d) {
    Derivation out = d;
    for (auto& p : out.premises) p = drop_ihd(p);
    if (out.inst.rule == RuleId::ihd)
      return push_ihd(out.premises[0], out.inst.eigen[0], out.inst.principal[0].label);
    return Derivation{out.conclusion, out.inst, std::move(out.premises)};
  }
};

void forbid_cut(const Derivation& d) {
  if (d.inst.rule == RuleId::cut)
    throw Unsupported("derivations containing cut cannot be refined");
  for (const auto& p : d.premises) forbid_cut(p);
}

void forbid_bare_bot(const LabelledSequent& s) {
  for (const auto& [w, f] : s.ante)
    if (!bot_only_in_neg_patterns(f)) throw UnsupportedBot();
  for (const auto& [w, f] : s.succ)
    if (!bot_only_in_neg_patterns(f)) throw UnsupportedBot();
}

}  // namespace

Derivation admissible_ref(const Calculus& c, const Derivation& d, const Label& w) {
  Eliminator e{Calculus{inflated(c.name), c.allow_admissible}};
  return e.push_ref(d, w);
}

Derivation admissible_tra(const Calculus& c, const Derivation& d, const Label& w, const Label& v,
                          const Label& u) {
  Eliminator e{Calculus{inflated(c.name), c.allow_admissible}};
  return e.push_tra(d, w, v, u);
}

Derivation admissible_nd(const Calculus& c, const Derivation& d, const Label& from, const Label& to,
                         const std::string& param) {
  Eliminator e{Calculus{inflated(c.name), c.allow_admissible}};
  return e.push_dom(d, RelAtom::dom(param, to), RelAtom::dom(param, from));
}

Derivation admissible_cd(const Calculus& c, const Derivation& d, const Label& from, const Label& to,
                         const std::string& param) {
  Eliminator e{Calculus{inflated(c.name), c.allow_admissible}};
  return e.push_dom(d, RelAtom::dom(param, from), RelAtom::dom(param, to));
}

Derivation specialize_identity(const Calculus& c, const Derivation& d) {
  Eliminator e{Calculus{inflated(c.name), c.allow_admissible}};
  return e.specialize_id(d);
}

Derivation eliminate_ref_tra(const Calculus& c, const Derivation& d) {
  Calculus star{inflated(c.name), c.allow_admissible};
  forbid_cut(d);
  Eliminator e{star};
  Derivation cur = inline_admissible(star, d);
  cur = e.absorb_imp_l(cur);
  return e.drop_ref_tra(cur);
}

Derivation eliminate_domain_rules(const Calculus& c, const Derivation& d) {
  Calculus star{inflated(c.name), c.allow_admissible};
  auto used = rules_used(d);
  if (used.count(RuleId::ref)) throw StructuralRulePresent("ref");
  if (used.count(RuleId::tra)) throw StructuralRulePresent("tra");
  forbid_cut(d);
  Eliminator e{star};
  Derivation cur = inline_admissible(star, d);
  cur = e.specialize_quantifiers(cur);
  cur = e.drop_nd_cd(cur);
  return e.drop_ihd(cur);
}

CalculusDerivation refine(const Calculus& c, const Derivation& d) {
  CalculusName target;
  switch (inflated(c.name)) {
    case CalculusName::G3IntStar: target = CalculusName::IntL; break;
    case CalculusName::G3IntQStar: target = CalculusName::IntQL; break;
    case CalculusName::G3IntQCStar: target = CalculusName::IntQCL; break;
    default: throw Unsupported("refine expects a G3-family derivation");
  }
  forbid_bare_bot(d.labelled());
  forbid_cut(d);
  Calculus star{inflated(c.name), false};
  Eliminator e{star};
  Derivation cur = inline_admissible(star, d);
  cur = e.absorb_imp_l(cur);
  cur = e.drop_ref_tra(cur);
  cur = e.specialize_id(cur);
  if (star.name == CalculusName::G3IntQCStar) cur = e.specialize_forall_r(cur);
  if (star.first_order()) {
    cur = e.specialize_quantifiers(cur);
    cur = e.drop_nd_cd(cur);
    cur = e.drop_ihd(cur);
  }
  Calculus out{target, false};
  auto errs = check_derivation(out, cur);
  if (!errs.empty())
    throw TransformError("refined derivation does not check: " + to_string(errs.front().error));
  return {out, std::move(cur)};
}

}  // namespace iproof
