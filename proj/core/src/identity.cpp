#include "transform_util.hpp"

namespace iproof {
namespace {

// Builds checked proofs of ctx + w:A => v:A + ctx by mutual induction on A;
// w == v is the same-label claim, w != v wants w <= v in the context.
struct IdentityBuilder {
  Calculus cal;
  std::set<std::string> used;  // labels and parameters, kept fresh-safe

  std::string fresh_l() {
    auto s = fresh_label(used, "u");
    used.insert(s);
    return s;
  }
  std::string fresh_p() {
    auto s = fresh_param(used, "b");
    used.insert(s);
    return s;
  }

  static LabelledSequent conclusion(const LabelledSequent& ctx, const Label& w, const Label& v,
                                    const FormulaPtr& a) {
    LabelledSequent out = ctx;
    out.ante.emplace_back(w, a);
    out.succ.emplace_back(v, a);
    return out;
  }

  Derivation axiom_atom(const LabelledSequent& ctx, const Label& w, const Label& v,
                        const FormulaPtr& a) {
    if (w == v) {
      // close with the edge w <= w introduced by ref
      LabelledSequent concl = conclusion(ctx, w, v, a);
      LabelledSequent prem = concl;
      prem.rel.push_back(RelAtom::le(w, w));
      RuleInstance ax;
      ax.rule = a->args.empty() ? RuleId::id : RuleId::id_q;
      ax.principal = {SeqRef::rel(prem.rel.size() - 1), SeqRef::ante(find_ante(prem, w, a)),
                      SeqRef::succ(find_succ(prem, w, a))};
      Derivation leaf = make_step(cal, Sequent{prem}, std::move(ax), {});
      RuleInstance ref;
      ref.rule = RuleId::ref;
      ref.principal = {SeqRef::label_arg(w)};
      return make_step(cal, Sequent{concl}, std::move(ref), {std::move(leaf)});
    }
    LabelledSequent concl = conclusion(ctx, w, v, a);
    RuleInstance ax;
    ax.rule = a->args.empty() ? RuleId::id : RuleId::id_q;
    ax.principal = {SeqRef::rel(find_rel(concl, RelAtom::le(w, v))),
                    SeqRef::ante(find_ante(concl, w, a)), SeqRef::succ(find_succ(concl, v, a))};
    return make_step(cal, Sequent{concl}, std::move(ax), {});
  }

  // Chains nd nodes that delete the freshly added domain atoms at `at`
  // downward to the base derivation; `doms` lists the parameters.
  Derivation nd_chain(Derivation d, const Label& from, const Label& at,
                      const std::vector<std::string>& doms) {
    for (auto it = doms.rbegin(); it != doms.rend(); ++it) {
      LabelledSequent concl = d.labelled();
      std::size_t k = find_rel(concl, RelAtom::dom(*it, at));
      concl.rel.erase(concl.rel.begin() + static_cast<std::ptrdiff_t>(k));
      RuleInstance nd;
      nd.rule = RuleId::nd;
      nd.principal = {SeqRef::rel(find_rel(concl, RelAtom::le(from, at))),
                      SeqRef::rel(find_rel(concl, RelAtom::dom(*it, from)))};
      d = make_step(cal, Sequent{std::move(concl)}, std::move(nd), {std::move(d)});
    }
    return d;
  }

  Derivation build(const LabelledSequent& ctx, const Label& w, const Label& v, const FormulaPtr& a) {
    using K = Formula::Kind;
    switch (a->kind) {
      case K::Atom:
        return axiom_atom(ctx, w, v, a);
      case K::Bot: {
        LabelledSequent concl = conclusion(ctx, w, v, a);
        RuleInstance ax;
        ax.rule = RuleId::bot_l;
        ax.principal = {SeqRef::ante(find_ante(concl, w, a))};
        return make_step(cal, Sequent{concl}, std::move(ax), {});
      }
      case K::And: {
        LabelledSequent ctx_l = ctx;
        ctx_l.ante.emplace_back(w, a->rhs);
        LabelledSequent ctx_r = ctx;
        ctx_r.ante.emplace_back(w, a->lhs);
        Derivation dl = build(ctx_l, w, v, a->lhs);
        Derivation dr = build(ctx_r, w, v, a->rhs);
        LabelledSequent mid = ctx;
        mid.ante.emplace_back(w, a->lhs);
        mid.ante.emplace_back(w, a->rhs);
        mid.succ.emplace_back(v, a);
        RuleInstance andr;
        andr.rule = RuleId::and_r;
        andr.principal = {SeqRef::succ(find_succ(mid, v, a))};
        Derivation up = make_step(cal, Sequent{mid}, std::move(andr), {std::move(dl), std::move(dr)});
        LabelledSequent concl = conclusion(ctx, w, v, a);
        RuleInstance andl;
        andl.rule = RuleId::and_l;
        andl.principal = {SeqRef::ante(find_ante(concl, w, a))};
        return make_step(cal, Sequent{concl}, std::move(andl), {std::move(up)});
      }
      case K::Or: {
        LabelledSequent ctx_l = ctx;
        ctx_l.succ.emplace_back(v, a->rhs);
        LabelledSequent ctx_r = ctx;
        ctx_r.succ.emplace_back(v, a->lhs);
        Derivation dl = build(ctx_l, w, v, a->lhs);
        Derivation dr = build(ctx_r, w, v, a->rhs);
        auto orr_on = [&](Derivation sub, const FormulaPtr& in_ante) {
          LabelledSequent mid = ctx;
          mid.ante.emplace_back(w, in_ante);
          mid.succ.emplace_back(v, a);
          RuleInstance orr;
          orr.rule = RuleId::or_r;
          orr.principal = {SeqRef::succ(find_succ(mid, v, a))};
          return make_step(cal, Sequent{mid}, std::move(orr), {std::move(sub)});
        };
        Derivation pl = orr_on(std::move(dl), a->lhs);
        Derivation pr = orr_on(std::move(dr), a->rhs);
        LabelledSequent concl = conclusion(ctx, w, v, a);
        RuleInstance orl;
        orl.rule = RuleId::or_l;
        orl.principal = {SeqRef::ante(find_ante(concl, w, a))};
        return make_step(cal, Sequent{concl}, std::move(orl), {std::move(pl), std::move(pr)});
      }
      case K::Imp: {
        std::string u = fresh_l();
        auto params = free_parameters(a);
        std::vector<std::string> doms(params.begin(), params.end());
        // innermost sequent: ctx, w:A>B, edges, doms at u, u:A => u:B
        LabelledSequent base = ctx;
        base.ante.emplace_back(w, a);
        base.rel.push_back(RelAtom::le(v, u));
        if (w != v) base.rel.push_back(RelAtom::le(w, u));
        for (const auto& p : doms) base.rel.push_back(RelAtom::dom(p, u));
        LabelledSequent ctx_l = base;
        ctx_l.succ.emplace_back(u, a->rhs);
        LabelledSequent ctx_r = base;
        ctx_r.ante.emplace_back(u, a->lhs);
        Derivation dl = build(ctx_l, u, u, a->lhs);
        Derivation dr = build(ctx_r, u, u, a->rhs);
        LabelledSequent mid = base;
        mid.ante.emplace_back(u, a->lhs);
        mid.succ.emplace_back(u, a->rhs);
        RuleInstance impl;
        impl.rule = RuleId::imp_l;
        impl.principal = {SeqRef::rel(find_rel(mid, RelAtom::le(w, u))),
                          SeqRef::ante(find_ante(mid, w, a))};
        Derivation cur = make_step(cal, Sequent{mid}, std::move(impl), {std::move(dl), std::move(dr)});
        cur = nd_chain(std::move(cur), w, u, doms);
        if (w != v) {
          // drop the composite w <= u via tra
          LabelledSequent concl_t = cur.labelled();
          concl_t.rel.erase(concl_t.rel.begin() +
                            static_cast<std::ptrdiff_t>(find_rel(concl_t, RelAtom::le(w, u))));
          RuleInstance tra;
          tra.rule = RuleId::tra;
          tra.principal = {SeqRef::rel(find_rel(concl_t, RelAtom::le(w, v))),
                           SeqRef::rel(find_rel(concl_t, RelAtom::le(v, u)))};
          cur = make_step(cal, Sequent{std::move(concl_t)}, std::move(tra), {std::move(cur)});
        }
        LabelledSequent concl = conclusion(ctx, w, v, a);
        RuleInstance impr;
        impr.rule = RuleId::imp_r;
        impr.principal = {SeqRef::succ(find_succ(concl, v, a))};
        impr.eigen = {u};
        return make_step(cal, Sequent{concl}, std::move(impr), {std::move(cur)});
      }
      case K::Exists: {
        std::string b = fresh_p();
        FormulaPtr instf = subst_var(a->lhs, a->head, Term::param(b));
        LabelledSequent base = ctx;
        base.succ.emplace_back(v, a);
        base.rel.push_back(RelAtom::dom(b, w));
        if (w != v) base.rel.push_back(RelAtom::dom(b, v));
        Derivation sub = build(base, w, v, instf);
        // exists_r at v with the domain atom sitting there
        LabelledSequent mid = base;
        mid.ante.emplace_back(w, instf);
        RuleInstance exr;
        exr.rule = RuleId::exists_r;
        exr.principal = {SeqRef::succ(find_succ(mid, v, a)),
                         SeqRef::rel(find_rel(mid, RelAtom::dom(b, v)))};
        exr.witness = Witness{b, a->head};
        Derivation cur = make_step(cal, Sequent{mid}, std::move(exr), {std::move(sub)});
        if (w != v) {
          LabelledSequent concl_nd = cur.labelled();
          concl_nd.rel.erase(concl_nd.rel.begin() +
                             static_cast<std::ptrdiff_t>(find_rel(concl_nd, RelAtom::dom(b, v))));
          RuleInstance nd;
          nd.rule = RuleId::nd;
          nd.principal = {SeqRef::rel(find_rel(concl_nd, RelAtom::le(w, v))),
                          SeqRef::rel(find_rel(concl_nd, RelAtom::dom(b, w)))};
          cur = make_step(cal, Sequent{std::move(concl_nd)}, std::move(nd), {std::move(cur)});
        }
        LabelledSequent concl = conclusion(ctx, w, v, a);
        RuleInstance exl;
        exl.rule = RuleId::exists_l;
        exl.principal = {SeqRef::ante(find_ante(concl, w, a))};
        exl.eigen = {b};
        exl.witness = Witness{b, a->head};
        return make_step(cal, Sequent{concl}, std::move(exl), {std::move(cur)});
      }
      case K::Forall: {
        std::string u = fresh_l();
        std::string b = fresh_p();
        FormulaPtr instf = subst_var(a->lhs, a->head, Term::param(b));
        auto params = free_parameters(a);
        std::vector<std::string> doms(params.begin(), params.end());
        LabelledSequent base = ctx;
        base.ante.emplace_back(w, a);
        base.rel.push_back(RelAtom::le(v, u));
        if (w != v) base.rel.push_back(RelAtom::le(w, u));
        base.rel.push_back(RelAtom::dom(b, u));
        for (const auto& p : doms) base.rel.push_back(RelAtom::dom(p, u));
        Derivation sub = build(base, u, u, instf);
        LabelledSequent mid = base;
        mid.succ.emplace_back(u, instf);
        RuleInstance fal;
        fal.rule = RuleId::forall_l;
        fal.principal = {SeqRef::rel(find_rel(mid, RelAtom::le(w, u))),
                         SeqRef::rel(find_rel(mid, RelAtom::dom(b, u))),
                         SeqRef::ante(find_ante(mid, w, a))};
        fal.witness = Witness{b, a->head};
        Derivation cur = make_step(cal, Sequent{mid}, std::move(fal), {std::move(sub)});
        cur = nd_chain(std::move(cur), w, u, doms);
        if (w != v) {
          LabelledSequent concl_t = cur.labelled();
          concl_t.rel.erase(concl_t.rel.begin() +
                            static_cast<std::ptrdiff_t>(find_rel(concl_t, RelAtom::le(w, u))));
          RuleInstance tra;
          tra.rule = RuleId::tra;
          tra.principal = {SeqRef::rel(find_rel(concl_t, RelAtom::le(w, v))),
                           SeqRef::rel(find_rel(concl_t, RelAtom::le(v, u)))};
          cur = make_step(cal, Sequent{std::move(concl_t)}, std::move(tra), {std::move(cur)});
        }
        LabelledSequent concl = conclusion(ctx, w, v, a);
        RuleInstance far;
        far.rule = RuleId::forall_r;
        far.principal = {SeqRef::succ(find_succ(concl, v, a))};
        far.eigen = {u, b};
        far.witness = Witness{b, a->head};
        return make_step(cal, Sequent{concl}, std::move(far), {std::move(cur)});
      }
      default:
        throw TransformError("identity: unexpected connective");
    }
  }
};

}  // namespace

Derivation identity_derivation(const Calculus& c, const LabelledSequent& context, const Label& w,
                               const Label& v, const FormulaPtr& a) {
  if (!c.g3_family()) throw Unsupported("identity_derivation builds in the G3 systems");
  FormulaPtr f = neg_normalize(a, NegMode::Expand);
  if (!parameter_closed(f)) throw FreeVariableError("identity formula must be parameter-closed");
  for (const auto& p : free_parameters(f)) {
    bool found = false;
    for (const auto& r : context.rel)
      if (!r.is_le() && r.a == p && r.b == w) found = true;
    if (!found) throw MissingDomainAtom(p);
  }
  if (w != v && !has_rel(context, RelAtom::le(w, v)))
    throw TransformError("identity: the context lacks " + w + " <= " + v);
  IdentityBuilder b{c, {}};
  b.used = labels_of(context);
  for (const auto& p : parameters_of(context)) b.used.insert(p);
  b.used.insert(w);
  b.used.insert(v);
  return b.build(context, w, v, f);
}

}  // namespace iproof
