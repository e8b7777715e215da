#include <queue>

#include "transform_util.hpp"

namespace iproof {
namespace {

// BFS path (inclusive) between labels over the <=-atoms.
std::vector<Label> path_labels(const std::vector<RelAtom>& rel, const Label& from, const Label& to,
                               PathMode mode) {
  if (from == to) return {from};
  std::map<Label, Label> parent;
  std::queue<Label> q;
  parent[from] = from;
  q.push(from);
  while (!q.empty()) {
    Label v = q.front();
    q.pop();
    for (const auto& r : rel) {
      if (!r.is_le()) continue;
      auto step = [&](const Label& x, const Label& y) {
        if (x == v && !parent.count(y)) {
          parent[y] = v;
          q.push(y);
        }
      };
      step(r.a, r.b);
      if (mode == PathMode::Undirected) step(r.b, r.a);
    }
  }
  if (!parent.count(to)) throw TransformError("expand: no path " + from + " ~> " + to);
  std::vector<Label> out{to};
  Label cur = to;
  while (cur != from) {
    cur = parent[cur];
    out.push_back(cur);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

RuleInstance simple(RuleId r, std::vector<SeqRef> p) {
  RuleInstance i;
  i.rule = r;
  i.principal = std::move(p);
  return i;
}

struct Expander {
  Calculus g3;  // target G3 calculus, allow_admissible set

  Derivation ref_below(const LabelledSequent& concl, const Label& w, Derivation prem) {
    return make_step(g3, Sequent{concl}, simple(RuleId::ref, {SeqRef::label_arg(w)}),
                     {std::move(prem)});
  }

  // One nd node deleting #a in D(to), justified by from <= to and #a in D(from).
  Derivation nd_below(Derivation prem, const Label& from, const Label& to, const std::string& a) {
    LabelledSequent concl = prem.labelled();
    concl.rel.erase(concl.rel.begin() +
                    static_cast<std::ptrdiff_t>(find_rel(concl, RelAtom::dom(a, to))));
    RuleInstance nd = simple(RuleId::nd, {SeqRef::rel(find_rel(concl, RelAtom::le(from, to))),
                                          SeqRef::rel(find_rel(concl, RelAtom::dom(a, from)))});
    return make_step(g3, Sequent{std::move(concl)}, std::move(nd), {std::move(prem)});
  }

  // One cd node deleting #a in D(from), justified by from <= to and #a in D(to).
  Derivation cd_below(Derivation prem, const Label& from, const Label& to, const std::string& a) {
    LabelledSequent concl = prem.labelled();
    concl.rel.erase(concl.rel.begin() +
                    static_cast<std::ptrdiff_t>(find_rel(concl, RelAtom::dom(a, from))));
    RuleInstance cd = simple(RuleId::cd, {SeqRef::rel(find_rel(concl, RelAtom::le(from, to))),
                                          SeqRef::rel(find_rel(concl, RelAtom::dom(a, to)))});
    return make_step(g3, Sequent{std::move(concl)}, std::move(cd), {std::move(prem)});
  }

  // Weakens the derivation by domain atoms for `a` along `route` (skipping
  // ones already present), then returns the list to delete afterwards, in
  // deletion order with the justifying neighbour.
  struct Chain {
    LabelledSequent add;
    std::vector<std::array<std::string, 3>> deletions;  // {from,to,param} nd; to==""? see dir
    std::vector<bool> use_cd;
  };

  Chain plan_chain(const LabelledSequent& base, const std::vector<Label>& route,
                   const std::string& a) {
    Chain out;
    std::set<std::size_t> added;
    for (std::size_t i = 1; i < route.size(); ++i) {
      if (has_rel(base, RelAtom::dom(a, route[i]))) continue;
      out.add.rel.push_back(RelAtom::dom(a, route[i]));
      added.insert(i);
    }
    for (std::size_t i = route.size(); i-- > 1;) {
      if (!added.count(i)) continue;
      bool forward = has_rel(base, RelAtom::le(route[i - 1], route[i]));
      if (forward) {
        out.deletions.push_back({route[i - 1], route[i], a});
        out.use_cd.push_back(false);
      } else {
        out.deletions.push_back({route[i], route[i - 1], a});
        out.use_cd.push_back(true);
      }
    }
    return out;
  }

  // Plans chains bringing a domain atom for every parameter in `params`
  // to label w, reusing atoms already there.
  std::vector<Chain> bridge_params(LabelledSequent& base, const std::set<std::string>& params,
                                   const Label& w, PathMode mode) {
    std::vector<Chain> chains;
    for (const auto& a : params) {
      if (has_rel(base, RelAtom::dom(a, w))) continue;
      Label src;
      for (const auto& r : base.rel)
        if (!r.is_le() && r.a == a && path_exists(base.rel, r.b, w, mode)) src = r.b;
      if (src.empty()) throw MissingDomainAtom(a);
      Chain ch = plan_chain(base, path_labels(base.rel, src, w, mode), a);
      base.rel.insert(base.rel.end(), ch.add.rel.begin(), ch.add.rel.end());
      chains.push_back(std::move(ch));
    }
    return chains;
  }

  Derivation apply_chain_deletions(Derivation cur, const Chain& chain) {
    for (std::size_t i = 0; i < chain.deletions.size(); ++i) {
      const auto& [x, y, a] = chain.deletions[i];
      cur = chain.use_cd[i] ? cd_below(std::move(cur), x, y, a)
                            : nd_below(std::move(cur), x, y, a);
    }
    return cur;
  }

  Derivation run(const Derivation& d) {
    std::vector<Derivation> prem;
    for (const auto& p : d.premises) prem.push_back(run(p));
    const LabelledSequent& concl = d.labelled();
    const RuleInstance& inst = d.inst;
    PathMode mode = g3.constant_domain() ? PathMode::Undirected : PathMode::Directed;

    switch (inst.rule) {
      case RuleId::id_star: {
        const auto& [w, pf] = concl.ante[inst.principal[0].index];
        LabelledSequent top = concl;
        top.rel.push_back(RelAtom::le(w, w));
        Derivation leaf = make_step(
            g3, Sequent{top},
            simple(RuleId::id, {SeqRef::rel(top.rel.size() - 1), SeqRef::ante(find_ante(top, w, pf)),
                                SeqRef::succ(find_succ(top, w, pf))}),
            {});
        return ref_below(concl, w, std::move(leaf));
      }
      case RuleId::id_q_n:
      case RuleId::id_q_c: {
        const auto& [w, pf] = concl.ante[inst.principal[0].index];
        // bring a domain atom for every parameter to w, close, then undo
        LabelledSequent top = concl;
        std::vector<Chain> chains;
        for (const auto& a : free_parameters(pf)) {
          if (has_rel(top, RelAtom::dom(a, w))) continue;
          Label src;
          for (const auto& r : concl.rel)
            if (!r.is_le() && r.a == a && path_exists(concl.rel, r.b, w, mode)) src = r.b;
          if (src.empty()) throw TransformError("expand: no witnessing domain atom for #" + a);
          Chain ch = plan_chain(top, path_labels(concl.rel, src, w, mode), a);
          top.rel.insert(top.rel.end(), ch.add.rel.begin(), ch.add.rel.end());
          chains.push_back(std::move(ch));
        }
        top.rel.push_back(RelAtom::le(w, w));
        Derivation leaf = make_step(
            g3, Sequent{top},
            simple(RuleId::id_q, {SeqRef::rel(top.rel.size() - 1),
                                  SeqRef::ante(find_ante(top, w, pf)),
                                  SeqRef::succ(find_succ(top, w, pf))}),
            {});
        LabelledSequent after_ref = top;
        after_ref.rel.pop_back();
        Derivation cur = ref_below(after_ref, w, std::move(leaf));
        for (auto it = chains.rbegin(); it != chains.rend(); ++it)
          cur = apply_chain_deletions(std::move(cur), *it);
        return cur;
      }
      case RuleId::imp_l_star:
      case RuleId::neg_l: {
        const auto& [w, f] = concl.ante[inst.principal[0].index];
        LabelledSequent extra;
        extra.rel.push_back(RelAtom::le(w, w));
        LabelledSequent mid = concl;
        mid.rel.push_back(RelAtom::le(w, w));
        Derivation p1 = weaken(g3, prem[0], extra);
        Derivation p2;
        if (inst.rule == RuleId::imp_l_star) {
          p2 = weaken(g3, prem[1], extra);
        } else {
          LabelledSequent botseq = mid;
          botseq.ante.emplace_back(w, Formula::bot());
          p2 = make_step(g3, Sequent{botseq},
                         simple(RuleId::bot_l, {SeqRef::ante(botseq.ante.size() - 1)}), {});
        }
        RuleInstance il = simple(RuleId::imp_l, {SeqRef::rel(find_rel(mid, RelAtom::le(w, w))),
                                                 SeqRef::ante(find_ante(mid, w, f))});
        Derivation node = make_step(g3, Sequent{mid}, std::move(il), {std::move(p1), std::move(p2)});
        return ref_below(concl, w, std::move(node));
      }
      case RuleId::neg_r: {
        const auto& [w, f] = concl.succ[inst.principal[0].index];
        std::string v = inst.eigen[0];
        LabelledSequent extra;
        extra.succ.emplace_back(v, Formula::bot());
        Derivation p1 = weaken(g3, prem[0], extra);
        RuleInstance ir = simple(RuleId::imp_r, {SeqRef::succ(inst.principal[0].index)});
        ir.eigen = {v};
        return make_step(g3, Sequent{concl}, std::move(ir), {std::move(p1)});
      }
      case RuleId::lift: {
        const RelAtom edge = concl.rel[inst.principal[0].index];
        const auto lifted = concl.ante[inst.principal[1].index];
        const Label w = lifted.first;
        const FormulaPtr f = lifted.second;
        LabelledSequent big = concl;
        auto chains = bridge_params(big, free_parameters(f), w, mode);
        LabelledSequent adds = detail::minus(big, concl);
        LabelledSequent ctx = big;
        ctx.ante.erase(ctx.ante.begin() + static_cast<std::ptrdiff_t>(inst.principal[1].index));
        Derivation left = identity_derivation(g3, ctx, w, edge.b, f);
        Derivation right = weaken(g3, prem[0], adds);
        RuleInstance cut;
        cut.rule = RuleId::cut;
        cut.cut = CutFormula{edge.b, f};
        Derivation cur = make_step(g3, Sequent{big}, std::move(cut), {std::move(left), std::move(right)});
        for (auto it = chains.rbegin(); it != chains.rend(); ++it)
          cur = apply_chain_deletions(std::move(cur), *it);
        return cur;
      }
      case RuleId::exists_r_n:
      case RuleId::exists_r_c:
      case RuleId::exists_r_in:
      case RuleId::exists_r_ic: {
        bool eigen = inst.rule == RuleId::exists_r_in || inst.rule == RuleId::exists_r_ic;
        const auto& [w, f] = concl.succ[inst.principal[0].index];
        std::string a = inst.witness->param;
        Label v = eigen ? inst.principal[1].label : concl.rel[inst.principal[1].index].b;
        LabelledSequent base = eigen ? [&] {
          LabelledSequent b = concl;
          b.rel.push_back(RelAtom::dom(a, v));
          return b;
        }()
                                     : concl;
        Chain ch = plan_chain(base, path_labels(base.rel, v, w, mode), a);
        Derivation cur = weaken(g3, prem[0], ch.add);
        LabelledSequent node_concl = base;
        node_concl.rel.insert(node_concl.rel.end(), ch.add.rel.begin(), ch.add.rel.end());
        RuleInstance er = simple(RuleId::exists_r,
                                 {SeqRef::succ(find_succ(node_concl, w, f)),
                                  SeqRef::rel(find_rel(node_concl, RelAtom::dom(a, w)))});
        er.witness = inst.witness;
        cur = make_step(g3, Sequent{std::move(node_concl)}, std::move(er), {std::move(cur)});
        cur = apply_chain_deletions(std::move(cur), ch);
        if (eigen) {
          RuleInstance ihd = simple(RuleId::ihd, {SeqRef::label_arg(v)});
          ihd.eigen = {a};
          cur = make_step(g3, Sequent{concl}, std::move(ihd), {std::move(cur)});
        }
        return cur;
      }
      case RuleId::forall_l_n:
      case RuleId::forall_l_c:
      case RuleId::forall_l_in:
      case RuleId::forall_l_ic: {
        bool eigen = inst.rule == RuleId::forall_l_in || inst.rule == RuleId::forall_l_ic;
        std::size_t fslot = eigen ? 0 : 1;
        const auto& [w, f] = concl.ante[inst.principal[fslot].index];
        std::string a = inst.witness->param;
        Label v = eigen ? inst.principal[1].label : concl.rel[inst.principal[0].index].b;
        LabelledSequent base = eigen ? [&] {
          LabelledSequent b = concl;
          b.rel.push_back(RelAtom::dom(a, v));
          return b;
        }()
                                     : concl;
        Chain ch = plan_chain(base, path_labels(base.rel, v, w, mode), a);
        LabelledSequent add = ch.add;
        add.rel.push_back(RelAtom::le(w, w));
        Derivation cur = weaken(g3, prem[0], add);
        LabelledSequent node_concl = base;
        node_concl.rel.insert(node_concl.rel.end(), add.rel.begin(), add.rel.end());
        RuleInstance fl = simple(RuleId::forall_l,
                                 {SeqRef::rel(find_rel(node_concl, RelAtom::le(w, w))),
                                  SeqRef::rel(find_rel(node_concl, RelAtom::dom(a, w))),
                                  SeqRef::ante(find_ante(node_concl, w, f))});
        fl.witness = inst.witness;
        cur = make_step(g3, Sequent{std::move(node_concl)}, std::move(fl), {std::move(cur)});
        LabelledSequent after_ref = cur.labelled();
        after_ref.rel.erase(after_ref.rel.begin() +
                            static_cast<std::ptrdiff_t>(find_rel(after_ref, RelAtom::le(w, w))));
        cur = ref_below(after_ref, w, std::move(cur));
        cur = apply_chain_deletions(std::move(cur), ch);
        if (eigen) {
          RuleInstance ihd = simple(RuleId::ihd, {SeqRef::label_arg(v)});
          ihd.eigen = {a};
          cur = make_step(g3, Sequent{concl}, std::move(ihd), {std::move(cur)});
        }
        return cur;
      }
      case RuleId::forall_r_c: {
        const auto& [w, f] = concl.succ[inst.principal[0].index];
        std::string a = inst.eigen[0];
        FormulaPtr instf = subst_var(f->lhs, f->head, Term::param(a));
        std::set<std::string> used = labels_of(concl);
        for (const auto& p : parameters_of(concl)) used.insert(p);
        used.insert(a);
        std::string v = fresh_label(used, "v");
        // bridge domain atoms for the body's other parameters to w first
        LabelledSequent bridged = concl;
        bridged.rel.push_back(RelAtom::dom(a, w));
        auto chains = bridge_params(bridged, free_parameters(f), w, mode);
        LabelledSequent bridge_adds;
        for (const auto& ch : chains)
          bridge_adds.rel.insert(bridge_adds.rel.end(), ch.add.rel.begin(), ch.add.rel.end());
        // X := concl - principal + bridges + w<=v + doms at w and v + v:inst
        LabelledSequent x = concl;
        x.succ.erase(x.succ.begin() + static_cast<std::ptrdiff_t>(inst.principal[0].index));
        x.rel.insert(x.rel.end(), bridge_adds.rel.begin(), bridge_adds.rel.end());
        x.rel.push_back(RelAtom::le(w, v));
        x.rel.push_back(RelAtom::dom(a, w));
        x.rel.push_back(RelAtom::dom(a, v));
        x.succ.emplace_back(v, instf);
        LabelledSequent extra = bridge_adds;
        extra.rel.push_back(RelAtom::le(w, v));
        extra.rel.push_back(RelAtom::dom(a, v));
        extra.succ.emplace_back(v, instf);
        Derivation pi1 = weaken(g3, prem[0], extra);
        LabelledSequent ctx = x;
        ctx.succ.erase(ctx.succ.begin() + static_cast<std::ptrdiff_t>(find_succ(ctx, v, instf)));
        Derivation pi2 = identity_derivation(g3, ctx, w, v, instf);
        RuleInstance cut;
        cut.rule = RuleId::cut;
        cut.cut = CutFormula{w, instf};
        Derivation cur = make_step(g3, Sequent{x}, std::move(cut), {std::move(pi1), std::move(pi2)});
        cur = cd_below(std::move(cur), w, v, a);
        for (auto it = chains.rbegin(); it != chains.rend(); ++it)
          cur = apply_chain_deletions(std::move(cur), *it);
        RuleInstance fr = simple(RuleId::forall_r, {SeqRef::succ(find_succ(concl, w, f))});
        fr.eigen = {v, a};
        fr.witness = inst.witness;
        return make_step(g3, Sequent{concl}, std::move(fr), {std::move(cur)});
      }
      default:
        return make_step(g3, d.conclusion, inst, std::move(prem));
    }
  }
};

CalculusName g3_of(CalculusName refined) {
  switch (refined) {
    case CalculusName::IntL: return CalculusName::G3Int;
    case CalculusName::IntQL: return CalculusName::G3IntQ;
    case CalculusName::IntQCL: return CalculusName::G3IntQC;
    default: throw Unsupported("expand_to_g3 expects a refined labelled calculus");
  }
}

}  // namespace

CalculusDerivation expand_to_g3(const Calculus& refined, const Derivation& d) {
  Calculus g3{g3_of(refined.name), true};
  Expander e{g3};
  return {g3, e.run(d)};
}

}  // namespace iproof
