#include "iproof/prover.hpp"

#include <algorithm>
#include <map>

#include "iproof/instance.hpp"

namespace iproof {
namespace {

using FSet = std::set<FormulaPtr, FormulaLess>;

bool quantifier_free(const FormulaPtr& f) {
  if (f->kind == Formula::Kind::Forall || f->kind == Formula::Kind::Exists) return false;
  if (f->lhs && !quantifier_free(f->lhs)) return false;
  if (f->rhs && !quantifier_free(f->rhs)) return false;
  return true;
}

bool quantifier_free(const NestedSequent& s) {
  for (const auto& f : s.ante)
    if (!quantifier_free(f)) return false;
  for (const auto& f : s.succ)
    if (!quantifier_free(f)) return false;
  for (const auto& c : s.children)
    if (!quantifier_free(c)) return false;
  return true;
}

FSet as_set(const std::vector<FormulaPtr>& v) { return FSet(v.begin(), v.end()); }

struct Component {
  std::string pos;
  const NestedSequent* node;
  const NestedSequent* parent;  // nullptr for root
};

void collect(const NestedSequent& s, const std::string& pos, const NestedSequent* parent,
             std::vector<Component>& out) {
  out.push_back({pos, &s, parent});
  for (std::size_t i = 0; i < s.children.size(); ++i)
    collect(s.children[i], pos + "." + std::to_string(i), &s, out);
}

// Left rules that keep their principal copy are applied once per component
// and formula; the copy reaches descendants via lift and can fire again
// there, which is where a second use can matter.
using History = std::map<std::string, FSet>;

struct Searcher {
  Calculus cal;
  SearchLimits lim;
  std::size_t nodes = 0;
  bool limit_hit = false;

  RuleInstance inst(RuleId r, std::vector<SeqRef> principal) {
    RuleInstance i;
    i.rule = r;
    i.principal = std::move(principal);
    return i;
  }

  std::optional<Derivation> apply(const NestedSequent& goal, RuleInstance i, std::size_t qdepth,
                                  const History& hist) {
    auto premseqs = premises_of(cal, goal, i);
    std::vector<Derivation> subs;
    for (const auto& p : premseqs) {
      auto d = search(p, qdepth, hist);
      if (!d) return std::nullopt;
      subs.push_back(std::move(*d));
    }
    return Derivation{goal, std::move(i), std::move(subs)};
  }

  std::optional<Derivation> search(const NestedSequent& goal, std::size_t qdepth,
                                   History hist = {}) {
    if (++nodes > lim.max_nodes) {
      limit_hit = true;
      return std::nullopt;
    }
    std::vector<Component> comps;
    collect(goal, "0", nullptr, comps);

    // Closures first.
    for (const auto& c : comps) {
      FSet succ = as_set(c.node->succ);
      for (std::size_t i = 0; i < c.node->ante.size(); ++i) {
        const auto& f = c.node->ante[i];
        if (f->kind == Formula::Kind::Bot)
          return Derivation{goal, inst(RuleId::n_bot_l, {SeqRef::ante(i, c.pos)}), {}};
        if (f->kind == Formula::Kind::Atom && succ.count(f)) {
          std::size_t j = find_n_succ(goal, c.pos, f);
          RuleId r = f->args.empty() ? RuleId::n_id : RuleId::n_id_q;
          return Derivation{goal, inst(r, {SeqRef::ante(i, c.pos), SeqRef::succ(j, c.pos)}), {}};
        }
      }
    }

    // Local single-premise saturation: and_l, or_r, lift, neg_l, exists_l.
    for (const auto& c : comps) {
      for (std::size_t i = 0; i < c.node->ante.size(); ++i) {
        const auto& f = c.node->ante[i];
        if (f->kind == Formula::Kind::And)
          return apply(goal, inst(RuleId::n_and_l, {SeqRef::ante(i, c.pos)}), qdepth, hist);
      }
      for (std::size_t i = 0; i < c.node->succ.size(); ++i) {
        const auto& f = c.node->succ[i];
        if (f->kind == Formula::Kind::Or)
          return apply(goal, inst(RuleId::n_or_r, {SeqRef::succ(i, c.pos)}), qdepth, hist);
      }
    }
    for (const auto& c : comps) {
      if (!c.parent) continue;
      FSet ante = as_set(c.node->ante);
      for (std::size_t i = 0; i < c.parent->ante.size(); ++i) {
        const auto& f = c.parent->ante[i];
        if (ante.count(f)) continue;
        std::string ppos = c.pos.substr(0, c.pos.rfind('.'));
        return apply(goal, inst(RuleId::n_lift, {SeqRef::ante(i, ppos), SeqRef::child(c.pos)}),
                     qdepth, hist);
      }
    }
    for (const auto& c : comps) {
      FSet succ = as_set(c.node->succ);
      for (std::size_t i = 0; i < c.node->ante.size(); ++i) {
        const auto& f = c.node->ante[i];
        if (f->kind == Formula::Kind::Neg && !succ.count(f->lhs) && !hist[c.pos].count(f)) {
          History h2 = hist;
          h2[c.pos].insert(f);
          return apply(goal, inst(RuleId::n_neg_l, {SeqRef::ante(i, c.pos)}), qdepth, h2);
        }
      }
    }
    if (cal.first_order()) {
      for (const auto& c : comps)
        for (std::size_t i = 0; i < c.node->ante.size(); ++i) {
          const auto& f = c.node->ante[i];
          if (f->kind != Formula::Kind::Exists) continue;
          if (qdepth >= lim.max_depth) {
            limit_hit = true;
            continue;
          }
          auto in = inst(RuleId::n_exists_l, {SeqRef::ante(i, c.pos)});
          std::string a = fresh_param(parameters_of(goal));
          in.eigen = {a};
          in.witness = Witness{a, f->head};
          return apply(goal, std::move(in), qdepth + 1, hist);
        }
    }

    // Branching local rules.
    for (const auto& c : comps) {
      for (std::size_t i = 0; i < c.node->succ.size(); ++i)
        if (c.node->succ[i]->kind == Formula::Kind::And)
          return apply(goal, inst(RuleId::n_and_r, {SeqRef::succ(i, c.pos)}), qdepth, hist);
      for (std::size_t i = 0; i < c.node->ante.size(); ++i)
        if (c.node->ante[i]->kind == Formula::Kind::Or)
          return apply(goal, inst(RuleId::n_or_l, {SeqRef::ante(i, c.pos)}), qdepth, hist);
    }
    for (const auto& c : comps) {
      FSet ante = as_set(c.node->ante);
      FSet succ = as_set(c.node->succ);
      for (std::size_t i = 0; i < c.node->ante.size(); ++i) {
        const auto& f = c.node->ante[i];
        if (f->kind == Formula::Kind::Imp && !succ.count(f->lhs) && !ante.count(f->rhs) &&
            !hist[c.pos].count(f)) {
          History h2 = hist;
          h2[c.pos].insert(f);
          return apply(goal, inst(RuleId::n_imp_l, {SeqRef::ante(i, c.pos)}), qdepth, h2);
        }
      }
    }

    // Child creation; blocked when the current component already refutes the
    // formula by itself (the countermodel can loop on the world).
    for (const auto& c : comps) {
      FSet ante = as_set(c.node->ante);
      FSet succ = as_set(c.node->succ);
      std::string new_child = c.pos + "." + std::to_string(c.node->children.size());
      for (std::size_t i = 0; i < c.node->succ.size(); ++i) {
        const auto& f = c.node->succ[i];
        if (f->kind == Formula::Kind::Imp && !(ante.count(f->lhs) && succ.count(f->rhs)))
          return apply(goal, inst(RuleId::n_imp_r, {SeqRef::succ(i, c.pos), SeqRef::child(new_child)}),
                       qdepth, hist);
        if (f->kind == Formula::Kind::Neg && !ante.count(f->lhs))
          return apply(goal, inst(RuleId::n_neg_r, {SeqRef::succ(i, c.pos), SeqRef::child(new_child)}),
                       qdepth, hist);
      }
    }
    if (cal.first_order()) {
      for (const auto& c : comps) {
        std::string new_child = c.pos + "." + std::to_string(c.node->children.size());
        for (std::size_t i = 0; i < c.node->succ.size(); ++i) {
          const auto& f = c.node->succ[i];
          if (f->kind != Formula::Kind::Forall) continue;
          if (qdepth >= lim.max_depth) {
            limit_hit = true;
            continue;
          }
          std::string a = fresh_param(parameters_of(goal));
          if (cal.name == CalculusName::NIntQ) {
            auto in = inst(RuleId::n_forall_r_n, {SeqRef::succ(i, c.pos), SeqRef::child(new_child)});
            in.eigen = {a};
            in.witness = Witness{a, f->head};
            return apply(goal, std::move(in), qdepth + 1, hist);
          }
          auto in = inst(RuleId::n_forall_r_c, {SeqRef::succ(i, c.pos)});
          in.eigen = {a};
          in.witness = Witness{a, f->head};
          return apply(goal, std::move(in), qdepth + 1, hist);
        }
      }
      // Witnessed quantifier rules: available parameters anywhere first,
      // a fresh eigenvariable only as the global fallback.
      for (bool use_fresh : {false, true}) {
        for (const auto& c : comps) {
          FSet ante = as_set(c.node->ante);
          FSet succ = as_set(c.node->succ);
          std::vector<std::string> ws;
          if (use_fresh) {
            ws.push_back(fresh_param(parameters_of(goal)));
          } else {
            std::set<std::string> seen = cal.name == CalculusName::NIntQ
                                             ? available_parameters(goal, c.pos)
                                             : parameters_of(goal);
            ws.assign(seen.begin(), seen.end());
          }
          for (std::size_t i = 0; i < c.node->succ.size(); ++i) {
            const auto& f = c.node->succ[i];
            if (f->kind != Formula::Kind::Exists) continue;
            for (const auto& a : ws) {
              auto instf = subst_var(f->lhs, f->head, Term::param(a));
              if (succ.count(instf)) continue;
              if (qdepth >= lim.max_depth) {
                limit_hit = true;
                break;
              }
              auto in = inst(RuleId::n_exists_r, {SeqRef::succ(i, c.pos)});
              in.witness = Witness{a, f->head};
              return apply(goal, std::move(in), qdepth + 1, hist);
            }
          }
          for (std::size_t i = 0; i < c.node->ante.size(); ++i) {
            const auto& f = c.node->ante[i];
            if (f->kind != Formula::Kind::Forall) continue;
            for (const auto& a : ws) {
              auto instf = subst_var(f->lhs, f->head, Term::param(a));
              if (ante.count(instf)) continue;
              if (qdepth >= lim.max_depth) {
                limit_hit = true;
                break;
              }
              auto in = inst(RuleId::n_forall_l, {SeqRef::ante(i, c.pos)});
              in.witness = Witness{a, f->head};
              return apply(goal, std::move(in), qdepth + 1, hist);
            }
          }
        }
      }
    }
    return std::nullopt;  // saturated
  }
};

}  // namespace

ProveResult prove(const Calculus& c, const NestedSequent& goal, const SearchLimits& limits) {
  if (!c.nested()) throw Unsupported("prove expects a nested calculus");
  if (c.name == CalculusName::NInt && !quantifier_free(goal)) throw QuantifierInPropositionalGoal();
  Searcher s{c, limits};
  auto d = s.search(goal, 0);
  if (d) return {ProveResult::Status::Proved, std::move(d)};
  if (c.name == CalculusName::NInt && !s.limit_hit)
    return {ProveResult::Status::Unprovable, std::nullopt};
  return {ProveResult::Status::Unknown, std::nullopt};
}

ProveResult prove_formula(const Calculus& c, const FormulaPtr& f, const SearchLimits& limits) {
  NestedSequent goal;
  goal.succ.push_back(free_parameters(f).empty() ? f : universal_closure(f));
  return prove(c, goal, limits);
}

}  // namespace iproof
