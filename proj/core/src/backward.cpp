#include "iproof/backward.hpp"

#include "iproof/instance.hpp"

namespace iproof {
namespace {

// Collects every component position of a nested sequent in preorder.
void positions_of(const NestedSequent& s, const std::string& pos, std::vector<std::string>& out) {
  out.push_back(pos);
  for (std::size_t i = 0; i < s.children.size(); ++i)
    positions_of(s.children[i], pos + "." + std::to_string(i), out);
}

struct Collector {
  const Calculus& cal;
  std::vector<BackwardApplication> out;

  void add(const Sequent& s, RuleInstance inst) {
    std::vector<Sequent> prem;
    try {
      if (std::holds_alternative<NestedSequent>(s)) {
        for (auto& p : premises_of(cal, std::get<NestedSequent>(s), inst)) prem.emplace_back(std::move(p));
      } else {
        for (auto& p : premises_of(cal, std::get<LabelledSequent>(s), inst)) prem.emplace_back(std::move(p));
      }
    } catch (const CheckFailure&) {
      return;  // not actually an instance
    }
    out.push_back({std::move(inst), std::move(prem)});
  }
};

RuleInstance mk(RuleId r, std::vector<SeqRef> principal) {
  RuleInstance i;
  i.rule = r;
  i.principal = std::move(principal);
  return i;
}

void nested_apps(const Calculus& cal, const NestedSequent& s, Collector& c) {
  const auto& rules = rules_of(cal.name);
  std::vector<std::string> poss;
  positions_of(s, "0", poss);
  auto all_params = parameters_of(s);
  std::string fresh = fresh_param(all_params);
  for (const auto& pos : poss) {
    const auto* comp = component_at(s, pos);
    for (std::size_t i = 0; i < comp->ante.size(); ++i) {
      const auto& f = comp->ante[i];
      // closures
      if (f->kind == Formula::Kind::Atom) {
        for (std::size_t j = 0; j < comp->succ.size(); ++j)
          if (equal(f, comp->succ[j])) {
            RuleId r = f->args.empty() ? RuleId::n_id : RuleId::n_id_q;
            if (rule_allowed(cal, r))
              c.add(Sequent{s}, mk(r, {SeqRef::ante(i, pos), SeqRef::succ(j, pos)}));
          }
      }
      if (f->kind == Formula::Kind::Bot && rule_allowed(cal, RuleId::n_bot_l))
        c.add(Sequent{s}, mk(RuleId::n_bot_l, {SeqRef::ante(i, pos)}));
      if (f->kind == Formula::Kind::And && rules.count(RuleId::n_and_l))
        c.add(Sequent{s}, mk(RuleId::n_and_l, {SeqRef::ante(i, pos)}));
      if (f->kind == Formula::Kind::Or && rules.count(RuleId::n_or_l))
        c.add(Sequent{s}, mk(RuleId::n_or_l, {SeqRef::ante(i, pos)}));
      if (as_negation(f) && rules.count(RuleId::n_neg_l))
        c.add(Sequent{s}, mk(RuleId::n_neg_l, {SeqRef::ante(i, pos)}));
      if (f->kind == Formula::Kind::Imp && rules.count(RuleId::n_imp_l))
        c.add(Sequent{s}, mk(RuleId::n_imp_l, {SeqRef::ante(i, pos)}));
      if (rules.count(RuleId::n_lift))
        for (std::size_t k = 0; k < comp->children.size(); ++k)
          c.add(Sequent{s}, mk(RuleId::n_lift,
                               {SeqRef::ante(i, pos), SeqRef::child(pos + "." + std::to_string(k))}));
      if (f->kind == Formula::Kind::Exists && rules.count(RuleId::n_exists_l)) {
        auto inst = mk(RuleId::n_exists_l, {SeqRef::ante(i, pos)});
        inst.eigen = {fresh};
        inst.witness = Witness{fresh, f->head};
        c.add(Sequent{s}, inst);
      }
      if (f->kind == Formula::Kind::Forall && rules.count(RuleId::n_forall_l)) {
        std::set<std::string> witnesses =
            cal.name == CalculusName::NIntQ ? available_parameters(s, pos) : all_params;
        for (const auto& a : witnesses) {
          auto inst = mk(RuleId::n_forall_l, {SeqRef::ante(i, pos)});
          inst.witness = Witness{a, f->head};
          c.add(Sequent{s}, inst);
        }
        auto inst = mk(RuleId::n_forall_l, {SeqRef::ante(i, pos)});
        inst.witness = Witness{fresh, f->head};
        c.add(Sequent{s}, inst);
      }
    }
    std::string new_child = pos + "." + std::to_string(comp->children.size());
    for (std::size_t i = 0; i < comp->succ.size(); ++i) {
      const auto& f = comp->succ[i];
      if (f->kind == Formula::Kind::Or && rules.count(RuleId::n_or_r))
        c.add(Sequent{s}, mk(RuleId::n_or_r, {SeqRef::succ(i, pos)}));
      if (f->kind == Formula::Kind::And && rules.count(RuleId::n_and_r))
        c.add(Sequent{s}, mk(RuleId::n_and_r, {SeqRef::succ(i, pos)}));
      if (f->kind == Formula::Kind::Imp && rules.count(RuleId::n_imp_r))
        c.add(Sequent{s}, mk(RuleId::n_imp_r, {SeqRef::succ(i, pos), SeqRef::child(new_child)}));
      if (f->kind == Formula::Kind::Neg && rules.count(RuleId::n_neg_r))
        c.add(Sequent{s}, mk(RuleId::n_neg_r, {SeqRef::succ(i, pos), SeqRef::child(new_child)}));
      if (f->kind == Formula::Kind::Forall) {
        if (rules.count(RuleId::n_forall_r_n)) {
          auto inst = mk(RuleId::n_forall_r_n, {SeqRef::succ(i, pos), SeqRef::child(new_child)});
          inst.eigen = {fresh};
          inst.witness = Witness{fresh, f->head};
          c.add(Sequent{s}, inst);
        }
        if (rules.count(RuleId::n_forall_r_c)) {
          auto inst = mk(RuleId::n_forall_r_c, {SeqRef::succ(i, pos)});
          inst.eigen = {fresh};
          inst.witness = Witness{fresh, f->head};
          c.add(Sequent{s}, inst);
        }
      }
      if (f->kind == Formula::Kind::Exists && rules.count(RuleId::n_exists_r)) {
        std::set<std::string> witnesses =
            cal.name == CalculusName::NIntQ ? available_parameters(s, pos) : all_params;
        for (const auto& a : witnesses) {
          auto inst = mk(RuleId::n_exists_r, {SeqRef::succ(i, pos)});
          inst.witness = Witness{a, f->head};
          c.add(Sequent{s}, inst);
        }
        auto inst = mk(RuleId::n_exists_r, {SeqRef::succ(i, pos)});
        inst.witness = Witness{fresh, f->head};
        c.add(Sequent{s}, inst);
      }
    }
  }
}

void labelled_apps(const Calculus& cal, const LabelledSequent& s, Collector& c) {
  const auto& rules = rules_of(cal.name);
  auto labels = labels_of(s);
  auto params = parameters_of(s);
  std::string fresh_l = fresh_label(labels);
  std::string fresh_a = fresh_param(params);
  auto allowed = [&](RuleId r) { return rule_allowed(cal, r); };

  for (std::size_t e = 0; e < s.rel.size(); ++e) {
    const RelAtom& edge = s.rel[e];
    if (!edge.is_le()) continue;
    for (std::size_t i = 0; i < s.ante.size(); ++i) {
      if (s.ante[i].first != edge.a) continue;
      const auto& f = s.ante[i].second;
      if (f->kind == Formula::Kind::Atom)
        for (std::size_t j = 0; j < s.succ.size(); ++j)
          if (s.succ[j].first == edge.b && equal(s.succ[j].second, f)) {
            if (f->args.empty() && allowed(RuleId::id))
              c.add(Sequent{s}, mk(RuleId::id, {SeqRef::rel(e), SeqRef::ante(i), SeqRef::succ(j)}));
            if (allowed(RuleId::id_q))
              c.add(Sequent{s}, mk(RuleId::id_q, {SeqRef::rel(e), SeqRef::ante(i), SeqRef::succ(j)}));
          }
      if (f->kind == Formula::Kind::Imp && rules.count(RuleId::imp_l))
        c.add(Sequent{s}, mk(RuleId::imp_l, {SeqRef::rel(e), SeqRef::ante(i)}));
      if (rules.count(RuleId::lift))
        c.add(Sequent{s}, mk(RuleId::lift, {SeqRef::rel(e), SeqRef::ante(i)}));
      if (f->kind == Formula::Kind::Forall && rules.count(RuleId::forall_l))
        for (std::size_t d = 0; d < s.rel.size(); ++d)
          if (!s.rel[d].is_le() && s.rel[d].b == edge.b) {
            auto inst = mk(RuleId::forall_l, {SeqRef::rel(e), SeqRef::rel(d), SeqRef::ante(i)});
            inst.witness = Witness{s.rel[d].a, f->head};
            c.add(Sequent{s}, inst);
          }
    }
    // tra over composable pairs
    if (rules.count(RuleId::tra))
      for (std::size_t e2 = 0; e2 < s.rel.size(); ++e2)
        if (s.rel[e2].is_le() && s.rel[e2].a == edge.b)
          c.add(Sequent{s}, mk(RuleId::tra, {SeqRef::rel(e), SeqRef::rel(e2)}));
    // nd / cd
    for (std::size_t d = 0; d < s.rel.size(); ++d) {
      if (s.rel[d].is_le()) continue;
      if (rules.count(RuleId::nd) && s.rel[d].b == edge.a)
        c.add(Sequent{s}, mk(RuleId::nd, {SeqRef::rel(e), SeqRef::rel(d)}));
      if (rules.count(RuleId::cd) && s.rel[d].b == edge.b)
        c.add(Sequent{s}, mk(RuleId::cd, {SeqRef::rel(e), SeqRef::rel(d)}));
    }
  }

  for (std::size_t i = 0; i < s.ante.size(); ++i) {
    const auto& [w, f] = s.ante[i];
    if (f->kind == Formula::Kind::Bot && allowed(RuleId::bot_l))
      c.add(Sequent{s}, mk(RuleId::bot_l, {SeqRef::ante(i)}));
    if (f->kind == Formula::Kind::Atom)
      for (std::size_t j = 0; j < s.succ.size(); ++j)
        if (s.succ[j].first == w && equal(s.succ[j].second, f)) {
          if (f->args.empty() && rules.count(RuleId::id_star))
            c.add(Sequent{s}, mk(RuleId::id_star, {SeqRef::ante(i), SeqRef::succ(j)}));
          if (rules.count(RuleId::id_q_n))
            c.add(Sequent{s}, mk(RuleId::id_q_n, {SeqRef::ante(i), SeqRef::succ(j)}));
          if (rules.count(RuleId::id_q_c))
            c.add(Sequent{s}, mk(RuleId::id_q_c, {SeqRef::ante(i), SeqRef::succ(j)}));
        }
    if (f->kind == Formula::Kind::And && rules.count(RuleId::and_l))
      c.add(Sequent{s}, mk(RuleId::and_l, {SeqRef::ante(i)}));
    if (f->kind == Formula::Kind::Or && rules.count(RuleId::or_l))
      c.add(Sequent{s}, mk(RuleId::or_l, {SeqRef::ante(i)}));
    if (as_negation(f) && rules.count(RuleId::neg_l))
      c.add(Sequent{s}, mk(RuleId::neg_l, {SeqRef::ante(i)}));
    if (f->kind == Formula::Kind::Imp && rules.count(RuleId::imp_l_star))
      c.add(Sequent{s}, mk(RuleId::imp_l_star, {SeqRef::ante(i)}));
    if (f->kind == Formula::Kind::Exists && rules.count(RuleId::exists_l)) {
      auto inst = mk(RuleId::exists_l, {SeqRef::ante(i)});
      inst.eigen = {fresh_a};
      inst.witness = Witness{fresh_a, f->head};
      c.add(Sequent{s}, inst);
    }
    if (f->kind == Formula::Kind::Forall)
      for (std::size_t d = 0; d < s.rel.size(); ++d) {
        if (s.rel[d].is_le()) continue;
        for (RuleId r : {RuleId::forall_l_n, RuleId::forall_l_c})
          if (rules.count(r)) {
            auto inst = mk(r, {SeqRef::rel(d), SeqRef::ante(i)});
            inst.witness = Witness{s.rel[d].a, f->head};
            c.add(Sequent{s}, inst);
          }
      }
    if (f->kind == Formula::Kind::Forall)
      for (RuleId r : {RuleId::forall_l_in, RuleId::forall_l_ic})
        if (rules.count(r))
          for (const auto& v : labels) {
            auto inst = mk(r, {SeqRef::ante(i), SeqRef::label_arg(v)});
            inst.eigen = {fresh_a};
            inst.witness = Witness{fresh_a, f->head};
            c.add(Sequent{s}, inst);
          }
  }

  for (std::size_t j = 0; j < s.succ.size(); ++j) {
    const auto& [w, f] = s.succ[j];
    if (f->kind == Formula::Kind::Or && rules.count(RuleId::or_r))
      c.add(Sequent{s}, mk(RuleId::or_r, {SeqRef::succ(j)}));
    if (f->kind == Formula::Kind::And && rules.count(RuleId::and_r))
      c.add(Sequent{s}, mk(RuleId::and_r, {SeqRef::succ(j)}));
    if (f->kind == Formula::Kind::Imp && rules.count(RuleId::imp_r)) {
      auto inst = mk(RuleId::imp_r, {SeqRef::succ(j)});
      inst.eigen = {fresh_l};
      c.add(Sequent{s}, inst);
    }
    if (as_negation(f) && rules.count(RuleId::neg_r)) {
      auto inst = mk(RuleId::neg_r, {SeqRef::succ(j)});
      inst.eigen = {fresh_l};
      c.add(Sequent{s}, inst);
    }
    if (f->kind == Formula::Kind::Forall && rules.count(RuleId::forall_r)) {
      auto inst = mk(RuleId::forall_r, {SeqRef::succ(j)});
      inst.eigen = {fresh_l, fresh_a};
      inst.witness = Witness{fresh_a, f->head};
      c.add(Sequent{s}, inst);
    }
    if (f->kind == Formula::Kind::Forall && rules.count(RuleId::forall_r_c)) {
      auto inst = mk(RuleId::forall_r_c, {SeqRef::succ(j)});
      inst.eigen = {fresh_a};
      inst.witness = Witness{fresh_a, f->head};
      c.add(Sequent{s}, inst);
    }
    if (f->kind == Formula::Kind::Exists) {
      for (std::size_t d = 0; d < s.rel.size(); ++d) {
        if (s.rel[d].is_le()) continue;
        for (RuleId r : {RuleId::exists_r, RuleId::exists_r_n, RuleId::exists_r_c})
          if (rules.count(r)) {
            auto inst = mk(r, {SeqRef::succ(j), SeqRef::rel(d)});
            inst.witness = Witness{s.rel[d].a, f->head};
            c.add(Sequent{s}, inst);
          }
      }
      for (RuleId r : {RuleId::exists_r_in, RuleId::exists_r_ic})
        if (rules.count(r))
          for (const auto& v : labels) {
            auto inst = mk(r, {SeqRef::succ(j), SeqRef::label_arg(v)});
            inst.eigen = {fresh_a};
            inst.witness = Witness{fresh_a, f->head};
            c.add(Sequent{s}, inst);
          }
    }
  }

  if (rules.count(RuleId::ref))
    for (const auto& w : labels) c.add(Sequent{s}, mk(RuleId::ref, {SeqRef::label_arg(w)}));
  if (rules.count(RuleId::ihd))
    for (const auto& w : labels) {
      auto inst = mk(RuleId::ihd, {SeqRef::label_arg(w)});
      inst.eigen = {fresh_a};
      c.add(Sequent{s}, inst);
    }
}

}  // namespace

std::vector<BackwardApplication> backward_applications(const Calculus& c, const Sequent& s) {
  Collector col{c, {}};
  if (std::holds_alternative<NestedSequent>(s))
    nested_apps(c, std::get<NestedSequent>(s), col);
  else
    labelled_apps(c, std::get<LabelledSequent>(s), col);
  return std::move(col.out);
}

}  // namespace iproof
