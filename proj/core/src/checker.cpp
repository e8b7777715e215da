#include "iproof/checker.hpp"

#include <algorithm>

#include "iproof/errors.hpp"

namespace iproof {

std::size_t height(const Derivation& d) {
  std::size_t h = 0;
  for (const auto& p : d.premises) h = std::max(h, height(p));
  return h + 1;
}

std::set<RuleId> rules_used(const Derivation& d) {
  std::set<RuleId> out{d.inst.rule};
  for (const auto& p : d.premises)
    for (RuleId r : rules_used(p)) out.insert(r);
  return out;
}

std::string to_string(const Sequent& s) {
  if (std::holds_alternative<LabelledSequent>(s)) return to_string(std::get<LabelledSequent>(s));
  return to_string(std::get<NestedSequent>(s));
}

std::string to_string(const StepError& e) {
  switch (e.kind) {
    case StepError::Kind::RuleNotInCalculus: return "RuleNotInCalculus: " + e.detail;
    case StepError::Kind::SchemaMismatch: return "SchemaMismatch: " + e.detail;
    case StepError::Kind::SideConditionViolated: return "SideConditionViolated: " + e.detail;
    case StepError::Kind::EigenvariableClash: return "EigenvariableClash: " + e.detail;
    case StepError::Kind::MissingPrincipalCopy: return "MissingPrincipalCopy: " + e.detail;
    case StepError::Kind::BadInstance: return "BadInstance: " + e.detail;
  }
  return e.detail;
}

namespace {

[[noreturn]] void fail(StepError::Kind k, const std::string& detail) {
  throw CheckFailure(StepError{k, detail});
}

// ---------- labelled helpers ----------

const RelAtom& rel_ref(const LabelledSequent& c, const RuleInstance& i, std::size_t k) {
  if (k >= i.principal.size() || i.principal[k].kind != SeqRef::Kind::Rel)
    fail(StepError::Kind::BadInstance, "principal[" + std::to_string(k) + "] must be a rel ref");
  std::size_t idx = i.principal[k].index;
  if (idx >= c.rel.size()) fail(StepError::Kind::BadInstance, "rel index out of range");
  return c.rel[idx];
}

const LabelledFormula& ante_ref(const LabelledSequent& c, const RuleInstance& i, std::size_t k) {
  if (k >= i.principal.size() || i.principal[k].kind != SeqRef::Kind::Ante)
    fail(StepError::Kind::BadInstance, "principal[" + std::to_string(k) + "] must be an ante ref");
  std::size_t idx = i.principal[k].index;
  if (idx >= c.ante.size()) fail(StepError::Kind::BadInstance, "ante index out of range");
  return c.ante[idx];
}

const LabelledFormula& succ_ref(const LabelledSequent& c, const RuleInstance& i, std::size_t k) {
  if (k >= i.principal.size() || i.principal[k].kind != SeqRef::Kind::Succ)
    fail(StepError::Kind::BadInstance, "principal[" + std::to_string(k) + "] must be a succ ref");
  std::size_t idx = i.principal[k].index;
  if (idx >= c.succ.size()) fail(StepError::Kind::BadInstance, "succ index out of range");
  return c.succ[idx];
}

std::string label_arg(const RuleInstance& i, std::size_t k) {
  if (k >= i.principal.size() || i.principal[k].kind != SeqRef::Kind::LabelArg)
    fail(StepError::Kind::BadInstance, "principal[" + std::to_string(k) + "] must be a label");
  return i.principal[k].label;
}

const Witness& witness_of(const RuleInstance& i) {
  if (!i.witness) fail(StepError::Kind::BadInstance, "rule needs a witness");
  return *i.witness;
}

std::string eigen_of(const RuleInstance& i, std::size_t k) {
  if (k >= i.eigen.size()) fail(StepError::Kind::BadInstance, "rule needs an eigenvariable");
  return i.eigen[k];
}

void need_fresh_label(const LabelledSequent& c, const std::string& v) {
  if (labels_of(c).count(v))
    fail(StepError::Kind::EigenvariableClash, "label '" + v + "' occurs in the conclusion");
}

void need_fresh_param(const LabelledSequent& c, const std::string& a) {
  if (parameters_of(c).count(a))
    fail(StepError::Kind::EigenvariableClash, "parameter '" + a + "' occurs in the conclusion");
}

void need_path(const LabelledSequent& c, const Label& from, const Label& to, PathMode mode,
               const std::string& which) {
  if (!path_exists(c.rel, from, to, mode))
    fail(StepError::Kind::SideConditionViolated,
         which + ": no " + (mode == PathMode::Directed ? "directed" : "undirected") + " path " +
             from + " ~> " + to);
}

FormulaPtr atom_formula(const LabelledFormula& lf, bool prop_only, const std::string& rule) {
  const FormulaPtr& f = lf.second;
  if (f->kind != Formula::Kind::Atom)
    fail(StepError::Kind::SchemaMismatch, rule + ": principal formula is not atomic");
  if (prop_only && !f->args.empty())
    fail(StepError::Kind::SchemaMismatch, rule + ": principal atom must be propositional");
  return f;
}

FormulaPtr neg_body(const LabelledFormula& lf, const std::string& rule) {
  auto a = as_negation(lf.second);
  if (!a) fail(StepError::Kind::SchemaMismatch, rule + ": principal formula is not a negation");
  return a;
}

FormulaPtr binary(const LabelledFormula& lf, Formula::Kind k, const std::string& rule) {
  if (lf.second->kind != k)
    fail(StepError::Kind::SchemaMismatch, rule + ": principal formula has the wrong connective");
  return lf.second;
}

// Instantiates the body of a quantified principal formula with the witness.
FormulaPtr instance_of(const FormulaPtr& q, Formula::Kind k, const Witness& w, const std::string& rule) {
  if (q->kind != k) fail(StepError::Kind::SchemaMismatch, rule + ": principal is not the right quantifier");
  if (q->head != w.var)
    fail(StepError::Kind::BadInstance, rule + ": witness variable does not match the binder");
  return subst_var(q->lhs, w.var, Term::param(w.param));
}

LabelledSequent minus_ante(LabelledSequent c, std::size_t i) {
  c.ante.erase(c.ante.begin() + static_cast<std::ptrdiff_t>(i));
  return c;
}

LabelledSequent minus_succ(LabelledSequent c, std::size_t i) {
  c.succ.erase(c.succ.begin() + static_cast<std::ptrdiff_t>(i));
  return c;
}

std::vector<LabelledSequent> labelled_premises(const LabelledSequent& c, const RuleInstance& i) {
  using K = Formula::Kind;
  switch (i.rule) {
    case RuleId::id: {
      const RelAtom& e = rel_ref(c, i, 0);
      if (!e.is_le()) fail(StepError::Kind::BadInstance, "id: first principal must be a <=-atom");
      const auto& [w, pf] = ante_ref(c, i, 1);
      const auto& [v, qf] = succ_ref(c, i, 2);
      atom_formula({w, pf}, true, "id");
      if (w != e.a || v != e.b)
        fail(StepError::Kind::SchemaMismatch, "id: labels do not match the relational atom");
      if (!equal(pf, qf)) fail(StepError::Kind::SchemaMismatch, "id: the two atoms differ");
      return {};
    }
    case RuleId::id_q: {
      const RelAtom& e = rel_ref(c, i, 0);
      if (!e.is_le()) fail(StepError::Kind::BadInstance, "id_q: first principal must be a <=-atom");
      const auto& [w, pf] = ante_ref(c, i, 1);
      const auto& [v, qf] = succ_ref(c, i, 2);
      atom_formula({w, pf}, false, "id_q");
      if (w != e.a || v != e.b)
        fail(StepError::Kind::SchemaMismatch, "id_q: labels do not match the relational atom");
      if (!equal(pf, qf)) fail(StepError::Kind::SchemaMismatch, "id_q: the two atoms differ");
      for (const auto& p : free_parameters(pf)) {
        bool found = false;
        for (const auto& r : c.rel)
          if (!r.is_le() && r.a == p && r.b == w) found = true;
        if (!found)
          fail(StepError::Kind::SideConditionViolated, "id_q: missing domain atom #" + p + " in D(" + w + ")");
      }
      return {};
    }
    case RuleId::id_star: {
      const auto& [w, pf] = ante_ref(c, i, 0);
      const auto& [v, qf] = succ_ref(c, i, 1);
      atom_formula({w, pf}, true, "id_star");
      if (w != v) fail(StepError::Kind::SchemaMismatch, "id_star: labels differ");
      if (!equal(pf, qf)) fail(StepError::Kind::SchemaMismatch, "id_star: the two atoms differ");
      return {};
    }
    case RuleId::id_q_n:
    case RuleId::id_q_c: {
      PathMode mode = i.rule == RuleId::id_q_n ? PathMode::Directed : PathMode::Undirected;
      const auto& [w, pf] = ante_ref(c, i, 0);
      const auto& [v, qf] = succ_ref(c, i, 1);
      atom_formula({w, pf}, false, rule_name(i.rule));
      if (w != v) fail(StepError::Kind::SchemaMismatch, rule_name(i.rule) + ": labels differ");
      if (!equal(pf, qf)) fail(StepError::Kind::SchemaMismatch, rule_name(i.rule) + ": the two atoms differ");
      for (const auto& p : free_parameters(pf)) {
        bool found = false;
        for (const auto& r : c.rel)
          if (!r.is_le() && r.a == p && path_exists(c.rel, r.b, w, mode)) found = true;
        if (!found)
          fail(StepError::Kind::SideConditionViolated,
               rule_name(i.rule) + ": no domain atom for #" + p + " with a path to " + w);
      }
      return {};
    }
    case RuleId::bot_l: {
      const auto& [w, f] = ante_ref(c, i, 0);
      if (f->kind != K::Bot) fail(StepError::Kind::SchemaMismatch, "bot_l: principal is not bot");
      return {};
    }
    case RuleId::and_l: {
      const auto& [w, f] = ante_ref(c, i, 0);
      binary({w, f}, K::And, "and_l");
      LabelledSequent p = minus_ante(c, i.principal[0].index);
      p.ante.emplace_back(w, f->lhs);
      p.ante.emplace_back(w, f->rhs);
      return {p};
    }
    case RuleId::or_r: {
      const auto& [w, f] = succ_ref(c, i, 0);
      binary({w, f}, K::Or, "or_r");
      LabelledSequent p = minus_succ(c, i.principal[0].index);
      p.succ.emplace_back(w, f->lhs);
      p.succ.emplace_back(w, f->rhs);
      return {p};
    }
    case RuleId::and_r: {
      const auto& [w, f] = succ_ref(c, i, 0);
      binary({w, f}, K::And, "and_r");
      LabelledSequent p1 = minus_succ(c, i.principal[0].index);
      LabelledSequent p2 = p1;
      p1.succ.emplace_back(w, f->lhs);
      p2.succ.emplace_back(w, f->rhs);
      return {p1, p2};
    }
    case RuleId::or_l: {
      const auto& [w, f] = ante_ref(c, i, 0);
      binary({w, f}, K::Or, "or_l");
      LabelledSequent p1 = minus_ante(c, i.principal[0].index);
      LabelledSequent p2 = p1;
      p1.ante.emplace_back(w, f->lhs);
      p2.ante.emplace_back(w, f->rhs);
      return {p1, p2};
    }
    case RuleId::imp_l: {
      const RelAtom& e = rel_ref(c, i, 0);
      if (!e.is_le()) fail(StepError::Kind::BadInstance, "imp_l: first principal must be a <=-atom");
      const auto& [w, f] = ante_ref(c, i, 1);
      binary({w, f}, K::Imp, "imp_l");
      if (w != e.a) fail(StepError::Kind::SchemaMismatch, "imp_l: principal label must source the edge");
      LabelledSequent p1 = c, p2 = c;
      p1.succ.emplace_back(e.b, f->lhs);
      p2.ante.emplace_back(e.b, f->rhs);
      return {p1, p2};
    }
    case RuleId::imp_l_star: {
      const auto& [w, f] = ante_ref(c, i, 0);
      binary({w, f}, K::Imp, "imp_l_star");
      LabelledSequent p1 = c, p2 = c;
      p1.succ.emplace_back(w, f->lhs);
      p2.ante.emplace_back(w, f->rhs);
      return {p1, p2};
    }
    case RuleId::imp_r: {
      const auto& [w, f] = succ_ref(c, i, 0);
      binary({w, f}, K::Imp, "imp_r");
      std::string v = eigen_of(i, 0);
      need_fresh_label(c, v);
      LabelledSequent p = minus_succ(c, i.principal[0].index);
      p.rel.push_back(RelAtom::le(w, v));
      p.ante.emplace_back(v, f->lhs);
      p.succ.emplace_back(v, f->rhs);
      return {p};
    }
    case RuleId::neg_l: {
      const auto& [w, f] = ante_ref(c, i, 0);
      auto a = neg_body({w, f}, "neg_l");
      LabelledSequent p = c;
      p.succ.emplace_back(w, a);
      return {p};
    }
    case RuleId::neg_r: {
      const auto& [w, f] = succ_ref(c, i, 0);
      auto a = neg_body({w, f}, "neg_r");
      std::string v = eigen_of(i, 0);
      need_fresh_label(c, v);
      LabelledSequent p = minus_succ(c, i.principal[0].index);
      p.rel.push_back(RelAtom::le(w, v));
      p.ante.emplace_back(v, a);
      return {p};
    }
    case RuleId::ref: {
      std::string w = label_arg(i, 0);
      LabelledSequent p = c;
      p.rel.push_back(RelAtom::le(w, w));
      return {p};
    }
    case RuleId::tra: {
      const RelAtom& e1 = rel_ref(c, i, 0);
      const RelAtom& e2 = rel_ref(c, i, 1);
      if (!e1.is_le() || !e2.is_le() || e1.b != e2.a)
        fail(StepError::Kind::SchemaMismatch, "tra: principal atoms do not compose");
      LabelledSequent p = c;
      p.rel.push_back(RelAtom::le(e1.a, e2.b));
      return {p};
    }
    case RuleId::lift: {
      const RelAtom& e = rel_ref(c, i, 0);
      if (!e.is_le()) fail(StepError::Kind::BadInstance, "lift: first principal must be a <=-atom");
      const auto& [w, f] = ante_ref(c, i, 1);
      if (w != e.a) fail(StepError::Kind::SchemaMismatch, "lift: principal label must source the edge");
      LabelledSequent p = c;
      p.ante.emplace_back(e.b, f);
      return {p};
    }
    case RuleId::ihd: {
      std::string u = label_arg(i, 0);
      std::string a = eigen_of(i, 0);
      need_fresh_param(c, a);
      LabelledSequent p = c;
      p.rel.push_back(RelAtom::dom(a, u));
      return {p};
    }
    case RuleId::exists_l: {
      const auto& [w, f] = ante_ref(c, i, 0);
      const Witness& wit = witness_of(i);
      auto inst = instance_of(f, K::Exists, wit, "exists_l");
      if (eigen_of(i, 0) != wit.param)
        fail(StepError::Kind::BadInstance, "exists_l: eigen and witness disagree");
      need_fresh_param(c, wit.param);
      LabelledSequent p = minus_ante(c, i.principal[0].index);
      p.rel.push_back(RelAtom::dom(wit.param, w));
      p.ante.emplace_back(w, inst);
      return {p};
    }
    case RuleId::exists_r:
    case RuleId::exists_r_n:
    case RuleId::exists_r_c: {
      const auto& [w, f] = succ_ref(c, i, 0);
      const RelAtom& d = rel_ref(c, i, 1);
      if (d.is_le()) fail(StepError::Kind::BadInstance, rule_name(i.rule) + ": second principal must be a domain atom");
      const Witness& wit = witness_of(i);
      if (d.a != wit.param)
        fail(StepError::Kind::BadInstance, rule_name(i.rule) + ": domain atom does not carry the witness");
      auto inst = instance_of(f, K::Exists, wit, rule_name(i.rule));
      if (i.rule == RuleId::exists_r) {
        if (d.b != w)
          fail(StepError::Kind::SideConditionViolated, "exists_r: domain atom must sit at the principal label");
      } else {
        need_path(c, d.b, w, i.rule == RuleId::exists_r_n ? PathMode::Directed : PathMode::Undirected,
                  rule_name(i.rule));
      }
      LabelledSequent p = c;
      p.succ.emplace_back(w, inst);
      return {p};
    }
    case RuleId::exists_r_in:
    case RuleId::exists_r_ic: {
      const auto& [w, f] = succ_ref(c, i, 0);
      std::string v = label_arg(i, 1);
      const Witness& wit = witness_of(i);
      if (eigen_of(i, 0) != wit.param)
        fail(StepError::Kind::BadInstance, rule_name(i.rule) + ": eigen and witness disagree");
      need_fresh_param(c, wit.param);
      auto inst = instance_of(f, K::Exists, wit, rule_name(i.rule));
      need_path(c, v, w, i.rule == RuleId::exists_r_in ? PathMode::Directed : PathMode::Undirected,
                rule_name(i.rule));
      LabelledSequent p = c;
      p.rel.push_back(RelAtom::dom(wit.param, v));
      p.succ.emplace_back(w, inst);
      return {p};
    }
    case RuleId::forall_l: {
      const RelAtom& e = rel_ref(c, i, 0);
      const RelAtom& d = rel_ref(c, i, 1);
      const auto& [w, f] = ante_ref(c, i, 2);
      if (!e.is_le() || d.is_le()) fail(StepError::Kind::BadInstance, "forall_l: principal atoms malformed");
      const Witness& wit = witness_of(i);
      if (w != e.a || d.b != e.b || d.a != wit.param)
        fail(StepError::Kind::SchemaMismatch, "forall_l: edge, domain atom, and principal do not fit");
      auto inst = instance_of(f, K::Forall, wit, "forall_l");
      LabelledSequent p = c;
      p.ante.emplace_back(e.b, inst);
      return {p};
    }
    case RuleId::forall_l_n:
    case RuleId::forall_l_c: {
      const RelAtom& d = rel_ref(c, i, 0);
      const auto& [w, f] = ante_ref(c, i, 1);
      if (d.is_le()) fail(StepError::Kind::BadInstance, rule_name(i.rule) + ": first principal must be a domain atom");
      const Witness& wit = witness_of(i);
      if (d.a != wit.param)
        fail(StepError::Kind::BadInstance, rule_name(i.rule) + ": domain atom does not carry the witness");
      auto inst = instance_of(f, K::Forall, wit, rule_name(i.rule));
      need_path(c, d.b, w, i.rule == RuleId::forall_l_n ? PathMode::Directed : PathMode::Undirected,
                rule_name(i.rule));
      LabelledSequent p = c;
      p.ante.emplace_back(w, inst);
      return {p};
    }
    case RuleId::forall_l_in:
    case RuleId::forall_l_ic: {
      const auto& [w, f] = ante_ref(c, i, 0);
      std::string v = label_arg(i, 1);
      const Witness& wit = witness_of(i);
      if (eigen_of(i, 0) != wit.param)
        fail(StepError::Kind::BadInstance, rule_name(i.rule) + ": eigen and witness disagree");
      need_fresh_param(c, wit.param);
      auto inst = instance_of(f, K::Forall, wit, rule_name(i.rule));
      need_path(c, v, w, i.rule == RuleId::forall_l_in ? PathMode::Directed : PathMode::Undirected,
                rule_name(i.rule));
      LabelledSequent p = c;
      p.rel.push_back(RelAtom::dom(wit.param, v));
      p.ante.emplace_back(w, inst);
      return {p};
    }
    case RuleId::forall_r: {
      const auto& [w, f] = succ_ref(c, i, 0);
      std::string v = eigen_of(i, 0);
      std::string a = eigen_of(i, 1);
      need_fresh_label(c, v);
      need_fresh_param(c, a);
      const Witness& wit = witness_of(i);
      if (wit.param != a) fail(StepError::Kind::BadInstance, "forall_r: eigen and witness disagree");
      auto inst = instance_of(f, K::Forall, wit, "forall_r");
      LabelledSequent p = minus_succ(c, i.principal[0].index);
      p.rel.push_back(RelAtom::le(w, v));
      p.rel.push_back(RelAtom::dom(a, v));
      p.succ.emplace_back(v, inst);
      return {p};
    }
    case RuleId::forall_r_c: {
      const auto& [w, f] = succ_ref(c, i, 0);
      std::string a = eigen_of(i, 0);
      need_fresh_param(c, a);
      const Witness& wit = witness_of(i);
      if (wit.param != a) fail(StepError::Kind::BadInstance, "forall_r_c: eigen and witness disagree");
      auto inst = instance_of(f, K::Forall, wit, "forall_r_c");
      LabelledSequent p = minus_succ(c, i.principal[0].index);
      p.rel.push_back(RelAtom::dom(a, w));
      p.succ.emplace_back(w, inst);
      return {p};
    }
    case RuleId::nd:
    case RuleId::cd: {
      const RelAtom& e = rel_ref(c, i, 0);
      const RelAtom& d = rel_ref(c, i, 1);
      if (!e.is_le() || d.is_le()) fail(StepError::Kind::BadInstance, rule_name(i.rule) + ": principal atoms malformed");
      if (i.rule == RuleId::nd) {
        if (d.b != e.a) fail(StepError::Kind::SchemaMismatch, "nd: domain atom must sit at the edge source");
        LabelledSequent p = c;
        p.rel.push_back(RelAtom::dom(d.a, e.b));
        return {p};
      }
      if (d.b != e.b) fail(StepError::Kind::SchemaMismatch, "cd: domain atom must sit at the edge target");
      LabelledSequent p = c;
      p.rel.push_back(RelAtom::dom(d.a, e.a));
      return {p};
    }
    case RuleId::wk: {
      LabelledSequent p = c;
      std::vector<std::size_t> rels, antes, succs;
      for (const auto& r : i.principal) {
        switch (r.kind) {
          case SeqRef::Kind::Rel: rels.push_back(r.index); break;
          case SeqRef::Kind::Ante: antes.push_back(r.index); break;
          case SeqRef::Kind::Succ: succs.push_back(r.index); break;
          default: fail(StepError::Kind::BadInstance, "wk: principal refs must point at the added items");
        }
      }
      auto drop = [](auto& vec, std::vector<std::size_t> idx) {
        std::sort(idx.begin(), idx.end());
        if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
          fail(StepError::Kind::BadInstance, "wk: duplicate principal ref");
        for (auto it = idx.rbegin(); it != idx.rend(); ++it) {
          if (*it >= vec.size()) fail(StepError::Kind::BadInstance, "wk: index out of range");
          vec.erase(vec.begin() + static_cast<std::ptrdiff_t>(*it));
        }
      };
      drop(p.rel, rels);
      drop(p.ante, antes);
      drop(p.succ, succs);
      return {p};
    }
    case RuleId::ctr_rel: {
      const RelAtom& r = rel_ref(c, i, 0);
      LabelledSequent p = c;
      p.rel.push_back(r);
      return {p};
    }
    case RuleId::ctr_l: {
      const auto& lf = ante_ref(c, i, 0);
      LabelledSequent p = c;
      p.ante.push_back(lf);
      return {p};
    }
    case RuleId::ctr_r: {
      const auto& lf = succ_ref(c, i, 0);
      LabelledSequent p = c;
      p.succ.push_back(lf);
      return {p};
    }
    case RuleId::cut: {
      if (!i.cut) fail(StepError::Kind::BadInstance, "cut: missing cut formula");
      LabelledSequent p1 = c, p2 = c;
      p1.succ.emplace_back(i.cut->at, i.cut->formula);
      p2.ante.emplace_back(i.cut->at, i.cut->formula);
      return {p1, p2};
    }
    case RuleId::lsub:
    case RuleId::psub:
      fail(StepError::Kind::BadInstance, "substitution premises are checked against the stored premise");
    default:
      fail(StepError::Kind::BadInstance,
           "rule " + rule_name(i.rule) + " does not apply to labelled sequents");
  }
}

// ---------- nested helpers ----------

std::string parent_pos(const std::string& pos) {
  auto k = pos.rfind('.');
  return k == std::string::npos ? std::string() : pos.substr(0, k);
}

std::size_t child_index(const std::string& pos) {
  auto k = pos.rfind('.');
  std::size_t idx = 0;
  for (std::size_t i = k + 1; i < pos.size(); ++i) idx = idx * 10 + static_cast<std::size_t>(pos[i] - '0');
  return idx;
}

NestedSequent& comp_at(NestedSequent& s, const std::string& pos) {
  auto* p = component_at(s, pos);
  if (!p) fail(StepError::Kind::BadInstance, "no component at position '" + pos + "'");
  return *p;
}

const FormulaPtr& n_ante_ref(const NestedSequent& c, const RuleInstance& i, std::size_t k) {
  if (k >= i.principal.size() || i.principal[k].kind != SeqRef::Kind::Ante)
    fail(StepError::Kind::BadInstance, "principal[" + std::to_string(k) + "] must be an ante ref");
  const auto* comp = component_at(c, i.principal[k].pos);
  if (!comp || i.principal[k].index >= comp->ante.size())
    fail(StepError::Kind::BadInstance, "ante ref out of range");
  return comp->ante[i.principal[k].index];
}

const FormulaPtr& n_succ_ref(const NestedSequent& c, const RuleInstance& i, std::size_t k) {
  if (k >= i.principal.size() || i.principal[k].kind != SeqRef::Kind::Succ)
    fail(StepError::Kind::BadInstance, "principal[" + std::to_string(k) + "] must be a succ ref");
  const auto* comp = component_at(c, i.principal[k].pos);
  if (!comp || i.principal[k].index >= comp->succ.size())
    fail(StepError::Kind::BadInstance, "succ ref out of range");
  return comp->succ[i.principal[k].index];
}

std::string child_ref(const RuleInstance& i, std::size_t k) {
  if (k >= i.principal.size() || i.principal[k].kind != SeqRef::Kind::Child)
    fail(StepError::Kind::BadInstance, "principal[" + std::to_string(k) + "] must be a child ref");
  return i.principal[k].pos;
}

void n_need_fresh(const NestedSequent& c, const std::string& a) {
  if (parameters_of(c).count(a))
    fail(StepError::Kind::EigenvariableClash, "parameter '" + a + "' occurs in the conclusion");
}

// The availability-or-eigenvariable side condition carried by the
// non-constant-domain nested quantifier rules.
void n_need_witness_ok(const Calculus& cal, const NestedSequent& c, const std::string& pos,
                       const std::string& a) {
  if (cal.name != CalculusName::NIntQ) return;
  if (parameters_of(c).count(a) == 0) return;  // eigenvariable
  if (available_parameters(c, pos).count(a)) return;
  fail(StepError::Kind::SideConditionViolated,
       "parameter '" + a + "' is neither available at " + pos + " nor an eigenvariable");
}

std::vector<NestedSequent> nested_premises(const Calculus& cal, const NestedSequent& c,
                                           const RuleInstance& i) {
  using K = Formula::Kind;
  auto with = [&](const std::string& pos, auto edit) {
    NestedSequent p = c;
    edit(comp_at(p, pos));
    return p;
  };
  switch (i.rule) {
    case RuleId::n_id:
    case RuleId::n_id_q: {
      const auto& a = n_ante_ref(c, i, 0);
      const auto& s = n_succ_ref(c, i, 1);
      if (i.principal[0].pos != i.principal[1].pos)
        fail(StepError::Kind::SchemaMismatch, rule_name(i.rule) + ": the two atoms sit in different components");
      if (a->kind != K::Atom) fail(StepError::Kind::SchemaMismatch, rule_name(i.rule) + ": principal is not atomic");
      if (i.rule == RuleId::n_id && !a->args.empty())
        fail(StepError::Kind::SchemaMismatch, "n_id: principal atom must be propositional");
      if (!equal(a, s)) fail(StepError::Kind::SchemaMismatch, rule_name(i.rule) + ": the two atoms differ");
      return {};
    }
    case RuleId::n_bot_l: {
      const auto& a = n_ante_ref(c, i, 0);
      if (a->kind != K::Bot) fail(StepError::Kind::SchemaMismatch, "n_bot_l: principal is not bot");
      return {};
    }
    case RuleId::n_and_l: {
      const auto& f = n_ante_ref(c, i, 0);
      if (f->kind != K::And) fail(StepError::Kind::SchemaMismatch, "n_and_l: not a conjunction");
      std::size_t idx = i.principal[0].index;
      return {with(i.principal[0].pos, [&](NestedSequent& n) {
        n.ante.erase(n.ante.begin() + static_cast<std::ptrdiff_t>(idx));
        n.ante.push_back(f->lhs);
        n.ante.push_back(f->rhs);
      })};
    }
    case RuleId::n_or_r: {
      const auto& f = n_succ_ref(c, i, 0);
      if (f->kind != K::Or) fail(StepError::Kind::SchemaMismatch, "n_or_r: not a disjunction");
      std::size_t idx = i.principal[0].index;
      return {with(i.principal[0].pos, [&](NestedSequent& n) {
        n.succ.erase(n.succ.begin() + static_cast<std::ptrdiff_t>(idx));
        n.succ.push_back(f->lhs);
        n.succ.push_back(f->rhs);
      })};
    }
    case RuleId::n_and_r: {
      const auto& f = n_succ_ref(c, i, 0);
      if (f->kind != K::And) fail(StepError::Kind::SchemaMismatch, "n_and_r: not a conjunction");
      std::size_t idx = i.principal[0].index;
      auto mk = [&](FormulaPtr g) {
        return with(i.principal[0].pos, [&](NestedSequent& n) {
          n.succ.erase(n.succ.begin() + static_cast<std::ptrdiff_t>(idx));
          n.succ.push_back(g);
        });
      };
      return {mk(f->lhs), mk(f->rhs)};
    }
    case RuleId::n_or_l: {
      const auto& f = n_ante_ref(c, i, 0);
      if (f->kind != K::Or) fail(StepError::Kind::SchemaMismatch, "n_or_l: not a disjunction");
      std::size_t idx = i.principal[0].index;
      auto mk = [&](FormulaPtr g) {
        return with(i.principal[0].pos, [&](NestedSequent& n) {
          n.ante.erase(n.ante.begin() + static_cast<std::ptrdiff_t>(idx));
          n.ante.push_back(g);
        });
      };
      return {mk(f->lhs), mk(f->rhs)};
    }
    case RuleId::n_neg_l: {
      const auto& f = n_ante_ref(c, i, 0);
      auto a = as_negation(f);
      if (!a) fail(StepError::Kind::SchemaMismatch, "n_neg_l: not a negation");
      return {with(i.principal[0].pos, [&](NestedSequent& n) { n.succ.push_back(a); })};
    }
    case RuleId::n_imp_l: {
      const auto& f = n_ante_ref(c, i, 0);
      if (f->kind != K::Imp) fail(StepError::Kind::SchemaMismatch, "n_imp_l: not an implication");
      auto p1 = with(i.principal[0].pos, [&](NestedSequent& n) { n.succ.push_back(f->lhs); });
      auto p2 = with(i.principal[0].pos, [&](NestedSequent& n) { n.ante.push_back(f->rhs); });
      return {p1, p2};
    }
    case RuleId::n_imp_r:
    case RuleId::n_neg_r:
    case RuleId::n_forall_r_n: {
      std::string cpos = child_ref(i, 1);
      std::string pos = parent_pos(cpos);
      if (pos != i.principal[0].pos)
        fail(StepError::Kind::BadInstance, rule_name(i.rule) + ": new child must sit under the principal component");
      std::size_t k = child_index(cpos);
      const auto& f = n_succ_ref(c, i, 0);
      NestedSequent child;
      if (i.rule == RuleId::n_imp_r) {
        if (f->kind != K::Imp) fail(StepError::Kind::SchemaMismatch, "n_imp_r: not an implication");
        child.ante.push_back(f->lhs);
        child.succ.push_back(f->rhs);
      } else if (i.rule == RuleId::n_neg_r) {
        auto a = as_negation(f);
        if (!a) fail(StepError::Kind::SchemaMismatch, "n_neg_r: not a negation");
        child.ante.push_back(a);
      } else {
        const Witness& wit = witness_of(i);
        if (eigen_of(i, 0) != wit.param)
          fail(StepError::Kind::BadInstance, "n_forall_r_n: eigen and witness disagree");
        n_need_fresh(c, wit.param);
        child.succ.push_back(instance_of(f, K::Forall, wit, "n_forall_r_n"));
      }
      std::size_t idx = i.principal[0].index;
      return {with(pos, [&](NestedSequent& n) {
        n.succ.erase(n.succ.begin() + static_cast<std::ptrdiff_t>(idx));
        if (k > n.children.size()) fail(StepError::Kind::BadInstance, rule_name(i.rule) + ": child index out of range");
        n.children.insert(n.children.begin() + static_cast<std::ptrdiff_t>(k), child);
      })};
    }
    case RuleId::n_lift: {
      const auto& f = n_ante_ref(c, i, 0);
      std::string cpos = child_ref(i, 1);
      if (parent_pos(cpos) != i.principal[0].pos)
        fail(StepError::Kind::BadInstance, "n_lift: target must be a child of the principal component");
      if (!component_at(c, cpos)) fail(StepError::Kind::BadInstance, "n_lift: no such child");
      return {with(cpos, [&](NestedSequent& n) { n.ante.push_back(f); })};
    }
    case RuleId::n_exists_l: {
      const auto& f = n_ante_ref(c, i, 0);
      const Witness& wit = witness_of(i);
      if (eigen_of(i, 0) != wit.param)
        fail(StepError::Kind::BadInstance, "n_exists_l: eigen and witness disagree");
      n_need_fresh(c, wit.param);
      auto inst = instance_of(f, K::Exists, wit, "n_exists_l");
      std::size_t idx = i.principal[0].index;
      return {with(i.principal[0].pos, [&](NestedSequent& n) {
        n.ante.erase(n.ante.begin() + static_cast<std::ptrdiff_t>(idx));
        n.ante.push_back(inst);
      })};
    }
    case RuleId::n_exists_r: {
      const auto& f = n_succ_ref(c, i, 0);
      const Witness& wit = witness_of(i);
      auto inst = instance_of(f, K::Exists, wit, "n_exists_r");
      n_need_witness_ok(cal, c, i.principal[0].pos, wit.param);
      return {with(i.principal[0].pos, [&](NestedSequent& n) { n.succ.push_back(inst); })};
    }
    case RuleId::n_forall_l: {
      const auto& f = n_ante_ref(c, i, 0);
      const Witness& wit = witness_of(i);
      auto inst = instance_of(f, K::Forall, wit, "n_forall_l");
      n_need_witness_ok(cal, c, i.principal[0].pos, wit.param);
      return {with(i.principal[0].pos, [&](NestedSequent& n) { n.ante.push_back(inst); })};
    }
    case RuleId::n_forall_r_c: {
      const auto& f = n_succ_ref(c, i, 0);
      const Witness& wit = witness_of(i);
      if (eigen_of(i, 0) != wit.param)
        fail(StepError::Kind::BadInstance, "n_forall_r_c: eigen and witness disagree");
      n_need_fresh(c, wit.param);
      auto inst = instance_of(f, K::Forall, wit, "n_forall_r_c");
      std::size_t idx = i.principal[0].index;
      return {with(i.principal[0].pos, [&](NestedSequent& n) {
        n.succ.erase(n.succ.begin() + static_cast<std::ptrdiff_t>(idx));
        n.succ.push_back(inst);
      })};
    }
    case RuleId::n_wk_l:
    case RuleId::n_wk_r: {
      bool left = i.rule == RuleId::n_wk_l;
      std::map<std::string, std::vector<std::size_t>> by_pos;
      for (const auto& r : i.principal) {
        if (r.kind != (left ? SeqRef::Kind::Ante : SeqRef::Kind::Succ))
          fail(StepError::Kind::BadInstance, rule_name(i.rule) + ": refs must point at the added formulas");
        by_pos[r.pos].push_back(r.index);
      }
      NestedSequent p = c;
      for (auto& [pos, idx] : by_pos) {
        auto& n = comp_at(p, pos);
        auto& vec = left ? n.ante : n.succ;
        std::sort(idx.begin(), idx.end());
        for (auto it = idx.rbegin(); it != idx.rend(); ++it) {
          if (*it >= vec.size()) fail(StepError::Kind::BadInstance, "weakening index out of range");
          vec.erase(vec.begin() + static_cast<std::ptrdiff_t>(*it));
        }
      }
      return {p};
    }
    case RuleId::n_ctr_l: {
      const auto& f = n_ante_ref(c, i, 0);
      return {with(i.principal[0].pos, [&](NestedSequent& n) { n.ante.push_back(f); })};
    }
    case RuleId::n_ctr_r: {
      const auto& f = n_succ_ref(c, i, 0);
      return {with(i.principal[0].pos, [&](NestedSequent& n) { n.succ.push_back(f); })};
    }
    case RuleId::n_nr: {
      if (!c.ante.empty() || !c.succ.empty() || c.children.size() != 1)
        fail(StepError::Kind::SchemaMismatch, "n_nr: conclusion must be -> [premise]");
      return {c.children[0]};
    }
    case RuleId::n_mrg1: {
      std::string cpos = child_ref(i, 0);
      const auto* kept = component_at(c, cpos);
      if (!kept) fail(StepError::Kind::BadInstance, "n_mrg1: no such child");
      std::size_t k = child_index(cpos);
      return {with(parent_pos(cpos), [&](NestedSequent& n) {
        n.children.insert(n.children.begin() + static_cast<std::ptrdiff_t>(k + 1), *kept);
      })};
    }
    case RuleId::n_mrg2: {
      std::string cpos = child_ref(i, 0);
      std::string pos = parent_pos(cpos);
      std::size_t at = child_index(cpos);
      std::vector<std::size_t> antes, succs, kids;
      for (std::size_t k = 1; k < i.principal.size(); ++k) {
        const auto& r = i.principal[k];
        if (r.kind == SeqRef::Kind::Ante && r.pos == pos) antes.push_back(r.index);
        else if (r.kind == SeqRef::Kind::Succ && r.pos == pos) succs.push_back(r.index);
        else if (r.kind == SeqRef::Kind::Child && parent_pos(r.pos) == pos) kids.push_back(child_index(r.pos));
        else fail(StepError::Kind::BadInstance, "n_mrg2: split refs must point into the merged component");
      }
      return {with(pos, [&](NestedSequent& n) {
        NestedSequent inner;
        auto take = [](auto& vec, std::vector<std::size_t> idx, auto& out) {
          std::sort(idx.begin(), idx.end());
          if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
            fail(StepError::Kind::BadInstance, "n_mrg2: duplicate split ref");
          for (auto i2 : idx) {
            if (i2 >= vec.size()) fail(StepError::Kind::BadInstance, "n_mrg2: split ref out of range");
            out.push_back(vec[i2]);
          }
          for (auto it = idx.rbegin(); it != idx.rend(); ++it)
            vec.erase(vec.begin() + static_cast<std::ptrdiff_t>(*it));
        };
        take(n.ante, antes, inner.ante);
        take(n.succ, succs, inner.succ);
        take(n.children, kids, inner.children);
        if (at > n.children.size()) fail(StepError::Kind::BadInstance, "n_mrg2: child index out of range");
        n.children.insert(n.children.begin() + static_cast<std::ptrdiff_t>(at), inner);
      })};
    }
    case RuleId::n_ew1: {
      std::string cpos = child_ref(i, 0);
      if (!component_at(c, cpos)) fail(StepError::Kind::BadInstance, "n_ew1: no such child");
      std::size_t k = child_index(cpos);
      return {with(parent_pos(cpos), [&](NestedSequent& n) {
        n.children.erase(n.children.begin() + static_cast<std::ptrdiff_t>(k));
      })};
    }
    case RuleId::n_ew2: {
      std::string cpos = child_ref(i, 0);
      const auto* wrap = component_at(c, cpos);
      if (!wrap) fail(StepError::Kind::BadInstance, "n_ew2: no such child");
      if (!wrap->ante.empty() || !wrap->succ.empty() || wrap->children.size() != 1)
        fail(StepError::Kind::SchemaMismatch, "n_ew2: child is not an empty wrapper");
      std::size_t k = child_index(cpos);
      NestedSequent inner = wrap->children[0];
      return {with(parent_pos(cpos), [&](NestedSequent& n) { n.children[k] = inner; })};
    }
    case RuleId::n_lwr: {
      std::string cpos = child_ref(i, 0);
      std::string pos = parent_pos(cpos);
      if (i.principal.size() < 2 || i.principal[1].kind != SeqRef::Kind::Succ ||
          i.principal[1].pos != cpos)
        fail(StepError::Kind::BadInstance, "n_lwr: second ref must name the lowered copy in the child");
      const auto* child = component_at(c, cpos);
      if (!child || i.principal[1].index >= child->succ.size())
        fail(StepError::Kind::BadInstance, "n_lwr: ref out of range");
      FormulaPtr f = child->succ[i.principal[1].index];
      return {with(pos, [&](NestedSequent& n) { n.succ.push_back(f); })};
    }
    case RuleId::n_cut: {
      if (!i.cut) fail(StepError::Kind::BadInstance, "n_cut: missing cut formula");
      auto p1 = with(i.cut->at, [&](NestedSequent& n) { n.succ.push_back(i.cut->formula); });
      auto p2 = with(i.cut->at, [&](NestedSequent& n) { n.ante.push_back(i.cut->formula); });
      return {p1, p2};
    }
    case RuleId::n_psub:
      fail(StepError::Kind::BadInstance, "substitution premises are checked against the stored premise");
    default:
      fail(StepError::Kind::BadInstance,
           "rule " + rule_name(i.rule) + " does not apply to nested sequents");
  }
}

LabelledSequent expand_all(const LabelledSequent& s) {
  LabelledSequent out = s;
  for (auto& [w, f] : out.ante) f = neg_normalize(f, NegMode::Expand);
  for (auto& [w, f] : out.succ) f = neg_normalize(f, NegMode::Expand);
  return out;
}

}  // namespace

std::vector<LabelledSequent> premises_of(const Calculus& c, const LabelledSequent& concl,
                                         const RuleInstance& inst) {
  (void)c;
  return labelled_premises(concl, inst);
}

std::vector<NestedSequent> premises_of(const Calculus& c, const NestedSequent& concl,
                                       const RuleInstance& inst) {
  return nested_premises(c, concl, inst);
}

std::optional<StepError> check_step(const Calculus& c, const Sequent& concl,
                                    const RuleInstance& inst,
                                    const std::vector<Sequent>& premises) {
  if (!rule_allowed(c, inst.rule))
    return StepError{StepError::Kind::RuleNotInCalculus,
                     rule_name(inst.rule) + " is not a rule of " + calculus_name(c.name)};
  if (premises.size() != premise_count(inst.rule))
    return StepError{StepError::Kind::SchemaMismatch,
                     rule_name(inst.rule) + " takes " + std::to_string(premise_count(inst.rule)) +
                         " premise(s), got " + std::to_string(premises.size())};
  bool nested = c.nested();
  if (nested != std::holds_alternative<NestedSequent>(concl) || nested != is_nested_rule(inst.rule))
    return StepError{StepError::Kind::BadInstance, "sequent kind does not match the calculus"};
  for (const auto& p : premises)
    if (std::holds_alternative<NestedSequent>(p) != nested)
      return StepError{StepError::Kind::BadInstance, "premise kind does not match the calculus"};

  try {
    if (inst.rule == RuleId::lsub || inst.rule == RuleId::psub) {
      if (!inst.subst) return StepError{StepError::Kind::BadInstance, "missing substitution"};
      const auto& prem = std::get<LabelledSequent>(premises[0]);
      LabelledSequent expect =
          inst.rule == RuleId::lsub
              ? apply_label_renaming(prem, {{inst.subst->from, inst.subst->to}})
              : apply_param_renaming(prem, std::map<std::string, std::string>{{inst.subst->from, inst.subst->to}});
      if (!multiset_equal(expect, std::get<LabelledSequent>(concl)))
        return StepError{StepError::Kind::SchemaMismatch,
                         rule_name(inst.rule) + ": conclusion is not the substituted premise"};
      return std::nullopt;
    }
    if (inst.rule == RuleId::n_psub) {
      if (!inst.subst) return StepError{StepError::Kind::BadInstance, "missing substitution"};
      auto expect = apply_param_renaming(std::get<NestedSequent>(premises[0]),
                                         std::map<std::string, std::string>{{inst.subst->from, inst.subst->to}});
      if (!equal(expect, std::get<NestedSequent>(concl)))
        return StepError{StepError::Kind::SchemaMismatch,
                         "n_psub: conclusion is not the substituted premise"};
      return std::nullopt;
    }
    if (nested) {
      auto expected = nested_premises(c, std::get<NestedSequent>(concl), inst);
      for (std::size_t k = 0; k < expected.size(); ++k)
        if (!equal(expected[k], std::get<NestedSequent>(premises[k])))
          return StepError{StepError::Kind::SchemaMismatch,
                           rule_name(inst.rule) + ": premise " + std::to_string(k) +
                               " differs from the schema (expected '" + to_string(expected[k]) + "')"};
      return std::nullopt;
    }
    // In the G3 systems negation is definitional, so matching happens on the
    // expanded forms.
    LabelledSequent lc = std::get<LabelledSequent>(concl);
    std::vector<LabelledSequent> lp;
    for (const auto& p : premises) lp.push_back(std::get<LabelledSequent>(p));
    RuleInstance li = inst;
    if (c.g3_family()) {
      lc = expand_all(lc);
      for (auto& p : lp) p = expand_all(p);
      if (li.cut) li.cut->formula = neg_normalize(li.cut->formula, NegMode::Expand);
    }
    auto expected = labelled_premises(lc, li);
    for (std::size_t k = 0; k < expected.size(); ++k)
      if (!multiset_equal(expected[k], lp[k]))
        return StepError{StepError::Kind::SchemaMismatch,
                         rule_name(inst.rule) + ": premise " + std::to_string(k) +
                             " differs from the schema (expected '" + to_string(expected[k]) + "')"};
    return std::nullopt;
  } catch (const CheckFailure& f) {
    return f.error;
  }
}

namespace {

void check_rec(const Calculus& c, const Derivation& d, const std::string& path,
               std::vector<CheckError>& out) {
  std::vector<Sequent> prem;
  for (const auto& p : d.premises) prem.push_back(p.conclusion);
  if (auto err = check_step(c, d.conclusion, d.inst, prem)) out.push_back({path, *err});
  for (std::size_t k = 0; k < d.premises.size(); ++k)
    check_rec(c, d.premises[k], path.empty() ? std::to_string(k) : path + "." + std::to_string(k), out);
}

}  // namespace

std::vector<CheckError> check_derivation(const Calculus& c, const Derivation& d) {
  std::vector<CheckError> out;
  check_rec(c, d, "", out);
  return out;
}

bool checks(const Calculus& c, const Derivation& d) { return check_derivation(c, d).empty(); }

Derivation make_step(const Calculus& c, Sequent concl, RuleInstance inst,
                     std::vector<Derivation> premises) {
  Derivation d{std::move(concl), std::move(inst), std::move(premises)};
  std::vector<Sequent> prem;
  for (const auto& p : d.premises) prem.push_back(p.conclusion);
  if (auto err = check_step(c, d.conclusion, d.inst, prem))
    throw CheckFailure(*err);
  return d;
}

}  // namespace iproof
