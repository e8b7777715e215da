#include "iproof/calculus.hpp"

#include <map>

namespace iproof {
namespace {

const std::map<RuleId, std::string>& name_table() {
  static const std::map<RuleId, std::string> t = {
      {RuleId::id, "id"}, {RuleId::id_q, "id_q"}, {RuleId::bot_l, "bot_l"},
      {RuleId::and_l, "and_l"}, {RuleId::and_r, "and_r"}, {RuleId::or_l, "or_l"},
      {RuleId::or_r, "or_r"}, {RuleId::imp_l, "imp_l"}, {RuleId::imp_r, "imp_r"},
      {RuleId::ref, "ref"}, {RuleId::tra, "tra"}, {RuleId::ihd, "ihd"},
      {RuleId::exists_l, "exists_l"}, {RuleId::exists_r, "exists_r"},
      {RuleId::forall_l, "forall_l"}, {RuleId::forall_r, "forall_r"},
      {RuleId::nd, "nd"}, {RuleId::cd, "cd"},
      {RuleId::id_star, "id_star"}, {RuleId::id_q_n, "id_q_n"}, {RuleId::id_q_c, "id_q_c"},
      {RuleId::neg_l, "neg_l"}, {RuleId::neg_r, "neg_r"},
      {RuleId::imp_l_star, "imp_l_star"}, {RuleId::lift, "lift"},
      {RuleId::exists_r_n, "exists_r_n"}, {RuleId::exists_r_in, "exists_r_in"},
      {RuleId::exists_r_c, "exists_r_c"}, {RuleId::exists_r_ic, "exists_r_ic"},
      {RuleId::forall_l_n, "forall_l_n"}, {RuleId::forall_l_in, "forall_l_in"},
      {RuleId::forall_l_c, "forall_l_c"}, {RuleId::forall_l_ic, "forall_l_ic"},
      {RuleId::forall_r_c, "forall_r_c"},
      {RuleId::lsub, "lsub"}, {RuleId::psub, "psub"}, {RuleId::wk, "wk"},
      {RuleId::ctr_rel, "ctr_rel"}, {RuleId::ctr_l, "ctr_l"}, {RuleId::ctr_r, "ctr_r"},
      {RuleId::cut, "cut"},
      {RuleId::n_id, "n_id"}, {RuleId::n_id_q, "n_id_q"}, {RuleId::n_bot_l, "n_bot_l"},
      {RuleId::n_and_l, "n_and_l"}, {RuleId::n_and_r, "n_and_r"},
      {RuleId::n_or_l, "n_or_l"}, {RuleId::n_or_r, "n_or_r"},
      {RuleId::n_neg_l, "n_neg_l"}, {RuleId::n_neg_r, "n_neg_r"},
      {RuleId::n_imp_l, "n_imp_l"}, {RuleId::n_imp_r, "n_imp_r"},
      {RuleId::n_lift, "n_lift"}, {RuleId::n_exists_l, "n_exists_l"},
      {RuleId::n_exists_r, "n_exists_r"}, {RuleId::n_forall_l, "n_forall_l"},
      {RuleId::n_forall_r_n, "n_forall_r_n"}, {RuleId::n_forall_r_c, "n_forall_r_c"},
      {RuleId::n_wk_l, "n_wk_l"}, {RuleId::n_wk_r, "n_wk_r"}, {RuleId::n_psub, "n_psub"},
      {RuleId::n_ctr_l, "n_ctr_l"}, {RuleId::n_ctr_r, "n_ctr_r"}, {RuleId::n_nr, "n_nr"},
      {RuleId::n_mrg1, "n_mrg1"}, {RuleId::n_mrg2, "n_mrg2"},
      {RuleId::n_ew1, "n_ew1"}, {RuleId::n_ew2, "n_ew2"},
      {RuleId::n_lwr, "n_lwr"}, {RuleId::n_cut, "n_cut"},
  };
  return t;
}

}  // namespace

std::string rule_name(RuleId r) { return name_table().at(r); }

std::optional<RuleId> rule_from_name(const std::string& name) {
  for (const auto& [r, n] : name_table())
    if (n == name) return r;
  return std::nullopt;
}

bool is_nested_rule(RuleId r) { return r >= RuleId::n_id; }

std::size_t premise_count(RuleId r) {
  switch (r) {
    case RuleId::id: case RuleId::id_q: case RuleId::id_star:
    case RuleId::id_q_n: case RuleId::id_q_c: case RuleId::bot_l:
    case RuleId::n_id: case RuleId::n_id_q: case RuleId::n_bot_l:
      return 0;
    case RuleId::imp_l: case RuleId::imp_l_star: case RuleId::and_r:
    case RuleId::or_l: case RuleId::cut:
    case RuleId::n_imp_l: case RuleId::n_and_r: case RuleId::n_or_l:
    case RuleId::n_cut:
      return 2;
    default:
      return 1;
  }
}

std::string calculus_name(CalculusName c) {
  switch (c) {
    case CalculusName::G3Int: return "G3Int";
    case CalculusName::G3IntQ: return "G3IntQ";
    case CalculusName::G3IntQC: return "G3IntQC";
    case CalculusName::G3IntStar: return "G3Int*";
    case CalculusName::G3IntQStar: return "G3IntQ*";
    case CalculusName::G3IntQCStar: return "G3IntQC*";
    case CalculusName::IntL: return "IntL";
    case CalculusName::IntQL: return "IntQL";
    case CalculusName::IntQCL: return "IntQCL";
    case CalculusName::NInt: return "NInt";
    case CalculusName::NIntQ: return "NIntQ";
    case CalculusName::NIntQC: return "NIntQC";
  }
  return "?";
}

std::optional<CalculusName> calculus_from_name(const std::string& name) {
  for (auto c : {CalculusName::G3Int, CalculusName::G3IntQ, CalculusName::G3IntQC,
                 CalculusName::G3IntStar, CalculusName::G3IntQStar, CalculusName::G3IntQCStar,
                 CalculusName::IntL, CalculusName::IntQL, CalculusName::IntQCL,
                 CalculusName::NInt, CalculusName::NIntQ, CalculusName::NIntQC})
    if (calculus_name(c) == name) return c;
  return std::nullopt;
}

bool Calculus::nested() const {
  return name == CalculusName::NInt || name == CalculusName::NIntQ || name == CalculusName::NIntQC;
}

bool Calculus::first_order() const {
  switch (name) {
    case CalculusName::G3Int:
    case CalculusName::G3IntStar:
    case CalculusName::IntL:
    case CalculusName::NInt:
      return false;
    default:
      return true;
  }
}

bool Calculus::refined() const {
  return name == CalculusName::IntL || name == CalculusName::IntQL || name == CalculusName::IntQCL;
}

bool Calculus::g3_family() const { return !refined() && !nested(); }

bool Calculus::constant_domain() const {
  switch (name) {
    case CalculusName::G3IntQC:
    case CalculusName::G3IntQCStar:
    case CalculusName::IntQCL:
    case CalculusName::NIntQC:
      return true;
    default:
      return false;
  }
}

const std::set<RuleId>& rules_of(CalculusName c) {
  using R = RuleId;
  static const std::set<R> g3int = {R::id, R::bot_l, R::and_l, R::and_r, R::or_l,
                                    R::or_r, R::imp_l, R::imp_r, R::ref, R::tra};
  static const std::set<R> g3intq = [] {
    std::set<R> s = g3int;
    for (R r : {R::id_q, R::ihd, R::exists_l, R::exists_r, R::forall_l, R::forall_r, R::nd})
      s.insert(r);
    return s;
  }();
  static const std::set<R> g3intqc = [] {
    std::set<R> s = g3intq;
    s.insert(R::cd);
    return s;
  }();
  static const std::set<R> g3int_star = [] {
    std::set<R> s = g3int;
    for (R r : {R::id_star, R::neg_l, R::neg_r, R::imp_l_star, R::lift}) s.insert(r);
    return s;
  }();
  static const std::set<R> g3intq_star = [] {
    std::set<R> s = g3intq;
    for (R r : {R::id_q_n, R::neg_l, R::neg_r, R::imp_l_star, R::lift,
                R::exists_r_n, R::forall_l_n, R::exists_r_in, R::forall_l_in})
      s.insert(r);
    return s;
  }();
  static const std::set<R> g3intqc_star = [] {
    std::set<R> s = g3intqc;
    for (R r : {R::id_q_c, R::neg_l, R::neg_r, R::imp_l_star, R::lift,
                R::exists_r_c, R::forall_l_c, R::exists_r_ic, R::forall_l_ic, R::forall_r_c})
      s.insert(r);
    return s;
  }();
  static const std::set<R> intl = [] {
    std::set<R> s = g3int_star;
    for (R r : {R::id, R::bot_l, R::imp_l, R::ref, R::tra}) s.erase(r);
    return s;
  }();
  static const std::set<R> intql = [] {
    std::set<R> s = g3intq_star;
    for (R r : {R::id_q, R::bot_l, R::imp_l, R::ref, R::tra, R::exists_r, R::forall_l, R::nd, R::ihd})
      s.erase(r);
    return s;
  }();
  static const std::set<R> intqcl = [] {
    std::set<R> s = g3intqc_star;
    for (R r : {R::id_q, R::bot_l, R::imp_l, R::ref, R::tra, R::exists_r, R::forall_l,
                R::forall_r, R::nd, R::cd, R::ihd})
      s.erase(r);
    return s;
  }();
  static const std::set<R> nint = {R::n_id, R::n_and_l, R::n_and_r, R::n_or_l, R::n_or_r,
                                   R::n_neg_l, R::n_neg_r, R::n_imp_l, R::n_imp_r, R::n_lift};
  static const std::set<R> nintq = [] {
    std::set<R> s = nint;
    for (R r : {R::n_id_q, R::n_exists_l, R::n_exists_r, R::n_forall_l, R::n_forall_r_n})
      s.insert(r);
    return s;
  }();
  static const std::set<R> nintqc = [] {
    std::set<R> s = nint;
    for (R r : {R::n_id_q, R::n_exists_l, R::n_exists_r, R::n_forall_l, R::n_forall_r_c})
      s.insert(r);
    return s;
  }();
  switch (c) {
    case CalculusName::G3Int: return g3int;
    case CalculusName::G3IntQ: return g3intq;
    case CalculusName::G3IntQC: return g3intqc;
    case CalculusName::G3IntStar: return g3int_star;
    case CalculusName::G3IntQStar: return g3intq_star;
    case CalculusName::G3IntQCStar: return g3intqc_star;
    case CalculusName::IntL: return intl;
    case CalculusName::IntQL: return intql;
    case CalculusName::IntQCL: return intqcl;
    case CalculusName::NInt: return nint;
    case CalculusName::NIntQ: return nintq;
    case CalculusName::NIntQC: return nintqc;
  }
  return g3int;
}

bool rule_allowed(const Calculus& c, RuleId r) {
  const auto& rules = rules_of(c.name);
  if (rules.count(r)) return true;
  if (c.allow_admissible) {
    if (!c.nested() && r >= RuleId::lsub && r <= RuleId::cut) return true;
    if (c.nested() && r >= RuleId::n_wk_l && r <= RuleId::n_cut) return true;
  }
  // id and id_q are instances of their generalized forms.
  if (r == RuleId::id && (rules.count(RuleId::id_star) || rules.count(RuleId::id_q_n) ||
                          rules.count(RuleId::id_q_c)))
    return true;
  if (r == RuleId::id_q && (rules.count(RuleId::id_q_n) || rules.count(RuleId::id_q_c))) return true;
  // Bot closures stay available in the refined and nested systems so the full
  // bot-signature remains checkable there.
  if (r == RuleId::bot_l && c.refined()) return true;
  if (r == RuleId::n_bot_l && c.nested()) return true;
  return false;
}

CalculusName inflated(CalculusName c) {
  switch (c) {
    case CalculusName::G3Int:
    case CalculusName::G3IntStar:
    case CalculusName::IntL:
      return CalculusName::G3IntStar;
    case CalculusName::G3IntQ:
    case CalculusName::G3IntQStar:
    case CalculusName::IntQL:
      return CalculusName::G3IntQStar;
    case CalculusName::G3IntQC:
    case CalculusName::G3IntQCStar:
    case CalculusName::IntQCL:
      return CalculusName::G3IntQCStar;
    default:
      return c;
  }
}

}  // namespace iproof
