#ifndef IPROOF_CALCULUS_HPP
#define IPROOF_CALCULUS_HPP

#include <optional>
#include <set>
#include <string>

namespace iproof {

enum class RuleId {
  // G3 core
  id, id_q, bot_l, and_l, and_r, or_l, or_r, imp_l, imp_r, ref, tra, ihd,
  exists_l, exists_r, forall_l, forall_r, nd, cd,
  // extension rules
  id_star, id_q_n, id_q_c, neg_l, neg_r, imp_l_star, lift,
  exists_r_n, exists_r_in, exists_r_c, exists_r_ic,
  forall_l_n, forall_l_in, forall_l_c, forall_l_ic, forall_r_c,
  // admissible labelled
  lsub, psub, wk, ctr_rel, ctr_l, ctr_r, cut,
  // nested
  n_id, n_id_q, n_bot_l, n_and_l, n_and_r, n_or_l, n_or_r, n_neg_l, n_neg_r,
  n_imp_l, n_imp_r, n_lift, n_exists_l, n_exists_r, n_forall_l,
  n_forall_r_n, n_forall_r_c,
  // admissible nested
  n_wk_l, n_wk_r, n_psub, n_ctr_l, n_ctr_r, n_nr, n_mrg1, n_mrg2,
  n_ew1, n_ew2, n_lwr, n_cut,
};

std::string rule_name(RuleId r);
std::optional<RuleId> rule_from_name(const std::string& name);

bool is_nested_rule(RuleId r);
std::size_t premise_count(RuleId r);

enum class CalculusName {
  G3Int, G3IntQ, G3IntQC, G3IntStar, G3IntQStar, G3IntQCStar,
  IntL, IntQL, IntQCL, NInt, NIntQ, NIntQC,
};

std::string calculus_name(CalculusName c);
std::optional<CalculusName> calculus_from_name(const std::string& name);

struct Calculus {
  CalculusName name;
  bool allow_admissible = false;

  bool nested() const;
  bool first_order() const;
  bool refined() const;      // IntL / IntQL / IntQCL
  bool g3_family() const;    // G3Int(Q)(C) and their starred variants
  // Undirected side conditions: the constant-domain systems.
  bool constant_domain() const;
};

const std::set<RuleId>& rules_of(CalculusName c);

// Rule membership as the checker sees it: the exact rule sets, admissible
// rules when allow_admissible is set, id/id_q wherever their starred or
// path-generalized forms are present, and bot closures in the refined and
// nested systems (keeps the full bot-signature checkable there).
bool rule_allowed(const Calculus& c, RuleId r);

// Inflated superset used when a transform needs repair rules the input
// calculus lacks (e.g. G3Int -> G3Int*).
CalculusName inflated(CalculusName c);

}  // namespace iproof

#endif
