#ifndef IPROOF_TRANSFORM_HPP
#define IPROOF_TRANSFORM_HPP

#include <optional>

#include "iproof/checker.hpp"

namespace iproof {

// ---- height-preserving structural transforms (labelled derivations) ----
//
// Each rewrites a checked derivation into a checked derivation of the edited
// end sequent. weaken/rename/contract_rel/contract_succ never increase the
// height; contract_ante may (its inductive case inverts and_l/exists_l).

Derivation weaken(const Calculus& c, const Derivation& d, const LabelledSequent& extra);
Derivation rename_label(const Calculus& c, const Derivation& d, const std::string& from,
                        const std::string& to);
Derivation rename_param(const Calculus& c, const Derivation& d, const std::string& from,
                        const std::string& to);
Derivation contract_rel(const Calculus& c, const Derivation& d, const RelAtom& atom);
Derivation contract_ante(const Calculus& c, const Derivation& d, const Label& w, const FormulaPtr& f);
Derivation contract_succ(const Calculus& c, const Derivation& d, const Label& w, const FormulaPtr& f);

// Rewrites wk/lsub/psub/ctr nodes into the corresponding transforms; cut
// nodes stay.
Derivation inline_admissible(const Calculus& c, const Derivation& d);

// Applies a bijective label renaming through fresh temporaries.
Derivation relabel(const Calculus& c, const Derivation& d, const std::map<Label, Label>& bijection);
Derivation reparam(const Calculus& c, const Derivation& d,
                   const std::map<std::string, std::string>& bijection);

// ---- inversion ----
//
// rule_app states the inverted rule against d's end sequent exactly as a
// forward application would; the result proves premises_of(...)[premise_index].
// Weakening-style inverses go through weaken; and_l/exists_l may grow the
// height and may introduce nd, so outputs check in inflated(c.name).
Derivation invert(const Calculus& c, const Derivation& d, const RuleInstance& rule_app,
                  std::size_t premise_index);

// Nested inversion for the same rule_app encoding (n_imp_r, n_and_l, n_or_r,
// n_and_r, n_or_l, n_neg_r, n_forall_r_n, n_forall_r_c, n_exists_l; the
// copy-retaining rules invert by weakening).
Derivation nested_invert(const Calculus& c, const Derivation& d, const RuleInstance& rule_app,
                         std::size_t premise_index);
Derivation nested_rename_param(const Calculus& c, const Derivation& d, const std::string& from,
                               const std::string& to);
Derivation nested_weaken(const Calculus& c, const Derivation& d, const std::string& pos,
                         const std::vector<FormulaPtr>& ante, const std::vector<FormulaPtr>& succ);

// ---- generalized identity (mutual induction on the formula) ----
//
// Proves context + (w:A in the antecedent) + (v:A in the succedent) in the
// G3 calculus c. When w != v the context must contain w <= v; every
// parameter of A needs a domain atom at w in the context (MissingDomainAtom).
Derivation identity_derivation(const Calculus& c, const LabelledSequent& context, const Label& w,
                               const Label& v, const FormulaPtr& a);

// ---- structural rule elimination ----

// Removes every ref/tra node from a G3*-family derivation, absorbing imp_l
// and specializing id/id_q on the way (the conclusion is unchanged).
Derivation eliminate_ref_tra(const Calculus& c, const Derivation& d);

// Removes nd/ihd (and cd in the constant-domain systems) from a ref/tra-free
// derivation, replacing base id_q/exists_r/forall_l by their path forms.
Derivation eliminate_domain_rules(const Calculus& c, const Derivation& d);

// Single-atom admissibility transforms exposed for the translations: each
// removes the named atom from the end sequent of a ref/tra-free derivation.
Derivation admissible_ref(const Calculus& c, const Derivation& d, const Label& w);
Derivation admissible_tra(const Calculus& c, const Derivation& d, const Label& w, const Label& v,
                          const Label& u);
// Deletes #param in D(to) justified by #param in D(from) and from <= to.
Derivation admissible_nd(const Calculus& c, const Derivation& d, const Label& from, const Label& to,
                         const std::string& param);
// Deletes #param in D(from) justified by #param in D(to) and from <= to.
Derivation admissible_cd(const Calculus& c, const Derivation& d, const Label& from, const Label& to,
                         const std::string& param);

// Rewrites id/id_q axioms into their same-label starred forms (with a lift
// when the two labels differ).
Derivation specialize_identity(const Calculus& c, const Derivation& d);

struct CalculusDerivation {
  Calculus calculus;
  Derivation derivation;
};

// Full refinement pipeline G3Int -> IntL, G3IntQ -> IntQL, G3IntQC -> IntQCL.
CalculusDerivation refine(const Calculus& c, const Derivation& d);

// ---- proof-level translations ----

bool is_nested_form(const Calculus& c, const Derivation& d);

// Refined labelled -> nested (the end sequent must be nestedlike; IntQL
// additionally requires nested form).
CalculusDerivation proof_to_nested(const Calculus& refined, const Derivation& d);

// Nested -> refined labelled derivation of to_labelled(conclusion); the
// output is in nested form in the IntQL case.
CalculusDerivation proof_to_labelled(const Calculus& nested, const Derivation& d);

// Refined -> G3 with allow_admissible (lift expands through generalized
// identity and an explicit cut).
CalculusDerivation expand_to_g3(const Calculus& refined, const Derivation& d);

// ---- nested structural admissibility (via the labelled round trip) ----

struct NestedStructuralArgs {
  std::string pos;                  // component the rule touches
  std::string child;                // child position (mrg/ew/lwr)
  std::string child2;               // second child (mrg1)
  std::vector<FormulaPtr> ante;     // weakened-in / contracted formulas
  std::vector<FormulaPtr> succ;
  std::optional<NestedSequent> subtree;  // ew1
  std::string from, to;             // psub
};

// n_lwr and n_cut raise Unsupported.
Derivation nested_structural(const Calculus& c, RuleId rule, const NestedStructuralArgs& args,
                             const Derivation& d);

// IntQL -> IntQCL and NIntQ -> NIntQC (Q-to-QC embedding).
CalculusDerivation embed_q_in_qc(const Calculus& c, const Derivation& d);

}  // namespace iproof

#endif
