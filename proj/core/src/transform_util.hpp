#ifndef IPROOF_TRANSFORM_UTIL_HPP
#define IPROOF_TRANSFORM_UTIL_HPP

#include <algorithm>

#include "iproof/instance.hpp"
#include "iproof/transform.hpp"

// Internal helpers shared by the derivation transforms.

namespace iproof::detail {

inline void universe(const Derivation& d, std::set<std::string>& names) {
  if (d.is_labelled()) {
    for (const auto& l : labels_of(d.labelled())) names.insert(l);
    for (const auto& p : parameters_of(d.labelled())) names.insert(p);
  } else {
    for (const auto& p : parameters_of(d.nested())) names.insert(p);
  }
  for (const auto& e : d.inst.eigen) names.insert(e);
  for (const auto& r : d.inst.principal)
    if (r.kind == SeqRef::Kind::LabelArg) names.insert(r.label);
  if (d.inst.witness) names.insert(d.inst.witness->param);
  if (d.inst.cut) names.insert(d.inst.cut->at);
  for (const auto& p : d.premises) universe(p, names);
}

inline std::set<std::string> universe(const Derivation& d) {
  std::set<std::string> names;
  universe(d, names);
  return names;
}

// Rebinds a principal reference from `before` into `after` by value,
// preserving the occurrence number among equal items. Throws when the value
// disappeared (the caller should have handled that occurrence).
inline SeqRef rebind(const LabelledSequent& before, const LabelledSequent& after, const SeqRef& r) {
  auto nth = [](auto&& eq, const auto& vold, const auto& vnew, std::size_t idx) -> std::size_t {
    std::size_t occurrence = 0;
    for (std::size_t i = 0; i < idx; ++i)
      if (eq(vold[i], vold[idx])) ++occurrence;
    for (std::size_t i = 0; i < vnew.size(); ++i)
      if (eq(vnew[i], vold[idx]) && occurrence-- == 0) return i;
    throw TransformError("rebind: principal item vanished from the edited sequent");
  };
  SeqRef out = r;
  switch (r.kind) {
    case SeqRef::Kind::Rel:
      out.index = nth([](const RelAtom& a, const RelAtom& b) { return a == b; }, before.rel,
                      after.rel, r.index);
      break;
    case SeqRef::Kind::Ante:
      out.index = nth([](const LabelledFormula& a, const LabelledFormula& b) {
        return a.first == b.first && equal(a.second, b.second);
      }, before.ante, after.ante, r.index);
      break;
    case SeqRef::Kind::Succ:
      out.index = nth([](const LabelledFormula& a, const LabelledFormula& b) {
        return a.first == b.first && equal(a.second, b.second);
      }, before.succ, after.succ, r.index);
      break;
    default:
      break;
  }
  return out;
}

inline RuleInstance rebind_all(const LabelledSequent& before, const LabelledSequent& after,
                               const RuleInstance& inst) {
  RuleInstance out = inst;
  for (auto& r : out.principal) r = rebind(before, after, r);
  return out;
}

inline std::size_t count_ante(const LabelledSequent& s, const Label& w, const FormulaPtr& f) {
  std::size_t n = 0;
  for (const auto& [v, g] : s.ante)
    if (v == w && equal(g, f)) ++n;
  return n;
}

// Multiset difference target - base over all three parts; throws unless
// base is included in target.
inline LabelledSequent minus(const LabelledSequent& target, const LabelledSequent& base) {
  LabelledSequent out;
  auto take = [](auto target_part, const auto& base_part, auto eq, auto& out_part) {
    for (const auto& x : base_part) {
      bool hit = false;
      for (std::size_t i = 0; i < target_part.size(); ++i)
        if (eq(target_part[i], x)) {
          target_part.erase(target_part.begin() + static_cast<std::ptrdiff_t>(i));
          hit = true;
          break;
        }
      if (!hit) throw TransformError("sequent difference: base is not included in target");
    }
    out_part = std::move(target_part);
  };
  take(target.rel, base.rel, [](const RelAtom& a, const RelAtom& b) { return a == b; }, out.rel);
  auto lf_eq = [](const LabelledFormula& a, const LabelledFormula& b) {
    return a.first == b.first && equal(a.second, b.second);
  };
  take(target.ante, base.ante, lf_eq, out.ante);
  take(target.succ, base.succ, lf_eq, out.succ);
  return out;
}

}  // namespace iproof::detail

#endif
