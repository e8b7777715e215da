#ifndef IPROOF_INSTANCE_HPP
#define IPROOF_INSTANCE_HPP

#include "iproof/derivation.hpp"
#include "iproof/errors.hpp"

namespace iproof {

// Index finders used when assembling rule instances against a concrete
// conclusion. They throw TransformError when the item is absent.

inline std::size_t find_rel(const LabelledSequent& s, const RelAtom& r) {
  for (std::size_t i = 0; i < s.rel.size(); ++i)
    if (s.rel[i] == r) return i;
  throw TransformError("relational atom '" + to_string(r) + "' not found in: " + to_string(s));
}

inline std::size_t find_ante(const LabelledSequent& s, const Label& w, const FormulaPtr& f) {
  for (std::size_t i = 0; i < s.ante.size(); ++i)
    if (s.ante[i].first == w && equal(s.ante[i].second, f)) return i;
  throw TransformError("antecedent formula '" + w + ": " + to_string(f) + "' not found in: " + to_string(s));
}

inline std::size_t find_succ(const LabelledSequent& s, const Label& w, const FormulaPtr& f) {
  for (std::size_t i = 0; i < s.succ.size(); ++i)
    if (s.succ[i].first == w && equal(s.succ[i].second, f)) return i;
  throw TransformError("succedent formula '" + w + ": " + to_string(f) + "' not found in: " + to_string(s));
}

inline bool has_rel(const LabelledSequent& s, const RelAtom& r) {
  for (const auto& x : s.rel)
    if (x == r) return true;
  return false;
}

inline bool has_ante(const LabelledSequent& s, const Label& w, const FormulaPtr& f) {
  for (const auto& [v, g] : s.ante)
    if (v == w && equal(g, f)) return true;
  return false;
}

inline bool has_succ(const LabelledSequent& s, const Label& w, const FormulaPtr& f) {
  for (const auto& [v, g] : s.succ)
    if (v == w && equal(g, f)) return true;
  return false;
}

inline std::size_t find_n_ante(const NestedSequent& s, const std::string& pos, const FormulaPtr& f) {
  const auto* c = component_at(s, pos);
  if (c)
    for (std::size_t i = 0; i < c->ante.size(); ++i)
      if (equal(c->ante[i], f)) return i;
  throw TransformError("no '" + to_string(f) + "' in the antecedent at " + pos);
}

inline std::size_t find_n_succ(const NestedSequent& s, const std::string& pos, const FormulaPtr& f) {
  const auto* c = component_at(s, pos);
  if (c)
    for (std::size_t i = 0; i < c->succ.size(); ++i)
      if (equal(c->succ[i], f)) return i;
  throw TransformError("no '" + to_string(f) + "' in the succedent at " + pos);
}

inline std::string fresh_label(const std::set<std::string>& used, const std::string& stem = "v") {
  for (std::size_t i = 0;; ++i) {
    std::string cand = stem + std::to_string(i);
    if (!used.count(cand)) return cand;
  }
}

inline std::string fresh_param(const std::set<std::string>& used, const std::string& stem = "a") {
  for (std::size_t i = 0;; ++i) {
    std::string cand = stem + std::to_string(i);
    if (!used.count(cand)) return cand;
  }
}

}  // namespace iproof

#endif
