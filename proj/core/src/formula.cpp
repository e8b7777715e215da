#include "iproof/formula.hpp"

#include <algorithm>

namespace iproof {

bool operator==(const Term& a, const Term& b) { return a.kind == b.kind && a.name == b.name; }

bool operator<(const Term& a, const Term& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  return a.name < b.name;
}

FormulaPtr Formula::atom(std::string pred, std::vector<Term> args) {
  auto f = std::make_shared<Formula>();
  f->kind = Kind::Atom;
  f->head = std::move(pred);
  f->args = std::move(args);
  return f;
}

FormulaPtr Formula::bot() {
  auto f = std::make_shared<Formula>();
  f->kind = Kind::Bot;
  return f;
}

static FormulaPtr mk1(Formula::Kind k, FormulaPtr a) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->lhs = std::move(a);
  return f;
}

static FormulaPtr mk2(Formula::Kind k, FormulaPtr a, FormulaPtr b) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->lhs = std::move(a);
  f->rhs = std::move(b);
  return f;
}

static FormulaPtr mkq(Formula::Kind k, std::string var, FormulaPtr body) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->head = std::move(var);
  f->lhs = std::move(body);
  return f;
}

FormulaPtr Formula::neg(FormulaPtr a) { return mk1(Kind::Neg, std::move(a)); }
FormulaPtr Formula::conj(FormulaPtr a, FormulaPtr b) { return mk2(Kind::And, std::move(a), std::move(b)); }
FormulaPtr Formula::disj(FormulaPtr a, FormulaPtr b) { return mk2(Kind::Or, std::move(a), std::move(b)); }
FormulaPtr Formula::imp(FormulaPtr a, FormulaPtr b) { return mk2(Kind::Imp, std::move(a), std::move(b)); }
FormulaPtr Formula::forall(std::string var, FormulaPtr body) { return mkq(Kind::Forall, std::move(var), std::move(body)); }
FormulaPtr Formula::exists(std::string var, FormulaPtr body) { return mkq(Kind::Exists, std::move(var), std::move(body)); }

int compare(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  if (int c = a->head.compare(b->head); c != 0) return c < 0 ? -1 : 1;
  if (a->args != b->args) return std::lexicographical_compare(a->args.begin(), a->args.end(),
                                                              b->args.begin(), b->args.end())
                                     ? -1
                                     : 1;
  bool la = a->lhs != nullptr, lb = b->lhs != nullptr;
  if (la != lb) return la < lb ? -1 : 1;
  if (la)
    if (int c = compare(a->lhs, b->lhs); c != 0) return c;
  bool ra = a->rhs != nullptr, rb = b->rhs != nullptr;
  if (ra != rb) return ra < rb ? -1 : 1;
  if (ra)
    if (int c = compare(a->rhs, b->rhs); c != 0) return c;
  return 0;
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) { return compare(a, b) == 0; }

std::string to_string(const Term& t) {
  return t.is_param() ? "#" + t.name : t.name;
}

namespace {

// Precedence levels: 0 formula (->), 1 or, 2 and, 3 unary/prim.
int level_of(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::Imp: return 0;
    case Formula::Kind::Or: return 1;
    case Formula::Kind::And: return 2;
    default: return 3;
  }
}

void print(const FormulaPtr& f, int min_level, std::string& out) {
  bool parens = level_of(f) < min_level;
  if (parens) out += '(';
  switch (f->kind) {
    case Formula::Kind::Atom:
      out += f->head;
      if (!f->args.empty()) {
        out += '(';
        for (std::size_t i = 0; i < f->args.size(); ++i) {
          if (i) out += ", ";
          out += to_string(f->args[i]);
        }
        out += ')';
      }
      break;
    case Formula::Kind::Bot:
      out += "bot";
      break;
    case Formula::Kind::Neg:
      out += '~';
      print(f->lhs, 3, out);
      break;
    case Formula::Kind::And:
      print(f->lhs, 3, out);
      out += " & ";
      print(f->rhs, 3, out);
      break;
    case Formula::Kind::Or:
      print(f->lhs, 2, out);
      out += " | ";
      print(f->rhs, 2, out);
      break;
    case Formula::Kind::Imp:
      print(f->lhs, 1, out);
      out += " -> ";
      print(f->rhs, 0, out);
      break;
    case Formula::Kind::Forall:
      out += "all " + f->head + ". ";
      print(f->lhs, 3, out);
      break;
    case Formula::Kind::Exists:
      out += "ex " + f->head + ". ";
      print(f->lhs, 3, out);
      break;
  }
  if (parens) out += ')';
}

// Left operands of & and | bind one level tighter to force right association
// on reparse; quantifier/negation bodies print at unary level.

}  // namespace

std::string to_string(const FormulaPtr& f) {
  std::string out;
  print(f, 0, out);
  return out;
}

namespace {

FormulaPtr subst(const FormulaPtr& f, Term::Kind from_kind, const std::string& from, const Term& to) {
  switch (f->kind) {
    case Formula::Kind::Atom: {
      bool hit = false;
      for (const auto& t : f->args)
        if (t.kind == from_kind && t.name == from) hit = true;
      if (!hit) return f;
      std::vector<Term> args = f->args;
      for (auto& t : args)
        if (t.kind == from_kind && t.name == from) t = to;
      return Formula::atom(f->head, std::move(args));
    }
    case Formula::Kind::Bot:
      return f;
    case Formula::Kind::Neg: {
      auto a = subst(f->lhs, from_kind, from, to);
      return a == f->lhs ? f : Formula::neg(a);
    }
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp: {
      auto a = subst(f->lhs, from_kind, from, to);
      auto b = subst(f->rhs, from_kind, from, to);
      if (a == f->lhs && b == f->rhs) return f;
      auto mk = f->kind == Formula::Kind::And ? Formula::conj
              : f->kind == Formula::Kind::Or ? Formula::disj
                                             : Formula::imp;
      return mk(a, b);
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      if (from_kind == Term::Kind::Var && f->head == from) return f;  // bound occurrence
      auto body = subst(f->lhs, from_kind, from, to);
      if (body == f->lhs) return f;
      return f->kind == Formula::Kind::Forall ? Formula::forall(f->head, body)
                                              : Formula::exists(f->head, body);
    }
  }
  return f;
}

}  // namespace

FormulaPtr subst_param(const FormulaPtr& f, const std::string& from, const Term& to) {
  return subst(f, Term::Kind::Param, from, to);
}

FormulaPtr subst_var(const FormulaPtr& f, const std::string& from, const Term& to) {
  return subst(f, Term::Kind::Var, from, to);
}

namespace {

void collect_params(const FormulaPtr& f, std::set<std::string>& out) {
  if (f->kind == Formula::Kind::Atom) {
    for (const auto& t : f->args)
      if (t.is_param()) out.insert(t.name);
    return;
  }
  if (f->lhs) collect_params(f->lhs, out);
  if (f->rhs) collect_params(f->rhs, out);
}

bool closed_under(const FormulaPtr& f, std::set<std::string>& bound, std::string* offender) {
  switch (f->kind) {
    case Formula::Kind::Atom:
      for (const auto& t : f->args)
        if (!t.is_param() && !bound.count(t.name)) {
          if (offender) *offender = t.name;
          return false;
        }
      return true;
    case Formula::Kind::Bot:
      return true;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      bool fresh = bound.insert(f->head).second;
      bool ok = closed_under(f->lhs, bound, offender);
      if (fresh) bound.erase(f->head);
      return ok;
    }
    default:
      if (f->lhs && !closed_under(f->lhs, bound, offender)) return false;
      if (f->rhs && !closed_under(f->rhs, bound, offender)) return false;
      return true;
  }
}

void collect_vars(const FormulaPtr& f, std::set<std::string>& out) {
  if (f->kind == Formula::Kind::Forall || f->kind == Formula::Kind::Exists) out.insert(f->head);
  if (f->kind == Formula::Kind::Atom)
    for (const auto& t : f->args)
      if (!t.is_param()) out.insert(t.name);
  if (f->lhs) collect_vars(f->lhs, out);
  if (f->rhs) collect_vars(f->rhs, out);
}

}  // namespace

std::set<std::string> free_parameters(const FormulaPtr& f) {
  std::set<std::string> out;
  collect_params(f, out);
  return out;
}

bool parameter_closed(const FormulaPtr& f) {
  std::set<std::string> bound;
  return closed_under(f, bound, nullptr);
}

FormulaPtr universal_closure(const FormulaPtr& f) {
  std::set<std::string> params = free_parameters(f);
  if (params.empty()) return f;
  std::set<std::string> used;
  collect_vars(f, used);
  FormulaPtr body = f;
  std::vector<std::string> fresh;
  std::size_t next = 0;
  for (const auto& p : params) {
    std::string x;
    do {
      x = "x" + std::to_string(next++);
    } while (used.count(x));
    used.insert(x);
    fresh.push_back(x);
    body = subst_param(body, p, Term::var(x));
  }
  for (auto it = fresh.rbegin(); it != fresh.rend(); ++it) body = Formula::forall(*it, body);
  return body;
}

FormulaPtr neg_normalize(const FormulaPtr& f, NegMode mode) {
  switch (f->kind) {
    case Formula::Kind::Atom:
    case Formula::Kind::Bot:
      return f;
    case Formula::Kind::Neg: {
      auto a = neg_normalize(f->lhs, mode);
      if (mode == NegMode::Expand) return Formula::imp(a, Formula::bot());
      return a == f->lhs ? f : Formula::neg(a);
    }
    case Formula::Kind::Imp: {
      auto a = neg_normalize(f->lhs, mode);
      auto b = neg_normalize(f->rhs, mode);
      if (mode == NegMode::Fold && b->kind == Formula::Kind::Bot) return Formula::neg(a);
      if (a == f->lhs && b == f->rhs) return f;
      return Formula::imp(a, b);
    }
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      auto a = neg_normalize(f->lhs, mode);
      auto b = neg_normalize(f->rhs, mode);
      if (a == f->lhs && b == f->rhs) return f;
      return f->kind == Formula::Kind::And ? Formula::conj(a, b) : Formula::disj(a, b);
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      auto body = neg_normalize(f->lhs, mode);
      if (body == f->lhs) return f;
      return f->kind == Formula::Kind::Forall ? Formula::forall(f->head, body)
                                              : Formula::exists(f->head, body);
    }
  }
  return f;
}

FormulaPtr as_negation(const FormulaPtr& f) {
  if (f->kind == Formula::Kind::Neg) return f->lhs;
  if (f->kind == Formula::Kind::Imp && f->rhs->kind == Formula::Kind::Bot) return f->lhs;
  return nullptr;
}

bool bot_only_in_neg_patterns(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::Bot:
      return false;
    case Formula::Kind::Atom:
      return true;
    case Formula::Kind::Imp:
      if (!bot_only_in_neg_patterns(f->lhs)) return false;
      return f->rhs->kind == Formula::Kind::Bot || bot_only_in_neg_patterns(f->rhs);
    default:
      if (f->lhs && !bot_only_in_neg_patterns(f->lhs)) return false;
      if (f->rhs && !bot_only_in_neg_patterns(f->rhs)) return false;
      return true;
  }
}

}  // namespace iproof
