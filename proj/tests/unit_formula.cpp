#include "doctest.h"
#include <random>

#include "iproof/errors.hpp"
#include "iproof/formula.hpp"
#include "iproof/parser.hpp"

using namespace iproof;

TEST_CASE("parse precedence and shape") {
  auto f = parse_formula("p -> p");
  CHECK(f->kind == Formula::Kind::Imp);
  CHECK(f->lhs->kind == Formula::Kind::Atom);
  CHECK(equal(f->lhs, f->rhs));

  // p & q | r -> s parses as ((p & q) | r) -> s
  auto g = parse_formula("p & q | r -> s");
  CHECK(g->kind == Formula::Kind::Imp);
  CHECK(g->lhs->kind == Formula::Kind::Or);
  CHECK(g->lhs->lhs->kind == Formula::Kind::And);

  // -> is right associative
  auto h = parse_formula("p -> q -> r");
  CHECK(h->rhs->kind == Formula::Kind::Imp);

  auto cd = parse_formula("all x. (p(x) | q) -> (all x. p(x)) | q");
  CHECK(cd->kind == Formula::Kind::Imp);
  CHECK(cd->lhs->kind == Formula::Kind::Forall);
  CHECK(cd->lhs->lhs->kind == Formula::Kind::Or);
  CHECK(cd->rhs->kind == Formula::Kind::Or);
  CHECK(cd->rhs->lhs->kind == Formula::Kind::Forall);

  auto mixed = parse_formula("p(#a, x)");
  CHECK(mixed->args.size() == 2);
  CHECK(mixed->args[0].is_param());
  CHECK(!mixed->args[1].is_param());
  CHECK(!parameter_closed(mixed));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_formula("p ->"), ParseError);
  CHECK_THROWS_AS(parse_formula("(p"), ParseError);
  CHECK_THROWS_AS(parse_formula("p(#a) & p(#a, #b)"), ArityError);
}

TEST_CASE("print then parse is identity") {
  for (const char* s : {"p -> p", "~(p & q) | r", "all x. p(x) -> ex y. (q(y, #a) & r)",
                        "bot -> bot", "p -> q | (r -> s)", "~~p", "all x. all y. p(x, y)"}) {
    auto f = parse_formula(s);
    auto g = parse_formula(to_string(f));
    CHECK(equal(f, g));
  }
}

TEST_CASE("substitution") {
  auto f = parse_formula("all x. p(x, y)");
  auto g = subst_var(f, "y", Term::param("a"));
  CHECK(equal(g, parse_formula("all x. p(x, #a)")));

  CHECK(equal(subst_param(parse_formula("p(#b)"), "b", Term::param("a")), parse_formula("p(#a)")));

  auto h = parse_formula("all x. p(x)");
  CHECK(equal(subst_var(h, "x", Term::param("a")), h));  // x not free

  // No-op when the parameter does not occur.
  auto k = parse_formula("q(#c)");
  CHECK(subst_param(k, "b", Term::param("a")) == k);
}

TEST_CASE("free parameters and closure") {
  CHECK(free_parameters(parse_formula("p(#a, #b)")) == std::set<std::string>{"a", "b"});
  CHECK(free_parameters(parse_formula("bot")).empty());
  CHECK(free_parameters(parse_formula("all x. q(x, #b)")) == std::set<std::string>{"b"});

  CHECK(equal(universal_closure(parse_formula("p")), parse_formula("p")));
  CHECK(equal(universal_closure(parse_formula("p(#a)")), parse_formula("all x0. p(x0)")));
  CHECK(equal(universal_closure(parse_formula("p(#a, #b)")),
              parse_formula("all x0. all x1. p(x0, x1)")));
  CHECK(free_parameters(universal_closure(parse_formula("p(#a) & q(#b, #c)"))).empty());
}

TEST_CASE("negation normalization") {
  CHECK(equal(neg_normalize(parse_formula("~p"), NegMode::Expand), parse_formula("p -> bot")));
  CHECK(equal(neg_normalize(parse_formula("p -> bot"), NegMode::Fold), parse_formula("~p")));
  auto rt = neg_normalize(neg_normalize(parse_formula("p -> bot"), NegMode::Fold), NegMode::Expand);
  CHECK(equal(rt, parse_formula("p -> bot")));

  struct NoNeg {
    static bool check(const FormulaPtr& f) {
      if (f->kind == Formula::Kind::Neg) return false;
      if (f->lhs && !check(f->lhs)) return false;
      if (f->rhs && !check(f->rhs)) return false;
      return true;
    }
  };
  CHECK(NoNeg::check(neg_normalize(parse_formula("~(~p & ~~q)"), NegMode::Expand)));
}

TEST_CASE("bot placement") {
  CHECK(bot_only_in_neg_patterns(parse_formula("~p")));
  CHECK(bot_only_in_neg_patterns(parse_formula("p -> bot")));
  CHECK(bot_only_in_neg_patterns(parse_formula("(p -> bot) -> q")));
  CHECK(!bot_only_in_neg_patterns(parse_formula("bot")));
  CHECK(!bot_only_in_neg_patterns(parse_formula("bot -> p")));
  CHECK(!bot_only_in_neg_patterns(parse_formula("p & bot")));
}

TEST_CASE("parser never crashes on junk") {
  std::mt19937 g(123);
  const std::string alphabet = "pqrxy#()[]<=>-~&|., :aw01DbotallexinA";
  for (int i = 0; i < 3000; ++i) {
    std::string junk;
    std::size_t len = 1 + g() % 24;
    for (std::size_t k = 0; k < len; ++k) junk += alphabet[g() % alphabet.size()];
    try {
      parse_formula(junk);
    } catch (const ParseError&) {
    } catch (const ArityError&) {
    }
    try {
      parse_labelled(junk);
    } catch (const ParseError&) {
    } catch (const ArityError&) {
    } catch (const FreeVariableError&) {
    }
    try {
      parse_nested(junk);
    } catch (const ParseError&) {
    } catch (const ArityError&) {
    } catch (const FreeVariableError&) {
    }
  }
  CHECK(true);
}
