#include "doctest.h"
#include <functional>
#include <random>

#include "iproof/parser.hpp"
#include "iproof/prover.hpp"

using namespace iproof;

namespace {

std::size_t node_count(const Derivation& d) {
  std::size_t n = 1;
  for (const auto& p : d.premises) n += node_count(p);
  return n;
}

ProveResult prove_text(CalculusName c, const std::string& s, SearchLimits lim = {}) {
  return prove({c}, parse_nested(s), lim);
}

}  // namespace

TEST_CASE("identity implication") {
  auto r = prove_text(CalculusName::NInt, " -> p -> p");
  REQUIRE(r.proved());
  CHECK(node_count(*r.derivation) == 2);
  CHECK(checks({CalculusName::NInt}, *r.derivation));
}

TEST_CASE("propositional axiom schemes prove in NInt") {
  for (const char* ax : {
           "p -> (q -> p)",
           "(p -> (q -> r)) -> ((p -> q) -> (p -> r))",
           "p -> (q -> p & q)",
           "p & q -> p",
           "p & q -> q",
           "p -> p | q",
           "q -> p | q",
           "bot -> p",
           "(p -> r) -> ((q -> r) -> (p | q -> r))",
       }) {
    auto r = prove_formula({CalculusName::NInt}, parse_formula(ax));
    if (!r.proved()) FAIL("not proved: ", ax);
    CHECK(checks({CalculusName::NInt}, *r.derivation));
  }
}

TEST_CASE("classical principles stay unprovable") {
  CHECK(prove_text(CalculusName::NInt, " -> ((p -> q) -> p) -> p").status ==
        ProveResult::Status::Unprovable);
  CHECK(prove_text(CalculusName::NInt, " -> p | ~p").status == ProveResult::Status::Unprovable);
  CHECK(prove_text(CalculusName::NInt, " -> ~~p -> p").status == ProveResult::Status::Unprovable);
  // double negation of excluded middle is intuitionistically fine
  CHECK(prove_text(CalculusName::NInt, " -> ~~(p | ~p)").proved());
}

TEST_CASE("quantified goals") {
  CHECK_THROWS_AS(prove_text(CalculusName::NInt, " -> all x. p(x)"), QuantifierInPropositionalGoal);

  auto inst = prove_formula({CalculusName::NIntQ}, parse_formula("all x. p(x) -> p(#a)"));
  REQUIRE(inst.proved());
  CHECK(checks({CalculusName::NIntQ}, *inst.derivation));

  // constant-domain axiom: unknown for NIntQ at default depth, proved in NIntQC
  auto cd = parse_formula("(all x. (p(x) | q)) -> (all x. p(x)) | q");
  CHECK(prove_formula({CalculusName::NIntQ}, cd).status == ProveResult::Status::Unknown);
  auto qc = prove_formula({CalculusName::NIntQC}, cd);
  REQUIRE(qc.proved());
  CHECK(checks({CalculusName::NIntQC}, *qc.derivation));
}

TEST_CASE("first-order axiom schemes") {
  const char* fo[] = {
      "all x. (q -> p(x)) -> (q -> all x. p(x))",
      "all x. (p(x) -> q) -> ((ex x. p(x)) -> q)",
      "all x. p(x) -> p(#a)",
      "p(#a) -> ex x. p(x)",
  };
  for (const char* ax : fo) {
    for (auto c : {CalculusName::NIntQ, CalculusName::NIntQC}) {
      auto r = prove_formula({c}, parse_formula(ax));
      if (!r.proved()) FAIL("not proved in ", calculus_name(c), ": ", ax);
      CHECK(checks({c}, *r.derivation));
    }
  }
}

TEST_CASE("determinism") {
  auto a = prove_text(CalculusName::NInt, " -> (p -> q) -> (q -> r) -> p -> r");
  auto b = prove_text(CalculusName::NInt, " -> (p -> q) -> (q -> r) -> p -> r");
  REQUIRE(a.proved());
  REQUIRE(b.proved());
  CHECK(node_count(*a.derivation) == node_count(*b.derivation));
  CHECK(to_string(a.derivation->conclusion) == to_string(b.derivation->conclusion));
}

TEST_CASE("small quantifier-free searches terminate") {
  // a grab bag of <= 6 connective sequents; all must come back decisively
  for (const char* s : {" -> ~(p & ~p)", "p | q -> q | p", "p & (q | r) -> (p & q) | (p & r)",
                        " -> ((p -> q) -> r) -> r", "~p, p -> ", " -> (p -> q) | (q -> p)"}) {
    auto r = prove_text(CalculusName::NInt, s);
    CHECK(r.status != ProveResult::Status::Unknown);
  }
}

TEST_CASE("random quantifier-free goals always come back decisively") {
  std::mt19937 g(77);
  auto pick = [&](int n) { return static_cast<int>(g() % n); };
  std::function<FormulaPtr(int)> gen = [&](int depth) -> FormulaPtr {
    if (depth == 0 || pick(3) == 0) {
      static const char* atoms[] = {"p", "q", "r", "bot"};
      const char* a = atoms[pick(4)];
      return std::string(a) == "bot" ? Formula::bot() : Formula::atom(a);
    }
    switch (pick(4)) {
      case 0: return Formula::conj(gen(depth - 1), gen(depth - 1));
      case 1: return Formula::disj(gen(depth - 1), gen(depth - 1));
      case 2: return Formula::imp(gen(depth - 1), gen(depth - 1));
      default: return Formula::neg(gen(depth - 1));
    }
  };
  for (int i = 0; i < 200; ++i) {
    NestedSequent s;
    s.succ.push_back(gen(2));  // up to 6 connectives per formula
    if (pick(2)) s.ante.push_back(gen(2));
    auto r = prove({CalculusName::NInt}, s);
    CHECK(r.status != ProveResult::Status::Unknown);
    if (r.proved()) CHECK(checks({CalculusName::NInt}, *r.derivation));
  }
}
