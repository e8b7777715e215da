#include "doctest.h"

#include "iproof/backward.hpp"
#include "iproof/checker.hpp"
#include "iproof/instance.hpp"
#include "iproof/json_io.hpp"
#include "iproof/parser.hpp"

using namespace iproof;

namespace {

RuleInstance mk(RuleId r, std::vector<SeqRef> p) {
  RuleInstance i;
  i.rule = r;
  i.principal = std::move(p);
  return i;
}

// The two-step reflexivity detour deriving => w: p -> p.
Derivation sec4_proof() {
  auto top = parse_labelled("w <= v, v <= v, v: p => v: p");
  Derivation leaf{top,
                  mk(RuleId::id, {SeqRef::rel(find_rel(top, RelAtom::le("v", "v"))),
                                  SeqRef::ante(0), SeqRef::succ(0)}),
                  {}};
  auto mid = parse_labelled("w <= v, v: p => v: p");
  Derivation ref_node{mid, mk(RuleId::ref, {SeqRef::label_arg("v")}), {leaf}};
  auto root = parse_labelled(" => w: p -> p");
  auto inst = mk(RuleId::imp_r, {SeqRef::succ(0)});
  inst.eigen = {"v"};
  return Derivation{root, inst, {ref_node}};
}

}  // namespace

TEST_CASE("rules_of matches the calculus definitions") {
  const auto& intl = rules_of(CalculusName::IntL);
  for (RuleId r : {RuleId::id_star, RuleId::lift, RuleId::imp_l_star, RuleId::neg_l, RuleId::neg_r})
    CHECK(intl.count(r) == 1);
  CHECK(intl.count(RuleId::ref) == 0);
  CHECK(intl.count(RuleId::id) == 0);
  CHECK(intl.count(RuleId::imp_l) == 0);

  const auto& intqcl = rules_of(CalculusName::IntQCL);
  CHECK(intqcl.count(RuleId::forall_r) == 0);
  CHECK(intqcl.count(RuleId::forall_r_c) == 1);

  const auto& nintq = rules_of(CalculusName::NIntQ);
  const auto& nint = rules_of(CalculusName::NInt);
  for (RuleId r : nint) CHECK(nintq.count(r) == 1);
  for (RuleId r : {RuleId::n_id_q, RuleId::n_exists_l, RuleId::n_exists_r, RuleId::n_forall_l,
                   RuleId::n_forall_r_n})
    CHECK(nintq.count(r) == 1);
  CHECK(nintq.size() == nint.size() + 5);
  CHECK(rules_of(CalculusName::NIntQC).count(RuleId::n_forall_r_c) == 1);
  CHECK(rules_of(CalculusName::NIntQC).count(RuleId::n_forall_r_n) == 0);
}

TEST_CASE("check_step on the reflexivity detour") {
  auto concl = parse_labelled("w <= v, v: p => v: p");
  auto prem = parse_labelled("w <= v, v <= v, v: p => v: p");
  auto inst = mk(RuleId::ref, {SeqRef::label_arg("v")});
  CHECK(!check_step({CalculusName::G3Int}, Sequent{concl}, inst, {Sequent{prem}}));
  auto err = check_step({CalculusName::IntL}, Sequent{concl}, inst, {Sequent{prem}});
  REQUIRE(err);
  CHECK(err->kind == StepError::Kind::RuleNotInCalculus);
}

TEST_CASE("imp_r eigenvariable clash") {
  auto concl = parse_labelled("v: q => w: p -> p");
  auto prem = parse_labelled("v: q, w <= v, v: p => v: p");
  auto inst = mk(RuleId::imp_r, {SeqRef::succ(0)});
  inst.eigen = {"v"};
  auto err = check_step({CalculusName::G3Int}, Sequent{concl}, inst, {Sequent{prem}});
  REQUIRE(err);
  CHECK(err->kind == StepError::Kind::EigenvariableClash);
}

TEST_CASE("full derivation checking") {
  auto d = sec4_proof();
  CHECK(checks({CalculusName::G3Int}, d));
  CHECK(height(d) == 3);

  // the two-step refined proof of the same end sequent
  auto top = parse_labelled("w <= v, v: p => v: p");
  Derivation leaf{top, mk(RuleId::id_star, {SeqRef::ante(0), SeqRef::succ(0)}), {}};
  auto inst = mk(RuleId::imp_r, {SeqRef::succ(0)});
  inst.eigen = {"v"};
  Derivation two{parse_labelled(" => w: p -> p"), inst, {leaf}};
  CHECK(checks({CalculusName::IntL}, two));
  CHECK(height(two) == 2);

  // forall_r inside IntQCL is flagged at the offending node
  auto fr = mk(RuleId::forall_r, {SeqRef::succ(0)});
  fr.eigen = {"v", "a"};
  fr.witness = Witness{"a", "x"};
  Derivation bad{parse_labelled(" => w: all x. p(x)"),
                 fr,
                 {Derivation{parse_labelled("w <= v, #a in D(v) => v: p(#a)"),
                             mk(RuleId::id_q, {}), {}}}};
  auto errs = check_derivation({CalculusName::IntQCL}, bad);
  REQUIRE(!errs.empty());
  CHECK(errs[0].path == "");
  CHECK(errs[0].error.kind == StepError::Kind::RuleNotInCalculus);
}

TEST_CASE("mutating a principal position fails the check") {
  auto d = sec4_proof();
  // point the id instance at the wrong relational atom
  Derivation broken = d;
  broken.premises[0].premises[0].inst.principal[0] = SeqRef::rel(0);
  CHECK(!checks({CalculusName::G3Int}, broken));
  // rename the eigenvariable so it is no longer what the premise uses
  Derivation broken2 = d;
  broken2.inst.eigen = {"u"};
  CHECK(!checks({CalculusName::G3Int}, broken2));
}

TEST_CASE("negation matching in G3 uses the expanded form") {
  // neg_r is not a G3Int rule, but imp_r on p -> bot matches a stored ~p.
  auto concl = parse_labelled(" => w: ~p");
  auto prem = parse_labelled("w <= v, v: p => v: bot");
  auto inst = mk(RuleId::imp_r, {SeqRef::succ(0)});
  inst.eigen = {"v"};
  CHECK(!check_step({CalculusName::G3Int}, Sequent{concl}, inst, {Sequent{prem}}));
}

TEST_CASE("nested steps") {
  Calculus nint{CalculusName::NInt};
  auto concl = parse_nested(" -> p -> p");
  auto prem = parse_nested(" -> , [p -> p]");
  auto inst = mk(RuleId::n_imp_r, {SeqRef::succ(0, "0"), SeqRef::child("0.0")});
  CHECK(!check_step(nint, Sequent{concl}, inst, {Sequent{prem}}));

  auto closed = parse_nested("p -> p");
  CHECK(!check_step(nint, Sequent{closed},
                    mk(RuleId::n_id, {SeqRef::ante(0, "0"), SeqRef::succ(0, "0")}), {}));

  // n_imp_l retains the principal copy in both premises
  auto c2 = parse_nested("p, p -> q -> q");
  auto p1 = parse_nested("p, p -> q -> q, p");
  auto p2 = parse_nested("p, p -> q, q -> q");
  CHECK(!check_step(nint, Sequent{c2}, mk(RuleId::n_imp_l, {SeqRef::ante(1, "0")}),
                    {Sequent{p1}, Sequent{p2}}));
  // dropping the copy from a premise is a schema mismatch
  auto bad1 = parse_nested("p -> q, p");
  auto err = check_step(nint, Sequent{c2}, mk(RuleId::n_imp_l, {SeqRef::ante(1, "0")}),
                        {Sequent{bad1}, Sequent{p2}});
  REQUIRE(err);
  CHECK(err->kind == StepError::Kind::SchemaMismatch);
}

TEST_CASE("nested availability side condition") {
  Calculus nintq{CalculusName::NIntQ};
  Calculus nintqc{CalculusName::NIntQC};
  auto concl = parse_nested("p(#a) -> ex x. q(x)");
  auto prem = parse_nested("p(#a) -> ex x. q(x), q(#a)");
  auto inst = mk(RuleId::n_exists_r, {SeqRef::succ(0, "0")});
  inst.witness = Witness{"a", "x"};
  CHECK(!check_step(nintq, Sequent{concl}, inst, {Sequent{prem}}));

  // witness available only in a sibling: fails the NIntQ condition, fine in NIntQC
  auto c2 = parse_nested(" -> , [p(#a) -> ], [ -> ex x. q(x)]");
  auto p2 = parse_nested(" -> , [p(#a) -> ], [ -> ex x. q(x), q(#a)]");
  auto i2 = mk(RuleId::n_exists_r, {SeqRef::succ(0, "0.1")});
  i2.witness = Witness{"a", "x"};
  auto err = check_step(nintq, Sequent{c2}, i2, {Sequent{p2}});
  REQUIRE(err);
  CHECK(err->kind == StepError::Kind::SideConditionViolated);
  CHECK(!check_step(nintqc, Sequent{c2}, i2, {Sequent{p2}}));
}

TEST_CASE("backward applications agree with the checker") {
  Calculus nint{CalculusName::NInt};
  auto s = parse_nested(" -> p -> p");
  auto apps = backward_applications(nint, Sequent{s});
  REQUIRE(apps.size() == 1);
  CHECK(apps[0].inst.rule == RuleId::n_imp_r);
  CHECK(!check_step(nint, Sequent{s}, apps[0].inst, apps[0].premises));

  auto closures = backward_applications(nint, Sequent{parse_nested("p -> p")});
  REQUIRE(closures.size() == 1);
  CHECK(closures[0].inst.rule == RuleId::n_id);
  CHECK(closures[0].premises.empty());

  auto impl = backward_applications(nint, Sequent{parse_nested("p, p -> q -> q")});
  bool found = false;
  for (const auto& a : impl)
    if (a.inst.rule == RuleId::n_imp_l) {
      found = true;
      CHECK(a.premises.size() == 2);
    }
  CHECK(found);

  for (auto cal : {Calculus{CalculusName::G3Int}, Calculus{CalculusName::G3IntQ},
                   Calculus{CalculusName::IntQL}}) {
    for (const char* txt :
         {"w <= v, w: p -> q, v: p => v: q", "#a in D(w), w: all x. p(x) => w: ex y. p(y)",
          "w <= v, #a in D(v), w: p & q => v: r | s"}) {
      auto seq = parse_labelled(txt);
      for (const auto& a : backward_applications(cal, Sequent{seq})) {
        auto err = check_step(cal, Sequent{seq}, a.inst, a.premises);
        if (err) FAIL("rule ", rule_name(a.inst.rule), " on '", txt, "': ", to_string(*err));
      }
    }
  }
}

TEST_CASE("derivation json round trip") {
  DerivationFile f{{CalculusName::G3Int}, sec4_proof()};
  auto text = save_derivation(f);
  auto g = load_derivation(text);
  CHECK(g.calculus.name == CalculusName::G3Int);
  CHECK(checks(g.calculus, g.derivation));
  CHECK(save_derivation(g) == text);
}
