#include "doctest.h"

#include "iproof/instance.hpp"
#include "iproof/parser.hpp"
#include "iproof/prover.hpp"
#include "iproof/transform.hpp"
#include "iproof/translate.hpp"

using namespace iproof;

namespace {

RuleInstance mk(RuleId r, std::vector<SeqRef> p) {
  RuleInstance i;
  i.rule = r;
  i.principal = std::move(p);
  return i;
}

Derivation sec4_proof() {
  auto top = parse_labelled("w <= v, v <= v, v: p => v: p");
  Derivation leaf{top,
                  mk(RuleId::id, {SeqRef::rel(find_rel(top, RelAtom::le("v", "v"))),
                                  SeqRef::ante(0), SeqRef::succ(0)}),
                  {}};
  Derivation ref_node{parse_labelled("w <= v, v: p => v: p"),
                      mk(RuleId::ref, {SeqRef::label_arg("v")}),
                      {leaf}};
  auto inst = mk(RuleId::imp_r, {SeqRef::succ(0)});
  inst.eigen = {"v"};
  return Derivation{parse_labelled(" => w: p -> p"), inst, {ref_node}};
}

const Calculus g3int{CalculusName::G3Int};
const Calculus g3intq{CalculusName::G3IntQ};
const Calculus g3intqc{CalculusName::G3IntQC};

}  // namespace

TEST_CASE("weaken keeps height and checks") {
  auto d = sec4_proof();
  auto extra = parse_labelled("u <= u, z: q => z: r");
  auto w = weaken(g3int, d, extra);
  CHECK(checks(g3int, w));
  CHECK(height(w) == height(d));
  CHECK(multiset_equal(w.labelled(), parse_labelled("u <= u, z: q => z: r, w: p -> p")));

  // weakening with the eigenvariable's name forces a rename
  auto clash = parse_labelled("v: q => ");
  auto w2 = weaken(g3int, d, clash);
  CHECK(checks(g3int, w2));
  CHECK(height(w2) == height(d));
}

TEST_CASE("renamings") {
  auto d = sec4_proof();
  auto r = rename_label(g3int, d, "w", "x");
  CHECK(checks(g3int, r));
  CHECK(height(r) == height(d));
  CHECK(multiset_equal(r.labelled(), parse_labelled(" => x: p -> p")));

  // renaming onto the eigenvariable's name must still check
  auto r2 = rename_label(g3int, d, "w", "v");
  CHECK(checks(g3int, r2));
  CHECK(multiset_equal(r2.labelled(), parse_labelled(" => v: p -> p")));

  // lsub with an absent source is the identity on the end sequent
  auto r3 = rename_label(g3int, d, "zz", "w");
  CHECK(multiset_equal(r3.labelled(), d.labelled()));
}

TEST_CASE("contraction easy path") {
  auto d = sec4_proof();
  auto extra = parse_labelled("u <= u, u <= u => w: p -> p");
  auto w = weaken(g3int, d, extra);
  auto c = contract_rel(g3int, w, RelAtom::le("u", "u"));
  CHECK(checks(g3int, c));
  CHECK(height(c) <= height(w));
  auto c2 = contract_succ(g3int, c, "w", parse_formula("p -> p"));
  CHECK(checks(g3int, c2));
  CHECK(height(c2) <= height(c));
  CHECK(multiset_equal(c2.labelled(), parse_labelled("u <= u => w: p -> p")));
}

TEST_CASE("contraction through a decomposed principal") {
  // proof of w: p & q, w: p & q => w: p with both copies decomposed
  auto top = parse_labelled("w <= w, w: p, w: q, w: p, w: q => w: p");
  Derivation leaf{top,
                  mk(RuleId::id, {SeqRef::rel(0), SeqRef::ante(0), SeqRef::succ(0)}),
                  {}};
  auto mid1s = parse_labelled("w <= w, w: p & q, w: p, w: q => w: p");
  Derivation mid1{mid1s, mk(RuleId::and_l, {SeqRef::ante(find_ante(mid1s, "w", parse_formula("p & q")))}), {leaf}};
  auto mid2s = parse_labelled("w <= w, w: p & q, w: p & q => w: p");
  Derivation mid2{mid2s, mk(RuleId::and_l, {SeqRef::ante(0)}), {mid1}};
  Derivation root{parse_labelled("w: p & q, w: p & q => w: p"),
                  mk(RuleId::ref, {SeqRef::label_arg("w")}),
                  {mid2}};
  REQUIRE(checks(g3int, root));
  auto c = contract_ante(g3int, root, "w", parse_formula("p & q"));
  CHECK(checks(g3int, c));
  CHECK(multiset_equal(c.labelled(), parse_labelled("w: p & q => w: p")));
}

TEST_CASE("inversion of imp_r recovers the premise") {
  auto d = sec4_proof();
  auto app = mk(RuleId::imp_r, {SeqRef::succ(0)});
  app.eigen = {"v"};
  auto inv = invert(g3int, d, app, 0);
  CHECK(checks(g3int, inv));
  CHECK(multiset_equal(inv.labelled(), parse_labelled("w <= v, v: p => v: p")));
  CHECK(height(inv) <= height(d));
}

TEST_CASE("weakening-style inverses") {
  auto d = sec4_proof();
  // invert(ref): premise adds w <= w
  auto app = mk(RuleId::ref, {SeqRef::label_arg("u")});
  auto inv = invert(g3int, d, app, 0);
  CHECK(checks(g3int, inv));
  CHECK(multiset_equal(inv.labelled(), parse_labelled("u <= u => w: p -> p")));
  CHECK(height(inv) <= height(d));
}

TEST_CASE("inversion of and_l through lift") {
  // proof of u <= w, u: p & q => w: p using lift and decomposition at w
  const Calculus star{CalculusName::G3IntStar};
  auto top = parse_labelled("u <= w, u: p & q, w: p, w: q => w: p");
  Derivation leaf{top,
                  mk(RuleId::id_star, {SeqRef::ante(find_ante(top, "w", parse_formula("p"))),
                                       SeqRef::succ(0)}),
                  {}};
  auto mids = parse_labelled("u <= w, u: p & q, w: p & q => w: p");
  Derivation mid{mids,
                 mk(RuleId::and_l, {SeqRef::ante(find_ante(mids, "w", parse_formula("p & q")))}),
                 {leaf}};
  auto roots = parse_labelled("u <= w, u: p & q => w: p");
  Derivation root{roots,
                  mk(RuleId::lift, {SeqRef::rel(0), SeqRef::ante(0)}),
                  {mid}};
  REQUIRE(checks(star, root));

  auto app = mk(RuleId::and_l, {SeqRef::ante(0)});
  auto inv = invert(star, root, app, 0);
  CHECK(checks(star, inv));
  CHECK(multiset_equal(inv.labelled(), parse_labelled("u <= w, u: p, u: q => w: p")));
}

TEST_CASE("identity derivations") {
  // atomic claim (d): two steps via id_q and ref
  auto ctx = parse_labelled("#a in D(w) => ");
  auto d = identity_derivation(g3intq, ctx, "w", "w", parse_formula("p(#a)"));
  CHECK(checks(g3intq, d));
  CHECK(height(d) == 2);

  // conjunction claim in G3Int
  auto d2 = identity_derivation(g3int, parse_labelled(" => "), "w", "w", parse_formula("p & q"));
  CHECK(checks(g3int, d2));
  // existential claim (d): the exists_r over exists_l stack
  auto d3 = identity_derivation(g3intq, parse_labelled(" => "), "w", "w", parse_formula("ex x. p(x)"));
  CHECK(checks(g3intq, d3));
  // claim (c) across an edge
  auto d4 = identity_derivation(g3intq, parse_labelled("w <= v, #a in D(w) => "), "w", "v",
                                parse_formula("all x. q(x, #a)"));
  CHECK(checks(g3intq, d4));
  // negation goes through the expanded signature
  auto d5 = identity_derivation(g3int, parse_labelled("w <= v => "), "w", "v", parse_formula("~p"));
  CHECK(checks(g3int, d5));

  CHECK_THROWS_AS(identity_derivation(g3intq, parse_labelled(" => "), "w", "w", parse_formula("p(#a)")),
                  MissingDomainAtom);
}

TEST_CASE("eliminate ref and tra from the reflexivity detour") {
  auto out = eliminate_ref_tra(g3int, sec4_proof());
  CHECK(checks({CalculusName::G3IntStar}, out));
  CHECK(multiset_equal(out.labelled(), parse_labelled(" => w: p -> p")));
  auto used = rules_used(out);
  CHECK(!used.count(RuleId::ref));
  CHECK(!used.count(RuleId::tra));
  // the two-step proof: id_star under imp_r
  CHECK(height(out) == 2);
  CHECK(used.count(RuleId::id_star) == 1);

  // already clean input comes back unchanged
  auto again = eliminate_ref_tra(g3int, out);
  CHECK(multiset_equal(again.labelled(), out.labelled()));
  CHECK(height(again) == height(out));
}

TEST_CASE("eliminate the tra-over-id block") {
  // id closing over a composite edge, then tra removing it
  auto tops = parse_labelled("w <= u, u <= v, w <= v, w: p => v: p");
  Derivation leaf{tops,
                  mk(RuleId::id, {SeqRef::rel(find_rel(tops, RelAtom::le("w", "v"))),
                                  SeqRef::ante(0), SeqRef::succ(0)}),
                  {}};
  auto roots = parse_labelled("w <= u, u <= v, w: p => v: p");
  Derivation root{roots,
                  mk(RuleId::tra, {SeqRef::rel(find_rel(roots, RelAtom::le("w", "u"))),
                                   SeqRef::rel(find_rel(roots, RelAtom::le("u", "v")))}),
                  {leaf}};
  REQUIRE(checks(g3int, root));
  auto out = eliminate_ref_tra(g3int, root);
  CHECK(checks({CalculusName::G3IntStar}, out));
  CHECK(multiset_equal(out.labelled(), roots));
  auto used = rules_used(out);
  CHECK(used.count(RuleId::id_star) == 1);
  CHECK(used.count(RuleId::lift) == 1);
  CHECK(!used.count(RuleId::tra));
  CHECK(height(out) == 3);  // id_star, lift, lift
}

TEST_CASE("refine the reflexivity detour to IntL") {
  auto r = refine(g3int, sec4_proof());
  CHECK(r.calculus.name == CalculusName::IntL);
  CHECK(checks(r.calculus, r.derivation));
  CHECK(multiset_equal(r.derivation.labelled(), parse_labelled(" => w: p -> p")));
  auto used = rules_used(r.derivation);
  for (RuleId bad : {RuleId::ref, RuleId::tra, RuleId::nd, RuleId::cd, RuleId::ihd, RuleId::id,
                     RuleId::id_q, RuleId::imp_l, RuleId::bot_l})
    CHECK(!used.count(bad));
}

TEST_CASE("refine a first-order proof with domain rules") {
  // => w: (all x. p(x)) -> p(#a) via forall_l, nd, ref
  auto f = parse_formula("all x. p(x)");
  auto t0 = parse_labelled("w <= u, u <= u, #a in D(w), #a in D(u), u: p(#a), u: all x. p(x) => u: p(#a)");
  Derivation leaf{t0,
                  mk(RuleId::id_q, {SeqRef::rel(find_rel(t0, RelAtom::le("u", "u"))),
                                    SeqRef::ante(find_ante(t0, "u", parse_formula("p(#a)"))),
                                    SeqRef::succ(0)}),
                  {}};
  auto t1 = parse_labelled("w <= u, u <= u, #a in D(w), #a in D(u), u: all x. p(x) => u: p(#a)");
  auto fl = mk(RuleId::forall_l, {SeqRef::rel(find_rel(t1, RelAtom::le("u", "u"))),
                                  SeqRef::rel(find_rel(t1, RelAtom::dom("a", "u"))),
                                  SeqRef::ante(find_ante(t1, "u", f))});
  fl.witness = Witness{"a", "x"};
  Derivation n1{t1, fl, {leaf}};
  auto t2 = parse_labelled("w <= u, u <= u, #a in D(w), u: all x. p(x) => u: p(#a)");
  Derivation n2{t2,
                mk(RuleId::nd, {SeqRef::rel(find_rel(t2, RelAtom::le("w", "u"))),
                                SeqRef::rel(find_rel(t2, RelAtom::dom("a", "w")))}),
                {n1}};
  auto t3 = parse_labelled("w <= u, #a in D(w), u: all x. p(x) => u: p(#a)");
  Derivation n3{t3, mk(RuleId::ref, {SeqRef::label_arg("u")}), {n2}};
  auto t4 = parse_labelled("#a in D(w) => w: (all x. p(x)) -> p(#a)");
  auto ir = mk(RuleId::imp_r, {SeqRef::succ(0)});
  ir.eigen = {"u"};
  Derivation root{t4, ir, {n3}};
  REQUIRE(checks(g3intq, root));

  auto r = refine(g3intq, root);
  CHECK(r.calculus.name == CalculusName::IntQL);
  CHECK(checks(r.calculus, r.derivation));
  CHECK(multiset_equal(r.derivation.labelled(), t4));
  auto used = rules_used(r.derivation);
  for (RuleId bad : {RuleId::ref, RuleId::tra, RuleId::nd, RuleId::cd, RuleId::ihd, RuleId::id,
                     RuleId::id_q, RuleId::imp_l, RuleId::forall_l, RuleId::exists_r})
    CHECK(!used.count(bad));

  // all intermediate sequents treelike with the fixed root
  struct Walk {
    static void run(const Derivation& d, const Label& root_label, bool& ok) {
      auto r2 = is_treelike(d.labelled());
      if (!r2 || *r2 != root_label) ok = false;
      for (const auto& p : d.premises) run(p, root_label, ok);
    }
  };
  bool treelike = true;
  Walk::run(r.derivation, "w", treelike);
  CHECK(treelike);
}

TEST_CASE("refine rejects bare bot in the end sequent") {
  auto t = parse_labelled("w: bot => ");
  Derivation d{t, mk(RuleId::bot_l, {SeqRef::ante(0)}), {}};
  REQUIRE(checks(g3int, d));
  CHECK_THROWS_AS(refine(g3int, d), UnsupportedBot);
}

TEST_CASE("eliminate_domain_rules wants a ref and tra free input") {
  CHECK_THROWS_AS(eliminate_domain_rules(g3int, sec4_proof()), StructuralRulePresent);
}

TEST_CASE("nested form detects a missing witness") {
  // exists_r_n whose witness parameter occurs in no formula of its
  // conclusion; a weakening below restores nestedlikeness at the root.
  Calculus cal{CalculusName::IntQL, true};
  auto top = parse_labelled("#a in D(w), w: r => w: p(#a), w: ex x. p(x), w: r");
  Derivation leaf{top,
                  mk(RuleId::id_q_n, {SeqRef::ante(find_ante(top, "w", parse_formula("r"))),
                                      SeqRef::succ(find_succ(top, "w", parse_formula("r")))}),
                  {}};
  auto mid = parse_labelled("#a in D(w), w: r => w: ex x. p(x), w: r");
  auto er = mk(RuleId::exists_r_n, {SeqRef::succ(0), SeqRef::rel(0)});
  er.witness = Witness{"a", "x"};
  Derivation exr{mid, er, {leaf}};
  REQUIRE(checks(cal, exr));
  CHECK(!is_nested_form(cal, exr));  // root is not even nestedlike here

  auto root = parse_labelled("#a in D(w), w: r, w: q(#a) => w: ex x. p(x), w: r");
  RuleInstance wk;
  wk.rule = RuleId::wk;
  wk.principal = {SeqRef::ante(find_ante(root, "w", parse_formula("q(#a)")))};
  Derivation full{root, wk, {exr}};
  REQUIRE(checks(cal, full));
  CHECK(is_nestedlike(full.labelled()));
  CHECK(!is_nested_form(cal, full));  // the inner witness is still missing

  // with the witness formula present all the way up, nested form holds
  auto top2 = parse_labelled("#a in D(w), w: q(#a) => w: p(#a), w: ex x. p(x), w: q(#a)");
  Derivation leaf2{top2,
                   mk(RuleId::id_q_n, {SeqRef::ante(0), SeqRef::succ(find_succ(top2, "w", parse_formula("q(#a)")))}),
                   {}};
  auto mid2 = parse_labelled("#a in D(w), w: q(#a) => w: ex x. p(x), w: q(#a)");
  auto er2 = mk(RuleId::exists_r_n, {SeqRef::succ(0), SeqRef::rel(0)});
  er2.witness = Witness{"a", "x"};
  Derivation good{mid2, er2, {leaf2}};
  REQUIRE(checks({CalculusName::IntQL}, good));
  CHECK(is_nested_form({CalculusName::IntQL}, good));
}

TEST_CASE("identity proofs refine and expand for a formula zoo") {
  const Calculus g3q{CalculusName::G3IntQ};
  const Calculus g3qc{CalculusName::G3IntQC};
  const char* zoo[] = {
      "p & q | r",
      "(p -> q) -> (q -> r) -> p -> r",
      "~(p & ~p)",
      "all x. p(x)",
      "ex x. (p(x) & q)",
      "all x. (p(x) -> ex y. r(x, y))",
      "(ex x. p(x)) -> q(#a)",
      "all x. all y. (r(x, y) | ~r(x, y))",
  };
  for (const char* txt : zoo) {
    auto f = parse_formula(txt);
    LabelledSequent ctx = parse_labelled("w <= v => ");
    for (const auto& p : free_parameters(f)) ctx.rel.push_back(RelAtom::dom(p, "w"));
    for (auto cal : {g3q, g3qc}) {
      // same-label claim
      auto d = identity_derivation(cal, ctx, "w", "w", f);
      if (!checks(cal, d)) FAIL("identity (same label) fails: ", txt);
      auto r = refine(cal, d);
      if (!checks(r.calculus, r.derivation)) FAIL("refined identity fails: ", txt);
      auto used = rules_used(r.derivation);
      for (RuleId bad : {RuleId::ref, RuleId::tra, RuleId::nd, RuleId::cd, RuleId::ihd, RuleId::id,
                         RuleId::id_q, RuleId::imp_l})
        if (used.count(bad)) FAIL("refined identity kept ", rule_name(bad), " for ", txt);
      auto g3 = expand_to_g3(r.calculus, r.derivation);
      if (!checks(g3.calculus, g3.derivation)) FAIL("expanded identity fails: ", txt);
      CHECK(multiset_equal(g3.derivation.labelled(), d.labelled()));
      // across-an-edge claim
      auto d2 = identity_derivation(cal, ctx, "w", "v", f);
      if (!checks(cal, d2)) FAIL("identity (edge) fails: ", txt);
      auto r2 = refine(cal, d2);
      if (!checks(r2.calculus, r2.derivation)) FAIL("refined edge identity fails: ", txt);
    }
  }
}

TEST_CASE("refined identity proofs translate to nested when nestedlike") {
  const Calculus g3q{CalculusName::G3IntQ};
  for (const char* txt : {"p & q | r", "~(p -> q)", "all x. p(x)", "ex x. (p(x) & q(#a))"}) {
    auto f = parse_formula(txt);
    LabelledSequent ctx;
    for (const auto& p : free_parameters(f)) ctx.rel.push_back(RelAtom::dom(p, "w"));
    auto d = identity_derivation(g3q, ctx, "w", "w", f);
    auto r = refine(g3q, d);
    REQUIRE(checks(r.calculus, r.derivation));
    if (r.calculus.name == CalculusName::IntQL && !is_nested_form(r.calculus, r.derivation))
      continue;  // a path witness may legitimately be missing
    auto n = proof_to_nested(r.calculus, r.derivation);
    if (!checks(n.calculus, n.derivation)) FAIL("nested identity fails: ", txt);
    NestedSequent expect;
    expect.ante.push_back(neg_normalize(f, NegMode::Expand));
    expect.succ.push_back(neg_normalize(f, NegMode::Expand));
    CHECK(iso_equal(n.derivation.nested(), expect));
  }
}
