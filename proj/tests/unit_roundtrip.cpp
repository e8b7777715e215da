#include "doctest.h"
#include <random>

#include "iproof/errors.hpp"
#include "iproof/instance.hpp"
#include "iproof/parser.hpp"
#include "iproof/prover.hpp"
#include "iproof/transform.hpp"

using namespace iproof;

namespace {

Derivation prove_or_die(CalculusName c, const std::string& s) {
  auto r = prove({c}, parse_nested(s));
  REQUIRE(r.proved());
  return *r.derivation;
}

}  // namespace

TEST_CASE("nested to labelled and back for the identity proof") {
  Calculus nint{CalculusName::NInt};
  auto d = prove_or_die(CalculusName::NInt, " -> p -> p");
  auto lab = proof_to_labelled(nint, d);
  CHECK(lab.calculus.name == CalculusName::IntL);
  CHECK(checks(lab.calculus, lab.derivation));
  CHECK(multiset_equal(lab.derivation.labelled(), parse_labelled(" => w0: p -> p")));

  auto back = proof_to_nested(lab.calculus, lab.derivation);
  CHECK(back.calculus.name == CalculusName::NInt);
  CHECK(checks(back.calculus, back.derivation));
  CHECK(iso_equal(back.derivation.nested(), d.nested()));
}

TEST_CASE("round trips over a batch of propositional proofs") {
  Calculus nint{CalculusName::NInt};
  for (const char* s : {" -> p -> p", " -> ~~(p | ~p)", "p & q -> q & p",
                        " -> (p -> q) -> (q -> r) -> p -> r", "p | q -> q | p",
                        " -> bot -> p", "~p, p -> ", "p, p -> q -> q"}) {
    auto d = prove_or_die(CalculusName::NInt, s);
    auto lab = proof_to_labelled(nint, d);
    if (!checks(lab.calculus, lab.derivation)) FAIL("labelled image fails: ", s);
    auto back = proof_to_nested(lab.calculus, lab.derivation);
    if (!checks(back.calculus, back.derivation)) FAIL("nested image fails: ", s);
    CHECK(iso_equal(back.derivation.nested(), d.nested()));
    // and out to G3 with the admissible rules switched on
    auto g3 = expand_to_g3(lab.calculus, lab.derivation);
    if (!checks(g3.calculus, g3.derivation)) FAIL("expansion fails: ", s);
    CHECK(multiset_equal(g3.derivation.labelled(), lab.derivation.labelled()));
  }
}

TEST_CASE("round trips for first-order proofs") {
  for (auto cn : {CalculusName::NIntQ, CalculusName::NIntQC}) {
    Calculus cal{cn};
    for (const char* s :
         {" -> (all x. p(x)) -> p(#a)", " -> p(#a) -> ex x. p(x)",
          " -> (all x. (q -> p(x))) -> q -> all x. p(x)",
          " -> (all x. (p(x) -> q)) -> (ex x. p(x)) -> q", "all x. p(x) -> p(#b), [ -> q -> q]"}) {
      auto r = prove(cal, parse_nested(s));
      if (!r.proved()) FAIL("unproved: ", s);
      auto d = *r.derivation;
      auto lab = proof_to_labelled(cal, d);
      if (!checks(lab.calculus, lab.derivation)) FAIL("labelled image fails: ", s);
      if (cn == CalculusName::NIntQ) CHECK(is_nested_form(lab.calculus, lab.derivation));
      auto back = proof_to_nested(lab.calculus, lab.derivation);
      if (!checks(back.calculus, back.derivation)) FAIL("nested image fails: ", s);
      CHECK(iso_equal(back.derivation.nested(), d.nested()));
      auto g3 = expand_to_g3(lab.calculus, lab.derivation);
      if (!checks(g3.calculus, g3.derivation)) FAIL("expansion fails: ", s);
    }
  }
}

TEST_CASE("cd axiom proof expands into G3IntQC") {
  auto d = prove_or_die(CalculusName::NIntQC, " -> (all x. (p(x) | q)) -> (all x. p(x)) | q");
  Calculus cal{CalculusName::NIntQC};
  auto lab = proof_to_labelled(cal, d);
  CHECK(checks(lab.calculus, lab.derivation));
  auto g3 = expand_to_g3(lab.calculus, lab.derivation);
  CHECK(g3.calculus.name == CalculusName::G3IntQC);
  CHECK(g3.calculus.allow_admissible);
  CHECK(checks(g3.calculus, g3.derivation));
  auto back = proof_to_nested(lab.calculus, lab.derivation);
  CHECK(checks(back.calculus, back.derivation));
  CHECK(iso_equal(back.derivation.nested(), d.nested()));
}

TEST_CASE("nested structural transforms") {
  Calculus nint{CalculusName::NInt};
  auto d = prove_or_die(CalculusName::NInt, "p, p -> q -> q, [r -> r]");

  SUBCASE("weakenings") {
    NestedStructuralArgs args;
    args.pos = "0";
    args.ante = {parse_formula("s")};
    auto out = nested_structural(nint, RuleId::n_wk_l, args, d);
    CHECK(checks(nint, out));
    CHECK(iso_equal(out.nested(), parse_nested("p, p -> q, s -> q, [r -> r]")));

    NestedStructuralArgs args2;
    args2.pos = "0.0";
    args2.succ = {parse_formula("p -> q")};
    auto out2 = nested_structural(nint, RuleId::n_wk_r, args2, d);
    CHECK(checks(nint, out2));
    CHECK(iso_equal(out2.nested(), parse_nested("p, p -> q -> q, [r -> r, (p -> q)]")));
  }

  SUBCASE("weakening in a duplicate formula still checks") {
    NestedStructuralArgs args;
    args.pos = "0";
    args.ante = {parse_formula("p")};
    auto out = nested_structural(nint, RuleId::n_wk_l, args, d);
    CHECK(checks(nint, out));
    CHECK(iso_equal(out.nested(), parse_nested("p, p, p -> q -> q, [r -> r]")));
  }

  SUBCASE("contraction") {
    NestedStructuralArgs wkargs;
    wkargs.pos = "0";
    wkargs.ante = {parse_formula("p")};
    auto dup = nested_structural(nint, RuleId::n_wk_l, wkargs, d);
    NestedStructuralArgs args;
    args.pos = "0";
    args.ante = {parse_formula("p")};
    auto out = nested_structural(nint, RuleId::n_ctr_l, args, dup);
    CHECK(checks(nint, out));
    CHECK(iso_equal(out.nested(), d.nested()));
  }

  SUBCASE("new root") {
    auto out = nested_structural(nint, RuleId::n_nr, {}, d);
    CHECK(checks(nint, out));
    CHECK(iso_equal(out.nested(), parse_nested(" -> , [p, p -> q -> q, [r -> r]]")));
  }

  SUBCASE("merge into parent") {
    NestedStructuralArgs args;
    args.child = "0.0";
    auto out = nested_structural(nint, RuleId::n_mrg2, args, d);
    CHECK(checks(nint, out));
    CHECK(iso_equal(out.nested(), parse_nested("p, p -> q, r -> q, r")));
  }

  SUBCASE("component weakenings") {
    NestedStructuralArgs args;
    args.pos = "0";
    args.subtree = parse_nested("s -> t, [u -> ]");
    auto out = nested_structural(nint, RuleId::n_ew1, args, d);
    CHECK(checks(nint, out));
    CHECK(iso_equal(out.nested(), parse_nested("p, p -> q -> q, [r -> r], [s -> t, [u -> ]]")));

    NestedStructuralArgs args2;
    args2.child = "0.0";
    auto out2 = nested_structural(nint, RuleId::n_ew2, args2, d);
    CHECK(checks(nint, out2));
    CHECK(iso_equal(out2.nested(), parse_nested("p, p -> q -> q, [ -> , [r -> r]]")));
  }

  SUBCASE("duplicate then merge children") {
    NestedStructuralArgs ewargs;
    ewargs.pos = "0";
    ewargs.subtree = parse_nested("r -> r");
    auto dup = nested_structural(nint, RuleId::n_ew1, ewargs, d);
    REQUIRE(checks(nint, dup));
    NestedStructuralArgs args;
    args.child = "0.0";
    args.child2 = "0.1";
    auto out = nested_structural(nint, RuleId::n_mrg1, args, dup);
    CHECK(checks(nint, out));
    CHECK(iso_equal(out.nested(), d.nested()));
  }

  SUBCASE("unsupported rules") {
    CHECK_THROWS_AS(nested_structural(nint, RuleId::n_lwr, {}, d), Unsupported);
    CHECK_THROWS_AS(nested_structural(nint, RuleId::n_cut, {}, d), Unsupported);
  }
}

TEST_CASE("parameter substitution on nested proofs") {
  Calculus nintq{CalculusName::NIntQ};
  auto d = prove_or_die(CalculusName::NIntQ, "p(#a), p(#b) -> p(#b)");
  NestedStructuralArgs args;
  args.from = "b";
  args.to = "a";
  auto out = nested_structural(nintq, RuleId::n_psub, args, d);
  CHECK(checks(nintq, out));
  CHECK(iso_equal(out.nested(), parse_nested("p(#a), p(#a) -> p(#a)")));
}

TEST_CASE("Q to QC embedding") {
  Calculus nintq{CalculusName::NIntQ};
  for (const char* s : {" -> (all x. p(x)) -> p(#a)", " -> p -> p",
                        " -> (all x. (q -> p(x))) -> q -> all x. p(x)"}) {
    auto d = prove_or_die(CalculusName::NIntQ, s);
    auto emb = embed_q_in_qc(nintq, d);
    CHECK(emb.calculus.name == CalculusName::NIntQC);
    if (!checks(emb.calculus, emb.derivation)) FAIL("embedding fails: ", s);
    CHECK(iso_equal(emb.derivation.nested(), d.nested()));

    auto lab = proof_to_labelled(nintq, d);
    auto lemb = embed_q_in_qc(lab.calculus, lab.derivation);
    CHECK(lemb.calculus.name == CalculusName::IntQCL);
    if (!checks(lemb.calculus, lemb.derivation)) FAIL("labelled embedding fails: ", s);
    CHECK(multiset_equal(lemb.derivation.labelled(), lab.derivation.labelled()));
  }
}

TEST_CASE("iota decomposition via inversion and merging") {
  Calculus nint{CalculusName::NInt};
  auto sigma = parse_nested("p, q -> p, [s -> s]");
  auto goal = iota(sigma);
  auto r = prove_formula(nint, goal);
  REQUIRE(r.proved());
  Derivation d = *r.derivation;

  // -> iota  ==>  -> , [^X -> vY...]
  auto imp = d.nested().succ[0];
  RuleInstance app;
  app.rule = RuleId::n_imp_r;
  app.principal = {SeqRef::succ(0, "0"), SeqRef::child("0.0")};
  d = nested_invert(nint, d, app, 0);
  CHECK(checks(nint, d));
  // split the conjunction p & q
  auto conj = component_at(d.nested(), "0.0")->ante[0];
  RuleInstance app2;
  app2.rule = RuleId::n_and_l;
  app2.principal = {SeqRef::ante(0, "0.0")};
  d = nested_invert(nint, d, app2, 0);
  CHECK(checks(nint, d));
  // split the disjunction p | (s -> s)
  RuleInstance app3;
  app3.rule = RuleId::n_or_r;
  app3.principal = {SeqRef::succ(0, "0.0")};
  d = nested_invert(nint, d, app3, 0);
  CHECK(checks(nint, d));
  // peel the inner implication into a child
  std::size_t idx = find_n_succ(d.nested(), "0.0", parse_formula("s -> s"));
  RuleInstance app4;
  app4.rule = RuleId::n_imp_r;
  app4.principal = {SeqRef::succ(idx, "0.0"), SeqRef::child("0.0.0")};
  d = nested_invert(nint, d, app4, 0);
  CHECK(checks(nint, d));
  // merge the wrapper component away
  NestedStructuralArgs margs;
  margs.child = "0.0";
  d = nested_structural(nint, RuleId::n_mrg2, margs, d);
  CHECK(checks(nint, d));
  CHECK(iso_equal(d.nested(), sigma));
}

TEST_CASE("transform chains stay checked") {
  // several rounds of weaken / rename / contract / invert over one proof
  Calculus nintq{CalculusName::NIntQ};
  auto r = prove(nintq, parse_nested(" -> (all x. (p(x) -> q)) -> (ex x. p(x)) -> q"));
  REQUIRE(r.proved());
  auto lab = proof_to_labelled(nintq, *r.derivation);
  Calculus star{CalculusName::G3IntQStar};
  Derivation d = lab.derivation;
  std::mt19937 g(5);
  for (int round = 0; round < 12; ++round) {
    auto labels = labels_of(d.labelled());
    std::string fresh = fresh_label(labels, "f" + std::to_string(round) + "_");
    switch (g() % 4) {
      case 0: {
        LabelledSequent extra;
        extra.rel.push_back(RelAtom::le(fresh, fresh));
        extra.ante.emplace_back(fresh, parse_formula("z" + std::to_string(round)));
        d = weaken(star, d, extra);
        break;
      }
      case 1: {
        auto it = labels.begin();
        std::advance(it, g() % labels.size());
        d = rename_label(star, d, *it, fresh);
        break;
      }
      case 2: {
        if (d.labelled().rel.empty()) break;
        const RelAtom& atom = d.labelled().rel[g() % d.labelled().rel.size()];
        LabelledSequent dup;
        dup.rel.push_back(atom);
        d = contract_rel(star, weaken(star, d, dup), atom);
        break;
      }
      default: {
        if (d.labelled().ante.empty()) break;
        const auto& lf = d.labelled().ante[g() % d.labelled().ante.size()];
        LabelledSequent dup;
        dup.ante.push_back(lf);
        d = contract_ante(star, weaken(star, d, dup), lf.first, lf.second);
        break;
      }
    }
    if (!checks(star, d)) FAIL("chain broke at round ", round);
  }
}

TEST_CASE("inversion works below the root of real proofs") {
  // invert the root implication of translated prover proofs
  for (const char* s : {" -> p -> p | q", " -> (p -> q) -> ~q -> ~p"}) {
    Calculus nint{CalculusName::NInt};
    auto r = prove(nint, parse_nested(s));
    REQUIRE(r.proved());
    auto lab = proof_to_labelled(nint, *r.derivation);
    const auto& concl = lab.derivation.labelled();
    REQUIRE(concl.succ.size() == 1);
    RuleInstance app;
    app.rule = RuleId::imp_r;
    app.principal = {SeqRef::succ(0)};
    app.eigen = {"fresh_v"};
    auto inv = invert(lab.calculus, lab.derivation, app, 0);
    CHECK(checks({inflated(lab.calculus.name)}, inv));
    CHECK(height(inv) <= height(lab.derivation));
  }
}
