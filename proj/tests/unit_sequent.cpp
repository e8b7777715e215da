#include "doctest.h"

#include "iproof/errors.hpp"
#include "iproof/parser.hpp"
#include "iproof/sequent.hpp"

using namespace iproof;

TEST_CASE("labelled parsing") {
  auto s = parse_labelled("w <= v, w: p => v: p");
  CHECK(s.rel.size() == 1);
  CHECK(s.rel[0] == RelAtom::le("w", "v"));
  CHECK(s.ante.size() == 1);
  CHECK(s.succ.size() == 1);

  auto ex1 = parse_labelled("w0<=w0, w0<=w1, w1<=w2, w0<=w2, w0<=w3 => ");
  CHECK(ex1.rel.size() == 5);
  CHECK(ex1.ante.empty());
  CHECK(ex1.succ.empty());

  auto dom = parse_labelled("#a in D(w), w: p(#a) => ");
  CHECK(dom.rel.size() == 1);
  CHECK(!dom.rel[0].is_le());

  CHECK_THROWS_AS(parse_labelled("w: p(x) => "), FreeVariableError);
  CHECK_THROWS_AS(parse_labelled("w: p"), ParseError);

  // duplicates preserved
  auto dup = parse_labelled("w <= v, w <= v => ");
  CHECK(dup.rel.size() == 2);
}

TEST_CASE("nested parsing") {
  auto s = parse_nested("p(#a) -> p(#b), [bot -> all x. q(x, #b)]");
  CHECK(s.ante.size() == 1);
  CHECK(s.succ.size() == 1);
  CHECK(s.children.size() == 1);
  CHECK(s.children[0].ante.size() == 1);

  auto thm = parse_nested(" -> p -> p");
  CHECK(thm.ante.empty());
  CHECK(thm.succ.size() == 1);
  CHECK(thm.succ[0]->kind == Formula::Kind::Imp);

  // the last viable top-level arrow separates the two lists
  auto impl = parse_nested("p, p -> q -> q");
  CHECK(impl.ante.size() == 2);
  CHECK(impl.succ.size() == 1);
  CHECK(equal(impl.ante[1], parse_formula("p -> q")));

  auto empty = parse_nested(" -> ");
  CHECK(empty.ante.empty());
  CHECK(empty.succ.empty());
  CHECK(empty.children.empty());

  auto deep = parse_nested("p -> q, [r -> s, [ -> t]], [u -> ]");
  CHECK(deep.children.size() == 2);
  CHECK(deep.children[0].children.size() == 1);

  // print-parse round trip
  for (const char* str : {" -> p -> p", "p, p -> q -> q", "p -> q, [r -> s]", " -> ",
                          "p(#a) -> p(#b), [bot -> all x. q(x, #b)]"}) {
    auto n = parse_nested(str);
    CHECK(equal(n, parse_nested(to_string(n))));
  }
}

TEST_CASE("graphs of sequents") {
  auto lab = parse_labelled("w0<=w0, w0<=w1, w1<=w2, w0<=w2, w0<=w3, w0: p => ");
  auto g = graph_of(lab);
  CHECK(g.vertices.size() == 4);
  CHECK(g.edges.count({"w0", "w0"}) == 1);
  CHECK(g.edges.size() == 5);

  auto one = graph_of(parse_labelled("w: p => w: q"));
  CHECK(one.vertices == std::vector<Label>{"w"});
  CHECK(one.edges.empty());
  CHECK(one.lambda.at("w").first.size() == 1);
  CHECK(one.lambda.at("w").second.size() == 1);

  auto nes = graph_of(parse_nested("p -> q, [r -> s, [t -> u]], [v -> y]"));
  CHECK(nes.vertices == std::vector<Label>{"0", "0.0", "0.0.0", "0.1"});
  CHECK(nes.edges.size() == 3);

  // domain atoms do not induce edges
  auto domg = graph_of(parse_labelled("#a in D(w), w: p(#a) => "));
  CHECK(domg.edges.empty());
  CHECK(domg.vertices.size() == 1);
}

TEST_CASE("treelike") {
  CHECK(!is_treelike(parse_labelled("w0<=w0, w0<=w1, w1<=w2, w0<=w2, w0<=w3 => ")));
  auto r = is_treelike(parse_labelled("w0<=w1, w1<=w2, w0<=w3, w0: p => w2: q"));
  REQUIRE(r);
  CHECK(*r == "w0");
  auto single = is_treelike(parse_labelled("w: p => "));
  REQUIRE(single);
  CHECK(*single == "w");
  // backwards branching
  CHECK(!is_treelike(parse_labelled("w<=v, u<=v => ")));
  // disconnected
  CHECK(!is_treelike(parse_labelled("w<=v, u: p => ")));
}

TEST_CASE("paths") {
  auto rel = parse_labelled("w<=v, v<=u => ").rel;
  CHECK(path_exists(rel, "w", "u", PathMode::Directed));
  CHECK(!path_exists(parse_labelled("w<=v => ").rel, "v", "w", PathMode::Directed));
  CHECK(path_exists(parse_labelled("w<=v => ").rel, "v", "w", PathMode::Undirected));
  CHECK(path_exists(rel, "z", "z", PathMode::Directed));
  CHECK(path_exists(rel, "z", "z", PathMode::Undirected));
}

TEST_CASE("available parameters") {
  auto s = parse_nested("p(#a) -> p(#b), [bot -> all x. q(x, #b)]");
  CHECK(available_parameters(s, "0.0") == std::set<std::string>{"a", "b"});
  CHECK(available_parameters(s, "0") == std::set<std::string>{"a", "b"});
  CHECK_THROWS_AS(available_parameters(s, "0.1"), PositionNotFound);
  auto noparams = parse_nested("p -> q, [r -> s]");
  CHECK(available_parameters(noparams, "0").empty());
  CHECK(available_parameters(noparams, "0.0").empty());
  // monotone along the ancestor chain
  auto t = parse_nested("p(#a) -> , [q(#b) -> , [ -> r]]");
  auto at0 = available_parameters(t, "0");
  auto at00 = available_parameters(t, "0.0");
  auto at000 = available_parameters(t, "0.0.0");
  CHECK(std::includes(at00.begin(), at00.end(), at0.begin(), at0.end()));
  CHECK(std::includes(at000.begin(), at000.end(), at00.begin(), at00.end()));
}

TEST_CASE("iota") {
  CHECK(equal(iota(parse_nested("p -> q")), parse_formula("p -> q")));
  CHECK(equal(iota(parse_nested(" -> ")), parse_formula("(bot -> bot) -> bot")));
  CHECK(equal(iota(parse_nested("p -> q, [r -> s]")), parse_formula("p -> q | (r -> s)")));
  // closure of the interpretation is closed
  auto s = parse_nested("p(#a) -> q(#b)");
  CHECK(free_parameters(universal_closure(iota(s))).empty());
}

TEST_CASE("renaming") {
  auto s = parse_labelled("v: p => v: p");
  auto t = apply_label_renaming(s, {{"v", "w"}});
  CHECK(multiset_equal(t, parse_labelled("w: p => w: p")));

  auto d = parse_labelled("#b in D(w), w: p(#b) => ");
  auto e = apply_param_renaming(d, std::map<std::string, std::string>{{"b", "a"}});
  CHECK(multiset_equal(e, parse_labelled("#a in D(w), w: p(#a) => ")));

  auto untouched = apply_label_renaming(s, {{"z", "w"}});
  CHECK(multiset_equal(untouched, s));
}

TEST_CASE("canonical form and iso equality") {
  auto lam = parse_labelled("w0<=w1, w1<=w2, w0<=w3, w0: p => w2: q");
  auto ren = apply_label_renaming(lam, {{"w0", "a0"}, {"w1", "b1"}, {"w2", "c2"}, {"w3", "d3"}});
  CHECK(iso_equal(lam, ren));
  CHECK(!iso_equal(parse_labelled("w: p => "), parse_labelled("w: q => ")));
  CHECK_THROWS_AS(canonical_form(parse_labelled("w<=w => ")), NotTreelike);
  // idempotent
  auto c = canonical_form(lam);
  CHECK(multiset_equal(canonical_form(c), c));

  auto n1 = parse_nested("p -> q, [r -> s], [t -> u]");
  auto n2 = parse_nested("p -> q, [t -> u], [r -> s]");
  CHECK(iso_equal(n1, n2));
  CHECK(!equal(n1, n2));
}
