#include "doctest.h"
#include <fstream>
#include <sstream>

#include <filesystem>

#include "iproof/transform.hpp"
#include "fixture_corpus.hpp"

using namespace iproof;

TEST_CASE("every encoded derivation checks in its stated calculus") {
  for (const auto& fx : fixtures::paper_fixtures()) {
    auto errs = check_derivation(fx.file.calculus, fx.file.derivation);
    if (!errs.empty())
      FAIL(fx.name, " at ", errs.front().path, ": ", to_string(errs.front().error));
  }
}

TEST_CASE("fixture corpus files round trip bit-exactly") {
  namespace fs = std::filesystem;
  fs::path dir = fixtures::fixture_dir();
  REQUIRE_MESSAGE(fs::exists(dir), "run gen_fixtures first");
  std::size_t count = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".json") continue;
    ++count;
    std::ifstream in(entry.path());
    std::stringstream ss;
    ss << in.rdbuf();
    auto file = load_derivation(ss.str());
    CHECK(checks(file.calculus, file.derivation));
    CHECK(save_derivation(file) == ss.str());
  }
  CHECK(count >= fixtures::paper_fixtures().size());
}

TEST_CASE("refinable fixtures survive the pipeline") {
  for (const auto& fx : fixtures::paper_fixtures()) {
    if (!fx.refinable) continue;
    auto r = refine(fx.file.calculus, fx.file.derivation);
    if (!checks(r.calculus, r.derivation)) FAIL("refined ", fx.name, " does not check");
    CHECK(multiset_equal(r.derivation.labelled(), fx.file.derivation.labelled()));
    auto used = rules_used(r.derivation);
    for (RuleId bad : {RuleId::ref, RuleId::tra, RuleId::nd, RuleId::cd, RuleId::ihd, RuleId::id,
                       RuleId::id_q, RuleId::imp_l})
      if (used.count(bad)) FAIL(fx.name, " kept ", rule_name(bad));
  }
}
