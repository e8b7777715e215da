#ifndef IPROOF_TESTS_FIXTURE_CORPUS_HPP
#define IPROOF_TESTS_FIXTURE_CORPUS_HPP

#include <string>
#include <vector>

#include "iproof/json_io.hpp"

namespace iproof::fixtures {

struct Fixture {
  std::string name;  // file stem under fixtures/paper/
  DerivationFile file;
  bool refinable;  // part of the refinement corpus (G3 family, no cut)
};

// The hand-encoded derivation corpus; every entry checks in its calculus.
const std::vector<Fixture>& paper_fixtures();

// Directory resolution: $IPROOF_FIXTURES, else fixtures/paper under the
// repository root baked in at configure time.
std::string fixture_dir();

}  // namespace iproof::fixtures

#endif
