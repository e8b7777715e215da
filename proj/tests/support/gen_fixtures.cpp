#include <filesystem>
#include <iostream>

#include "iproof/checker.hpp"
#include "fixture_corpus.hpp"

// Regenerates the fixture corpus under fixtures/paper (or $IPROOF_FIXTURES).
int main() {
  namespace fs = std::filesystem;
  using namespace iproof;
  fs::path dir = fixtures::fixture_dir();
  fs::create_directories(dir);
  for (const auto& fx : fixtures::paper_fixtures()) {
    auto errs = check_derivation(fx.file.calculus, fx.file.derivation);
    if (!errs.empty()) {
      std::cerr << fx.name << " does not check: " << to_string(errs.front().error) << "\n";
      return 1;
    }
    save_derivation_file((dir / (fx.name + ".json")).string(), fx.file);
    std::cout << "wrote " << (dir / (fx.name + ".json")).string() << "\n";
  }
  return 0;
}
