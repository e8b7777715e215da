#ifndef IPROOF_JSON_IO_HPP
#define IPROOF_JSON_IO_HPP

#include <string>

#include "iproof/derivation.hpp"

namespace iproof {

struct DerivationFile {
  Calculus calculus;
  Derivation derivation;
};

// Derivation JSON: {"calculus": str, "admissible"?: bool, "rule": str,
// "conclusion": str, "inst": {"principal": [...], "eigen": [...],
// "witness"?: {...}, "subst"?: {...}, "cut"?: {...}}, "premises": [...]}.
// Sequent strings use the module grammars; save(load(x)) == x for files this
// library writes.
std::string save_derivation(const DerivationFile& d);
DerivationFile load_derivation(const std::string& json_text);

DerivationFile load_derivation_file(const std::string& path);
void save_derivation_file(const std::string& path, const DerivationFile& d);

}  // namespace iproof

#endif
