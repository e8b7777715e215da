#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "iproof/backward.hpp"
#include "iproof/errors.hpp"
#include "iproof/dot.hpp"
#include "iproof/json_io.hpp"
#include "iproof/parser.hpp"
#include "iproof/prover.hpp"
#include "iproof/transform.hpp"
#include "iproof/translate.hpp"

using namespace iproof;
namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitUsage = 64;

Calculus parse_calculus(const std::string& name, bool admissible) {
  auto c = calculus_from_name(name);
  if (!c) {
    std::cerr << "unknown calculus '" << name << "'\n";
    std::exit(kExitUsage);
  }
  return Calculus{*c, admissible};
}

// Paths resolve against the working directory first, then $IPROOF_FIXTURES.
std::string resolve_path(const std::string& path) {
  if (fs::exists(path)) return path;
  if (const char* env = std::getenv("IPROOF_FIXTURES")) {
    fs::path alt = fs::path(env) / path;
    if (fs::exists(alt)) return alt.string();
  }
  return path;
}

void emit(const std::string& text, const std::string& to_file) {
  if (to_file.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream out(to_file);
    out << text;
  }
}

void print_tree(const Derivation& d, std::size_t depth) {
  std::cout << std::string(2 * depth, ' ') << "[" << rule_name(d.inst.rule) << "] "
            << to_string(d.conclusion) << "\n";
  for (const auto& p : d.premises) print_tree(p, depth + 1);
}

int report(const DerivationFile& f, bool as_json, const std::string& emit_file) {
  if (!emit_file.empty() || as_json) {
    std::string text = save_derivation(f);
    if (!emit_file.empty()) emit(text, emit_file);
    if (as_json) std::cout << text;
  }
  if (!as_json) {
    std::cout << "calculus: " << calculus_name(f.calculus.name)
              << (f.calculus.allow_admissible ? " (+admissible)" : "") << "\n";
    print_tree(f.derivation, 0);
  }
  return 0;
}

NestedStructuralArgs parse_structural_args(const std::vector<std::string>& kvs) {
  NestedStructuralArgs args;
  args.pos = "0";
  for (const auto& kv : kvs) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::cerr << "--arg expects key=value, got '" << kv << "'\n";
      std::exit(kExitUsage);
    }
    std::string k = kv.substr(0, eq), v = kv.substr(eq + 1);
    if (k == "pos") args.pos = v;
    else if (k == "child") args.child = v;
    else if (k == "child2") args.child2 = v;
    else if (k == "ante") args.ante.push_back(parse_formula(v));
    else if (k == "succ") args.succ.push_back(parse_formula(v));
    else if (k == "subtree") args.subtree = parse_nested(v);
    else if (k == "from") args.from = v;
    else if (k == "to") args.to = v;
    else {
      std::cerr << "unknown --arg key '" << k << "'\n";
      std::exit(kExitUsage);
    }
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"proof toolkit for labelled and nested intuitionistic sequent calculi"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output");

  // ---- check ----
  auto* check = app.add_subcommand("check", "check a derivation file");
  std::string check_calc, check_file;
  bool check_adm = false;
  check->add_option("--calc", check_calc, "override the calculus recorded in the file");
  check->add_flag("--adm", check_adm, "accept the admissible structural rules");
  check->add_option("file", check_file, "derivation JSON")->required();

  // ---- prove ----
  auto* prove_cmd = app.add_subcommand("prove", "backward proof search in a nested calculus");
  std::string prove_calc = "NInt", prove_goal, prove_emit;
  std::size_t prove_depth = 12, prove_nodes = 100000;
  bool prove_seq = false;
  prove_cmd->add_option("--calc", prove_calc, "NInt, NIntQ, or NIntQC");
  prove_cmd->add_option("--depth", prove_depth, "quantifier budget per branch (default 12)");
  prove_cmd->add_option("--nodes", prove_nodes, "search node limit");
  prove_cmd->add_flag("--seq", prove_seq, "treat the goal as a nested sequent, not a formula");
  prove_cmd->add_option("--emit", prove_emit, "write the proof JSON here");
  prove_cmd->add_option("goal", prove_goal, "formula (or sequent with --seq)")->required();

  // ---- refine ----
  auto* refine_cmd = app.add_subcommand("refine", "eliminate the structural rules from a G3 proof");
  std::string refine_file, refine_emit;
  refine_cmd->add_option("file", refine_file, "derivation JSON")->required();
  refine_cmd->add_option("--emit", refine_emit, "write the refined proof here");

  // ---- expand ----
  auto* expand_cmd = app.add_subcommand("expand", "expand a refined proof back into its G3 system");
  std::string expand_file, expand_emit;
  expand_cmd->add_option("file", expand_file, "derivation JSON")->required();
  expand_cmd->add_option("--emit", expand_emit, "write the expanded proof here");

  // ---- translate-seq ----
  auto* tseq = app.add_subcommand("translate-seq", "translate a sequent between the two notations");
  std::string tseq_to, tseq_text;
  tseq->add_option("--to", tseq_to, "nested or labelled")->required();
  tseq->add_option("sequent", tseq_text, "sequent text")->required();

  // ---- translate-proof ----
  auto* tproof = app.add_subcommand("translate-proof", "translate a derivation between notations");
  std::string tproof_to, tproof_file, tproof_emit;
  tproof->add_option("--to", tproof_to, "nested or labelled")->required();
  tproof->add_option("file", tproof_file, "derivation JSON")->required();
  tproof->add_option("--emit", tproof_emit, "write the translated proof here");

  // ---- admissible ----
  auto* adm = app.add_subcommand("admissible", "apply an admissible structural transform");
  std::string adm_rule, adm_file, adm_emit;
  std::vector<std::string> adm_args;
  adm->add_option("--rule", adm_rule, "wk, lsub, psub, ctr_rel, ctr_l, ctr_r, or an n_* rule")
      ->required();
  adm->add_option("--arg", adm_args, "rule arguments as key=value, repeatable");
  adm->add_option("file", adm_file, "derivation JSON")->required();
  adm->add_option("--emit", adm_emit, "write the transformed proof here");

  // ---- interpret ----
  auto* interp = app.add_subcommand("interpret", "formula interpretation of a nested sequent");
  std::string interp_text;
  bool interp_closed = false;
  interp->add_flag("--closed", interp_closed, "take the universal closure");
  interp->add_option("sequent", interp_text, "nested sequent")->required();

  // ---- graph ----
  auto* graph = app.add_subcommand("graph", "DOT export of a sequent graph or derivation");
  std::string graph_seq, graph_proof, graph_emit;
  bool graph_nested = false;
  graph->add_option("--proof", graph_proof, "derivation JSON to render");
  graph->add_flag("--nested", graph_nested, "parse the positional sequent as nested");
  graph->add_option("--emit", graph_emit, "write the DOT text here");
  graph->add_option("sequent", graph_seq, "sequent text (labelled unless --nested)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*check) {
      auto file = load_derivation_file(resolve_path(check_file));
      if (!check_calc.empty()) file.calculus = parse_calculus(check_calc, check_adm);
      else if (check_adm) file.calculus.allow_admissible = true;
      auto errs = check_derivation(file.calculus, file.derivation);
      if (as_json) {
        json j;
        j["calculus"] = calculus_name(file.calculus.name);
        j["ok"] = errs.empty();
        j["errors"] = json::array();
        for (const auto& e : errs)
          j["errors"].push_back({{"path", e.path}, {"error", to_string(e.error)}});
        std::cout << j.dump(2) << "\n";
      } else if (errs.empty()) {
        std::cout << "ok: derivation checks in " << calculus_name(file.calculus.name) << "\n";
      } else {
        for (const auto& e : errs)
          std::cerr << "at [" << (e.path.empty() ? "root" : e.path) << "]: " << to_string(e.error)
                    << "\n";
      }
      return errs.empty() ? 0 : 1;
    }

    if (*prove_cmd) {
      Calculus cal = parse_calculus(prove_calc, false);
      if (!cal.nested()) {
        std::cerr << "prove expects NInt, NIntQ, or NIntQC\n";
        return kExitUsage;
      }
      SearchLimits lim{prove_depth, prove_nodes};
      ProveResult r = prove_seq ? prove(cal, parse_nested(prove_goal), lim)
                                : prove_formula(cal, parse_formula(prove_goal), lim);
      const char* verdict = r.status == ProveResult::Status::Proved ? "proved"
                            : r.status == ProveResult::Status::Unprovable ? "unprovable"
                                                                          : "unknown";
      if (as_json) {
        json j;
        j["status"] = verdict;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << verdict << "\n";
      }
      if (r.proved()) {
        DerivationFile out{cal, *r.derivation};
        if (!prove_emit.empty()) emit(save_derivation(out), prove_emit);
        if (!as_json) print_tree(out.derivation, 0);
      }
      switch (r.status) {
        case ProveResult::Status::Proved: return 0;
        case ProveResult::Status::Unprovable: return 1;
        case ProveResult::Status::Unknown: return 2;
      }
    }

    if (*refine_cmd) {
      auto file = load_derivation_file(resolve_path(refine_file));
      auto out = refine(file.calculus, file.derivation);
      return report({out.calculus, out.derivation}, as_json, refine_emit);
    }

    if (*expand_cmd) {
      auto file = load_derivation_file(resolve_path(expand_file));
      auto out = expand_to_g3(file.calculus, file.derivation);
      return report({out.calculus, out.derivation}, as_json, expand_emit);
    }

    if (*tseq) {
      if (tseq_to == "nested") {
        auto s = to_nested(parse_labelled(tseq_text));
        std::cout << to_string(s) << "\n";
      } else if (tseq_to == "labelled") {
        auto s = to_labelled(parse_nested(tseq_text));
        std::cout << to_string(s) << "\n";
      } else {
        std::cerr << "--to expects nested or labelled\n";
        return kExitUsage;
      }
      return 0;
    }

    if (*tproof) {
      auto file = load_derivation_file(resolve_path(tproof_file));
      CalculusDerivation out = tproof_to == "nested"
                                   ? proof_to_nested(file.calculus, file.derivation)
                                   : proof_to_labelled(file.calculus, file.derivation);
      return report({out.calculus, out.derivation}, as_json, tproof_emit);
    }

    if (*adm) {
      auto file = load_derivation_file(resolve_path(adm_file));
      auto rule = rule_from_name(adm_rule);
      if (!rule) {
        std::cerr << "unknown rule '" << adm_rule << "'\n";
        return kExitUsage;
      }
      Derivation out = file.derivation;
      auto kv = [&](const char* key) -> std::string {
        for (const auto& a : adm_args) {
          auto eq = a.find('=');
          if (eq != std::string::npos && a.substr(0, eq) == key) return a.substr(eq + 1);
        }
        return "";
      };
      switch (*rule) {
        case RuleId::wk: {
          LabelledSequent extra = parse_labelled(kv("items").empty() ? " => " : kv("items"));
          out = weaken(file.calculus, out, extra);
          break;
        }
        case RuleId::lsub:
          out = rename_label(file.calculus, out, kv("replace"), kv("with"));
          break;
        case RuleId::psub:
          out = rename_param(file.calculus, out, kv("replace"), kv("with"));
          break;
        case RuleId::ctr_rel: {
          auto s = parse_labelled(kv("item") + " => ");
          out = contract_rel(file.calculus, out, s.rel.at(0));
          break;
        }
        case RuleId::ctr_l:
          out = contract_ante(file.calculus, out, kv("label"), parse_formula(kv("formula")));
          break;
        case RuleId::ctr_r:
          out = contract_succ(file.calculus, out, kv("label"), parse_formula(kv("formula")));
          break;
        default:
          out = nested_structural(file.calculus, *rule, parse_structural_args(adm_args), out);
      }
      return report({file.calculus, out}, as_json, adm_emit);
    }

    if (*interp) {
      auto f = iota(parse_nested(interp_text));
      if (interp_closed) f = universal_closure(f);
      std::cout << to_string(f) << "\n";
      return 0;
    }

    if (*graph) {
      std::string dot;
      if (!graph_proof.empty()) {
        auto file = load_derivation_file(resolve_path(graph_proof));
        dot = to_dot(file.derivation);
      } else if (!graph_seq.empty()) {
        dot = graph_nested ? to_dot(parse_nested(graph_seq)) : to_dot(parse_labelled(graph_seq));
      } else {
        std::cerr << "graph needs a sequent or --proof FILE\n";
        return kExitUsage;
      }
      emit(dot, graph_emit);
      return 0;
    }
  } catch (const iproof::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
