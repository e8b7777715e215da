#include "iproof/json_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

#include "iproof/errors.hpp"
#include "iproof/parser.hpp"

namespace iproof {
namespace {

using json = nlohmann::ordered_json;

json ref_to_json(const SeqRef& r, bool nested) {
  json j = json::object();
  switch (r.kind) {
    case SeqRef::Kind::Rel: j["rel"] = r.index; break;
    case SeqRef::Kind::Ante:
      if (nested) j["pos"] = r.pos;
      j["ante"] = r.index;
      break;
    case SeqRef::Kind::Succ:
      if (nested) j["pos"] = r.pos;
      j["succ"] = r.index;
      break;
    case SeqRef::Kind::LabelArg: j["label"] = r.label; break;
    case SeqRef::Kind::Child: j["child"] = r.pos; break;
  }
  return j;
}

SeqRef ref_from_json(const json& j) {
  if (j.contains("rel")) return SeqRef::rel(j.at("rel").get<std::size_t>());
  if (j.contains("ante"))
    return SeqRef::ante(j.at("ante").get<std::size_t>(), j.value("pos", std::string()));
  if (j.contains("succ"))
    return SeqRef::succ(j.at("succ").get<std::size_t>(), j.value("pos", std::string()));
  if (j.contains("label")) return SeqRef::label_arg(j.at("label").get<std::string>());
  if (j.contains("child")) return SeqRef::child(j.at("child").get<std::string>());
  throw Unsupported("unknown principal reference: " + j.dump());
}

json node_to_json(const Derivation& d, bool nested) {
  json j = json::object();
  j["rule"] = rule_name(d.inst.rule);
  j["conclusion"] = to_string(d.conclusion);
  json inst = json::object();
  inst["principal"] = json::array();
  for (const auto& r : d.inst.principal) inst["principal"].push_back(ref_to_json(r, nested));
  inst["eigen"] = d.inst.eigen;
  if (d.inst.witness) inst["witness"] = {{"param", d.inst.witness->param}, {"var", d.inst.witness->var}};
  if (d.inst.subst)
    inst["subst"] = {{"kind", d.inst.subst->kind == Renaming::Kind::Label ? "label" : "param"},
                     {"replace", d.inst.subst->from},
                     {"with", d.inst.subst->to}};
  if (d.inst.cut) inst["cut"] = {{"at", d.inst.cut->at}, {"formula", to_string(d.inst.cut->formula)}};
  j["inst"] = inst;
  j["premises"] = json::array();
  for (const auto& p : d.premises) j["premises"].push_back(node_to_json(p, nested));
  return j;
}

Derivation node_from_json(const json& j, bool nested) {
  Derivation d;
  auto rule = rule_from_name(j.at("rule").get<std::string>());
  if (!rule) throw Unsupported("unknown rule name: " + j.at("rule").get<std::string>());
  d.inst.rule = *rule;
  std::string concl = j.at("conclusion").get<std::string>();
  if (nested) d.conclusion = parse_nested(concl);
  else d.conclusion = parse_labelled(concl);
  const json& inst = j.at("inst");
  for (const auto& r : inst.value("principal", json::array())) d.inst.principal.push_back(ref_from_json(r));
  for (const auto& e : inst.value("eigen", json::array())) d.inst.eigen.push_back(e.get<std::string>());
  if (inst.contains("witness"))
    d.inst.witness = Witness{inst["witness"].at("param").get<std::string>(),
                             inst["witness"].at("var").get<std::string>()};
  if (inst.contains("subst"))
    d.inst.subst = Renaming{inst["subst"].at("kind").get<std::string>() == "label"
                                ? Renaming::Kind::Label
                                : Renaming::Kind::Param,
                            inst["subst"].at("replace").get<std::string>(),
                            inst["subst"].at("with").get<std::string>()};
  if (inst.contains("cut"))
    d.inst.cut = CutFormula{inst["cut"].at("at").get<std::string>(),
                            parse_formula(inst["cut"].at("formula").get<std::string>())};
  for (const auto& p : j.value("premises", json::array())) d.premises.push_back(node_from_json(p, nested));
  return d;
}

void collect_arities(const FormulaPtr& f, std::map<std::string, std::size_t>& arities) {
  if (f->kind == Formula::Kind::Atom) {
    auto [it, fresh] = arities.emplace(f->head, f->args.size());
    if (!fresh && it->second != f->args.size()) throw ArityError(f->head, it->second, f->args.size());
  }
  if (f->lhs) collect_arities(f->lhs, arities);
  if (f->rhs) collect_arities(f->rhs, arities);
}

void collect_arities(const Sequent& s, std::map<std::string, std::size_t>& arities) {
  if (std::holds_alternative<LabelledSequent>(s)) {
    const auto& ls = std::get<LabelledSequent>(s);
    for (const auto& [w, f] : ls.ante) collect_arities(f, arities);
    for (const auto& [w, f] : ls.succ) collect_arities(f, arities);
  } else {
    struct Walk {
      static void run(const NestedSequent& n, std::map<std::string, std::size_t>& a) {
        for (const auto& f : n.ante) collect_arities(f, a);
        for (const auto& f : n.succ) collect_arities(f, a);
        for (const auto& c : n.children) run(c, a);
      }
    };
    Walk::run(std::get<NestedSequent>(s), arities);
  }
}

void check_arities(const Derivation& d, std::map<std::string, std::size_t>& arities) {
  collect_arities(d.conclusion, arities);
  for (const auto& p : d.premises) check_arities(p, arities);
}

}  // namespace

std::string save_derivation(const DerivationFile& d) {
  Calculus c = d.calculus;
  json j = json::object();
  j["calculus"] = calculus_name(c.name);
  if (c.allow_admissible) j["admissible"] = true;
  json node = node_to_json(d.derivation, c.nested());
  for (auto& [k, v] : node.items()) j[k] = v;
  return j.dump(2) + "\n";
}

DerivationFile load_derivation(const std::string& json_text) {
  json j = json::parse(json_text);
  auto name = calculus_from_name(j.at("calculus").get<std::string>());
  if (!name) throw Unsupported("unknown calculus: " + j.at("calculus").get<std::string>());
  Calculus c{*name, j.value("admissible", false)};
  Derivation d = node_from_json(j, c.nested());
  std::map<std::string, std::size_t> arities;
  check_arities(d, arities);
  return {c, std::move(d)};
}

DerivationFile load_derivation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Unsupported("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_derivation(ss.str());
}

void save_derivation_file(const std::string& path, const DerivationFile& d) {
  std::ofstream out(path);
  if (!out) throw Unsupported("cannot write " + path);
  out << save_derivation(d);
}

}  // namespace iproof
