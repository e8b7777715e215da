#include "iproof/dot.hpp"

#include <sstream>

namespace iproof {
namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string component_label(const SequentGraph& g, const Label& v) {
  const auto& [ante, succ] = g.lambda.at(v);
  std::string s;
  for (std::size_t i = 0; i < ante.size(); ++i) {
    if (i) s += ", ";
    s += to_string(ante[i]);
  }
  s += " => ";
  for (std::size_t i = 0; i < succ.size(); ++i) {
    if (i) s += ", ";
    s += to_string(succ[i]);
  }
  return v + ": " + s;
}

void emit_graph(std::ostream& os, const SequentGraph& g, const std::string& prefix,
                const std::string& indent) {
  std::map<Label, std::string> ids;
  std::size_t n = 0;
  for (const auto& v : g.vertices) ids[v] = prefix + std::to_string(n++);
  for (const auto& v : g.vertices)
    os << indent << ids[v] << " [label=\"" << escape(component_label(g, v)) << "\"];\n";
  for (const auto& [a, b] : g.edges) os << indent << ids[a] << " -> " << ids[b] << ";\n";
}

}  // namespace

std::string to_dot(const SequentGraph& g, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n  node [shape=box];\n";
  emit_graph(os, g, "n", "  ");
  os << "}\n";
  return os.str();
}

std::string to_dot(const LabelledSequent& s) { return to_dot(graph_of(s)); }
std::string to_dot(const NestedSequent& s) { return to_dot(graph_of(s)); }

namespace {

void emit_node(std::ostream& os, const Derivation& d, const std::string& id,
               std::vector<std::pair<std::string, std::string>>& links) {
  SequentGraph g = d.is_labelled() ? graph_of(d.labelled()) : graph_of(d.nested());
  os << "  subgraph cluster_" << id << " {\n";
  os << "    label=\"" << escape(rule_name(d.inst.rule)) << "\";\n";
  if (g.vertices.empty())
    os << "    " << id << "_n0 [label=\"" << escape(to_string(d.conclusion)) << "\"];\n";
  else
    emit_graph(os, g, id + "_n", "    ");
  os << "  }\n";
  for (std::size_t k = 0; k < d.premises.size(); ++k) {
    std::string child = id + "_" + std::to_string(k);
    emit_node(os, d.premises[k], child, links);
    links.emplace_back(child + "_n0", id + "_n0");
  }
}

}  // namespace

std::string to_dot(const Derivation& d) {
  std::ostringstream os;
  os << "digraph derivation {\n  node [shape=box];\n  compound=true;\n";
  std::vector<std::pair<std::string, std::string>> links;
  emit_node(os, d, "d", links);
  for (const auto& [a, b] : links)
    os << "  " << a << " -> " << b << " [style=dashed];\n";
  os << "}\n";
  return os.str();
}

}  // namespace iproof
