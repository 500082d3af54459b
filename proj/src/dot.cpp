#include "ddk/dot.hpp"

#include <sstream>

namespace ddk::dot {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string diagram(const Diagram& d) {
  std::ostringstream o;
  o << "digraph dd {\n  ordering=out;\n";
  for (NodeId u : topo_order(d)) {
    const Node& n = d.nodes[u];
    o << "  n" << u << " [";
    if (n.is_sink())
      o << "shape=box,label=" << (n.value ? "\"1\"" : "\"0\"");
    else if (n.is_decision())
      o << "shape=circle,label=" << quote(d.vars[n.var]);
    else
      o << "shape=circle,label=\"or\"";
    if (!d.layer.empty() && !n.is_sink()) o << ",xlabel=\"L" << d.layer[u] << "\"";
    o << "];\n";
  }
  for (NodeId u : topo_order(d)) {
    const Node& n = d.nodes[u];
    if (n.is_decision()) {
      o << "  n" << u << " -> n" << n.lo << " [style=dashed];\n";
      o << "  n" << u << " -> n" << n.hi << ";\n";
    }
    for (NodeId c : n.kids) o << "  n" << u << " -> n" << c << ";\n";
  }
  o << "  root [shape=point];\n  root -> n" << d.root << ";\n}\n";
  return o.str();
}

std::string circuit(const Circuit& c) {
  std::ostringstream o;
  o << "digraph nnf {\n  ordering=out;\n";
  auto topo = topo_order(c);
  for (GateId g : topo) {
    const Gate& gt = c.gates[g];
    std::string label;
    switch (gt.kind) {
      case GateKind::Const: label = gt.value ? "1" : "0"; break;
      case GateKind::Lit: label = (gt.value ? "" : "-") + c.vars[gt.var]; break;
      case GateKind::And: label = "and"; break;
      case GateKind::Or: label = "or"; break;
    }
    o << "  g" << g << " [shape=circle,label=" << quote(label) << "];\n";
  }
  for (GateId g : topo)
    for (GateId k : c.gates[g].kids) o << "  g" << g << " -> g" << k << ";\n";
  o << "}\n";
  return o.str();
}

std::string vtree(const Vtree& t) {
  std::ostringstream o;
  o << "graph vtree {\n  ordering=out;\n";
  for (size_t v = 0; v < t.nodes.size(); ++v) {
    const auto& n = t.nodes[v];
    o << "  v" << v << " [shape=" << (n.is_leaf() ? "plaintext" : "circle") << ",label="
      << quote(n.is_leaf() ? n.var : std::to_string(v)) << "];\n";
  }
  for (size_t v = 0; v < t.nodes.size(); ++v)
    if (!t.nodes[v].is_leaf())
      o << "  v" << v << " -- v" << t.nodes[v].left << ";\n  v" << v << " -- v" << t.nodes[v].right << ";\n";
  o << "}\n";
  return o.str();
}

}  // namespace ddk::dot
