#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ddk/error.hpp"
#include "ddk/varset.hpp"

namespace ddk {

using NodeId = int32_t;
using VarId = int32_t;

enum class NodeKind : uint8_t {
  Sink,
  Decision,
  Nondet,
  /// Pass-through node produced by the DNNF simulation before contraction.
  /// Semantically identical to Nondet; serialised as `or`.
  Unlabeled,
};

enum class DiagramClass : uint8_t { Bdd, Fbdd, Obdd, VeeObdd, Vee1Obdd, KObdd };

const char* class_name(DiagramClass c);
std::optional<DiagramClass> parse_class(const std::string& s);

struct Node {
  NodeKind kind = NodeKind::Sink;
  bool value = false;  // sink bit
  VarId var = -1;
  NodeId lo = -1;
  NodeId hi = -1;
  std::vector<NodeId> kids;  // Nondet / Unlabeled successors

  bool is_sink() const { return kind == NodeKind::Sink; }
  bool is_decision() const { return kind == NodeKind::Decision; }
  bool is_or() const { return kind == NodeKind::Nondet || kind == NodeKind::Unlabeled; }
};

/// Total or partial assignment indexed by variable id; -1 = unbound.
using Assignment = std::vector<int8_t>;

/// Arena of decision / nondeterministic / sink nodes.
struct Diagram {
  std::vector<std::string> vars;
  std::vector<Node> nodes;
  NodeId root = -1;
  std::vector<VarId> order;  // empty when the diagram carries no ordering
  std::vector<int> layer;    // empty, or one entry per node (0 for sinks)
  DiagramClass cls = DiagramClass::Bdd;

  size_t size() const { return nodes.size(); }
  const Node& operator[](NodeId u) const { return nodes[u]; }

  VarId find_var(const std::string& name) const;
  VarId ensure_var(const std::string& name);

  NodeId add_sink(bool value);
  NodeId add_decision(VarId var, NodeId lo, NodeId hi);
  NodeId add_nondet(std::vector<NodeId> kids);

  /// pos[var] inside `order`, -1 for variables outside it.
  std::vector<int> positions() const;
  bool has_nondet() const;
  int num_layers() const;
};

template <class F>
void for_each_child(const Node& n, F&& f) {
  if (n.kind == NodeKind::Decision) {
    f(n.lo);
    f(n.hi);
  } else if (n.is_or()) {
    for (NodeId c : n.kids) f(c);
  }
}

/// Reachable nodes from `from` (default: root), children before parents.
/// Throws E_CYCLIC on a cycle.
std::vector<NodeId> topo_order(const Diagram& d, NodeId from = -1);

/// Copy keeping only nodes reachable from the root, renumbered in
/// topological order (children first) so sinks come first.
Diagram gc(const Diagram& d);

/// Variables tested in the sub-diagram of every node.
std::vector<VarSet> vars_below(const Diagram& d);
VarSet vars_below(const Diagram& d, NodeId u);

Assignment make_assignment(const Diagram& d, const std::vector<std::pair<std::string, bool>>& values);

bool eval(const Diagram& d, const Assignment& a);
/// Number of activated root-to-1-sink paths; saturates at UINT64_MAX.
uint64_t count_accepting_paths(const Diagram& d, const Assignment& a);

/// Class-tag invariants. Unambiguity (for vee1-obdd) is checked exhaustively
/// up to exhaustive_limit() and reported as unchecked beyond it.
Report check_class(const Diagram& d);
Report check_class_as(const Diagram& d, DiagramClass cls);
/// The four clauses of a simple vee1-OBDD.
Report check_simple(const Diagram& d);

/// Nodes computing constants: +1 for top, -1 for bottom, 0 otherwise.
/// Exact for unambiguous ordered diagrams (model counting); otherwise bottom
/// is exact and top is detected by 0-sink unreachability.
std::vector<int> constant_nodes(const Diagram& d);

Diagram make_simple(const Diagram& d);

Diagram apply_and(const Diagram& d1, const Diagram& d2, const std::vector<VarId>& order);
Diagram apply_or(const Diagram& d1, const Diagram& d2, const std::vector<VarId>& order);
Diagram conjoin_literal(const Diagram& d, VarId var, bool positive);
Diagram negate(const Diagram& d);
bool satisfiable(const Diagram& d);

/// Hash-consing reduction of a deterministic ordered diagram.
Diagram reduce(const Diagram& d);
/// Replaces nondeterministic nodes by the disjunction of their children
/// (ordered diagrams only); the result is a reduced OBDD.
Diagram determinize(const Diagram& d);

/// True iff every edge between decision nodes respects `order` (a path-wise
/// check). Witness receives an offending node pair when non-null.
bool respects_order(const Diagram& d, const std::vector<VarId>& order, std::vector<int>* witness = nullptr);

}  // namespace ddk
