#pragma once

#include <unordered_map>

#include "ddk/diagram.hpp"
#include "ddk/truth_table.hpp"

namespace ddk {

enum class BoolOp : uint8_t { And, Or, Xor };

/// Hash-consed construction of ordered diagrams. Decision nodes are reduced
/// (lo == hi collapses, isomorphic nodes merge); nondeterministic nodes are
/// hash-consed on their child list. Node 0 is the 0-sink, node 1 the 1-sink.
class DiagramBuilder {
 public:
  DiagramBuilder(std::vector<std::string> vars, std::vector<VarId> order);

  NodeId sink(bool value) const { return value ? 1 : 0; }
  NodeId decision(VarId var, NodeId lo, NodeId hi);
  NodeId nondet(std::vector<NodeId> kids);
  NodeId literal(VarId var, bool positive);
  NodeId cube(const std::vector<std::pair<VarId, bool>>& lits);

  /// Copies the sub-diagram of `u`; `src` variables are matched by name.
  NodeId import(const Diagram& src, NodeId u);

  /// Bryant's apply on deterministic nodes.
  NodeId apply(BoolOp op, NodeId a, NodeId b);
  NodeId negate(NodeId a);
  /// Disjunction of the functions below a nondeterministic node.
  NodeId determinize(NodeId a);

  /// Reduced OBDD of a truth table whose variable list names universe vars.
  NodeId from_table(const TruthTable& t);

  const Node& node(NodeId u) const { return nodes_[u]; }
  /// Position of the node's variable in the order; n for sinks. For
  /// nondeterministic nodes the minimum over children.
  int level(NodeId u) const { return level_[u]; }
  int num_levels() const { return static_cast<int>(order_.size()); }
  const std::vector<VarId>& order() const { return order_; }
  const std::vector<std::string>& vars() const { return vars_; }
  size_t size() const { return nodes_.size(); }

  /// Garbage-collected diagram rooted at `root`.
  Diagram finish(NodeId root, DiagramClass cls) const;

 private:
  struct Triple {
    int64_t a, b, c;
    bool operator==(const Triple&) const = default;
  };
  struct TripleHash {
    size_t operator()(const Triple& t) const;
  };
  struct VecHash {
    size_t operator()(const std::vector<NodeId>& k) const;
  };

  NodeId add(Node n, int level);
  NodeId apply_rec(BoolOp op, NodeId a, NodeId b);
  NodeId from_table_rec(const TruthTable& t, const std::vector<int>& seq, size_t depth, uint64_t row);

  std::vector<std::string> vars_;
  std::vector<VarId> order_;
  std::vector<int> pos_;
  std::vector<Node> nodes_;
  std::vector<int> level_;
  std::unordered_map<Triple, NodeId, TripleHash> unique_;
  std::unordered_map<std::vector<NodeId>, NodeId, VecHash> unique_or_;
  std::unordered_map<Triple, NodeId, TripleHash> memo_;
};

}  // namespace ddk

namespace ddk {

/// Finishes `b` with a nondeterministic source over `branches`, keeping the
/// source node even when fewer than two branches survive.
Diagram finish_with_source(const DiagramBuilder& b, const std::vector<NodeId>& branches, DiagramClass cls);

}  // namespace ddk
