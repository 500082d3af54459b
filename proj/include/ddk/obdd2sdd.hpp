#pragma once

#include <string>
#include <vector>

#include "ddk/circuit.hpp"
#include "ddk/diagram.hpp"

namespace ddk::obdd2sdd {

/// Partial assignment over the order prefix before Y. `values[p]` is the bit
/// of the variable at order position p < start.
struct BetaChoice {
  NodeId node = -1;
  int start = 0;  // Y = order positions >= start
  std::vector<int8_t> values;
};

/// Order position of the smallest variable below each node (|order| for sinks).
std::vector<int> min_positions(const Diagram& f);

/// Lexicographically smallest assignment (0 < 1, order position by position)
/// under which an accepting path passes `u`. Throws E_NO_BETA when none exists.
BetaChoice beta_pick(const Diagram& f, NodeId u);

/// Inner nodes with vars in Y (positions >= start) that are not reachable from
/// another inner node whose vars lie in Y.
std::vector<NodeId> maximal_nodes(const Diagram& f, int start);

/// Nodes where the beta-consistent paths of `f` first enter Y, with or-nodes
/// replaced by their children. `beta` refers to order positions, which must
/// name the same variables in `f` as in the diagram it was picked from.
std::vector<NodeId> r_plus(const Diagram& f, const BetaChoice& beta);

/// The help vtree: v_i -> (v_i', h[x_i..x_n]), v_i' -> (x_i, v_{i+1}), v_n' = x_n.
Vtree build_help_vtree(const std::vector<std::string>& names);
std::string help_var(const std::vector<std::string>& names, size_t i);

inline uint64_t size_bound(uint64_t n) { return 2 * n * n + 3 * n; }

struct OrInfo {
  bool in_fbar = false;
  NodeId node = -1;
  BetaChoice beta;
  std::vector<NodeId> rplus;      // in the diagram holding `node`
  std::vector<NodeId> rplus_bar;  // in the partner
};

struct Result {
  Circuit circuit;
  Vtree vtree;
  uint64_t n_input = 0;  // |f| + |fbar|
  std::vector<GateId> gate_f, gate_fbar;  // gate of (u, empty) after pruning, -1 if pruned
  std::vector<OrInfo> ors;
  bool complement_checked = false;
};

struct Options {
  bool check_complement = true;
};

/// Requires simple vee1-OBDDs over a common order computing complementary
/// functions (checked exhaustively within the exhaustive limit).
Result simulate(const Diagram& f, const Diagram& fbar, const Options& opt = {});

/// Partner-free variant: or-nodes only get elements for their own children.
/// The output is a structured d-DNNF over the help vtree.
Result uobdd_to_structured_ddnnf(const Diagram& f);

}  // namespace ddk::obdd2sdd
