#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ddk/diagram.hpp"
#include "ddk/error.hpp"
#include "ddk/varset.hpp"

namespace ddk {

using GateId = int32_t;

enum class GateKind : uint8_t { Const, Lit, And, Or };

struct Gate {
  GateKind kind = GateKind::Const;
  bool value = false;  // constant bit, or literal polarity (true = positive)
  VarId var = -1;
  std::vector<GateId> kids;
};

/// NNF circuit: fanin-2 conjunctions, unbounded disjunctions, literals and
/// constants.
struct Circuit {
  std::vector<std::string> vars;
  std::vector<Gate> gates;
  GateId root = -1;

  size_t size() const { return gates.size(); }
  const Gate& operator[](GateId g) const { return gates[g]; }

  VarId find_var(const std::string& name) const;
  VarId ensure_var(const std::string& name);

  GateId add_const(bool value);
  GateId add_lit(VarId var, bool positive);
  GateId add_and(GateId a, GateId b);
  GateId add_or(std::vector<GateId> kids);
};

std::vector<GateId> topo_order(const Circuit& c, GateId from = -1);
Circuit gc(const Circuit& c);
std::vector<VarSet> gate_vars(const Circuit& c);

/// Full binary tree whose leaves carry variable names. Help variables (names
/// absent from a circuit universe) are allowed.
struct Vtree {
  struct VNode {
    std::string var;  // leaves only
    int left = -1;
    int right = -1;
    bool is_leaf() const { return left < 0; }
  };
  std::vector<VNode> nodes;
  int root = -1;

  int add_leaf(std::string var);
  int add_inner(int left, int right);
};

/// Derived navigation data for a vtree.
class VtreeIndex {
 public:
  explicit VtreeIndex(const Vtree& t);

  const Vtree& tree() const { return *t_; }
  int parent(int v) const { return parent_[v]; }
  int depth(int v) const { return depth_[v]; }
  /// Ancestor-or-self.
  bool is_ancestor(int a, int v) const { return tin_[a] <= tin_[v] && tout_[v] <= tout_[a]; }
  int lca(int a, int b) const;
  /// Leaf of a variable name, -1 if absent.
  int leaf_of(const std::string& var) const;
  /// Leaf variable names from left to right.
  const std::vector<std::string>& leaf_order() const { return leaves_; }
  bool is_linear() const;
  bool is_right_linear() const;

 private:
  const Vtree* t_;
  std::vector<int> parent_, depth_, tin_, tout_;
  std::vector<std::string> leaves_;
  std::unordered_map<std::string, int> leaf_index_;
};

/// Full binary check plus leaf/variable bijection.
Report check_vtree(const Vtree& t);
/// Right-linear vtree whose leaves follow `names`.
Vtree right_linear_vtree(const std::vector<std::string>& names);

bool eval_circuit(const Circuit& c, const Assignment& a);
Assignment make_assignment(const Circuit& c, const std::vector<std::pair<std::string, bool>>& values);

Report check_decomposable(const Circuit& c);
/// Children of every or-gate pairwise disjoint, decided over the gate's own
/// variables; gates beyond the exhaustive limit become unchecked.
Report check_deterministic(const Circuit& c);

struct RespectResult {
  Report report;
  std::vector<int> dnode;       // per gate, -1 unless an and-gate
  std::vector<uint8_t> swapped;  // 1 when the gate's first child sits under dnode's right child
};

RespectResult check_respects_vtree(const Circuit& c, const Vtree& t);

struct SddResult {
  Report report;
  /// Per gate: minimal vtree node respected, -1 for constants (respect any).
  std::vector<int> vnode;
  /// Per and-gate: 1 when the first child is the prime (left side).
  std::vector<uint8_t> prime_first;
};

SddResult check_sdd(const Circuit& c, const Vtree& t);

/// Removes constant inputs of and/or gates (constants survive only at the root).
Circuit normalize(const Circuit& c);
bool has_constant_inputs(const Circuit& c);

/// Number of 1-certificates representing `a` (saturating). Requires a circuit
/// without constant inputs to and/or gates.
uint64_t count_1certificates(const Circuit& c, const Assignment& a);
/// Up to `limit` certificates as sorted gate lists.
std::vector<std::vector<GateId>> list_1certificates(const Circuit& c, const Assignment& a, size_t limit);

struct CircuitWithVtree {
  Circuit circuit;
  Vtree vtree;
};

CircuitWithVtree obdd_to_sdd_rightlinear(const Diagram& d);
Diagram sdd_linear_to_uobdd(const Circuit& c, const Vtree& t);

}  // namespace ddk
