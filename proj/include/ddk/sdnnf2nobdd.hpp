#pragma once

#include <string>
#include <vector>

#include "ddk/circuit.hpp"
#include "ddk/diagram.hpp"

namespace ddk::sdnnf2nobdd {

/// Per vtree node: number of and-gates decomposed there, and subtree sums of
/// its children.
struct MassTable {
  std::vector<uint64_t> m, ml, mr;
  uint64_t total = 0;
};

MassTable compute_mass(const Circuit& c, const Vtree& t);

enum class EdgeClass : uint8_t { Neutral, Light, Heavy };

/// Per gate, per input slot. Only and-gate inputs are light or heavy.
std::vector<std::vector<EdgeClass>> classify_edges(const Circuit& c, const Vtree& t, const MassTable& m);

/// Leaves read left to right, children swapped where M_l > M_r.
std::vector<std::string> induced_order(const Vtree& t, const MassTable& m);

struct Result {
  Diagram raw;      // before contraction; and-nodes and 1-sinks with s != {} stay unlabeled
  Diagram diagram;  // contracted
  std::vector<std::string> order;
  MassTable mass;
  uint64_t n_lowered = 0;   // N: non-literal gates plus three nodes per literal
  uint64_t m_and = 0;       // M
  uint64_t l_light = 0;     // L: most light edges on a root-to-leaf path
  uint64_t raw_nodes = 0;   // generated (u, s) pairs
  long double bound() const;  // N (M+1)^L
};

/// N, M and L of a circuit respecting `t`, without running the simulation.
struct Quantities {
  uint64_t n_lowered = 0, m_and = 0, l_light = 0;
};
Quantities measure(const Circuit& c, const Vtree& t);

/// Requires a circuit respecting `t` without constant inputs to and/or gates.
Result simulate(const Circuit& c, const Vtree& t);

/// Splices unlabeled nodes of out-degree one and re-tags the rest as
/// nondeterministic. Throws E_DANGLING on an unlabeled node without successor.
Diagram contract_unlabeled(const Diagram& d);

/// For every input over the circuit variables (at most `nmax` of them),
/// compares accepting paths of `d` with 1-certificates of `c`.
Report certify_path_certificate_bijection(const Circuit& c, const Diagram& d, int nmax);

}  // namespace ddk::sdnnf2nobdd
