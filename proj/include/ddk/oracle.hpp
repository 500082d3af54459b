#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ddk/circuit.hpp"
#include "ddk/diagram.hpp"
#include "ddk/truth_table.hpp"

namespace ddk {

/// Exhaustive tables, evaluated block-wise with the word kernels. Variables
/// are matched by name; a tested variable missing from `vars` raises
/// E_VAR_UNBOUND, and more than exhaustive_limit() variables E_TOO_LARGE.
TruthTable table_of(const Diagram& d);
TruthTable table_of(const Diagram& d, const std::vector<std::string>& vars);
TruthTable table_of(const Circuit& c);
TruthTable table_of(const Circuit& c, const std::vector<std::string>& vars);

std::vector<TruthTable> node_tables(const Diagram& d, const std::vector<NodeId>& nodes,
                                    const std::vector<std::string>& vars);
std::vector<TruthTable> gate_tables(const Circuit& c, const std::vector<GateId>& gates,
                                    const std::vector<std::string>& vars);

struct AmbiguityResult {
  bool unambiguous = true;
  std::optional<uint64_t> witness;  // row over d.vars with two accepting paths
};

/// Bit-parallel check that no input has two accepting paths.
AmbiguityResult check_unambiguous(const Diagram& d);

/// Names of the diagram's universe in order position (ordered variables
/// first, in order; the rest afterwards).
std::vector<std::string> table_vars(const Diagram& d);

EquivResult equiv(const TruthTable& a, const TruthTable& b, bool complement = false);

}  // namespace ddk
