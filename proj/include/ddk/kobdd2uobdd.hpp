#pragma once

#include <vector>

#include "ddk/diagram.hpp"

namespace ddk::kobdd2uobdd {

/// layers[i] is the layer of entry node nodes[i]; layers[0] = 1, nodes[0] = root.
struct SwitchChoice {
  std::vector<int> layers;
  std::vector<NodeId> nodes;
  int r() const { return static_cast<int>(nodes.size()); }
};

/// Choices whose hops are realised by at least one inter-layer edge, in
/// depth-first order (shorter prefix first).
std::vector<SwitchChoice> enumerate_switch_choices(const Diagram& g);

/// One OBDD per entry. Exits to the next entry (or to the 1-sink for the last
/// one) become 1-sink edges; every other exit becomes a 0-sink edge.
std::vector<Diagram> layer_slice(const Diagram& g, const SwitchChoice& c);

struct Result {
  Diagram diagram;
  std::vector<SwitchChoice> choices;  // kept (satisfiable) choices, in branch order
  size_t enumerated = 0;
  int k = 0;
  long double bound() const;  // 4 |G|^(2k-1)
  size_t input_size = 0;
};

Result simulate(const Diagram& g, int max_k = 4);

}  // namespace ddk::kobdd2uobdd
