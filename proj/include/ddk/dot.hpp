#pragma once

#include <string>

#include "ddk/circuit.hpp"
#include "ddk/diagram.hpp"

namespace ddk::dot {

/// Dashed 0-edges, solid 1-edges, boxed sinks. Node ids are the arena ids.
std::string diagram(const Diagram& d);
/// Circles for gates, edges towards inputs.
std::string circuit(const Circuit& c);
std::string vtree(const Vtree& t);

}  // namespace ddk::dot
