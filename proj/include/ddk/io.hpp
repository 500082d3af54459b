#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "ddk/circuit.hpp"
#include "ddk/diagram.hpp"

namespace ddk::io {

/// Parsers accept `#` comments, sparse ids and forward references. Internal
/// ids follow file order; `ids`, when given, receives file id -> internal id.
/// Malformed input throws E_PARSE with the line number.
Diagram read_ddf(std::istream& in, std::map<long, NodeId>* ids = nullptr);
Circuit read_nnf(std::istream& in, std::map<long, GateId>* ids = nullptr);
Vtree read_vtree(std::istream& in);

/// Writers emit dense ids in internal order.
void write_ddf(std::ostream& out, const Diagram& d);
void write_nnf(std::ostream& out, const Circuit& c);
void write_vtree(std::ostream& out, const Vtree& t);

std::string to_ddf(const Diagram& d);
std::string to_nnf(const Circuit& c);
std::string to_vtree(const Vtree& t);
Diagram parse_ddf(const std::string& text);
Circuit parse_nnf(const std::string& text);
Vtree parse_vtree(const std::string& text);

Diagram load_ddf(const std::string& path);
Circuit load_nnf(const std::string& path);
Vtree load_vtree(const std::string& path);
void save(const std::string& path, const std::string& text);

}  // namespace ddk::io
