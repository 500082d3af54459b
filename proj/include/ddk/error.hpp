#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ddk {

enum class ErrorCode {
  VarUnbound,
  TooLarge,
  NotUnambiguous,
  OrderMismatch,
  NotDeterministic,
  NotSdd,
  ConstInput,
  NotLinear,
  NoBeta,
  NotComplement,
  NotSimple,
  NotStructured,
  Dangling,
  KTooLarge,
  Param,
  InsufficientPoints,
  Parse,
  Cyclic,
};

/// Stable identifier such as "E_VAR_UNBOUND".
const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

struct Violation {
  std::string clause;
  std::string detail;
  std::vector<int> witness;
};

/// Outcome of a validator. A clause that could not be decided lands in
/// `unchecked` instead of `violations`.
struct Report {
  std::vector<Violation> violations;
  std::vector<std::string> unchecked;

  bool ok() const { return violations.empty(); }
  void fail(std::string clause, std::string detail, std::vector<int> witness = {}) {
    violations.push_back({std::move(clause), std::move(detail), std::move(witness)});
  }
  void merge(const Report& other);
  std::string summary() const;
};

}  // namespace ddk
