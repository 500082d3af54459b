#include "ddk/error.hpp"

namespace ddk {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::VarUnbound: return "E_VAR_UNBOUND";
    case ErrorCode::TooLarge: return "E_TOO_LARGE";
    case ErrorCode::NotUnambiguous: return "E_NOT_UNAMBIGUOUS";
    case ErrorCode::OrderMismatch: return "E_ORDER_MISMATCH";
    case ErrorCode::NotDeterministic: return "E_NOT_DETERMINISTIC";
    case ErrorCode::NotSdd: return "E_NOT_SDD";
    case ErrorCode::ConstInput: return "E_CONST_INPUT";
    case ErrorCode::NotLinear: return "E_NOT_LINEAR";
    case ErrorCode::NoBeta: return "E_NO_BETA";
    case ErrorCode::NotComplement: return "E_NOT_COMPLEMENT";
    case ErrorCode::NotSimple: return "E_NOT_SIMPLE";
    case ErrorCode::NotStructured: return "E_NOT_STRUCTURED";
    case ErrorCode::Dangling: return "E_DANGLING";
    case ErrorCode::KTooLarge: return "E_K_TOO_LARGE";
    case ErrorCode::Param: return "E_PARAM";
    case ErrorCode::InsufficientPoints: return "E_INSUFFICIENT_POINTS";
    case ErrorCode::Parse: return "E_PARSE";
    case ErrorCode::Cyclic: return "E_CYCLIC";
  }
  return "E_UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

void Report::merge(const Report& other) {
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  unchecked.insert(unchecked.end(), other.unchecked.begin(), other.unchecked.end());
}

std::string Report::summary() const {
  if (violations.empty()) return unchecked.empty() ? "ok" : "ok (with unchecked clauses)";
  std::string s;
  for (const auto& v : violations) {
    if (!s.empty()) s += "; ";
    s += v.clause + ": " + v.detail;
  }
  return s;
}

}  // namespace ddk
