#include "qedbounds/common.hpp"

namespace qb {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "invalid-input";
    case ErrorCode::Numerical: return "numerical-failure";
    case ErrorCode::Capacity: return "capacity";
    case ErrorCode::Configuration: return "configuration";
    case ErrorCode::Degenerate: return "degenerate";
    case ErrorCode::InsufficientData: return "insufficient-data";
  }
  return "unknown";
}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace qb
