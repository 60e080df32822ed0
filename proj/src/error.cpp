#include "edge3c/error.hpp"

namespace edge3c {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InfeasibleLatency: return "InfeasibleLatency";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::BudgetInfeasible: return "BudgetInfeasible";
    case ErrorKind::WrongBranch: return "WrongBranch";
    case ErrorKind::NoRoot: return "NoRoot";
    case ErrorKind::TruncationError: return "TruncationError";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "UnknownError";
}

}  // namespace edge3c
