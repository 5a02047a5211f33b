#pragma once

#include <stdexcept>
#include <string>

namespace epiplex {

// Every recoverable failure in the library carries one of these codes so the
// CLI can print a stable "error:<kind>" tag and scripts can dispatch on it.
enum class Errc {
  BadInput,
  FaceNotInComplex,
  DimensionOutOfRange,
  EmptyAgentSet,
  UnknownAgent,
  UnknownAtom,
  SyntaxError,
  UnboundFormula,
  FormulaOutsideLanguage,
  NotLocalProper,
  AgentSetMismatch,
  StateSetMismatch,
  QuotientImproper,
  BeliefWithoutAssignment,
  InvalidBeliefAssignment,
  PostconditionNotUniform,
  EmptyProduct,
  NotSimplicialMap,
  NotValuePreserving,
  UnknownScenario,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const { return code_; }
  const char* code_name() const { return errc_name(code_); }

 private:
  Errc code_;
};

}  // namespace epiplex
