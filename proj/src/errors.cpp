#include "epiplex/errors.hpp"

namespace epiplex {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::BadInput: return "BadInput";
    case Errc::FaceNotInComplex: return "FaceNotInComplex";
    case Errc::DimensionOutOfRange: return "DimensionOutOfRange";
    case Errc::EmptyAgentSet: return "EmptyAgentSet";
    case Errc::UnknownAgent: return "UnknownAgent";
    case Errc::UnknownAtom: return "UnknownAtom";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnboundFormula: return "UnboundFormula";
    case Errc::FormulaOutsideLanguage: return "FormulaOutsideLanguage";
    case Errc::NotLocalProper: return "NotLocalProper";
    case Errc::AgentSetMismatch: return "AgentSetMismatch";
    case Errc::StateSetMismatch: return "StateSetMismatch";
    case Errc::QuotientImproper: return "QuotientImproper";
    case Errc::BeliefWithoutAssignment: return "BeliefWithoutAssignment";
    case Errc::InvalidBeliefAssignment: return "InvalidBeliefAssignment";
    case Errc::PostconditionNotUniform: return "PostconditionNotUniform";
    case Errc::EmptyProduct: return "EmptyProduct";
    case Errc::NotSimplicialMap: return "NotSimplicialMap";
    case Errc::NotValuePreserving: return "NotValuePreserving";
    case Errc::UnknownScenario: return "UnknownScenario";
  }
  return "Unknown";
}

}  // namespace epiplex
