#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "epiplex/complex.hpp"

namespace epiplex {

enum class FKind {
  True,
  False,
  Atom,
  Not,
  And,
  Or,
  Implies,
  K,      // K[a]
  KHat,   // Khat[a], read as ~K[a]~
  E,      // E[a,b]
  C,      // C[a,b]
  D,      // D[a,b]
  CDFam,  // CD[{a,b},{b,c}]
  CDDim,  // CDdim[m]
  B,      // B[a]
  BHat,   // Bhat[a]
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FKind kind = FKind::True;
  std::string name{};                           // atom name, or agent of K/Khat/B/Bhat
  std::vector<AgentId> group{};                 // E/C/D, sorted
  std::vector<std::vector<AgentId>> family{};   // CDFam, sorted inner and outer
  int dim = -1;                                 // CDDim
  FormulaPtr lhs{}, rhs{};                      // children; rhs only for binary kinds
};

namespace fml {
FormulaPtr tru();
FormulaPtr fls();
FormulaPtr atom(std::string name);
FormulaPtr lnot(FormulaPtr a);
FormulaPtr land(FormulaPtr a, FormulaPtr b);
FormulaPtr lor(FormulaPtr a, FormulaPtr b);
FormulaPtr implies(FormulaPtr a, FormulaPtr b);
FormulaPtr know(AgentId a, FormulaPtr f);
FormulaPtr know_hat(AgentId a, FormulaPtr f);
FormulaPtr everyone(std::vector<AgentId> group, FormulaPtr f);
FormulaPtr common(std::vector<AgentId> group, FormulaPtr f);
FormulaPtr distributed(std::vector<AgentId> group, FormulaPtr f);
FormulaPtr common_distributed(std::vector<std::vector<AgentId>> family, FormulaPtr f);
FormulaPtr common_distributed_dim(int m, FormulaPtr f);
FormulaPtr believe(AgentId a, FormulaPtr f);
FormulaPtr believe_hat(AgentId a, FormulaPtr f);
// Conjunction/disjunction of a list; empty list gives true/false.
FormulaPtr conj(const std::vector<FormulaPtr>& parts);
FormulaPtr disj(const std::vector<FormulaPtr>& parts);
}  // namespace fml

bool formulas_equal(const FormulaPtr& a, const FormulaPtr& b);

// Parses the formula grammar; throws Error(SyntaxError) with a position
// annotation on malformed input. Operators by falling precedence:
// modalities and ~ (tightest), &, |, -> (right associative).
FormulaPtr parse_formula(const std::string& text);

std::string to_string(const FormulaPtr& f);

int modal_depth(const FormulaPtr& f);
std::set<AgentId> agents_of(const FormulaPtr& f);
std::set<AtomName> atoms_of(const FormulaPtr& f);
bool contains_belief(const FormulaPtr& f);

// What a formula may legally mention: agents, declared atoms, agent count.
struct ModelSignature {
  AgentSet agents;
  std::set<AtomName> atoms;
};

ModelSignature signature_of(const SimplicialModel& model);

// Checks agent/atom references and the CDdim bound, and desugars E[B] into a
// conjunction of K's. Throws UnknownAgent / UnknownAtom.
FormulaPtr bind(const FormulaPtr& f, const ModelSignature& sig);

// Agent subset together with the atoms owned by those agents.
struct LanguageTag {
  std::vector<AgentId> agents;
  std::set<AtomName> atoms;
};

LanguageTag tag_for(const SimplicialModel& model, const std::vector<AgentId>& agents);

bool in_language(const FormulaPtr& f, const LanguageTag& tag);

}  // namespace epiplex
