#include "epiplex/formula.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace epiplex {

namespace fml {

namespace {
FormulaPtr node(Formula f) { return std::make_shared<const Formula>(std::move(f)); }
}  // namespace

FormulaPtr tru() {
  static FormulaPtr t = node({FKind::True});
  return t;
}

FormulaPtr fls() {
  static FormulaPtr f = node({FKind::False});
  return f;
}

FormulaPtr atom(std::string name) {
  Formula f{FKind::Atom};
  f.name = std::move(name);
  return node(std::move(f));
}

FormulaPtr lnot(FormulaPtr a) {
  Formula f{FKind::Not};
  f.lhs = std::move(a);
  return node(std::move(f));
}

namespace {
FormulaPtr binary(FKind kind, FormulaPtr a, FormulaPtr b) {
  Formula f{kind};
  f.lhs = std::move(a);
  f.rhs = std::move(b);
  return node(std::move(f));
}

FormulaPtr modal(FKind kind, std::string agent, FormulaPtr sub) {
  Formula f{kind};
  f.name = std::move(agent);
  f.lhs = std::move(sub);
  return node(std::move(f));
}

FormulaPtr group_modal(FKind kind, std::vector<AgentId> group, FormulaPtr sub) {
  std::sort(group.begin(), group.end());
  group.erase(std::unique(group.begin(), group.end()), group.end());
  Formula f{kind};
  f.group = std::move(group);
  f.lhs = std::move(sub);
  return node(std::move(f));
}
}  // namespace

FormulaPtr land(FormulaPtr a, FormulaPtr b) { return binary(FKind::And, std::move(a), std::move(b)); }
FormulaPtr lor(FormulaPtr a, FormulaPtr b) { return binary(FKind::Or, std::move(a), std::move(b)); }
FormulaPtr implies(FormulaPtr a, FormulaPtr b) { return binary(FKind::Implies, std::move(a), std::move(b)); }
FormulaPtr know(AgentId a, FormulaPtr f) { return modal(FKind::K, std::move(a), std::move(f)); }
FormulaPtr know_hat(AgentId a, FormulaPtr f) { return modal(FKind::KHat, std::move(a), std::move(f)); }
FormulaPtr believe(AgentId a, FormulaPtr f) { return modal(FKind::B, std::move(a), std::move(f)); }
FormulaPtr believe_hat(AgentId a, FormulaPtr f) { return modal(FKind::BHat, std::move(a), std::move(f)); }
FormulaPtr everyone(std::vector<AgentId> g, FormulaPtr f) { return group_modal(FKind::E, std::move(g), std::move(f)); }
FormulaPtr common(std::vector<AgentId> g, FormulaPtr f) { return group_modal(FKind::C, std::move(g), std::move(f)); }
FormulaPtr distributed(std::vector<AgentId> g, FormulaPtr f) { return group_modal(FKind::D, std::move(g), std::move(f)); }

FormulaPtr common_distributed(std::vector<std::vector<AgentId>> family, FormulaPtr sub) {
  for (auto& coalition : family) {
    std::sort(coalition.begin(), coalition.end());
    coalition.erase(std::unique(coalition.begin(), coalition.end()), coalition.end());
  }
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  Formula f{FKind::CDFam};
  f.family = std::move(family);
  f.lhs = std::move(sub);
  return node(std::move(f));
}

FormulaPtr common_distributed_dim(int m, FormulaPtr sub) {
  Formula f{FKind::CDDim};
  f.dim = m;
  f.lhs = std::move(sub);
  return node(std::move(f));
}

FormulaPtr conj(const std::vector<FormulaPtr>& parts) {
  if (parts.empty()) return tru();
  FormulaPtr out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = land(out, parts[i]);
  return out;
}

FormulaPtr disj(const std::vector<FormulaPtr>& parts) {
  if (parts.empty()) return fls();
  FormulaPtr out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = lor(out, parts[i]);
  return out;
}

}  // namespace fml

bool formulas_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->name != b->name || a->group != b->group ||
      a->family != b->family || a->dim != b->dim)
    return false;
  return formulas_equal(a->lhs, b->lhs) && formulas_equal(a->rhs, b->rhs);
}

namespace {

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  FormulaPtr parse() {
    auto f = implies_level();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return f;
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) {
    throw Error(Errc::SyntaxError,
                "formula syntax error at position " + std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  bool eat_arrow() {
    skip_ws();
    if (pos_ + 1 < text_.size() && text_[pos_] == '-' && text_[pos_ + 1] == '>') {
      pos_ += 2;
      return true;
    }
    return false;
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    if (pos_ == start) fail("expected identifier");
    return text_.substr(start, pos_ - start);
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  FormulaPtr implies_level() {
    auto lhs = or_level();
    if (eat_arrow()) return fml::implies(lhs, implies_level());  // right assoc
    return lhs;
  }

  FormulaPtr or_level() {
    auto lhs = and_level();
    while (true) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '|') {
        ++pos_;
        lhs = fml::lor(lhs, and_level());
      } else {
        return lhs;
      }
    }
  }

  FormulaPtr and_level() {
    auto lhs = unary_level();
    while (eat('&')) lhs = fml::land(lhs, unary_level());
    return lhs;
  }

  // Agent name inside [...]: runs to the next delimiter, except that
  // parenthesised names such as coalition agents "D(a,b)" stay whole.
  std::string bracket_token() {
    skip_ws();
    std::size_t start = pos_;
    int depth = 0;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '(') ++depth;
      else if (c == ')') {
        if (depth == 0) break;
        --depth;
      } else if (depth == 0 &&
                 (c == ',' || c == ']' || c == '}' || c == '{' ||
                  std::isspace(static_cast<unsigned char>(c)))) {
        break;
      }
      ++pos_;
    }
    if (pos_ == start) fail("expected name");
    return text_.substr(start, pos_ - start);
  }

  std::vector<AgentId> agent_list_until(char closing) {
    std::vector<AgentId> out;
    out.push_back(bracket_token());
    while (eat(',')) out.push_back(bracket_token());
    expect(closing);
    return out;
  }

  FormulaPtr modality(const std::string& word) {
    expect('[');
    // The bracket contents must be consumed before the argument formula.
    if (word == "K" || word == "Khat" || word == "B" || word == "Bhat") {
      auto agent = bracket_token_close();
      auto sub = unary_level();
      if (word == "K") return fml::know(agent, std::move(sub));
      if (word == "Khat") return fml::know_hat(agent, std::move(sub));
      if (word == "B") return fml::believe(agent, std::move(sub));
      return fml::believe_hat(agent, std::move(sub));
    }
    if (word == "E" || word == "C" || word == "D") {
      auto group = agent_list_until(']');
      auto sub = unary_level();
      if (word == "E") return fml::everyone(std::move(group), std::move(sub));
      if (word == "C") return fml::common(std::move(group), std::move(sub));
      return fml::distributed(std::move(group), std::move(sub));
    }
    if (word == "CDdim") {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ == start) fail("expected dimension");
      int m = std::stoi(text_.substr(start, pos_ - start));
      expect(']');
      return fml::common_distributed_dim(m, unary_level());
    }
    if (word == "CD") {
      std::vector<std::vector<AgentId>> family;
      expect('{');
      family.push_back(agent_list_until('}'));
      while (eat(',')) {
        expect('{');
        family.push_back(agent_list_until('}'));
      }
      expect(']');
      return fml::common_distributed(std::move(family), unary_level());
    }
    fail("unknown modality " + word);
  }

  std::string bracket_token_close() {
    auto a = bracket_token();
    expect(']');
    return a;
  }

  FormulaPtr unary_level() {
    skip_ws();
    if (eat('~')) return fml::lnot(unary_level());
    if (peek() == '(') {
      expect('(');
      auto f = implies_level();
      expect(')');
      return f;
    }
    auto word = ident();
    if (word == "true") return fml::tru();
    if (word == "false") return fml::fls();
    skip_ws();
    bool bracketed = pos_ < text_.size() && text_[pos_] == '[';
    if (bracketed &&
        (word == "K" || word == "Khat" || word == "B" || word == "Bhat" ||
         word == "E" || word == "C" || word == "D" || word == "CD" || word == "CDdim"))
      return modality(word);
    return fml::atom(word);
  }
};

int precedence(FKind k) {
  switch (k) {
    case FKind::Implies: return 0;
    case FKind::Or: return 1;
    case FKind::And: return 2;
    case FKind::Not:
    case FKind::K:
    case FKind::KHat:
    case FKind::E:
    case FKind::C:
    case FKind::D:
    case FKind::CDFam:
    case FKind::CDDim:
    case FKind::B:
    case FKind::BHat: return 3;
    default: return 4;
  }
}

void print(const FormulaPtr& f, std::ostringstream& out, int parent_prec, bool right_side) {
  const int prec = precedence(f->kind);
  bool parens = prec < parent_prec;
  // Keep left association of chains explicit: a right child at the same
  // precedence needs parentheses, a left child does not (and vice versa for
  // the right-associative ->).
  if (prec == parent_prec) {
    if (parent_prec == 0)
      parens = !right_side;
    else
      parens = right_side;
  }
  if (parens) out << "(";
  switch (f->kind) {
    case FKind::True: out << "true"; break;
    case FKind::False: out << "false"; break;
    case FKind::Atom: out << f->name; break;
    case FKind::Not:
      out << "~";
      print(f->lhs, out, 3, false);
      break;
    case FKind::And:
      print(f->lhs, out, 2, false);
      out << " & ";
      print(f->rhs, out, 2, true);
      break;
    case FKind::Or:
      print(f->lhs, out, 1, false);
      out << " | ";
      print(f->rhs, out, 1, true);
      break;
    case FKind::Implies:
      print(f->lhs, out, 0, false);
      out << " -> ";
      print(f->rhs, out, 0, true);
      break;
    case FKind::K:
    case FKind::KHat:
    case FKind::B:
    case FKind::BHat:
      out << (f->kind == FKind::K ? "K" : f->kind == FKind::KHat ? "Khat"
              : f->kind == FKind::B ? "B" : "Bhat");
      out << "[" << f->name << "] ";
      print(f->lhs, out, 3, false);
      break;
    case FKind::E:
    case FKind::C:
    case FKind::D: {
      out << (f->kind == FKind::E ? "E" : f->kind == FKind::C ? "C" : "D") << "[";
      for (std::size_t i = 0; i < f->group.size(); ++i) {
        if (i) out << ",";
        out << f->group[i];
      }
      out << "] ";
      print(f->lhs, out, 3, false);
      break;
    }
    case FKind::CDFam: {
      out << "CD[";
      for (std::size_t i = 0; i < f->family.size(); ++i) {
        if (i) out << ",";
        out << "{";
        for (std::size_t j = 0; j < f->family[i].size(); ++j) {
          if (j) out << ",";
          out << f->family[i][j];
        }
        out << "}";
      }
      out << "] ";
      print(f->lhs, out, 3, false);
      break;
    }
    case FKind::CDDim:
      out << "CDdim[" << f->dim << "] ";
      print(f->lhs, out, 3, false);
      break;
  }
  if (parens) out << ")";
}

}  // namespace

FormulaPtr parse_formula(const std::string& text) { return Parser(text).parse(); }

std::string to_string(const FormulaPtr& f) {
  std::ostringstream out;
  print(f, out, 0, true);
  return out.str();
}

int modal_depth(const FormulaPtr& f) {
  if (!f) return 0;
  int sub = std::max(modal_depth(f->lhs), modal_depth(f->rhs));
  switch (f->kind) {
    case FKind::K:
    case FKind::KHat:
    case FKind::E:
    case FKind::C:
    case FKind::D:
    case FKind::CDFam:
    case FKind::CDDim:
    case FKind::B:
    case FKind::BHat: return sub + 1;
    default: return sub;
  }
}

namespace {
void collect(const FormulaPtr& f, std::set<AgentId>& agents, std::set<AtomName>& atoms) {
  if (!f) return;
  switch (f->kind) {
    case FKind::Atom: atoms.insert(f->name); break;
    case FKind::K:
    case FKind::KHat:
    case FKind::B:
    case FKind::BHat: agents.insert(f->name); break;
    case FKind::E:
    case FKind::C:
    case FKind::D: agents.insert(f->group.begin(), f->group.end()); break;
    case FKind::CDFam:
      for (const auto& coalition : f->family)
        agents.insert(coalition.begin(), coalition.end());
      break;
    default: break;
  }
  collect(f->lhs, agents, atoms);
  collect(f->rhs, agents, atoms);
}
}  // namespace

std::set<AgentId> agents_of(const FormulaPtr& f) {
  std::set<AgentId> agents;
  std::set<AtomName> atoms;
  collect(f, agents, atoms);
  return agents;
}

std::set<AtomName> atoms_of(const FormulaPtr& f) {
  std::set<AgentId> agents;
  std::set<AtomName> atoms;
  collect(f, agents, atoms);
  return atoms;
}

bool contains_belief(const FormulaPtr& f) {
  if (!f) return false;
  if (f->kind == FKind::B || f->kind == FKind::BHat) return true;
  return contains_belief(f->lhs) || contains_belief(f->rhs);
}

ModelSignature signature_of(const SimplicialModel& model) {
  return {model.agents, model.all_atoms()};
}

FormulaPtr bind(const FormulaPtr& f, const ModelSignature& sig) {
  auto check_agent = [&](const AgentId& a) {
    if (!sig.agents.contains(a)) throw Error(Errc::UnknownAgent, "unknown agent " + a);
  };
  switch (f->kind) {
    case FKind::True:
    case FKind::False: return f;
    case FKind::Atom:
      if (!sig.atoms.count(f->name))
        throw Error(Errc::UnknownAtom, "unknown atom " + f->name);
      return f;
    case FKind::Not: return fml::lnot(bind(f->lhs, sig));
    case FKind::And: return fml::land(bind(f->lhs, sig), bind(f->rhs, sig));
    case FKind::Or: return fml::lor(bind(f->lhs, sig), bind(f->rhs, sig));
    case FKind::Implies: return fml::implies(bind(f->lhs, sig), bind(f->rhs, sig));
    case FKind::K:
      check_agent(f->name);
      return fml::know(f->name, bind(f->lhs, sig));
    case FKind::KHat:
      check_agent(f->name);
      return fml::know_hat(f->name, bind(f->lhs, sig));
    case FKind::B:
      check_agent(f->name);
      return fml::believe(f->name, bind(f->lhs, sig));
    case FKind::BHat:
      check_agent(f->name);
      return fml::believe_hat(f->name, bind(f->lhs, sig));
    case FKind::E: {
      // E[B] is an abbreviation for the conjunction of individual knowledge.
      auto sub = bind(f->lhs, sig);
      std::vector<FormulaPtr> parts;
      for (const auto& a : f->group) {
        check_agent(a);
        parts.push_back(fml::know(a, sub));
      }
      return fml::conj(parts);
    }
    case FKind::C:
      for (const auto& a : f->group) check_agent(a);
      return fml::common(f->group, bind(f->lhs, sig));
    case FKind::D:
      for (const auto& a : f->group) check_agent(a);
      return fml::distributed(f->group, bind(f->lhs, sig));
    case FKind::CDFam:
      for (const auto& coalition : f->family)
        for (const auto& a : coalition) check_agent(a);
      return fml::common_distributed(f->family, bind(f->lhs, sig));
    case FKind::CDDim:
      if (f->dim < 0 || f->dim >= static_cast<int>(sig.agents.size()))
        throw Error(Errc::BadInput,
                    "CDdim argument " + std::to_string(f->dim) + " outside [0, " +
                        std::to_string(sig.agents.size() - 1) + "]");
      return fml::common_distributed_dim(f->dim, bind(f->lhs, sig));
  }
  throw Error(Errc::UnboundFormula, "unhandled formula node");
}

LanguageTag tag_for(const SimplicialModel& model, const std::vector<AgentId>& agents) {
  LanguageTag tag;
  tag.agents = agents;
  std::sort(tag.agents.begin(), tag.agents.end());
  for (const auto& p : model.all_atoms()) {
    auto owner = model.atom_owner(p);
    if (owner && std::find(agents.begin(), agents.end(), *owner) != agents.end())
      tag.atoms.insert(p);
  }
  return tag;
}

bool in_language(const FormulaPtr& f, const LanguageTag& tag) {
  if (!f) return true;
  auto has_agent = [&](const AgentId& a) {
    return std::find(tag.agents.begin(), tag.agents.end(), a) != tag.agents.end();
  };
  switch (f->kind) {
    case FKind::Atom:
      if (!tag.atoms.count(f->name)) return false;
      break;
    case FKind::K:
    case FKind::KHat:
    case FKind::B:
    case FKind::BHat:
      if (!has_agent(f->name)) return false;
      break;
    case FKind::E:
    case FKind::C:
    case FKind::D:
      for (const auto& a : f->group)
        if (!has_agent(a)) return false;
      break;
    case FKind::CDFam:
      for (const auto& coalition : f->family)
        for (const auto& a : coalition)
          if (!has_agent(a)) return false;
      break;
    case FKind::CDDim:
      // CDdim ranges over coalitions from the full agent set.
      if (f->dim + 1 > static_cast<int>(tag.agents.size())) return false;
      break;
    default: break;
  }
  return in_language(f->lhs, tag) && in_language(f->rhs, tag);
}

}  // namespace epiplex
