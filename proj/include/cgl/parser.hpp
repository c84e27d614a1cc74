#pragma once

#include "cgl/proof.hpp"

#include <optional>

namespace cgl {

struct ParseError : std::runtime_error {
  int line, col;
  std::vector<std::string> expected;
  ParseError(int l, int c, const std::string& msg, std::vector<std::string> exp = {});
};

enum class DefKind { Game, Formula, Proof, Theorem };

struct Definition {
  DefKind kind;
  std::string name;
  Game game;
  Formula formula;
  Proof proof;
  SrcPos pos;
};

struct ProofScript {
  std::string file;
  std::vector<Definition> defs;
  const Definition* find(const std::string& name) const;
  std::vector<const Definition*> theorems() const;
};

ProofScript parse_script(const std::string& text, const std::string& file = "<input>");
std::string print_script(const ProofScript& s);
bool same_script(const ProofScript& a, const ProofScript& b);
ProofScript load_script(const std::string& path);

// standalone entry points (no abbreviations in scope unless a script is given)
Term parse_term(const std::string& text);
Game parse_game(const std::string& text, const ProofScript* defs = nullptr);
Formula parse_formula(const std::string& text, const ProofScript* defs = nullptr);
Proof parse_proof(const std::string& text, const ProofScript* defs = nullptr);

// "x=1,y=1/2"
State parse_state(const std::string& text);

}  // namespace cgl
