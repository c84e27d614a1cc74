#pragma once

#include "cgl/checker.hpp"
#include "cgl/engine.hpp"
#include "cgl/parser.hpp"

#include <nlohmann/json.hpp>

namespace cgl {

// JSON forms of proofs, realizers and diagnostics (docs/json.md). Terms,
// games and formulas travel as their printed text and are parsed back.
using Json = nlohmann::ordered_json;

Json to_json(const Proof& m);
Json to_json(const Realizer& r);
Proof proof_from_json(const Json& j);       // throws std::runtime_error
Realizer realizer_from_json(const Json& j);  // throws std::runtime_error

struct Diagnostic {
  std::string file;
  SrcPos pos;
  std::string kind;  // ParseError, a checker error kind, IllStructuredRealizer, ...
  std::string message;
  std::string path, rule, expected, got;
  std::optional<State> witness;
  std::vector<std::string> trace;
};

Diagnostic diagnose(const std::string& file, const ParseError& e);
Diagnostic diagnose(const std::string& file, const CheckError& e);

Json to_json(const Diagnostic& d);
// FILE:LINE:COL: error: KIND: MESSAGE
std::string render(const Diagnostic& d);

Json to_json(const State& s);
Json to_json(const Outcome& o);

}  // namespace cgl
