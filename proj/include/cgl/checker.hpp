#pragma once

#include "cgl/oracle.hpp"
#include "cgl/proof.hpp"

#include <optional>

namespace cgl {

enum class ErrKind {
  RuleMismatch,
  UnboundProofVar,
  FreshnessViolation,
  InadmissibleSubstitution,
  OracleIncomplete,
  OracleRefuted,
  MetricIllFormed,
};
const char* err_kind_name(ErrKind k);

struct CheckError : std::runtime_error {
  ErrKind kind;
  std::string path;  // dotted path from the theorem name into the term
  SrcPos pos;
  std::string rule, expected, got;
  std::optional<State> witness;
  CheckError(ErrKind k, std::string path, SrcPos pos, std::string rule, std::string expected,
             std::string got);
};

// Checks M against phi and returns M with the annotations later stages rely
// on filled in: NumLam ghosts, the Unpack variable, Mon's full premiss and
// renaming, and the loop game of For and Rep. Throws CheckError.
Proof elaborate(const Context& g, const Proof& m, const Formula& phi,
                const std::string& root = "proof");

// type of an eliminator-headed or annotated term
Formula infer(const Context& g, const Proof& m, const std::string& root = "proof");

struct CheckResult {
  bool ok = false;
  std::optional<CheckError> error;
  Proof annotated;
};
CheckResult check(const Context& g, const Proof& m, const Formula& phi,
                  const std::string& root = "proof");

// one-line rendering: "path: rule R expected E, got G"
std::string describe(const CheckError& e);

}  // namespace cgl
