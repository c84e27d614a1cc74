#pragma once

#include "cgl/proof.hpp"

#include <map>
#include <optional>

namespace cgl {

// one reduction: the rule that fired and the dotted path to its redex
struct Reduction {
  Proof term;
  std::string rule;
  std::string path;
};

// Expects elaborated terms (see elaborate); annotations drive the rules that
// build new monotonicity and loop nodes.
std::optional<Reduction> step(const Proof& m);

// eliminators only under binders
bool is_simple(const Proof& m);
// simple, or a top-level case on a state-inspecting scrutinee
bool is_normal(const Proof& m);

struct FuelExhausted : std::runtime_error {
  Proof last;
  long steps;
  FuelExhausted(Proof last, long steps);
};

struct NormalizeResult {
  Proof term;
  long steps = 0;
  std::vector<Reduction> trace;  // filled when requested; entries keep the reduct
};

// throws FuelExhausted
NormalizeResult normalize(const Proof& m, long fuel = 1000000, bool keep_trace = false);

// the reduction rules counted for coverage, in a fixed order
const std::vector<std::string>& rule_registry();
// rules the normalizer also uses that the coverage target does not list
const std::vector<std::string>& extra_rules();
std::map<std::string, long>& rule_counters();
void reset_rule_counters();

}  // namespace cgl
