#pragma once

#include "cgl/engine.hpp"
#include "cgl/parser.hpp"

namespace cgl {

// Erases an elaborated proof to the strategy it describes. Demon-facing
// evidence (comparisons, oracle leaves) becomes Unit or a canonical
// first-order realizer; everything Angel decides survives as selectors,
// witness terms and loop strategies.
Realizer extract(const Proof& elaborated);

struct Extraction {
  Formula phi;
  Proof proof;        // elaborated (and normalized when asked)
  Realizer realizer;
  long steps = 0;     // normalization steps taken
};

// check, optionally normalize, then extract; throws CheckError on an
// ill-typed proof and FuelExhausted when normalization runs out
Extraction extract_theorem(const ProofScript& s, const std::string& name, bool normalize_first,
                           long fuel = 1000000);

// The witness a realizer of <x := *> phi picks at a state: its value, the
// term it came from, and the realizer of phi that follows.
Witness extract_existential(const Realizer& a, const std::string& x, const State& s);
// The side a realizer of a disjunction picks at a state.
Selection extract_disjunct(const Realizer& a, const State& s);

}  // namespace cgl
