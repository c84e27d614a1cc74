#pragma once

#include "cgl/engine.hpp"
#include "cgl/parser.hpp"

#include <random>

namespace cgl {

// Random syntax for the property suites. Variables come from a small pool so
// that captures and clashes actually happen.
class RandomSyntax {
 public:
  explicit RandomSyntax(uint64_t seed) : rng_(seed) {}

  std::vector<std::string> vars{"x", "y", "z"};

  int below(int n) { return static_cast<int>(rng_() % static_cast<uint64_t>(n)); }
  bool coin() { return below(2) == 0; }
  Q rational(int range = 4);
  std::string variable() { return vars[below(static_cast<int>(vars.size()))]; }

  Term term(int depth);
  Formula comparison();
  // first-order: no loops, no nondeterministic assignment
  Formula first_order(int depth);
  Game fo_game(int depth);
  // any game, loops and nondeterministic assignment included
  Game game(int depth);
  Formula formula(int depth);
  State state();

  // A realizer for phi built from its shape alone (no state reads): random
  // selectors and witnesses, at most max_rounds rounds for each Angel loop.
  Realizer strategy(const Formula& phi, int max_rounds = 2);

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

struct PropertyReport {
  int cases = 0;
  int failures = 0;
  std::string first_failure;
  bool ok() const { return failures == 0; }
};

// theorems of a corpus with their leading hypotheses peeled into a context
struct Peeled {
  std::string name;
  Context ctx;
  Formula goal;
  Proof body;  // raw (unelaborated) body
};
std::vector<Peeled> peel_corpus(const std::vector<ProofScript>& corpus);

// swapping x and y twice is the identity, and truth commutes with the swap
PropertyReport prop_renaming(int cases, uint64_t seed);
// an extra hypothesis anywhere in the context does not break a proof
PropertyReport prop_weakening(const std::vector<Peeled>& corpus, int cases, uint64_t seed);
// proof substitution preserves the type; term substitution commutes with truth
PropertyReport prop_substitution(const std::vector<Peeled>& corpus, int cases, uint64_t seed);
// plays only ever write bound variables
PropertyReport prop_bound_effect(int cases, uint64_t seed);
// states agreeing on the free variables give the same trace
PropertyReport prop_coincidence(int cases, uint64_t seed);

// negates the selector test of the first case analysis on a decided
// disjunction
Realizer negate_branch_test(const Realizer& r);

struct Criterion {
  int id;
  std::string name;
  bool pass;
  std::string detail;
};

// the ten acceptance criteria over the example corpus in corpus_dir
std::vector<Criterion> run_acceptance(const std::string& corpus_dir);

}  // namespace cgl
