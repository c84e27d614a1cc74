#pragma once

#include "cgl/realizer.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>

namespace cgl {

enum class Side { L, R };
enum class TestAnswer { Assert, Concede };
enum class RepeatAnswer { Continue, Stop };

// Demon's decisions. context is the printed choice game.
struct DemonOracle {
  virtual ~DemonOracle() = default;
  virtual Side choose_branch(const std::string& context, const State& s) = 0;
  virtual Q choose_value(const std::string& x, const State& s) = 0;
  virtual TestAnswer assert_test(const Formula& phi, const State& s) = 0;
  virtual RepeatAnswer continue_repeat(const State& s, int iteration) = 0;
};

struct ScriptExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Answers from a token list: L R stop continue concede and numbers. Tests are
// asserted unless the next token is "concede".
struct ScriptDemon : DemonOracle {
  std::vector<std::string> tokens;
  size_t next = 0;
  explicit ScriptDemon(std::vector<std::string> toks) : tokens(std::move(toks)) {}
  static ScriptDemon from_text(const std::string& text);
  Side choose_branch(const std::string& context, const State& s) override;
  Q choose_value(const std::string& x, const State& s) override;
  TestAnswer assert_test(const Formula& phi, const State& s) override;
  RepeatAnswer continue_repeat(const State& s, int iteration) override;

 private:
  std::string take(const std::string& what);
};

// Prompts on out, one decision per line on in (see docs/interactive.md).
struct InteractiveDemon : DemonOracle {
  std::istream& in;
  std::ostream& out;
  InteractiveDemon(std::istream& i, std::ostream& o) : in(i), out(o) {}
  Side choose_branch(const std::string& context, const State& s) override;
  Q choose_value(const std::string& x, const State& s) override;
  TestAnswer assert_test(const Formula& phi, const State& s) override;
  RepeatAnswer continue_repeat(const State& s, int iteration) override;

 private:
  std::string ask(const std::string& prompt, const std::vector<std::string>& accept);
};

// Finite Demon alternatives: values per variable, a default list for the
// rest, the repetition cap and optionally the initial states.
struct Menu {
  std::map<std::string, std::vector<Q>> values;
  std::vector<Q> fallback;
  int depth = 12;
  std::vector<State> states;
  const std::vector<Q>& values_for(const std::string& x) const;
  static Menu from_json(const std::string& text);  // throws std::runtime_error
  static Menu standard();
};

// Replays a prefix of decision indices and takes index 0 past it, recording
// the arity of every decision. With a seed the alternatives at each decision
// are rotated by a hash of (seed, position), so index 0 is a random pick that
// stays the same on replay.
struct ReplayDemon : DemonOracle {
  const Menu& menu;
  std::vector<int> prefix;
  std::vector<int> taken, arity;
  std::optional<uint64_t> seed;
  ReplayDemon(const Menu& m, std::vector<int> p) : menu(m), prefix(std::move(p)) {}
  Side choose_branch(const std::string& context, const State& s) override;
  Q choose_value(const std::string& x, const State& s) override;
  TestAnswer assert_test(const Formula& phi, const State& s) override;
  RepeatAnswer continue_repeat(const State& s, int iteration) override;

 private:
  int pick(int n);
};

enum class OutcomeKind { Finished, AngelViolation, DemonViolation, FuelExhausted };
const char* outcome_name(OutcomeKind k);

struct Value;
using ValueP = std::shared_ptr<const Value>;

struct Outcome {
  OutcomeKind kind = OutcomeKind::Finished;
  State state;  // final state, or where play stopped
  ValueP residual;
  std::vector<std::string> trace;
  std::string reason;      // the failed test or exhausted budget
  bool post_holds = true;  // play_formula: the first-order postcondition
};

// The realizer does not fit the game position it is asked to play.
struct IllStructuredRealizer : std::runtime_error {
  std::string position;
  std::vector<std::string> trace;  // events up to the failure
  IllStructuredRealizer(const std::string& pos, const std::string& msg);
};

enum class Role { AngelActive, AngelDormant };

Outcome play(const Game& alpha, Role role, const Realizer& a, const State& omega,
             DemonOracle& demon, long fuel = 1000000);

// Plays every modality of phi down to the closing comparison, which is then
// evaluated (post_holds).
Outcome play_formula(const Formula& phi, const Realizer& a, const State& omega,
                     DemonOracle& demon, long fuel = 1000000);

// Angel wins a leaf that ends in DemonViolation or finishes with the
// postcondition true.
bool angel_wins(const Outcome& o);

struct VerifyResult {
  bool all_win = true;
  long leaves = 0;
  std::optional<Outcome> counterexample;
  State start;  // initial state of the counterexample
};

// sees every leaf (without its trace) together with the initial state
using LeafHook = std::function<void(const State& start, const Outcome& leaf)>;

// Enumerates every Demon decision sequence the menu allows from each state.
VerifyResult verify_exhaustive(const Game& alpha, Role role, const Realizer& a,
                               const std::vector<State>& states, const Formula& post,
                               const Menu& menu, long fuel = 1000000,
                               const LeafHook& hook = {});
// same, playing a whole theorem formula
VerifyResult verify_formula(const Formula& phi, const Realizer& a,
                            const std::vector<State>& states, const Menu& menu,
                            long fuel = 1000000, const LeafHook& hook = {});

// Seeded random Demon that never walks into its own test failure: a play
// ending in DemonViolation is retried along the next decision sequence in
// seeded order. Falls back to the last play tried when every one fails.
Outcome play_random(const Formula& phi, const Realizer& a, const State& omega, uint64_t seed,
                    const Menu& menu, long fuel = 1000000);

// Evaluation hooks for extraction.
ValueP value_of(const Realizer& a, const State& s);
struct Witness {
  Q value;
  Term term;  // null when the witness came from a search
  ValueP rest;
};
Witness force_witness(const ValueP& v, const std::string& x);
struct Selection {
  Side side;
  ValueP rest;
};
Selection force_selector(const ValueP& v);
std::string show(const ValueP& v);

Q parse_q(const std::string& text);  // integer, a/b or decimal; throws std::invalid_argument

}  // namespace cgl
