#include "support.hpp"

#include "cgl/selftest.hpp"

#include <sstream>

using namespace cgl;
using namespace cgl::testing;

namespace {

Formula F(const char* t) { return parse_formula(t); }

// Angel answers Demon's x with |x|
Realizer abs_strategy() {
  return r_numlam("x", r_if(F("x < 0"), r_pair(r_num(1), r_unit()), r_pair(r_num(0), r_unit())));
}

}  // namespace

TEST(Engine, DemonPicksAngelFixesTheSign) {
  ScriptDemon d({"-5"});
  Outcome o = play_formula(F("<{x := *}^d; {x := x ++ x := -x}> x >= 0"), abs_strategy(), {}, d);
  EXPECT_EQ(o.kind, OutcomeKind::Finished);
  EXPECT_EQ(lookup(o.state, "x"), Q(5));
  EXPECT_TRUE(o.post_holds);
  EXPECT_TRUE(angel_wins(o));
}

TEST(Engine, AngelFailingHerOwnTestLoses) {
  ScriptDemon d({});
  Outcome o = play_formula(F("<?0 > 1> 1 > 0"), r_pair(r_unit(), r_unit()), {}, d);
  EXPECT_EQ(o.kind, OutcomeKind::AngelViolation);
  EXPECT_FALSE(angel_wins(o));
}

TEST(Engine, DemonConcedingATestLoses) {
  ScriptDemon d({"concede"});
  Outcome o = play_formula(F("[?x > 0] x > 0"), r_prooflam("h", F("x > 0"), r_unit()),
                           parse_state("x=1"), d);
  EXPECT_EQ(o.kind, OutcomeKind::DemonViolation);
  EXPECT_TRUE(angel_wins(o));
}

TEST(Engine, DemonCannotAssertAFalseTest) {
  ScriptDemon d({});
  Outcome o = play_formula(F("[?x > 0] x > 0"), r_prooflam("h", F("x > 0"), r_unit()),
                           parse_state("x=-1"), d);
  EXPECT_EQ(o.kind, OutcomeKind::DemonViolation);
}

TEST(Engine, InductiveLoopStopsAtTheFirstGoodState) {
  Realizer r = r_ind("w", r_if(F("x > y"), r_pair(r_num(0), r_unit()),
                               r_pair(r_num(1), r_statelam(r_var("w")))));
  ScriptDemon d({});
  Outcome o = play_formula(F("<{x := x + 1}*> x > y"), r, parse_state("x=0,y=3"), d);
  EXPECT_EQ(o.kind, OutcomeKind::Finished);
  EXPECT_EQ(lookup(o.state, "x"), Q(4));
}

TEST(Engine, FuelRunsOutOnADivergingLoop) {
  Realizer r = r_ind("w", r_pair(r_num(1), r_statelam(r_var("w"))));
  ScriptDemon d({});
  Outcome o = play_formula(F("<{x := x + 1}*> x < 0"), r, {}, d, 500);
  EXPECT_EQ(o.kind, OutcomeKind::FuelExhausted);
  EXPECT_FALSE(angel_wins(o));
}

TEST(Engine, MisshapenRealizerIsIllStructured) {
  ScriptDemon d({});
  EXPECT_THROW(play_formula(F("<x := 1 ++ x := 2> x > 0"), r_unit(), {}, d),
               IllStructuredRealizer);
}

TEST(Engine, ScriptRunsDry) {
  ScriptDemon d({});
  EXPECT_THROW(play_formula(F("<{x := *}^d; {x := x ++ x := -x}> x >= 0"), abs_strategy(), {}, d),
               ScriptExhausted);
}

TEST(Engine, InteractiveDemonReadsOneAnswerPerLine) {
  std::istringstream in("oops\n-3\n");
  std::ostringstream out;
  InteractiveDemon d(in, out);
  Outcome o = play_formula(F("<{x := *}^d; {x := x ++ x := -x}> x >= 0"), abs_strategy(), {}, d);
  EXPECT_EQ(lookup(o.state, "x"), Q(3));
  EXPECT_NE(out.str().find("x"), std::string::npos);
}

TEST(Engine, ParsesExactRationals) {
  EXPECT_EQ(parse_q("7"), Q(7));
  EXPECT_EQ(parse_q("-2/6"), Q(-1, 3));
  EXPECT_EQ(parse_q("0.25"), Q(1, 4));
  EXPECT_EQ(parse_q("-1.5"), Q(-3, 2));
  EXPECT_THROW(parse_q("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_q("abc"), std::invalid_argument);
}

TEST(Engine, MenuFromJson) {
  Menu m = Menu::from_json(R"({"values": {"x": [1, "1/2", -3]}, "fallback": [0], "depth": 4,
                               "states": [{"c": 5}, {"c": "1/3"}]})");
  ASSERT_EQ(m.values_for("x").size(), 3u);
  EXPECT_EQ(m.values_for("x")[1], Q(1, 2));
  EXPECT_EQ(m.values_for("z"), std::vector<Q>{Q(0)});
  EXPECT_EQ(m.depth, 4);
  ASSERT_EQ(m.states.size(), 2u);
  EXPECT_EQ(lookup(m.states[1], "c"), Q(1, 3));
  EXPECT_THROW(Menu::from_json("{\"depth\": \"deep\"}"), std::runtime_error);
}

// ---- Nim, against direct recursive models of the game

namespace {

// dNim leaves from c after i rounds: Demon stops or takes 1..3, Angel
// answers with the rest of four
long dnim_leaves(long c, int i, int depth) {
  if (i >= depth) return 1;
  long n = 1;
  for (long t = 1; t <= 3; ++t) {
    long c1 = c - t;
    if (c1 <= 0) { ++n; continue; }
    long c2 = c1 - (4 - t);
    if (c2 <= 0) { ++n; continue; }
    n += dnim_leaves(c2, i + 1, depth);
  }
  return n;
}

// aNim leaves: Angel stops on 2, 3, 4, else moves to 1 mod 4 and Demon takes
long anim_leaves(long c) {
  if (c >= 2 && c <= 4) return 1;
  long r = c % 4, c1 = c - (r == 0 ? 3 : r == 2 ? 1 : 2);
  long n = 0;
  for (long t = 1; t <= 3; ++t) n += c1 - t <= 0 ? 1 : anim_leaves(c1 - t);
  return n;
}

}  // namespace

TEST(Nim, DemonNimLeavesMatchTheModel) {
  Extraction ex = extract_theorem(script("nim.cgl"), "dNim", false);
  std::vector<State> states;
  long want = 0;
  for (long c = 1; c <= 37; c += 4) {
    states.push_back({{"c", Q(c)}});
    want += dnim_leaves(c, 0, 12);
  }
  long finished = 0, off = 0;
  VerifyResult r = verify_formula(ex.phi, ex.realizer, states, Menu::standard(), 1000000,
                                  [&](const State&, const Outcome& o) {
                                    if (o.kind != OutcomeKind::Finished) return;
                                    ++finished;
                                    if (emod(lookup(o.state, "c"), 4) != 1) ++off;
                                  });
  EXPECT_TRUE(r.all_win);
  EXPECT_EQ(r.leaves, want);
  EXPECT_GT(finished, 0);
  EXPECT_EQ(off, 0);
}

TEST(Nim, AngelNimLeavesMatchTheModel) {
  Extraction ex = extract_theorem(script("nim.cgl"), "aNim", false);
  std::vector<State> states;
  long want = 0;
  for (long c = 1; c <= 23; ++c)
    if (c % 4 != 1) {
      states.push_back({{"c", Q(c)}});
      want += anim_leaves(c);
    }
  VerifyResult r = verify_formula(ex.phi, ex.realizer, states, Menu::standard());
  EXPECT_TRUE(r.all_win);
  EXPECT_EQ(r.leaves, want);
}

TEST(Nim, NegatedBranchTestIsCaughtAndReplaysAsALoss) {
  Extraction ex = extract_theorem(script("nim.cgl"), "dNim", false);
  Realizer bad = negate_branch_test(ex.realizer);
  std::vector<State> states;
  for (long c = 1; c <= 37; c += 4) states.push_back({{"c", Q(c)}});
  VerifyResult r = verify_formula(ex.phi, bad, states, Menu::standard());
  ASSERT_FALSE(r.all_win);
  ASSERT_TRUE(r.counterexample.has_value());
  EXPECT_FALSE(angel_wins(*r.counterexample));
  EXPECT_LE(r.counterexample->trace.size(), 40u);
  EXPECT_FALSE(r.counterexample->trace.empty());
}

TEST(Cake, AngelCutsExactlyInHalf) {
  Extraction ex = extract_theorem(script("cake.cgl"), "aCake", false);
  for (const char* side : {"L", "R"}) {
    ScriptDemon d({side});
    Outcome o = play_formula(ex.phi, ex.realizer, {}, d);
    EXPECT_EQ(o.kind, OutcomeKind::Finished);
    EXPECT_EQ(lookup(o.state, "a"), Q(1, 2)) << side;
    EXPECT_EQ(lookup(o.state, "d"), Q(1, 2)) << side;
  }
}

TEST(Cake, AngelChoosesTheLargerPiece) {
  Extraction ex = extract_theorem(script("cake.cgl"), "dCake", false);
  for (long n = 0; n <= 12; ++n) {
    Q x(n, 12);
    x.canonicalize();
    ScriptDemon d({show(x)});
    Outcome o = play_formula(ex.phi, ex.realizer, {}, d);
    ASSERT_EQ(o.kind, OutcomeKind::Finished);
    Q big = x > 1 - x ? x : Q(1 - x);
    EXPECT_EQ(lookup(o.state, "d"), big) << show(x);
    EXPECT_EQ(lookup(o.state, "a") + lookup(o.state, "d"), Q(1));
  }
  // a cut outside [0, 1] is Demon's own failure
  ScriptDemon d({"3/2"});
  EXPECT_EQ(play_formula(ex.phi, ex.realizer, {}, d).kind, OutcomeKind::DemonViolation);
}

TEST(Engine, RandomPlayIsReproducible) {
  Extraction ex = extract_theorem(script("nim.cgl"), "dNim", false);
  Outcome a = play_random(ex.phi, ex.realizer, {{"c", Q(9)}}, 42, Menu::standard());
  Outcome b = play_random(ex.phi, ex.realizer, {{"c", Q(9)}}, 42, Menu::standard());
  EXPECT_EQ(a.trace, b.trace);
  EXPECT_TRUE(angel_wins(a));
}
