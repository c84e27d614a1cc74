#include "support.hpp"

using namespace cgl;
using namespace cgl::testing;

TEST(Syntax, CorpusRoundTripsThroughThePrinter) {
  for (const char* f : kFiles) {
    const ProofScript& s = script(f);
    ProofScript again = parse_script(print_script(s), f);
    EXPECT_TRUE(same_script(s, again)) << f;
    EXPECT_EQ(print_script(again), print_script(s)) << f;
  }
}

TEST(Syntax, DerivedConnectivesParseToTheirDefinitions) {
  Formula a = parse_formula("x > 0"), b = parse_formula("y > 0");
  EXPECT_TRUE(same(parse_formula("x > 0 && y > 0"), land(a, b)));
  EXPECT_TRUE(same(parse_formula("x > 0 || y > 0"), lor(a, b)));
  EXPECT_TRUE(same(parse_formula("x > 0 -> y > 0"), limp(a, b)));
  EXPECT_TRUE(same(parse_formula("forall x. x > 0"), lforall("x", a)));
  EXPECT_TRUE(same(parse_formula("exists x. x > 0"), lexists("x", a)));
  EXPECT_TRUE(same(parse_formula("x succ y"), succ(var("x"), var("y"))));
  EXPECT_TRUE(same(parse_formula("x succ y"), parse_formula("x >= y + 1 && y >= 0")));
  EXPECT_TRUE(same(parse_game("x := 1 cap x := 2"),
                   dual(choice(dual(assign("x", lit(1))), dual(assign("x", lit(2)))))));
  Formula and_ab = land(a, b), l, r;
  ASSERT_TRUE(as_and(and_ab, &l, &r));
  EXPECT_TRUE(same(l, a));
  EXPECT_TRUE(same(r, b));
}

// the quotient found by scanning integers, not by the library
Q scan_div(long f, long g) {
  for (long q = -200; q <= 200; ++q) {
    long r = f - g * q;
    if (r >= 0 && r < std::labs(g)) return Q(q);
  }
  ADD_FAILURE() << "no quotient for " << f << "/" << g;
  return 0;
}

TEST(Syntax, DivModAreEuclidean) {
  for (long f = -30; f <= 30; ++f)
    for (long g : {-7L, -4L, -1L, 1L, 3L, 4L}) {
      Q q = eval(div_(lit(f), lit(g)), {});
      Q r = eval(mod_(lit(f), lit(g)), {});
      EXPECT_EQ(q, scan_div(f, g)) << f << " div " << g;
      EXPECT_EQ(r, Q(f) - Q(g) * q);
      EXPECT_GE(r, 0);
    }
  EXPECT_THROW(eval(div_(lit(1), lit(0)), {}), DivisionByZero);
}

TEST(Syntax, GroundTruthOfFirstOrderGames) {
  State s = st({{"x", Q(3)}});
  EXPECT_TRUE(holds(parse_formula("<x := x + 1 ++ x := x - 5> x > 3"), s));
  EXPECT_FALSE(holds(parse_formula("[x := x + 1 ++ x := x - 5] x > 3"), s));
  EXPECT_TRUE(holds(parse_formula("<{x := x + 1 ++ x := x - 5}^d> x > -3"), s));
  EXPECT_THROW(holds(parse_formula("<x := *> x > 3"), s), NotGround);
}

TEST(Syntax, ParseErrorsCarryPositions) {
  try {
    parse_script("theorem t : x > := FO[x > 0]\n", "bad.cgl");
    FAIL() << "parsed";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 1);
    EXPECT_GT(e.col, 1);
  }
}

TEST(Syntax, StatesParseExactRationals) {
  State s = parse_state("x=1/3, y=-2");
  EXPECT_EQ(lookup(s, "x"), Q(1, 3));
  EXPECT_EQ(lookup(s, "y"), Q(-2));
  EXPECT_EQ(lookup(s, "z"), Q(0));  // total states default to 0
}
