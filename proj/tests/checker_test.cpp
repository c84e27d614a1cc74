#include "support.hpp"

#include "cgl/oracle.hpp"

using namespace cgl;
using namespace cgl::testing;

TEST(Checker, EveryCorpusTheoremChecks) {
  for (const char* f : kFiles)
    for (const Definition* d : script(f).theorems()) {
      CheckResult r = check(Context{}, d->proof, d->formula, d->name);
      EXPECT_TRUE(r.ok) << f << " " << d->name << ": " << (r.ok ? "" : describe(*r.error));
    }
}

CheckError first_error(const std::string& file) {
  const ProofScript& s = script(file);
  for (const Definition* d : s.theorems()) {
    CheckResult r = check(Context{}, d->proof, d->formula, d->name);
    if (!r.ok) return *r.error;
  }
  throw std::logic_error(file + " checks");
}

TEST(Checker, MutationsAreRejectedWithPositions) {
  struct Want {
    const char* file;
    ErrKind kind;
    int line;
  } wants[] = {
      {"mutations/broken_invariant.cgl", ErrKind::RuleMismatch, 17},
      {"mutations/wrong_metric.cgl", ErrKind::OracleRefuted, 21},
      {"mutations/flipped_injection.cgl", ErrKind::OracleRefuted, 51},
      {"mutations/off_by_one.cgl", ErrKind::OracleRefuted, 4},
  };
  for (auto& w : wants) {
    CheckError e = first_error(w.file);
    EXPECT_EQ(e.kind, w.kind) << w.file << ": " << describe(e);
    EXPECT_EQ(e.pos.line, w.line) << w.file;
    EXPECT_GT(e.pos.col, 0) << w.file;
  }
}

TEST(Checker, RefutationWitnessesReallyRefute) {
  CheckError e = first_error("mutations/off_by_one.cgl");
  ASSERT_TRUE(e.witness.has_value());
  // y = x + 2 holds there and y = x + 1 does not
  Q x = lookup(*e.witness, "x"), y = lookup(*e.witness, "y");
  EXPECT_EQ(y, x + 2);
  EXPECT_NE(y, x + 1);
}

Formula F(const char* t) { return parse_formula(t); }

ErrKind kind_of(const char* proof, const char* phi) {
  CheckResult r = check(Context{}, parse_proof(proof), F(phi), "t");
  if (r.ok) throw std::logic_error(std::string("accepted: ") + proof);
  return r.error->kind;
}

TEST(Checker, ErrorKinds) {
  EXPECT_EQ(kind_of("\\h: x > 0. k", "x > 0 -> x > 0"), ErrKind::UnboundProofVar);
  EXPECT_EQ(kind_of("\\h: x > 1. h", "x > 0 -> x > 0"), ErrKind::RuleMismatch);
  EXPECT_EQ(kind_of("FO[x > 0]", "x > 0"), ErrKind::OracleRefuted);
  EXPECT_EQ(kind_of("inl(FO[x = x])", "x = x && x = x"), ErrKind::RuleMismatch);
}

TEST(Checker, SmallProofsCheck) {
  EXPECT_TRUE(check(Context{}, parse_proof("\\h: x > 0. h"), F("x > 0 -> x > 0")).ok);
  EXPECT_TRUE(check(Context{}, parse_proof("\\h: x > 0. FO[x >= 0](h)"), F("x > 0 -> x >= 0")).ok);
  EXPECT_TRUE(check(Context{}, parse_proof("<FO[1 > 0], FO[2 > 0]>"), F("1 > 0 && 2 > 0")).ok);
  // a hypothesis from the context
  Context g = Context{}.extend("h", F("x > 0"));
  EXPECT_TRUE(check(g, parse_proof("h"), F("x > 0")).ok);
  EXPECT_FALSE(check(Context{}, parse_proof("h"), F("x > 0")).ok);
}

TEST(Oracle, DecidesSimpleValidities) {
  EXPECT_EQ(oracle_decide(nullptr, F("x + 1 > x")).verdict, Verdict::Valid);
  EXPECT_EQ(oracle_decide(F("x > 0"), F("x >= 0")).verdict, Verdict::Valid);
  OracleResult r = oracle_decide(F("x >= 0"), F("x > 0"));
  ASSERT_EQ(r.verdict, Verdict::Refuted);
  EXPECT_TRUE(holds(F("x >= 0"), r.witness));
  EXPECT_FALSE(holds(F("x > 0"), r.witness));
  EXPECT_EQ(oracle_decide(F("c mod 4 = 1"), F("(c - 1) mod 4 = 0")).verdict, Verdict::Valid);
}

TEST(Oracle, WitnessTermsSatisfyTheirFormula) {
  Term w = oracle_witness(nullptr, "y", F("y = x + 1"));
  ASSERT_TRUE(w);
  for (long x = -5; x <= 5; ++x) EXPECT_EQ(eval(w, {{"x", Q(x)}}), Q(x + 1));
}
