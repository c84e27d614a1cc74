#include "support.hpp"

#include "cgl/json.hpp"
#include "cgl/selftest.hpp"

using namespace cgl;
using namespace cgl::testing;

TEST(Extract, WitnessesAndSelectorsOnRandomStates) {
  const ProofScript& s = script("witness.cgl");
  Realizer succ_r = extract_theorem(s, "succEx", false).realizer;
  Realizer abs_r = extract_theorem(s, "absEx", true).realizer;
  Realizer split_r = extract_theorem(s, "signSplit", false).realizer;
  Realizer over_r = extract_theorem(s, "overlap", false).realizer;
  RandomSyntax rs(1234);
  for (int i = 0; i < 1000; ++i) {
    State st = {{"x", rs.rational(50)}};
    Q x = lookup(st, "x");
    Witness w = extract_existential(succ_r, "y", st);
    EXPECT_EQ(w.value, x + 1);
    Q a = extract_existential(abs_r, "y", st).value;
    // the witness must make the body true, checked by plain evaluation
    State with_y = st;
    with_y["y"] = a;
    EXPECT_TRUE(holds(parse_formula("(x = y && x >= 0) || (x = -y && x < 0)"), with_y));
    Side sp = extract_disjunct(split_r, st).side;
    EXPECT_TRUE(holds(parse_formula(sp == Side::L ? "x <= 0" : "x > 0"), st));
    Side ov = extract_disjunct(over_r, st).side;
    EXPECT_TRUE(holds(parse_formula(ov == Side::L ? "x > 0" : "x < 1"), st));
  }
}

TEST(Extract, NormalizingFirstGivesTheSameStrategy) {
  const ProofScript& s = script("nim.cgl");
  Extraction raw = extract_theorem(s, "dNim", false);
  Extraction nf = extract_theorem(s, "dNim", true);
  std::vector<State> states;
  for (long c = 1; c <= 13; c += 4) states.push_back({{"c", Q(c)}});
  Menu m = Menu::standard();
  m.depth = 4;
  EXPECT_TRUE(verify_formula(raw.phi, raw.realizer, states, m).all_win);
  EXPECT_TRUE(verify_formula(nf.phi, nf.realizer, states, m).all_win);
}

TEST(Extract, IllTypedProofsDoNotExtract) {
  EXPECT_THROW(extract_theorem(script("mutations/off_by_one.cgl"), "succEx", false), CheckError);
}

TEST(Json, ProofsRoundTrip) {
  for (const char* f : kFiles)
    for (const Definition* d : script(f).theorems()) {
      Json j = to_json(d->proof);
      Proof back = proof_from_json(Json::parse(j.dump()));
      EXPECT_TRUE(alpha_eq(back, d->proof)) << d->name;
      EXPECT_EQ(to_json(back).dump(), j.dump()) << d->name;
    }
}

TEST(Json, RealizersRoundTrip) {
  for (const char* f : kFiles)
    for (const Definition* d : script(f).theorems()) {
      for (bool nf : {false, true}) {
        Realizer r = extract_theorem(script(f), d->name, nf).realizer;
        Json j = to_json(r);
        Realizer back = realizer_from_json(Json::parse(j.dump()));
        EXPECT_EQ(show(back), show(r)) << d->name;
        EXPECT_EQ(to_json(back).dump(), j.dump()) << d->name;
      }
    }
}

TEST(Json, MalformedInputIsRejected) {
  EXPECT_THROW(proof_from_json(Json::parse(R"({"node": "Nope"})")), std::runtime_error);
  EXPECT_THROW(realizer_from_json(Json::parse(R"({"node": "Pair", "a": {"node": "Unit"}})")),
               std::runtime_error);
  EXPECT_THROW(realizer_from_json(Json::parse("[1, 2]")), std::runtime_error);
}

TEST(Json, DiagnosticsCarryPositions) {
  try {
    parse_script("theorem t : x > 0 :=\n  FO[x >", "t.cgl");
    FAIL();
  } catch (const ParseError& e) {
    Diagnostic d = diagnose("t.cgl", e);
    EXPECT_EQ(d.pos.line, 2);
    Json j = to_json(d);
    EXPECT_EQ(j.at("file"), "t.cgl");
    EXPECT_EQ(j.at("line"), 2);
    EXPECT_EQ(j.at("kind"), "ParseError");
    EXPECT_EQ(render(d).rfind("t.cgl:2:", 0), 0u);
  }
}
