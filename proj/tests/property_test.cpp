#include "support.hpp"

#include "cgl/selftest.hpp"

using namespace cgl;
using namespace cgl::testing;

// The acceptance run uses seeds 91..95; these use others.

namespace {

const std::vector<Peeled>& peeled() {
  static std::vector<Peeled> p = [] {
    std::vector<ProofScript> scripts;
    for (const char* f : kFiles) scripts.push_back(script(f));
    return peel_corpus(scripts);
  }();
  return p;
}

void expect_ok(const PropertyReport& r) {
  EXPECT_GE(r.cases, 200);
  EXPECT_TRUE(r.ok()) << r.failures << " failures, first: " << r.first_failure;
}

}  // namespace

class Seeded : public ::testing::TestWithParam<uint64_t> {};

TEST_P(Seeded, Renaming) { expect_ok(prop_renaming(250, GetParam())); }
TEST_P(Seeded, Weakening) { expect_ok(prop_weakening(peeled(), 250, GetParam())); }
TEST_P(Seeded, Substitution) { expect_ok(prop_substitution(peeled(), 250, GetParam())); }
TEST_P(Seeded, BoundEffect) { expect_ok(prop_bound_effect(250, GetParam())); }
TEST_P(Seeded, Coincidence) { expect_ok(prop_coincidence(250, GetParam())); }

INSTANTIATE_TEST_SUITE_P(Seeds, Seeded, ::testing::Values(1u, 2024u, 777777u));

TEST(Properties, PeelingFindsTheCorpus) { EXPECT_GE(peeled().size(), 40u); }

// Random plays reach every kind of ending, so the play properties are not
// vacuous.
TEST(Properties, RandomPlaysEndInEveryWay) {
  RandomSyntax rs(5);
  std::map<OutcomeKind, int> kinds;
  Menu m = Menu::standard();
  m.depth = 3;
  for (int i = 0; i < 300; ++i) {
    Formula phi = rs.formula(3);
    Realizer a = rs.strategy(phi);
    ReplayDemon d(m, {});
    d.seed = rs.rng()();
    try {
      ++kinds[play_formula(phi, a, rs.state(), d, 20000).kind];
    } catch (const std::exception&) {
      // ill-structured plays are the next test's concern
    }
  }
  EXPECT_GT(kinds[OutcomeKind::Finished], 0);
  EXPECT_GT(kinds[OutcomeKind::AngelViolation], 0);
  EXPECT_GT(kinds[OutcomeKind::DemonViolation], 0);
}

TEST(Properties, RandomStrategiesFitTheirFormulas) {
  RandomSyntax rs(6);
  Menu m = Menu::standard();
  m.depth = 3;
  int ill = 0;
  for (int i = 0; i < 300; ++i) {
    Formula phi = rs.formula(3);
    Realizer a = rs.strategy(phi);
    ReplayDemon d(m, {});
    d.seed = rs.rng()();
    try {
      play_formula(phi, a, rs.state(), d, 20000);
    } catch (const IllStructuredRealizer& e) {
      // a test on a modal formula cannot be decided by evaluation; that is
      // a limit of play, not a misfit of the strategy
      if (std::string(e.what()).find("cannot decide") != std::string::npos) continue;
      ++ill;
      ADD_FAILURE() << show(phi) << ": " << e.what();
    } catch (const DivisionByZero&) {
    }
  }
  EXPECT_EQ(ill, 0);
}
