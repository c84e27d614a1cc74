#include "support.hpp"

using namespace cgl;
using namespace cgl::testing;

namespace {

Proof elaborated(const ProofScript& s, const std::string& name) {
  const Definition* d = s.find(name);
  return elaborate(Context{}, d->proof, d->formula, name);
}

Proof strip_lams(Proof m, Context* g) {
  while (m->kind == PK::Lam) {
    *g = g->extend(m->p, m->phi);
    m = m->a;
  }
  return m;
}

}  // namespace

TEST(Normalizer, RegistryHasEightyDistinctRules) {
  const auto& rules = rule_registry();
  EXPECT_EQ(rules.size(), 80u);
  std::set<std::string> seen(rules.begin(), rules.end());
  EXPECT_EQ(seen.size(), rules.size());
  for (auto& e : extra_rules()) EXPECT_EQ(seen.count(e), 0u) << e;
}

TEST(Normalizer, CorpusCoversEveryRule) {
  reset_rule_counters();
  for (const char* f : kFiles)
    for (const Definition* d : script(f).theorems()) {
      Context g;
      Proof body = strip_lams(elaborated(script(f), d->name), &g);
      normalize(body);
    }
  std::string unfired;
  for (auto& r : rule_registry())
    if (rule_counters()[r] == 0) unfired += " " + r;
  EXPECT_EQ(unfired, "");
}

TEST(Normalizer, EveryStepKeepsTheTypeAndEndsNormal) {
  for (const char* f : kFiles)
    for (const Definition* d : script(f).theorems()) {
      Context g;
      Formula phi = d->formula;
      Proof m = elaborated(script(f), d->name);
      // peel the hypotheses off the formula alongside the binders
      while (m->kind == PK::Lam) {
        g = g.extend(m->p, m->phi);
        Formula a, b;
        ASSERT_TRUE(as_imp(phi, &a, &b));
        phi = b;
        m = m->a;
      }
      NormalizeResult r = normalize(m, 1000000, true);
      EXPECT_EQ(r.trace.size(), static_cast<size_t>(r.steps));
      for (auto& red : r.trace) {
        CheckResult c = check(g, red.term, phi, d->name);
        EXPECT_TRUE(c.ok) << d->name << " after " << red.rule << " at " << red.path << ": "
                          << (c.ok ? "" : describe(*c.error));
      }
      EXPECT_TRUE(is_normal(r.term)) << d->name;
      EXPECT_FALSE(step(r.term).has_value()) << d->name;
    }
}

TEST(Normalizer, FuelRunsOut) {
  Proof m = elaborated(script("rules.cgl"), "bconsSC");
  Context g;
  m = strip_lams(m, &g);
  long full = normalize(m).steps;
  ASSERT_GT(full, 1);
  try {
    normalize(m, full - 1);
    FAIL() << "did not run out";
  } catch (const FuelExhausted& e) {
    EXPECT_EQ(e.steps, full - 1);
    EXPECT_TRUE(e.last);
  }
  EXPECT_EQ(normalize(m, full).steps, full);
}

TEST(Normalizer, RedexesAreNotNormal) {
  Proof beta = papp(plam("h", parse_formula("x > 0"), pvar("h")), pvar("k"));
  EXPECT_FALSE(is_simple(beta));
  EXPECT_FALSE(is_normal(beta));
  auto r = step(beta);
  ASSERT_TRUE(r.has_value());
  EXPECT_TRUE(alpha_eq(r->term, pvar("k")));
}

TEST(Normalizer, NormalizedWitnessProofsStillCheck) {
  for (const char* name : {"succEx", "absEx", "signSplit", "overlap"}) {
    const ProofScript& s = script("witness.cgl");
    Extraction ex = extract_theorem(s, name, true);
    EXPECT_TRUE(check(Context{}, ex.proof, ex.phi, name).ok) << name;
  }
}
