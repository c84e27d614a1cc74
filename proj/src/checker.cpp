#include "cgl/checker.hpp"

#include <unordered_map>

namespace cgl {

const char* err_kind_name(ErrKind k) {
  switch (k) {
    case ErrKind::RuleMismatch: return "RuleMismatch";
    case ErrKind::UnboundProofVar: return "UnboundProofVar";
    case ErrKind::FreshnessViolation: return "FreshnessViolation";
    case ErrKind::InadmissibleSubstitution: return "InadmissibleSubstitution";
    case ErrKind::OracleIncomplete: return "OracleIncomplete";
    case ErrKind::OracleRefuted: return "OracleRefuted";
    case ErrKind::MetricIllFormed: return "MetricIllFormed";
  }
  return "?";
}

static std::string render(const std::string& path, const std::string& rule,
                          const std::string& expected, const std::string& got) {
  return path + ": rule " + rule + " expected " + expected + ", got " + got;
}

CheckError::CheckError(ErrKind k, std::string path_, SrcPos pos_, std::string rule_,
                       std::string expected_, std::string got_)
    : std::runtime_error(render(path_, rule_, expected_, got_)),
      kind(k),
      path(std::move(path_)),
      pos(pos_),
      rule(std::move(rule_)),
      expected(std::move(expected_)),
      got(std::move(got_)) {}

std::string describe(const CheckError& e) { return e.what(); }

namespace {

std::string rule_name(const Proof& m) {
  std::string s = pk_name(m->kind);
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (m->kind == PK::Asgn || m->kind == PK::Seq || m->kind == PK::Swap || m->kind == PK::ProjL ||
      m->kind == PK::ProjR)
    s += m->tag == Tag::Dia ? "<>" : "[]";
  return s;
}

Formula modal(Tag t, Game g, Formula post) {
  return t == Tag::Dia ? dia(std::move(g), std::move(post)) : box(std::move(g), std::move(post));
}

Tag tag_of(const Formula& f) { return f->kind == FK::Dia ? Tag::Dia : Tag::Box; }

// oracle answers are pure, so they are shared across checks
const OracleResult& decide_cached(const Formula& rho, const Formula& phi) {
  static std::unordered_map<std::string, OracleResult> cache;
  std::string k = (rho ? show(rho) : std::string("-")) + "\n" + show(phi);
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;
  if (cache.size() > 200000) cache.clear();
  return cache.emplace(k, oracle_decide(rho, phi)).first->second;
}

VarSet vars_of(const Context& g) {
  VarSet s;
  all_vars(g, s);
  return s;
}

class Checker {
 public:
  explicit Checker(std::string root) : root_(std::move(root)) {}

  Proof elab(const Context& G, const Proof& m, const Formula& phi, const std::string& path);
  std::pair<Proof, Formula> synth(const Context& G, const Proof& m, const std::string& path);
  std::pair<Proof, Formula> infer_form(const Context& G, const Proof& m, const std::string& path);

 private:
  std::string root_;

  [[noreturn]] void fail(ErrKind k, const std::string& path, const Proof& m,
                         const std::string& expected, const std::string& got) {
    throw CheckError(k, path, m->pos, rule_name(m), expected, got);
  }
  [[noreturn]] void mismatch(const std::string& path, const Proof& m, const std::string& expected,
                             const Formula& got) {
    fail(ErrKind::RuleMismatch, path, m, expected, show(got));
  }

  void fresh_check(const std::string& path, const Proof& m, const std::string& v,
                   const VarSet& avoid) {
    if (v.empty() || avoid.count(v))
      fail(ErrKind::FreshnessViolation, path, m, "variable fresh for the context and goal",
           v.empty() ? "no name" : v);
  }

  void oracle(const std::string& path, const Proof& m, const Formula& rho, const Formula& phi,
              ErrKind refuted = ErrKind::OracleRefuted, ErrKind unknown = ErrKind::OracleIncomplete) {
    if (!is_first_order(phi) || (rho && !is_first_order(rho)))
      fail(ErrKind::RuleMismatch, path, m, "first-order formulas",
           show(rho ? limp(rho, phi) : phi));
    const OracleResult& r = decide_cached(rho, phi);
    if (r.verdict == Verdict::Valid) return;
    std::string goal = rho ? show(rho) + " -> " + show(phi) : show(phi);
    if (r.verdict == Verdict::Refuted) {
      CheckError e(refuted, path, m->pos, rule_name(m), "valid " + goal,
                   "counterexample " + state_str(r.witness));
      e.witness = r.witness;
      throw e;
    }
    throw CheckError(unknown, path, m->pos, rule_name(m), "valid " + goal, "undecided");
  }

  // payload of QE/Dec: its inferred type is the oracle hypothesis
  std::pair<Proof, Formula> payload(const Context& G, const Proof& a, const std::string& path) {
    if (!a) return {nullptr, nullptr};
    return synth(G, a, path + ".payload");
  }

  Proof elab_synth(const Context& G, const Proof& m, const Formula& phi, const std::string& path) {
    auto [ann, ty] = synth(G, m, path);
    if (!same(ty, phi)) fail(ErrKind::RuleMismatch, path, m, show(phi), show(ty));
    return ann;
  }
};

Proof Checker::elab(const Context& G, const Proof& m, const Formula& phi,
                    const std::string& path) {
  auto need = [&](bool ok, const std::string& shape) {
    if (!ok) mismatch(path, m, shape, phi);
  };
  auto game_is = [&](FK fk, GK gk) {
    return phi->kind == fk && phi->game->kind == gk;
  };
  auto edit = [&](auto f) { return with(m, f); };

  switch (m->kind) {
    case PK::PVar:
    case PK::App:
    case PK::NumApp:
    case PK::ProjL:
    case PK::ProjR:
    case PK::Unroll: return elab_synth(G, m, phi, path);

    case PK::Lam: {
      need(game_is(FK::Box, GK::Test), "[?" + (m->phi ? show(m->phi) : std::string("_")) + "] _");
      if (m->phi && !same(m->phi, phi->game->test))
        fail(ErrKind::RuleMismatch, path, m, "[?" + show(m->phi) + "] _", show(phi));
      Proof body = elab(G.extend(m->p, phi->game->test), m->a, phi->post, path + ".body");
      auto test = phi->game->test;
      return edit([&](ProofNode& n) {
        n.a = body;
        n.phi = test;
      });
    }

    case PK::NumLam: {
      need(game_is(FK::Box, GK::AssignAny) && phi->game->var == m->x, "[" + m->x + " := *] _");
      VarSet avoid = vars_of(G);
      all_vars(phi, avoid);
      std::string y = m->y;
      if (y.empty()) {
        VarSet a2 = avoid;
        all_vars(m, a2);
        y = fresh_name(m->x, a2);
      }
      fresh_check(path, m, y, avoid);
      Proof body = elab(G.rename(m->x, y), m->a, phi->post, path + ".body");
      return edit([&](ProofNode& n) {
        n.a = body;
        n.y = y;
      });
    }

    case PK::DPair: {
      need(game_is(FK::Dia, GK::Test), "<?_> _");
      Proof a = elab(G, m->a, phi->game->test, path + ".left");
      Proof b = elab(G, m->b, phi->post, path + ".right");
      return edit([&](ProofNode& n) {
        n.a = a;
        n.b = b;
      });
    }

    case PK::BPair: {
      need(game_is(FK::Box, GK::Choice), "[_ ++ _] _");
      Proof a = elab(G, m->a, box(phi->game->a, phi->post), path + ".left");
      Proof b = elab(G, m->b, box(phi->game->b, phi->post), path + ".right");
      return edit([&](ProofNode& n) {
        n.a = a;
        n.b = b;
      });
    }

    case PK::InjL:
    case PK::InjR: {
      need(game_is(FK::Dia, GK::Choice), "<_ ++ _> _");
      auto side = m->kind == PK::InjL ? phi->game->a : phi->game->b;
      Proof a = elab(G, m->a, dia(side, phi->post), path + ".body");
      return edit([&](ProofNode& n) { n.a = a; });
    }

    case PK::Case:
    case PK::RCase: {
      auto [a, ty] = synth(G, m->a, path + ".scrut");
      bool rc = m->kind == PK::RCase;
      if (ty->kind != FK::Dia || ty->game->kind != (rc ? GK::Repeat : GK::Choice))
        fail(ErrKind::RuleMismatch, path + ".scrut", m, rc ? "<_*> _" : "<_ ++ _> _", show(ty));
      Formula l = rc ? ty->post : dia(ty->game->a, ty->post);
      Formula r = rc ? dia(ty->game->a, ty) : dia(ty->game->b, ty->post);
      Proof b = elab(G.extend(m->p, l), m->b, phi, path + ".left");
      Proof c = elab(G.extend(m->q, r), m->c, phi, path + ".right");
      return edit([&](ProofNode& n) {
        n.a = a;
        n.b = b;
        n.c = c;
      });
    }

    case PK::TCons:
    case PK::Asgn: {
      bool tc = m->kind == PK::TCons;
      if (tc) {
        need(game_is(FK::Dia, GK::AssignAny) && phi->game->var == m->x, "<" + m->x + " := *> _");
      } else {
        need(phi->kind == (m->tag == Tag::Dia ? FK::Dia : FK::Box) &&
                 phi->game->kind == GK::Assign && phi->game->var == m->x,
             (m->tag == Tag::Dia ? "<" : "[") + m->x + " := _" + (m->tag == Tag::Dia ? ">" : "]") +
                 " _");
      }
      Term f = tc ? m->f : phi->game->term;
      VarSet avoid = vars_of(G);
      all_vars(phi, avoid);
      all_vars(f, avoid);
      avoid.insert(m->x);
      fresh_check(path, m, m->y, avoid);
      Context G2 = G.rename(m->x, m->y).extend(m->p, cmp(var(m->x), Rel::Eq, rename(f, m->x, m->y)));
      Proof a = elab(G2, m->a, phi->post, path + ".body");
      return edit([&](ProofNode& n) { n.a = a; });
    }

    case PK::Unpack: {
      auto [a, ty] = synth(G, m->a, path + ".pack");
      if (ty->kind != FK::Dia || ty->game->kind != GK::AssignAny)
        fail(ErrKind::RuleMismatch, path + ".pack", m, "<_ := *> _", show(ty));
      std::string x = ty->game->var;
      if (!m->x.empty() && m->x != x)
        fail(ErrKind::RuleMismatch, path + ".pack", m, "<" + m->x + " := *> _", show(ty));
      if (free_vars(phi).count(x))
        fail(ErrKind::FreshnessViolation, path, m, x + " not free in the goal", show(phi));
      VarSet avoid = vars_of(G);
      all_vars(phi, avoid);
      all_vars(ty, avoid);
      fresh_check(path, m, m->y, avoid);
      Proof b = elab(G.rename(x, m->y).extend(m->p, ty->post), m->b, phi, path + ".body");
      return edit([&](ProofNode& n) {
        n.a = a;
        n.b = b;
        n.x = x;
      });
    }

    case PK::Seq: {
      need(phi->kind == (m->tag == Tag::Dia ? FK::Dia : FK::Box) && phi->game->kind == GK::Seq,
           m->tag == Tag::Dia ? "<_; _> _" : "[_; _] _");
      Formula inner = modal(m->tag, phi->game->a, modal(m->tag, phi->game->b, phi->post));
      Proof a = elab(G, m->a, inner, path + ".body");
      return edit([&](ProofNode& n) { n.a = a; });
    }

    case PK::Swap: {
      need(phi->kind == (m->tag == Tag::Dia ? FK::Dia : FK::Box) && phi->game->kind == GK::Dual,
           m->tag == Tag::Dia ? "<_^d> _" : "[_^d] _");
      Tag flip = m->tag == Tag::Dia ? Tag::Box : Tag::Dia;
      Proof a = elab(G, m->a, modal(flip, phi->game->a, phi->post), path + ".body");
      return edit([&](ProofNode& n) { n.a = a; });
    }

    case PK::Stop:
    case PK::Go: {
      need(game_is(FK::Dia, GK::Repeat), "<_*> _");
      Formula goal = m->kind == PK::Stop ? phi->post : dia(phi->game->a, phi);
      Proof a = elab(G, m->a, goal, path + ".body");
      return edit([&](ProofNode& n) { n.a = a; });
    }

    case PK::Roll: {
      need(game_is(FK::Box, GK::Repeat), "[_*] _");
      Proof a = elab(G, m->a, land(phi->post, box(phi->game->a, phi)), path + ".body");
      return edit([&](ProofNode& n) { n.a = a; });
    }

    case PK::For: {
      need(game_is(FK::Dia, GK::Repeat), "<_*> _");
      Game alpha = phi->game->a;
      Formula inv = m->phi;
      Term metric = m->f;
      VarSet avoid = vars_of(G);
      all_vars(phi, avoid);
      all_vars(inv, avoid);
      all_vars(metric, avoid);
      std::string m0 = m->y.empty() ? fresh_name("M0", avoid) : m->y;
      fresh_check(path, m, m0, avoid);
      oracle(path, m, inv, lor(cmp(metric, Rel::Eq, lit(0)), succ(metric, lit(0))),
             ErrKind::MetricIllFormed, ErrKind::MetricIllFormed);
      Proof a = elab(G, m->a, inv, path + ".init");
      Context GB = Context{}.extend(m->p, inv).extend(
          m->q, land(cmp(var(m0), Rel::Eq, metric), succ(metric, lit(0))));
      Proof b = elab(GB, m->b, dia(alpha, land(inv, succ(var(m0), metric))), path + ".step");
      Context GC = Context{}.extend(m->p, inv).extend(m->q, cmp(metric, Rel::Eq, lit(0)));
      Proof c = elab(GC, m->c, phi->post, path + ".post");
      return edit([&](ProofNode& n) {
        n.a = a;
        n.b = b;
        n.c = c;
        n.y = m0;
        n.game = alpha;
      });
    }

    case PK::FP: {
      auto [a, ty] = synth(G, m->a, path + ".scrut");
      if (ty->kind != FK::Dia || ty->game->kind != GK::Repeat)
        fail(ErrKind::RuleMismatch, path + ".scrut", m, "<_*> _", show(ty));
      Proof b = elab(Context{}.extend(m->p, ty->post), m->b, phi, path + ".left");
      Proof c = elab(Context{}.extend(m->q, dia(ty->game->a, phi)), m->c, phi, path + ".right");
      return edit([&](ProofNode& n) {
        n.a = a;
        n.b = b;
        n.c = c;
        n.game = ty->game->a;
        n.full = ty;
      });
    }

    case PK::Rep: {
      need(game_is(FK::Box, GK::Repeat), "[_*] _");
      Game alpha = phi->game->a;
      Proof a = elab(G, m->a, m->phi, path + ".init");
      Context GJ = Context{}.extend(m->p, m->phi);
      Proof b = elab(GJ, m->b, box(alpha, m->phi), path + ".step");
      Proof c = elab(GJ, m->c, phi->post, path + ".post");
      return edit([&](ProofNode& n) {
        n.a = a;
        n.b = b;
        n.c = c;
        n.game = alpha;
      });
    }

    case PK::Mon: {
      need(phi->kind != FK::Cmp, "<_> _ or [_] _");
      Tag t = tag_of(phi);
      Game alpha = phi->game;
      Proof a;
      Formula post0 = m->phi;
      if (m->full) {
        if (m->full->kind != phi->kind || !same(m->full->game, alpha))
          fail(ErrKind::RuleMismatch, path, m, show(modal(t, alpha, m->full->post)), show(phi));
        if (!post0) post0 = m->full->post;
      }
      if (post0) {
        a = elab(G, m->a, modal(t, alpha, post0), path + ".game");
      } else {
        auto [a2, ty] = synth(G, m->a, path + ".game");
        if (ty->kind != phi->kind || !same(ty->game, alpha))
          fail(ErrKind::RuleMismatch, path + ".game", m, show(modal(t, alpha, phi->post)),
               show(ty));
        a = a2;
        post0 = ty->post;
      }
      VarSet avoid = vars_of(G);
      all_vars(phi, avoid);
      all_vars(post0, avoid);
      VarSet bv = bound_vars(alpha);
      Renaming ren;
      if (!m->ren.empty()) {
        // a supplied renaming may cover more than BV(alpha); that only weakens
        // the context the body sees
        VarSet dom, targets;
        for (auto& [x, x2] : m->ren) {
          if (dom.count(x) || targets.count(x2) || avoid.count(x2) || dom.count(x2) ||
              x2 == x)
            fail(ErrKind::FreshnessViolation, path, m, "fresh renaming of bound variables",
                 x + "~" + x2);
          dom.insert(x);
          targets.insert(x2);
        }
        for (auto& x : bv)
          if (!dom.count(x))
            fail(ErrKind::FreshnessViolation, path, m, "renaming covering " + x, "none");
        for (auto& x : dom)
          if (targets.count(x))
            fail(ErrKind::FreshnessViolation, path, m, "disjoint renaming", x);
        ren = m->ren;
      } else {
        VarSet a2 = avoid;
        all_vars(m, a2);
        for (auto& x : bv) {
          std::string x2 = fresh_name(x, a2);
          a2.insert(x2);
          ren.emplace_back(x, x2);
        }
      }
      Context G2 = G;
      for (auto& [x, x2] : ren) G2 = G2.rename(x, x2);
      Proof b = elab(G2.extend(m->p, post0), m->b, phi->post, path + ".post");
      Formula full = modal(t, alpha, post0);
      return edit([&](ProofNode& n) {
        n.a = a;
        n.b = b;
        n.phi = post0;
        n.full = full;
        n.ren = ren;
      });
    }

    case PK::QE: {
      if (m->phi && !same(m->phi, phi)) mismatch(path, m, show(m->phi), phi);
      auto [a, rho] = payload(G, m->a, path);
      oracle(path, m, rho, phi);
      return edit([&](ProofNode& n) {
        n.a = a;
        n.phi = phi;
        n.full = rho;
      });
    }

    case PK::Dec: {
      Formula l, r;
      if (!as_or(phi, &l, &r)) mismatch(path, m, "_ || _", phi);
      if (m->phi && !same(m->phi, phi)) mismatch(path, m, show(m->phi), phi);
      auto [a, rho] = payload(G, m->a, path);
      oracle(path, m, rho, phi);
      return edit([&](ProofNode& n) {
        n.a = a;
        n.phi = phi;
        n.full = rho;
      });
    }

    case PK::Split: {
      Formula want = lor(cmp(m->f, Rel::Le, m->g), cmp(m->f, Rel::Gt, m->g));
      if (!same(want, phi)) mismatch(path, m, show(want), phi);
      return m;
    }

    case PK::Ghost: {
      VarSet avoid = vars_of(G);
      for (auto& v : free_vars(phi)) avoid.insert(v);
      all_vars(m->f, avoid);
      fresh_check(path, m, m->x, avoid);
      Proof a = elab(G.extend(m->p, cmp(var(m->x), Rel::Eq, m->f)), m->a, phi, path + ".body");
      return edit([&](ProofNode& n) { n.a = a; });
    }
  }
  mismatch(path, m, "a known proof form", phi);
}

std::pair<Proof, Formula> Checker::synth(const Context& G, const Proof& m,
                                         const std::string& path) {
  if (m->ann) {
    Proof bare = with(m, [](ProofNode& n) { n.ann = nullptr; });
    Proof r = elab(G, bare, m->ann, path);
    return {with(r, [&](ProofNode& n) { n.ann = m->ann; }), m->ann};
  }
  auto [r, ty] = infer_form(G, m, path);
  return {with(r, [&](ProofNode& n) { n.ann = ty; }), ty};
}

std::pair<Proof, Formula> Checker::infer_form(const Context& G, const Proof& m,
                                              const std::string& path) {
  auto edit = [&](auto f) { return with(m, f); };
  switch (m->kind) {
    case PK::PVar: {
      const Formula* f = G.find(m->p);
      if (!f) fail(ErrKind::UnboundProofVar, path, m, "hypothesis " + m->p, "unbound");
      return {m, *f};
    }
    case PK::App: {
      auto [a, ty] = synth(G, m->a, path + ".fun");
      if (ty->kind != FK::Box || ty->game->kind != GK::Test)
        fail(ErrKind::RuleMismatch, path + ".fun", m, "[?_] _", show(ty));
      Proof b = elab(G, m->b, ty->game->test, path + ".arg");
      return {edit([&](ProofNode& n) {
                n.a = a;
                n.b = b;
              }),
              ty->post};
    }
    case PK::NumApp: {
      auto [a, ty] = synth(G, m->a, path + ".fun");
      if (ty->kind != FK::Box || ty->game->kind != GK::AssignAny)
        fail(ErrKind::RuleMismatch, path + ".fun", m, "[_ := *] _", show(ty));
      Formula r;
      try {
        r = subst(ty->post, ty->game->var, m->f);
      } catch (const InadmissibleSubstitution& e) {
        fail(ErrKind::InadmissibleSubstitution, path, m,
             "admissible " + ty->game->var + " := " + show(m->f), "binder " + e.binder);
      }
      return {edit([&](ProofNode& n) { n.a = a; }), r};
    }
    case PK::ProjL:
    case PK::ProjR: {
      auto [a, ty] = synth(G, m->a, path + ".body");
      bool left = m->kind == PK::ProjL;
      Formula r;
      if (m->tag == Tag::Dia) {
        if (ty->kind != FK::Dia || ty->game->kind != GK::Test)
          fail(ErrKind::RuleMismatch, path + ".body", m, "<?_> _", show(ty));
        r = left ? ty->game->test : ty->post;
      } else {
        if (ty->kind != FK::Box || ty->game->kind != GK::Choice)
          fail(ErrKind::RuleMismatch, path + ".body", m, "[_ ++ _] _", show(ty));
        r = box(left ? ty->game->a : ty->game->b, ty->post);
      }
      return {edit([&](ProofNode& n) { n.a = a; }), r};
    }
    case PK::Unroll: {
      auto [a, ty] = synth(G, m->a, path + ".body");
      if (ty->kind != FK::Box || ty->game->kind != GK::Repeat)
        fail(ErrKind::RuleMismatch, path + ".body", m, "[_*] _", show(ty));
      return {edit([&](ProofNode& n) { n.a = a; }), land(ty->post, box(ty->game->a, ty))};
    }
    case PK::Lam: {
      if (!m->phi) break;
      auto [b, ty] = synth(G.extend(m->p, m->phi), m->a, path + ".body");
      return {edit([&](ProofNode& n) { n.a = b; }), limp(m->phi, ty)};
    }
    case PK::DPair: {
      auto [a, ta] = synth(G, m->a, path + ".left");
      auto [b, tb] = synth(G, m->b, path + ".right");
      return {edit([&](ProofNode& n) {
                n.a = a;
                n.b = b;
              }),
              land(ta, tb)};
    }
    case PK::QE:
    case PK::Dec:
      if (!m->phi) break;
      return {elab(G, m, m->phi, path), m->phi};
    case PK::Case:
    case PK::RCase: {
      // both branches must agree on their type
      auto ty = synth(G, m->a, path + ".scrut").second;
      bool rc = m->kind == PK::RCase;
      if (ty->kind != FK::Dia || ty->game->kind != (rc ? GK::Repeat : GK::Choice)) break;
      Formula l = rc ? ty->post : dia(ty->game->a, ty->post);
      Formula r = rc ? dia(ty->game->a, ty) : dia(ty->game->b, ty->post);
      Formula tl = synth(G.extend(m->p, l), m->b, path + ".left").second;
      Formula tr = synth(G.extend(m->q, r), m->c, path + ".right").second;
      if (!same(tl, tr))
        fail(ErrKind::RuleMismatch, path + ".right", m, show(tl), show(tr));
      return {elab(G, m, tl, path), tl};
    }
    case PK::Split: {
      Formula f = lor(cmp(m->f, Rel::Le, m->g), cmp(m->f, Rel::Gt, m->g));
      return {m, f};
    }
    case PK::Mon: {
      Formula ta = m->full, post = m->phi;
      if (!ta) {
        if (!post) break;
        ta = synth(G, m->a, path + ".game").second;
      }
      if (ta->kind == FK::Cmp) break;
      if (!post) post = ta->post;
      // the body's type decides the postcondition; re-elaborate against it
      Context G2 = G;
      VarSet avoid = vars_of(G);
      all_vars(ta, avoid);
      all_vars(m, avoid);
      for (auto& x : bound_vars(ta->game)) {
        std::string x2 = fresh_name(x, avoid);
        avoid.insert(x2);
        G2 = G2.rename(x, x2);
      }
      Formula tb = synth(G2.extend(m->p, post), m->b, path + ".post").second;
      Formula goal = modal(tag_of(ta), ta->game, tb);
      return {elab(G, m, goal, path), goal};
    }
    default: break;
  }
  throw CheckError(ErrKind::RuleMismatch, path, m->pos, rule_name(m), "an inferable proof",
                   "a term needing its goal");
}

}  // namespace

Proof elaborate(const Context& g, const Proof& m, const Formula& phi, const std::string& root) {
  Checker c(root);
  return c.elab(g, m, phi, root);
}

Formula infer(const Context& g, const Proof& m, const std::string& root) {
  Checker c(root);
  return c.synth(g, m, root).second;
}

CheckResult check(const Context& g, const Proof& m, const Formula& phi, const std::string& root) {
  CheckResult r;
  try {
    r.annotated = elaborate(g, m, phi, root);
    r.ok = true;
  } catch (const CheckError& e) {
    r.error = e;
  }
  return r;
}

}  // namespace cgl
