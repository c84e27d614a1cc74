#include "cgl/normalizer.hpp"

#include "cgl/oracle.hpp"

#include <unordered_map>

namespace cgl {

FuelExhausted::FuelExhausted(Proof l, long s)
    : std::runtime_error("fuel exhausted after " + std::to_string(s) + " steps"),
      last(std::move(l)),
      steps(s) {}

const std::vector<std::string>& rule_registry() {
  static const std::vector<std::string> r = {
      // beta
      "appBeta", "brandomBeta", "projLBeta", "projRBeta", "caseBetaL", "caseBetaR",
      "bunrollBeta", "QEAllBeta", "QEAndBeta", "QEExistsBeta", "QEOrBeta", "unpackBeta",
      "fpBeta", "repBeta", "forBeta",
      // monotonicity
      "rlamMon", "bconsMon", "dconsMon", "injLMon", "bswapMon", "dswapMon", "lamMon", "tconsMon",
      "bseqMon", "dseqMon", "injRMon", "dasgnMon", "basgnMon", "caseMon", "brollMon", "stopMon",
      "goMon",
      // commuting
      "projLC", "projRC", "bconsCL", "bconsCR", "dconsCL", "dconsCR", "stopC", "goC", "injLC",
      "injRC", "drcaseC", "caseC", "bunrollC", "repC", "forC", "fpC", "dseqC", "bseqC", "dswapC",
      "bswapC", "appCL", "appCR", "brandomC", "monC", "tconsC", "unpackC",
      // structural
      "projLS", "projRS", "repS", "bunrollS", "brandomS", "appSL", "bseqS", "dseqS", "monS",
      "injLS", "injRS", "bconsSL", "dconsSL", "bconsSR", "dconsSR", "appSR", "bswapS", "dswapS",
      "forS", "fpS", "caseS", "unpackS"};
  return r;
}

const std::vector<std::string>& extra_rules() {
  static const std::vector<std::string> r = {"tconsS", "stopS", "goS", "QEImpBeta", "ghostLift"};
  return r;
}

std::map<std::string, long>& rule_counters() {
  static std::map<std::string, long> c;
  return c;
}

void reset_rule_counters() { rule_counters().clear(); }

namespace {

struct Stuck {};

bool is_case(const Proof& m) { return m && (m->kind == PK::Case || m->kind == PK::RCase); }

Formula modal(Tag t, Game g, Formula post) {
  return t == Tag::Dia ? dia(std::move(g), std::move(post)) : box(std::move(g), std::move(post));
}

bool is_elim(PK k) {
  switch (k) {
    case PK::App:
    case PK::NumApp:
    case PK::ProjL:
    case PK::ProjR:
    case PK::Unroll:
    case PK::Unpack:
    case PK::Mon:
    case PK::Case:
    case PK::RCase: return true;
    default: return false;
  }
}

// child slot labels, shared with the checker's diagnostics
std::string label(PK k, int slot) {
  switch (k) {
    case PK::App: return slot == 0 ? "fun" : "arg";
    case PK::NumApp: return "fun";
    case PK::DPair:
    case PK::BPair: return slot == 0 ? "left" : "right";
    case PK::Case:
    case PK::RCase:
    case PK::FP: return slot == 0 ? "scrut" : slot == 1 ? "left" : "right";
    case PK::Unpack: return slot == 0 ? "pack" : "body";
    case PK::Mon: return slot == 0 ? "game" : "post";
    case PK::For:
    case PK::Rep: return slot == 0 ? "init" : slot == 1 ? "step" : "post";
    case PK::QE:
    case PK::Dec: return "payload";
    default: return "body";
  }
}

enum class QEShape { None, Imp, Or, And, BoxChoice, Forall, Exists };

QEShape qe_shape(const Proof& m) {
  const Formula& f = m->phi;
  if (!f || f->kind == FK::Cmp || !is_first_order(f)) return QEShape::None;
  Formula a, b;
  if (as_or(f, &a, &b)) return QEShape::Or;
  if (f->kind == FK::Box && f->game->kind == GK::Test) return QEShape::Imp;
  if (f->kind == FK::Dia && f->game->kind == GK::Test) return QEShape::And;
  if (f->kind == FK::Box && f->game->kind == GK::Choice) return QEShape::BoxChoice;
  if (f->kind == FK::Box && f->game->kind == GK::AssignAny) return QEShape::Forall;
  if (f->kind == FK::Dia && f->game->kind == GK::AssignAny) {
    if (oracle_witness(m->full, f->game->var, f->post)) return QEShape::Exists;
  }
  return QEShape::None;
}

bool qe_reducible(const Proof& m) { return m->kind == PK::QE && qe_shape(m) != QEShape::None; }

// ---- normal forms ----

bool neutral(const Proof& m);

// A case under tcons whose scrutinee reads the new state or the equation
// hypothesis is decided after the assignment and cannot move out.
bool liftable(const Proof& m, const Proof& cs) {
  if (m->kind != PK::TCons) return true;
  if (free_pvars(cs->a).count(m->p)) return false;
  VarSet vs;
  all_vars(cs->a, vs);
  return !vs.count(m->x) && !vs.count(m->y);
}

bool simple(const Proof& m) {
  switch (m->kind) {
    case PK::PVar:
    case PK::Split:
    case PK::Dec:
    case PK::Lam:
    case PK::NumLam:
    case PK::Roll:
    case PK::Asgn:
    case PK::Ghost: return true;
    case PK::QE: return !qe_reducible(m);
    case PK::TCons:
      if (is_case(m->a) && !liftable(m, m->a)) return is_normal(m->a);
      return simple(m->a) && !is_case(m->a);
    case PK::InjL:
    case PK::InjR:
    case PK::Stop:
    case PK::Go:
    case PK::Seq:
    case PK::Swap: return simple(m->a) && !is_case(m->a);
    case PK::DPair:
    case PK::BPair: return simple(m->a) && !is_case(m->a) && simple(m->b) && !is_case(m->b);
    case PK::App:
    case PK::NumApp:
    case PK::ProjL:
    case PK::ProjR:
    case PK::Unroll:
    case PK::Unpack:
    case PK::Mon: return neutral(m);
    default: return false;
  }
}

bool neutral(const Proof& m) {
  switch (m->kind) {
    case PK::PVar:
    case PK::Dec:
    case PK::Split: return true;
    case PK::QE: return !qe_reducible(m);
    case PK::App: return neutral(m->a) && simple(m->b) && !is_case(m->b);
    case PK::NumApp:
    case PK::ProjL:
    case PK::ProjR:
    case PK::Unroll:
    case PK::Unpack:
    case PK::Mon: return neutral(m->a);
    default: return false;
  }
}

// ---- the stepper ----

class Stepper {
 public:
  explicit Stepper(const Proof& root) {
    all_vars(root, avoid_);
    all_pvars(root, pavoid_);
  }

  // a redex's reduct keeps the redex's inferred type
  std::optional<Reduction> run(const Proof& m, const std::string& path) {
    auto r = run_here(m, path);
    if (r && r->path == path && m->ann && !r->term->ann)
      r->term = with(r->term, [&](ProofNode& k) { k.ann = m->ann; });
    return r;
  }

 private:
  std::optional<Reduction> run_here(const Proof& m, const std::string& path);

  VarSet avoid_, pavoid_;

  std::string fresh_var(const std::string& b) {
    auto v = fresh_name(b, avoid_);
    avoid_.insert(v);
    return v;
  }
  std::string fresh_pvar(const std::string& b) {
    auto v = fresh_name(b, pavoid_);
    pavoid_.insert(v);
    return v;
  }

  Renaming fresh_ren(const Game& g) {
    Renaming r;
    for (auto& x : bound_vars(g)) r.emplace_back(x, fresh_var(x));
    return r;
  }

  Proof mk_mon(Proof a, const std::string& p, Proof b, const Formula& full,
               const Renaming* ren = nullptr) {
    Proof m = mon(std::move(a), p, std::move(b), full->post);
    Renaming r = ren ? *ren : fresh_ren(full->game);
    return with(m, [&](ProofNode& n) {
      n.full = full;
      n.ren = r;
    });
  }

  // moves a monotonicity body out of its renamed world: renamed copies are
  // identified with the originals, except bound_x, which becomes ghost
  Proof adapt(Proof n, const Renaming& ren, const std::string& bound_x = "",
              const std::string& ghost_ = "") {
    for (auto& [x, x2] : ren) {
      VarSet nv;
      all_vars(n, nv);
      if (!nv.count(x2)) continue;
      if (x == bound_x) {
        if (nv.count(ghost_)) throw Stuck{};
        n = rename_pt(n, x2, ghost_);
      } else {
        try {
          n = subst_term_pt(n, x2, var(x));
        } catch (const InadmissibleSubstitution&) {
          throw Stuck{};
        }
      }
    }
    return n;
  }

  // proof variable binder b is about to scope over `body` that must not see it
  void unclash(std::string& b, Proof& scoped, const VarSet& outside) {
    if (!outside.count(b)) return;
    std::string b2 = fresh_pvar(b);
    scoped = subst_pt(scoped, b, pvar(b2));
    b = b2;
  }

  VarSet fpv_except(const Proof& m, const std::string& p) {
    VarSet s = free_pvars(m);
    s.erase(p);
    return s;
  }

  // free proof variables of m's other children when slot is taken out
  VarSet others(const Proof& m, int slot) {
    auto n = with(m, [&](ProofNode& k) {
      Proof hole = pvar("");
      (slot == 0 ? k.a : slot == 1 ? k.b : k.c) = hole;
    });
    VarSet s = free_pvars(n);
    s.erase("");
    return s;
  }

  VarSet other_vars(const Proof& m, int slot) {
    auto n = with(m, [&](ProofNode& k) { (slot == 0 ? k.a : slot == 1 ? k.b : k.c) = pvar(""); });
    VarSet s;
    all_vars(n, s);
    return s;
  }

  // E[case A of l => B | r => C]  ~>  case A of l => E[B] | r => E[C]
  Proof lift(const Proof& m, int slot) {
    const Proof& cs = slot == 0 ? m->a : m->b;
    VarSet out = others(m, slot);
    std::string l = cs->p, r = cs->q;
    Proof b = cs->b, c = cs->c;
    unclash(l, b, out);
    unclash(r, c, out);
    // the branches take the case's place and its type
    auto put = [&](const Proof& x) {
      Proof y = x->ann || !cs->ann ? x : with(x, [&](ProofNode& k) { k.ann = cs->ann; });
      return with(m, [&](ProofNode& k) { (slot == 0 ? k.a : k.b) = y; });
    };
    return with(cs, [&](ProofNode& k) {
      k.p = l;
      k.q = r;
      k.b = put(b);
      k.c = put(c);
      k.ann = m->ann;
    });
  }

  // E[ghost x := f; q. M]  ~>  ghost x := f; q. E[M]
  Proof ghost_lift(const Proof& m) {
    const Proof& g = m->a;
    std::string x = g->x, q = g->p;
    Proof body = g->a;
    unclash(q, body, others(m, 0));
    if (other_vars(m, 0).count(x)) {
      std::string x2 = fresh_var(x);
      body = rename_pt(body, x, x2);
      x = x2;
    }
    Proof inner = with(m, [&](ProofNode& k) { k.a = body; });
    return ghost(x, g->f, q, inner);
  }

  std::optional<Reduction> qe_step(const Proof& m, const std::string& path);
  std::optional<Reduction> mon_step(const Proof& m, const std::string& path);
  std::optional<Reduction> beta(const Proof& m, const std::string& path);
};

Reduction fired(Proof t, const std::string& rule, const std::string& path) {
  return Reduction{std::move(t), rule, path};
}

// S-rule names per constructor and slot
std::string s_rule(const Proof& m, int slot) {
  bool d = m->tag == Tag::Dia;
  switch (m->kind) {
    case PK::App: return slot == 0 ? "appSL" : "appSR";
    case PK::NumApp: return "brandomS";
    case PK::DPair: return slot == 0 ? "dconsSL" : "dconsSR";
    case PK::BPair: return slot == 0 ? "bconsSL" : "bconsSR";
    case PK::ProjL: return "projLS";
    case PK::ProjR: return "projRS";
    case PK::InjL: return "injLS";
    case PK::InjR: return "injRS";
    case PK::Case:
    case PK::RCase: return "caseS";
    case PK::TCons: return "tconsS";
    case PK::Unpack: return "unpackS";
    case PK::Seq: return d ? "dseqS" : "bseqS";
    case PK::Swap: return d ? "dswapS" : "bswapS";
    case PK::Stop: return "stopS";
    case PK::Go: return "goS";
    case PK::For: return "forS";
    case PK::FP: return "fpS";
    case PK::Rep: return "repS";
    case PK::Unroll: return "bunrollS";
    case PK::Mon: return "monS";
    default: return "?";
  }
}

std::string c_rule(const Proof& m, int slot) {
  bool d = m->tag == Tag::Dia;
  switch (m->kind) {
    case PK::App: return slot == 0 ? "appCL" : "appCR";
    case PK::NumApp: return "brandomC";
    case PK::DPair: return slot == 0 ? "dconsCL" : "dconsCR";
    case PK::BPair: return slot == 0 ? "bconsCL" : "bconsCR";
    case PK::ProjL: return "projLC";
    case PK::ProjR: return "projRC";
    case PK::InjL: return "injLC";
    case PK::InjR: return "injRC";
    case PK::Case: return "caseC";
    case PK::RCase: return "drcaseC";
    case PK::TCons: return "tconsC";
    case PK::Unpack: return "unpackC";
    case PK::Seq: return d ? "dseqC" : "bseqC";
    case PK::Swap: return d ? "dswapC" : "bswapC";
    case PK::Stop: return "stopC";
    case PK::Go: return "goC";
    case PK::For: return "forC";
    case PK::FP: return "fpC";
    case PK::Rep: return "repC";
    case PK::Unroll: return "bunrollC";
    case PK::Mon: return m->a->kind == PK::RCase ? "caseMon" : "monC";
    default: return "?";
  }
}

std::optional<Reduction> Stepper::run_here(const Proof& m, const std::string& path) {
  // reduce or lift out of one child; S-rule names are reported by the caller
  auto child = [&](int slot) -> std::optional<Reduction> {
    const Proof& c = slot == 0 ? m->a : slot == 1 ? m->b : m->c;
    auto r = run(c, path + "." + label(m->kind, slot));
    if (r) {
      r->term = with(m, [&](ProofNode& k) { (slot == 0 ? k.a : slot == 1 ? k.b : k.c) = r->term; });
      // the innermost rule is what fired; record the structural rule too
      rule_counters()[s_rule(m, slot)]++;
      return r;
    }
    if (is_case(c) && liftable(m, c)) return fired(lift(m, slot), c_rule(m, slot), path);
    return std::nullopt;
  };

  switch (m->kind) {
    case PK::PVar:
    case PK::Split:
    case PK::Dec:
    case PK::Lam:
    case PK::NumLam:
    case PK::Roll:
    case PK::Asgn:
    case PK::Ghost: return std::nullopt;

    case PK::QE: return qe_step(m, path);

    case PK::TCons:
    case PK::InjL:
    case PK::InjR:
    case PK::Stop:
    case PK::Go:
    case PK::Seq:
    case PK::Swap: return child(0);

    case PK::DPair:
    case PK::BPair: {
      if (auto r = child(0)) return r;
      return child(1);
    }

    case PK::Mon: {
      if (auto r = child(0)) return r;
      if (m->a->kind == PK::Ghost) return fired(ghost_lift(m), "ghostLift", path);
      return mon_step(m, path);
    }

    default: break;
  }

  // eliminators and loops: principal first
  if (auto r = child(0)) return r;
  if (is_elim(m->kind) && m->a->kind == PK::Ghost)
    return fired(ghost_lift(m), "ghostLift", path);
  if (auto r = beta(m, path)) return r;
  if (m->kind == PK::App && neutral(m->a)) return child(1);
  if (is_case(m) && neutral(m->a)) {
    // decided at run time: branches are reduced in place, nested cases stay
    for (int slot : {1, 2}) {
      auto r = run(slot == 1 ? m->b : m->c, path + "." + label(m->kind, slot));
      if (!r) continue;
      r->term = with(m, [&](ProofNode& k) { (slot == 1 ? k.b : k.c) = r->term; });
      rule_counters()["caseS"]++;
      return r;
    }
  }
  return std::nullopt;
}

std::optional<Reduction> Stepper::beta(const Proof& m, const std::string& path) {
  const Proof& a = m->a;
  try {
    switch (m->kind) {
      case PK::App:
        if (a->kind != PK::Lam) return std::nullopt;
        return fired(subst_pt(a->a, a->p, m->b), "appBeta", path);

      case PK::NumApp: {
        if (a->kind != PK::NumLam) return std::nullopt;
        std::string x = a->x, y = a->y.empty() ? x : a->y;
        Proof body = a->a;
        Proof r;
        try {
          r = subst_term_pt(body, x, rename(m->f, x, y));
        } catch (const InadmissibleSubstitution&) {
          throw Stuck{};
        }
        return fired(rename_pt(r, x, y), "brandomBeta", path);
      }

      case PK::ProjL:
      case PK::ProjR:
        if (a->kind != PK::DPair && a->kind != PK::BPair) return std::nullopt;
        return fired(m->kind == PK::ProjL ? a->a : a->b,
                     m->kind == PK::ProjL ? "projLBeta" : "projRBeta", path);

      case PK::Unroll:
        if (a->kind != PK::Roll) return std::nullopt;
        return fired(a->a, "bunrollBeta", path);

      case PK::Case:
        if (a->kind == PK::InjL) return fired(subst_pt(m->b, m->p, a->a), "caseBetaL", path);
        if (a->kind == PK::InjR) return fired(subst_pt(m->c, m->q, a->a), "caseBetaR", path);
        return std::nullopt;

      case PK::RCase:
        if (a->kind == PK::Stop) return fired(subst_pt(m->b, m->p, a->a), "caseBetaL", path);
        if (a->kind == PK::Go) return fired(subst_pt(m->c, m->q, a->a), "caseBetaR", path);
        return std::nullopt;

      case PK::Unpack: {
        if (a->kind != PK::TCons) return std::nullopt;
        // unpack (tcons x:=f; y q. M) as y' p. N  ~>  ghost y := f; q. (N[y'->y][p->M])[x<->y]
        std::string x = a->x, y = a->y, q = a->p;
        Proof n = m->b;
        if (m->y != y) {
          VarSet nv;
          all_vars(n, nv);
          if (nv.count(y)) throw Stuck{};
          n = rename_pt(n, m->y, y);
        }
        Proof body = subst_pt(n, m->p, a->a);
        return fired(ghost(y, a->f, q, rename_pt(body, x, y)), "unpackBeta", path);
      }

      case PK::FP: {
        // FP(A; s. B; g. C) ~> case* A of s => B | g => C[g -> g o z. FP(z; s. B; g. C)]
        if (!m->game || !m->full) throw Stuck{};
        std::string g = m->q;
        std::string z = fresh_pvar("z");
        Proof again = with(m, [&](ProofNode& k) { k.a = pvar(z); });
        Formula full = dia(m->game, m->full);
        Proof lifted = mk_mon(pvar(g), z, again, full);
        Proof c = subst_pt(m->c, g, lifted);
        return fired(rcase(a, m->p, m->b, g, c), "fpBeta", path);
      }

      case PK::Rep: {
        // rep(M; p. N; J; O) ~> roll <O[p->M], N[p->M] o q. rep(q; p. N; J; O)>
        if (!m->game) throw Stuck{};
        std::string q = fresh_pvar("q");
        Proof again = with(m, [&](ProofNode& k) { k.a = pvar(q); });
        Proof step = mk_mon(subst_pt(m->b, m->p, a), q, again, box(m->game, m->phi));
        return fired(roll(dpair(subst_pt(m->c, m->p, a), step)), "repBeta", path);
      }

      case PK::For: {
        // case dec(M=0 || M>0) of l => stop C[p,q -> A, l]
        //                     | r => ghost M0 := M; rr. go (B[p,q -> A,<rr,r>] o t. for(t.1; ...))
        if (!m->game || m->y.empty()) throw Stuck{};
        Term metric = m->f;
        Formula inv = m->phi;
        std::string m0 = m->y;
        Formula zero = cmp(metric, Rel::Eq, lit(0)), pos = succ(metric, lit(0));
        std::string l = fresh_pvar("l"), r = fresh_pvar("r"), rr = fresh_pvar("rr"),
                    t = fresh_pvar("t");
        auto inst = [&](const Proof& body, const Proof& pv, const Proof& qv) {
          // simultaneous: rename the binders apart first
          std::string p2 = fresh_pvar(m->p), q2 = fresh_pvar(m->q);
          Proof b = subst_pt(subst_pt(body, m->p, pvar(p2)), m->q, pvar(q2));
          return subst_pt(subst_pt(b, p2, pv), q2, qv);
        };
        Proof stop_branch = stop(inst(m->c, a, projl(Tag::Dia, pvar(l))));
        // the ghost now owns M0, so the unfolded loop needs its own copy
        std::string m1 = fresh_var(m0);
        Proof again = with(m, [&](ProofNode& k) {
          k.a = projl(Tag::Dia, pvar(t));
          k.y = m1;
          k.b = rename_pt(m->b, m0, m1);
          k.c = rename_pt(m->c, m0, m1);
        });
        Formula after = land(inv, succ(var(m0), metric));
        Proof body = inst(m->b, a, dpair(pvar(rr), projl(Tag::Dia, pvar(r))));
        Proof go_branch = ghost(m0, metric, rr, go(mk_mon(body, t, again, dia(m->game, after))));
        Proof d = with(dec(lor(zero, pos), a), [&](ProofNode& k) { k.full = inv; });
        return fired(pcase(d, l, stop_branch, r, go_branch), "forBeta", path);
      }

      default: return std::nullopt;
    }
  } catch (const Stuck&) {
    return std::nullopt;
  }
}

std::optional<Reduction> Stepper::qe_step(const Proof& m, const std::string& path) {
  QEShape sh = qe_shape(m);
  if (sh == QEShape::None) return std::nullopt;
  const Formula& f = m->phi;
  const Formula& rho = m->full;
  auto leaf = [&](Formula phi, Proof payload, Formula r) {
    return with(qe(std::move(phi), std::move(payload)), [&](ProofNode& k) { k.full = r; });
  };
  auto add = [&](const Proof& base, const Formula& rb, const std::string& h, const Formula& hf,
                 Proof* out, Formula* rout) {
    *out = base ? dpair(base, pvar(h)) : pvar(h);
    *rout = rb ? land(rb, hf) : hf;
  };
  switch (sh) {
    case QEShape::Imp: {
      std::string p = fresh_pvar("h");
      Proof pl;
      Formula rl;
      add(m->a, rho, p, f->game->test, &pl, &rl);
      return fired(plam(p, f->game->test, leaf(f->post, pl, rl)), "QEImpBeta", path);
    }
    case QEShape::And:
      return fired(dpair(leaf(f->game->test, m->a, rho), leaf(f->post, m->a, rho)), "QEAndBeta",
                   path);
    case QEShape::BoxChoice:
      return fired(bpair(leaf(box(f->game->a, f->post), m->a, rho),
                         leaf(box(f->game->b, f->post), m->a, rho)),
                   "QEAndBeta", path);
    case QEShape::Or: {
      Formula a, b;
      as_or(f, &a, &b);
      std::string l = fresh_pvar("l"), r = fresh_pvar("r");
      Formula la = land(a, tt()), rb = land(b, tt());
      Proof pl, pr;
      Formula rl, rr;
      add(m->a, rho, l, la, &pl, &rl);
      add(m->a, rho, r, rb, &pr, &rr);
      Proof d = with(dec(f, m->a), [&](ProofNode& k) { k.full = rho; });
      return fired(pcase(d, l, injl(leaf(la, pl, rl)), r, injr(leaf(rb, pr, rr))), "QEOrBeta",
                   path);
    }
    case QEShape::Forall: {
      std::string x = f->game->var, y = fresh_var(x);
      Proof pay = m->a ? rename_pt(m->a, x, y) : nullptr;
      Formula r = rho ? rename(rho, x, y) : nullptr;
      return fired(numlam(x, leaf(f->post, pay, r), y), "QEAllBeta", path);
    }
    case QEShape::Exists: {
      std::string x = f->game->var, y = fresh_var(x), q = fresh_pvar("e");
      Term w = oracle_witness(rho, x, f->post);
      Formula eq = cmp(var(x), Rel::Eq, rename(w, x, y));
      Proof pay = m->a ? rename_pt(m->a, x, y) : nullptr;
      Formula r = rho ? rename(rho, x, y) : nullptr;
      Proof pl;
      Formula rl;
      add(pay, r, q, eq, &pl, &rl);
      return fired(tcons(x, y, q, w, leaf(f->post, pl, rl)), "QEExistsBeta", path);
    }
    default: return std::nullopt;
  }
}

std::optional<Reduction> Stepper::mon_step(const Proof& m, const std::string& path) {
  const Proof& a = m->a;
  const Formula& full = m->full;
  if (!full) return std::nullopt;
  const Renaming& ren = m->ren;
  const std::string& p = m->p;
  const Proof& n = m->b;
  Tag t = full->kind == FK::Dia ? Tag::Dia : Tag::Box;
  const Game& g = full->game;
  const Formula& post0 = full->post;
  // copy of this Mon with a different principal and game
  auto again = [&](const Proof& principal, const Formula& f2) {
    return with(m, [&](ProofNode& k) {
      k.a = principal;
      k.full = f2;
      k.phi = f2->post;
      k.ann = nullptr;
    });
  };
  try {
    switch (a->kind) {
      case PK::DPair: {
        Proof n2 = adapt(n, ren);
        return fired(dpair(a->a, subst_pt(n2, p, a->b)), "dconsMon", path);
      }
      case PK::BPair:
        return fired(bpair(again(a->a, box(g->a, post0)), again(a->b, box(g->b, post0))),
                     "bconsMon", path);
      case PK::InjL: return fired(injl(again(a->a, dia(g->a, post0))), "injLMon", path);
      case PK::InjR: return fired(injr(again(a->a, dia(g->b, post0))), "injRMon", path);
      case PK::Swap: {
        Tag flip = t == Tag::Dia ? Tag::Box : Tag::Dia;
        return fired(pswap(a->tag, again(a->a, modal(flip, g->a, post0))),
                     t == Tag::Dia ? "dswapMon" : "bswapMon", path);
      }
      case PK::Seq:
      case PK::Go: {
        // M o p. N over a;b  ~>  M o q. (q o p. N)
        bool go_ = a->kind == PK::Go;
        Formula mid = go_ ? full : modal(t, g->b, post0);
        Formula outer = modal(t, g->a, mid);
        std::string q = fresh_pvar("q");
        Proof inner = mk_mon(pvar(q), p, n, mid);
        Proof r = with(m, [&](ProofNode& k) {
          k.a = a->a;
          k.p = q;
          k.b = inner;
          k.full = outer;
          k.phi = mid;
          k.ann = nullptr;
        });
        if (go_) return fired(go(r), "goMon", path);
        return fired(pseq(a->tag, r), t == Tag::Dia ? "dseqMon" : "bseqMon", path);
      }
      case PK::Stop: {
        Proof n2 = adapt(n, ren);
        return fired(stop(subst_pt(n2, p, a->a)), "stopMon", path);
      }
      case PK::Roll: {
        // roll M o p. N  ~>  roll <N[p -> M.1], M.2 o s. (s o p. N)>
        Proof n2 = adapt(n, ren);
        Proof unrolled = with(a->a, [&](ProofNode& k) { k.ann = land(post0, box(g->a, full)); });
        Proof head = subst_pt(n2, p, projl(Tag::Dia, unrolled));
        std::string s = fresh_pvar("s");
        Proof inner = mk_mon(pvar(s), p, n, full);
        Proof rest = with(m, [&](ProofNode& k) {
          k.a = projr(Tag::Dia, unrolled);
          k.p = s;
          k.b = inner;
          k.full = box(g->a, full);
          k.phi = full;
          k.ann = nullptr;
        });
        return fired(roll(dpair(head, rest)), "brollMon", path);
      }
      case PK::Lam: {
        Proof n2 = adapt(n, ren);
        std::string q = a->p;
        Proof body = a->a;
        unclash(q, body, fpv_except(n2, p));
        return fired(plam(q, a->phi, subst_pt(n2, p, body)), "lamMon", path);
      }
      case PK::NumLam: {
        std::string y = a->y;
        if (y.empty()) throw Stuck{};
        Proof n2 = adapt(n, ren, a->x, y);
        return fired(numlam(a->x, subst_pt(n2, p, a->a), y), "rlamMon", path);
      }
      case PK::TCons: {
        Proof n2 = adapt(n, ren, a->x, a->y);
        std::string q = a->p;
        Proof body = a->a;
        unclash(q, body, fpv_except(n2, p));
        return fired(tcons(a->x, a->y, q, a->f, subst_pt(n2, p, body)), "tconsMon", path);
      }
      case PK::Asgn: {
        Proof n2 = adapt(n, ren, a->x, a->y);
        std::string q = a->p;
        Proof body = a->a;
        unclash(q, body, fpv_except(n2, p));
        return fired(asgn(a->tag, a->y, a->x, q, subst_pt(n2, p, body)),
                     a->tag == Tag::Dia ? "dasgnMon" : "basgnMon", path);
      }
      default: return std::nullopt;
    }
  } catch (const Stuck&) {
    return std::nullopt;
  }
}

}  // namespace

std::optional<Reduction> step(const Proof& m) {
  Stepper s(m);
  auto r = s.run(m, "root");
  if (r) {
    rule_counters()[r->rule]++;
    r->term = with(r->term, [&](ProofNode& k) {
      if (k.pos.line == 0) k.pos = m->pos;
    });
  }
  return r;
}

bool is_simple(const Proof& m) { return simple(m); }

bool is_normal(const Proof& m) {
  if (simple(m)) return true;
  if (!is_case(m)) return false;
  return neutral(m->a) && is_normal(m->b) && is_normal(m->c);
}

NormalizeResult normalize(const Proof& m, long fuel, bool keep_trace) {
  NormalizeResult res;
  res.term = m;
  while (auto r = step(res.term)) {
    if (res.steps >= fuel) throw FuelExhausted(res.term, res.steps);
    res.steps++;
    res.term = r->term;
    if (keep_trace) res.trace.push_back(*r);
  }
  return res;
}

}  // namespace cgl
