#include "cgl/extract.hpp"

#include "cgl/checker.hpp"
#include "cgl/normalizer.hpp"

namespace cgl {

namespace {

// Names the translation introduces. Proof variables never contain a quote
// followed by a letter, so these cannot capture user hypotheses.
const char* kSelf = "self'";
const char* kOut = "out'";
const char* kArg = "arg'";
const char* kGo = "go'";

class Eraser {
 public:
  Realizer go(const Proof& m);

 private:
  // proof variables replaced by a constant realizer; a null entry is a
  // binder that shadows an outer replacement
  std::map<std::string, Realizer> fixed_;

  Realizer under(const std::vector<std::string>& bound, const Proof& m) {
    auto saved = fixed_;
    for (auto& p : bound) fixed_[p] = nullptr;
    Realizer r = go(m);
    fixed_ = std::move(saved);
    return r;
  }

  // body under hypothesis p whose evidence is the canonical realizer of phi
  Realizer evidence(const std::string& p, const Formula& phi, const Proof& body,
                    std::vector<std::string> bound = {}) {
    Realizer ev = fo_realizer(phi);
    auto saved = fixed_;
    for (auto& b : bound) fixed_[b] = nullptr;
    if (ev->kind == RK::Unit) {
      fixed_[p] = ev;
      Realizer r = go(body);
      fixed_ = std::move(saved);
      return r;
    }
    fixed_[p] = nullptr;
    Realizer r = go(body);
    fixed_ = std::move(saved);
    return r_let(p, ev, r);
  }
};

Realizer Eraser::go(const Proof& m) {
  switch (m->kind) {
    case PK::PVar: {
      auto it = fixed_.find(m->p);
      if (it != fixed_.end() && it->second) return it->second;
      return r_var(m->p);
    }
    case PK::Lam: return r_prooflam(m->p, m->phi, under({m->p}, m->a));
    case PK::App: return r_apprz(go(m->a), go(m->b));
    case PK::NumLam: return r_numlam(m->x, go(m->a), m->y);
    case PK::NumApp: return r_appnum(go(m->a), m->f);
    case PK::DPair:
    case PK::BPair: return r_pair(go(m->a), go(m->b));
    case PK::ProjL: return r_fst(go(m->a));
    case PK::ProjR: return r_snd(go(m->a));
    case PK::InjL: return r_pair(r_num(0), go(m->a));
    case PK::InjR: return r_pair(r_num(1), go(m->a));
    case PK::Stop: return r_pair(r_num(0), go(m->a));
    case PK::Go: return r_pair(r_num(1), go(m->a));
    case PK::Case:
    case PK::RCase:
      return r_branch(go(m->a), m->p, under({m->p}, m->b), m->q, under({m->q}, m->c));
    case PK::TCons: {
      Formula eq = cmp(var(m->x), Rel::Eq, rename(m->f, m->x, m->y));
      return r_pair(r_term(m->f), r_remember(m->y, m->x, evidence(m->p, eq, m->a)));
    }
    case PK::Asgn: {
      // the assigned term does not matter here: the game supplies it
      return r_remember(m->y, m->x, evidence(m->p, tt(), m->a));
    }
    case PK::Unpack: return r_open(go(m->a), m->x, m->y, m->p, under({m->p}, m->b));
    case PK::Seq:
    case PK::Swap:
    case PK::Roll:
    case PK::Unroll: return go(m->a);
    case PK::For: {
      Term metric = m->f;
      Formula zero = cmp(metric, Rel::Eq, lit(0));
      Formula step_q = land(cmp(var(m->y), Rel::Eq, metric), succ(metric, lit(0)));
      Realizer post = evidence(m->q, zero, m->c, {m->p});
      Realizer step = evidence(m->q, step_q, m->b, {m->p});
      Formula out = dia(m->game, land(m->phi, succ(var(m->y), metric)));
      Realizer again = r_apprz(r_var(kSelf), r_fst(r_var(kOut)));
      Realizer body =
          r_if(zero, r_pair(r_num(0), post),
               r_letnum(m->y, metric, r_pair(r_num(1), r_compose(step, {}, kOut, again, out))));
      return r_apprz(r_ind(kSelf, r_prooflam(m->p, m->phi, body)), go(m->a));
    }
    case PK::FP: {
      const Formula& loop = m->full;  // <alpha*> phi0
      Realizer stop = under({m->p}, m->b);
      Realizer rest = under({m->q}, m->c);
      Realizer wrap = r_compose(r_var(kGo), {}, kOut, r_apprz(r_var(kSelf), r_var(kOut)),
                                dia(m->game, loop));
      Realizer body = r_branch(r_var(kArg), m->p, stop, kGo, r_let(m->q, wrap, rest));
      return r_apprz(r_ind(kSelf, r_prooflam(kArg, loop, body)), go(m->a));
    }
    case PK::Rep: {
      Formula loop = box(star(m->game), m->phi);
      return r_gen(go(m->a), m->p, under({m->p}, m->b), under({m->p}, m->c), loop);
    }
    case PK::Mon:
      return r_compose(go(m->a), m->ren, m->p, under({m->p}, m->b), m->full);
    case PK::QE:
    case PK::Dec: return fo_realizer(m->phi);
    case PK::Split: return fo_realizer(lor(cmp(m->f, Rel::Le, m->g), cmp(m->f, Rel::Gt, m->g)));
    case PK::Ghost:
      return r_letnum(m->x, m->f, evidence(m->p, cmp(var(m->x), Rel::Eq, m->f), m->a));
  }
  throw std::logic_error("extract: unknown proof form");
}

}  // namespace

Realizer extract(const Proof& elaborated) { return Eraser().go(elaborated); }

Extraction extract_theorem(const ProofScript& s, const std::string& name, bool normalize_first,
                           long fuel) {
  const Definition* d = s.find(name);
  if (!d || d->kind != DefKind::Theorem) throw std::invalid_argument("no theorem named " + name);
  Extraction ex;
  ex.phi = d->formula;
  CheckResult c = check(Context{}, d->proof, d->formula, name);
  if (!c.ok) throw *c.error;
  ex.proof = c.annotated;
  if (normalize_first) {
    // the normalizer stays out from under binders, so peel the leading
    // hypotheses and normalize the body in their context
    Context g;
    Formula goal = d->formula;
    Proof body = ex.proof;
    std::vector<Proof> lams;
    while (body->kind == PK::Lam) {
      g = g.extend(body->p, body->phi);
      goal = goal->post;
      lams.push_back(body);
      body = body->a;
    }
    NormalizeResult r = normalize(body, fuel);
    ex.steps = r.steps;
    Proof nb = elaborate(g, r.term, goal, name);
    for (auto it = lams.rbegin(); it != lams.rend(); ++it)
      nb = with(*it, [&](ProofNode& n) { n.a = nb; });
    ex.proof = nb;
  }
  ex.realizer = extract(ex.proof);
  return ex;
}

Witness extract_existential(const Realizer& a, const std::string& x, const State& s) {
  return force_witness(value_of(a, s), x);
}

Selection extract_disjunct(const Realizer& a, const State& s) {
  return force_selector(value_of(a, s));
}

}  // namespace cgl
