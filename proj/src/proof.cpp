#include "cgl/proof.hpp"

namespace cgl {

std::string pk_name(PK k) {
  static const char* names[] = {"PVar", "Lam",  "App",   "NumLam", "NumApp", "DPair", "BPair",
                                "ProjL", "ProjR", "InjL", "InjR",  "Case",   "RCase", "TCons",
                                "Unpack", "Asgn", "Seq",  "Swap",  "Stop",   "Go",    "For",
                                "FP",    "Rep",  "Roll",  "Unroll", "Mon",   "QE",    "Dec",
                                "Split", "Ghost"};
  return names[static_cast<int>(k)];
}

static std::shared_ptr<ProofNode> node(PK k) {
  auto n = std::make_shared<ProofNode>();
  n->kind = k;
  return n;
}

Proof pvar(const std::string& p) {
  auto n = node(PK::PVar);
  n->p = p;
  return n;
}
Proof plam(const std::string& p, Formula phi, Proof body) {
  auto n = node(PK::Lam);
  n->p = p;
  n->phi = phi;
  n->a = body;
  return n;
}
Proof papp(Proof m, Proof a) {
  auto n = node(PK::App);
  n->a = m;
  n->b = a;
  return n;
}
Proof numlam(const std::string& x, Proof body, const std::string& y) {
  auto n = node(PK::NumLam);
  n->x = x;
  n->y = y;
  n->a = body;
  return n;
}
Proof numapp(Proof m, Term f) {
  auto n = node(PK::NumApp);
  n->a = m;
  n->f = f;
  return n;
}
static Proof two(PK k, Proof m, Proof a) {
  auto n = node(k);
  n->a = m;
  n->b = a;
  return n;
}
static Proof one(PK k, Proof m, Tag t = Tag::Dia) {
  auto n = node(k);
  n->a = m;
  n->tag = t;
  return n;
}
Proof dpair(Proof m, Proof a) { return two(PK::DPair, m, a); }
Proof bpair(Proof m, Proof a) { return two(PK::BPair, m, a); }
Proof projl(Tag t, Proof m) { return one(PK::ProjL, m, t); }
Proof projr(Tag t, Proof m) { return one(PK::ProjR, m, t); }
Proof injl(Proof m) { return one(PK::InjL, m); }
Proof injr(Proof m) { return one(PK::InjR, m); }
static Proof cases(PK k, Proof a, const std::string& l, Proof b, const std::string& r, Proof c) {
  auto n = node(k);
  n->a = a;
  n->p = l;
  n->b = b;
  n->q = r;
  n->c = c;
  return n;
}
Proof pcase(Proof a, const std::string& l, Proof b, const std::string& r, Proof c) {
  return cases(PK::Case, a, l, b, r, c);
}
Proof rcase(Proof a, const std::string& s, Proof b, const std::string& g, Proof c) {
  return cases(PK::RCase, a, s, b, g, c);
}
Proof tcons(const std::string& x, const std::string& y, const std::string& p, Term f, Proof m) {
  auto n = node(PK::TCons);
  n->x = x;
  n->y = y;
  n->p = p;
  n->f = f;
  n->a = m;
  return n;
}
Proof unpack(Proof m, const std::string& y, const std::string& p, Proof body, const std::string& x) {
  auto n = node(PK::Unpack);
  n->a = m;
  n->x = x;
  n->y = y;
  n->p = p;
  n->b = body;
  return n;
}
Proof asgn(Tag t, const std::string& y, const std::string& x, const std::string& p, Proof m) {
  auto n = node(PK::Asgn);
  n->tag = t;
  n->y = y;
  n->x = x;
  n->p = p;
  n->a = m;
  return n;
}
Proof pseq(Tag t, Proof m) { return one(PK::Seq, m, t); }
Proof pswap(Tag t, Proof m) { return one(PK::Swap, m, t); }
Proof stop(Proof m) { return one(PK::Stop, m); }
Proof go(Proof m) { return one(PK::Go, m); }
Proof pfor(Proof a, const std::string& p, const std::string& q, Proof b, Proof c, Term metric,
           Formula inv, const std::string& m0) {
  auto n = node(PK::For);
  n->a = a;
  n->p = p;
  n->q = q;
  n->b = b;
  n->c = c;
  n->f = metric;
  n->phi = inv;
  n->y = m0;
  return n;
}
Proof fp(Proof a, const std::string& s, Proof b, const std::string& g, Proof c) {
  return cases(PK::FP, a, s, b, g, c);
}
Proof rep(Proof m, const std::string& p, Proof body, Formula j, Proof o) {
  auto n = node(PK::Rep);
  n->a = m;
  n->p = p;
  n->b = body;
  n->phi = j;
  n->c = o;
  return n;
}
Proof roll(Proof m) { return one(PK::Roll, m); }
Proof unroll(Proof m) { return one(PK::Unroll, m); }
Proof mon(Proof m, const std::string& p, Proof body, Formula post) {
  auto n = node(PK::Mon);
  n->a = m;
  n->p = p;
  n->b = body;
  n->phi = post;
  return n;
}
Proof qe(Formula phi, Proof m) {
  auto n = node(PK::QE);
  n->phi = phi;
  n->a = m;
  return n;
}
Proof dec(Formula phi, Proof m) {
  auto n = node(PK::Dec);
  n->phi = phi;
  n->a = m;
  return n;
}
Proof split(Term f, Term g) {
  auto n = node(PK::Split);
  n->f = f;
  n->g = g;
  return n;
}
Proof ghost(const std::string& x, Term f, const std::string& p, Proof m) {
  auto n = node(PK::Ghost);
  n->x = x;
  n->f = f;
  n->p = p;
  n->a = m;
  return n;
}

Proof with(const Proof& m, const std::function<void(ProofNode&)>& edit) {
  auto n = std::make_shared<ProofNode>(*m);
  edit(*n);
  return n;
}

// contexts

const Formula* Context::find(const std::string& p) const {
  for (auto& [k, f] : hyps)
    if (k == p) return &f;
  return nullptr;
}

Context Context::extend(const std::string& p, Formula f) const {
  Context out;
  for (auto& h : hyps)
    if (h.first != p) out.hyps.push_back(h);
  out.hyps.emplace_back(p, std::move(f));
  return out;
}

Context Context::rename(const std::string& x, const std::string& y) const {
  Context out;
  for (auto& [k, f] : hyps) out.hyps.emplace_back(k, cgl::rename(f, x, y));
  return out;
}

void all_vars(const Context& g, VarSet& out) {
  for (auto& h : g.hyps) all_vars(h.second, out);
}

// variable collection

static bool binds_x(PK k) {
  return k == PK::TCons || k == PK::Asgn || k == PK::NumLam || k == PK::Unpack || k == PK::Ghost;
}

void all_vars(const Proof& m, VarSet& out) {
  if (!m) return;
  if (!m->x.empty()) out.insert(m->x);
  if (!m->y.empty()) out.insert(m->y);
  if (m->phi) all_vars(m->phi, out);
  if (m->full) all_vars(m->full, out);
  if (m->ann) all_vars(m->ann, out);
  if (m->game) all_vars(m->game, out);
  if (m->f) all_vars(m->f, out);
  if (m->g) all_vars(m->g, out);
  for (auto& [a, b] : m->ren) {
    out.insert(a);
    out.insert(b);
  }
  all_vars(m->a, out);
  all_vars(m->b, out);
  all_vars(m->c, out);
}

void proof_binders(const Proof& m, VarSet& out) {
  if (!m) return;
  if (binds_x(m->kind) && !m->x.empty()) out.insert(m->x);
  if ((binds_x(m->kind) || m->kind == PK::For) && !m->y.empty()) out.insert(m->y);
  for (auto& [a, b] : m->ren) {
    out.insert(a);
    out.insert(b);
  }
  if (m->phi) binders(m->phi, out);
  if (m->full) binders(m->full, out);
  if (m->ann) binders(m->ann, out);
  if (m->game) binders(m->game, out);
  proof_binders(m->a, out);
  proof_binders(m->b, out);
  proof_binders(m->c, out);
}

void all_pvars(const Proof& m, VarSet& out) {
  if (!m) return;
  if (!m->p.empty()) out.insert(m->p);
  if (!m->q.empty()) out.insert(m->q);
  all_pvars(m->a, out);
  all_pvars(m->b, out);
  all_pvars(m->c, out);
}

static void fpv(const Proof& m, VarSet& out);

static void fpv_under(const Proof& m, std::initializer_list<std::string> bound, VarSet& out) {
  VarSet inner;
  fpv(m, inner);
  for (auto& v : bound) inner.erase(v);
  out.insert(inner.begin(), inner.end());
}

static void fpv(const Proof& m, VarSet& out) {
  if (!m) return;
  switch (m->kind) {
    case PK::PVar: out.insert(m->p); return;
    case PK::Lam:
    case PK::TCons:
    case PK::Asgn:
    case PK::Ghost: fpv_under(m->a, {m->p}, out); return;
    case PK::Case:
    case PK::RCase:
    case PK::FP:
      fpv(m->a, out);
      fpv_under(m->b, {m->p}, out);
      fpv_under(m->c, {m->q}, out);
      return;
    case PK::Unpack:
    case PK::Mon:
      fpv(m->a, out);
      fpv_under(m->b, {m->p}, out);
      return;
    case PK::For:
      fpv(m->a, out);
      fpv_under(m->b, {m->p, m->q}, out);
      fpv_under(m->c, {m->p, m->q}, out);
      return;
    case PK::Rep:
      fpv(m->a, out);
      fpv_under(m->b, {m->p}, out);
      fpv_under(m->c, {m->p}, out);
      return;
    default:
      fpv(m->a, out);
      fpv(m->b, out);
      fpv(m->c, out);
  }
}

VarSet free_pvars(const Proof& m) {
  VarSet s;
  fpv(m, s);
  return s;
}

// alpha equivalence over proof-variable binders

namespace {

using Env = std::vector<std::pair<std::string, std::string>>;

int lookup_env(const Env& e, const std::string& v, bool left) {
  for (int i = static_cast<int>(e.size()) - 1; i >= 0; i--)
    if ((left ? e[i].first : e[i].second) == v) return i;
  return -1;
}

bool same_opt(const Formula& a, const Formula& b) { return (!a && !b) || (a && b && same(a, b)); }
bool same_opt(const Term& a, const Term& b) { return (!a && !b) || (a && b && same(a, b)); }
bool same_opt(const Game& a, const Game& b) { return (!a && !b) || (a && b && same(a, b)); }

bool aeq(const Proof& m, const Proof& n, Env& env);

bool aeq_under(const Proof& m, const Proof& n, Env& env,
               std::initializer_list<std::pair<std::string, std::string>> bs) {
  size_t k = env.size();
  for (auto& b : bs) env.push_back(b);
  bool r = aeq(m, n, env);
  env.resize(k);
  return r;
}

bool aeq(const Proof& m, const Proof& n, Env& env) {
  if (!m || !n) return !m && !n;
  if (m->kind != n->kind || m->tag != n->tag) return false;
  if (m->kind == PK::PVar) {
    int i = lookup_env(env, m->p, true), j = lookup_env(env, n->p, false);
    if (i < 0 && j < 0) return m->p == n->p;
    return i == j;
  }
  if (m->x != n->x || m->y != n->y || m->ren != n->ren) return false;
  if (!same_opt(m->phi, n->phi) || !same_opt(m->full, n->full) || !same_opt(m->game, n->game))
    return false;
  if (!same_opt(m->f, n->f) || !same_opt(m->g, n->g)) return false;
  std::pair<std::string, std::string> bp{m->p, n->p}, bq{m->q, n->q};
  switch (m->kind) {
    case PK::Lam:
    case PK::TCons:
    case PK::Asgn:
    case PK::Ghost: return aeq_under(m->a, n->a, env, {bp});
    case PK::Case:
    case PK::RCase:
    case PK::FP:
      return aeq(m->a, n->a, env) && aeq_under(m->b, n->b, env, {bp}) &&
             aeq_under(m->c, n->c, env, {bq});
    case PK::Unpack:
    case PK::Mon: return aeq(m->a, n->a, env) && aeq_under(m->b, n->b, env, {bp});
    case PK::For:
      return aeq(m->a, n->a, env) && aeq_under(m->b, n->b, env, {bp, bq}) &&
             aeq_under(m->c, n->c, env, {bp, bq});
    case PK::Rep:
      return aeq(m->a, n->a, env) && aeq_under(m->b, n->b, env, {bp}) &&
             aeq_under(m->c, n->c, env, {bp});
    default: return aeq(m->a, n->a, env) && aeq(m->b, n->b, env) && aeq(m->c, n->c, env);
  }
}

}  // namespace

bool alpha_eq(const Proof& m, const Proof& n) {
  Env env;
  return aeq(m, n, env);
}

// renaming program variables: a transposition applied to every field

Proof rename_pt(const Proof& m, const std::string& x, const std::string& y) {
  if (!m || x == y) return m;
  auto n = std::make_shared<ProofNode>(*m);
  if (!n->x.empty()) n->x = swap_name(n->x, x, y);
  if (!n->y.empty()) n->y = swap_name(n->y, x, y);
  if (n->phi) n->phi = rename(n->phi, x, y);
  if (n->full) n->full = rename(n->full, x, y);
  if (n->ann) n->ann = rename(n->ann, x, y);
  if (n->game) n->game = rename(n->game, x, y);
  if (n->f) n->f = rename(n->f, x, y);
  if (n->g) n->g = rename(n->g, x, y);
  for (auto& [a, b] : n->ren) {
    a = swap_name(a, x, y);
    b = swap_name(b, x, y);
  }
  n->a = rename_pt(m->a, x, y);
  n->b = rename_pt(m->b, x, y);
  n->c = rename_pt(m->c, x, y);
  return n;
}

// proof substitution

namespace {

// substitute under one proof binder, renaming it away from the free variables of n
void under(std::string& bnd, Proof& body, const std::string& p, const Proof& n) {
  if (!body || bnd == p) return;
  VarSet fv = free_pvars(n);
  if (fv.count(bnd)) {
    VarSet avoid = fv;
    all_pvars(body, avoid);
    all_pvars(n, avoid);
    avoid.insert(p);
    std::string b2 = fresh_name(bnd, avoid);
    body = subst_pt(body, bnd, pvar(b2));
    bnd = b2;
  }
  body = subst_pt(body, p, n);
}

// keep a ghost name out of the substituted term's variables
void vary_ghost(std::string& ghostv, Proof& body, const Proof& outer, const Proof& n) {
  VarSet nv;
  all_vars(n, nv);
  if (!nv.count(ghostv)) return;
  VarSet avoid = nv;
  all_vars(outer, avoid);
  std::string g2 = fresh_name(ghostv, avoid);
  body = rename_pt(body, ghostv, g2);
  ghostv = g2;
}

}  // namespace

Proof subst_pt(const Proof& m, const std::string& p, const Proof& n) {
  if (!m) return m;
  if (m->kind == PK::PVar) {
    if (m->p != p) return m;
    // the hypothesis's inferred type carries over to what replaces it
    if (m->ann && n && !n->ann) return with(n, [&](ProofNode& k) { k.ann = m->ann; });
    return n;
  }
  if (!free_pvars(m).count(p)) return m;
  auto r = std::make_shared<ProofNode>(*m);
  switch (m->kind) {
    case PK::Lam:
    case PK::Ghost: under(r->p, r->a, p, n); break;
    case PK::Case:
    case PK::RCase:
      r->a = subst_pt(m->a, p, n);
      under(r->p, r->b, p, n);
      under(r->q, r->c, p, n);
      break;
    case PK::TCons:
    case PK::Asgn: {
      if (r->p == p) break;
      vary_ghost(r->y, r->a, m, n);
      Proof n2 = rename_pt(n, r->x, r->y);
      under(r->p, r->a, p, n2);
      break;
    }
    case PK::NumLam: {
      if (r->y.empty()) {
        VarSet avoid;
        all_vars(m, avoid);
        all_vars(n, avoid);
        r->y = fresh_name(r->x, avoid);
      }
      vary_ghost(r->y, r->a, m, n);
      r->a = subst_pt(r->a, p, rename_pt(n, r->x, r->y));
      break;
    }
    case PK::Unpack: {
      r->a = subst_pt(m->a, p, n);
      if (r->p == p) break;
      if (r->x.empty()) {
        under(r->p, r->b, p, n);
        break;
      }
      vary_ghost(r->y, r->b, m, n);
      under(r->p, r->b, p, rename_pt(n, r->x, r->y));
      break;
    }
    case PK::Mon: {
      r->a = subst_pt(m->a, p, n);
      if (r->p == p) break;
      Proof n2 = n;
      for (auto& [orig, fresh] : r->ren) {
        vary_ghost(fresh, r->b, m, n);
        n2 = rename_pt(n2, orig, fresh);
      }
      under(r->p, r->b, p, n2);
      break;
    }
    case PK::For:
    case PK::FP:
    case PK::Rep:
      // premisses other than the first are closed
      r->a = subst_pt(m->a, p, n);
      break;
    default:
      r->a = subst_pt(m->a, p, n);
      r->b = subst_pt(m->b, p, n);
      r->c = subst_pt(m->c, p, n);
  }
  return r;
}

// term substitution: admissibility is checked once against every binder, then blind replacement

static Proof replace_pt(const Proof& m, const std::string& x, const Term& f) {
  if (!m) return m;
  auto n = std::make_shared<ProofNode>(*m);
  if (n->phi) n->phi = subst(n->phi, x, f);
  if (n->full) n->full = subst(n->full, x, f);
  if (n->ann) n->ann = subst(n->ann, x, f);
  if (n->game) n->game = subst(n->game, x, f);
  if (n->f) n->f = subst(n->f, x, f);
  if (n->g) n->g = subst(n->g, x, f);
  n->a = replace_pt(m->a, x, f);
  n->b = replace_pt(m->b, x, f);
  n->c = replace_pt(m->c, x, f);
  return n;
}

Proof subst_term_pt(const Proof& m, const std::string& x, const Term& f) {
  VarSet b;
  proof_binders(m, b);
  if (b.count(x)) throw InadmissibleSubstitution(x);
  for (auto& v : free_vars(f))
    if (b.count(v)) throw InadmissibleSubstitution(v);
  return replace_pt(m, x, f);
}

}  // namespace cgl
