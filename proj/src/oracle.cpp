#include "cgl/oracle.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <unordered_map>

namespace cgl {

OracleStats& oracle_stats() {
  static OracleStats s;
  return s;
}

namespace {

struct Unknown {};  // thrown when a problem leaves the supported fragment

// quantifier-free negation normal form over comparison atoms
struct NF {
  enum K { And, Or, Atom, True, False } k = True;
  std::vector<NF> kids;
  Term l, r;
  Rel rel = Rel::Eq;
};

NF mk_atom(Term l, Rel r, Term g) {
  NF n;
  n.k = NF::Atom;
  n.l = std::move(l);
  n.rel = r;
  n.r = std::move(g);
  return n;
}

NF mk_bin(NF::K k, NF a, NF b) {
  bool conj = k == NF::And;
  NF unit, zero;
  unit.k = conj ? NF::True : NF::False;
  zero.k = conj ? NF::False : NF::True;
  if (a.k == zero.k || b.k == zero.k) return zero;
  if (a.k == unit.k) return b;
  if (b.k == unit.k) return a;
  NF n;
  n.k = k;
  for (NF* p : {&a, &b}) {
    if (p->k == k)
      for (auto& c : p->kids) n.kids.push_back(std::move(c));
    else
      n.kids.push_back(std::move(*p));
  }
  return n;
}

using Env = std::map<std::string, Term>;

Term apply_env(const Term& t, const Env& env) {
  switch (t->kind) {
    case TK::Lit: return t;
    case TK::Var: {
      auto it = env.find(t->var);
      return it == env.end() ? t : it->second;
    }
    default: break;
  }
  auto n = std::make_shared<TermNode>(*t);
  if (t->a) n->a = apply_env(t->a, env);
  if (t->b) n->b = apply_env(t->b, env);
  return n;
}

// Games become connectives; x:=f updates a substitution environment and x:=*
// introduces a fresh free variable. That is exact for existentials of the
// refutation problem and a sound weakening for universals.
class Translator {
 public:
  int fresh = 0;

  NF formula(const Formula& f, bool pos, const Env& env) {
    if (f->kind == FK::Cmp)
      return mk_atom(apply_env(f->lhs, env), pos ? f->rel : rel_negate(f->rel),
                     apply_env(f->rhs, env));
    auto post = f->post;
    return modal(f->kind == FK::Dia, f->game,
                 [this, post, pos](const Env& e) { return formula(post, pos, e); }, pos, env);
  }

 private:
  using Cont = std::function<NF(const Env&)>;

  NF modal(bool dia, const Game& g, const Cont& k, bool pos, const Env& env) {
    switch (g->kind) {
      case GK::Test:
        if (dia == pos) return mk_bin(NF::And, formula(g->test, true, env), k(env));
        return mk_bin(NF::Or, formula(g->test, false, env), k(env));
      case GK::Assign: {
        Env e = env;
        e[g->var] = apply_env(g->term, env);
        return k(e);
      }
      case GK::AssignAny: {
        Env e = env;
        e[g->var] = var(g->var + "#" + std::to_string(++fresh));
        return k(e);
      }
      case GK::Choice:
        return mk_bin(dia != pos ? NF::And : NF::Or, modal(dia, g->a, k, pos, env),
                      modal(dia, g->b, k, pos, env));
      case GK::Seq: {
        auto b = g->b;
        return modal(
            dia, g->a, [this, dia, b, &k, pos](const Env& e) { return modal(dia, b, k, pos, e); },
            pos, env);
      }
      case GK::Dual: return modal(!dia, g->a, k, pos, env);
      case GK::Repeat: throw Unknown{};
    }
    throw Unknown{};
  }
};

bool closed(const Term& t) { return free_vars(t).empty(); }

// Replaces div/mod by integer quotient variables and abs/min/max by fresh
// variables with defining side conditions.
class Purifier {
 public:
  std::set<std::string> ints;
  std::vector<NF> sides;

  Term pure(const Term& t) {
    switch (t->kind) {
      case TK::Lit:
      case TK::Var: return t;
      default: break;
    }
    Term a = t->a ? pure(t->a) : nullptr;
    Term b = t->b ? pure(t->b) : nullptr;
    switch (t->kind) {
      case TK::Div:
      case TK::Mod: {
        if (!closed(b)) break;
        Q k;
        try {
          k = eval(b, {});
        } catch (const DivisionByZero&) {
          break;
        }
        if (k == 0) break;
        std::string key = show(a) + "|" + show(k);
        auto it = quot.find(key);
        std::string q;
        if (it == quot.end()) {
          q = "q#" + std::to_string(quot.size() + 1);
          quot[key] = q;
          ints.insert(q);
          Term rem = minus(a, times(lit(k), var(q)));
          sides.push_back(mk_atom(rem, Rel::Ge, lit(0)));
          sides.push_back(mk_atom(rem, Rel::Lt, lit(abs(k))));
        } else {
          q = it->second;
        }
        if (t->kind == TK::Div) return var(q);
        return minus(a, times(lit(k), var(q)));
      }
      case TK::Abs: {
        Term v = fresh_var("abs");
        sides.push_back(mk_bin(NF::Or,
                               mk_bin(NF::And, mk_atom(v, Rel::Eq, a), mk_atom(a, Rel::Ge, lit(0))),
                               mk_bin(NF::And, mk_atom(v, Rel::Eq, neg(a)),
                                      mk_atom(a, Rel::Lt, lit(0)))));
        return v;
      }
      case TK::Min:
      case TK::Max: {
        Term v = fresh_var(t->kind == TK::Min ? "min" : "max");
        Rel r = t->kind == TK::Min ? Rel::Le : Rel::Ge;
        sides.push_back(
            mk_bin(NF::Or, mk_bin(NF::And, mk_atom(v, Rel::Eq, a), mk_atom(a, r, b)),
                   mk_bin(NF::And, mk_atom(v, Rel::Eq, b), mk_atom(a, rel_negate(r), b))));
        return v;
      }
      default: break;
    }
    auto n = std::make_shared<TermNode>(*t);
    n->a = a;
    n->b = b;
    return n;
  }

  void walk(NF& n) {
    if (n.k == NF::Atom) {
      n.l = pure(n.l);
      n.r = pure(n.r);
      return;
    }
    for (auto& c : n.kids) walk(c);
  }

 private:
  std::map<std::string, std::string> quot;
  int n = 0;
  Term fresh_var(const std::string& base) { return var(base + "#" + std::to_string(++n)); }
};

// linear constraint: sum co*x + c  (k)  0
struct Lin {
  std::map<std::string, Q> co;
  Q c;
};

enum class CK { Eq, Le, Lt, Ne };

struct Cons {
  Lin e;
  CK k;
};

bool linear(const Term& t, Lin& out) {
  switch (t->kind) {
    case TK::Lit: out = {{}, t->lit}; return true;
    case TK::Var: out = {{{t->var, Q(1)}}, Q(0)}; return true;
    case TK::Neg: {
      if (!linear(t->a, out)) return false;
      for (auto& [v, q] : out.co) q = -q;
      out.c = -out.c;
      return true;
    }
    case TK::Plus:
    case TK::Minus: {
      Lin a, b;
      if (!linear(t->a, a) || !linear(t->b, b)) return false;
      Q s = t->kind == TK::Plus ? 1 : -1;
      for (auto& [v, q] : b.co) a.co[v] += s * q;
      a.c += s * b.c;
      out = a;
      return true;
    }
    case TK::Times: {
      Lin a, b;
      if (!linear(t->a, a) || !linear(t->b, b)) return false;
      if (!a.co.empty() && !b.co.empty()) return false;
      if (a.co.empty()) std::swap(a, b);
      for (auto& [v, q] : a.co) q *= b.c;
      a.c *= b.c;
      out = a;
      return true;
    }
    default: return false;
  }
}

void clean(Lin& l) {
  for (auto it = l.co.begin(); it != l.co.end();)
    it = it->second == 0 ? l.co.erase(it) : std::next(it);
}

bool const_holds(const Cons& c) {
  switch (c.k) {
    case CK::Eq: return c.e.c == 0;
    case CK::Le: return c.e.c <= 0;
    case CK::Lt: return c.e.c < 0;
    case CK::Ne: return c.e.c != 0;
  }
  return true;
}

mpz_class lcm_den(const Lin& l) {
  mpz_class m = 1;
  for (auto& [v, q] : l.co) mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), q.get_den_mpz_t());
  return m;
}

// integer-only inequalities are scaled to coprime integer coefficients and
// their constant rounded, which is where integrality pays off
void tighten(Cons& c, const std::set<std::string>& ints) {
  if (c.k != CK::Le && c.k != CK::Lt) return;
  if (c.e.co.empty()) return;
  for (auto& [v, q] : c.e.co)
    if (!ints.count(v)) return;
  mpz_class m = lcm_den(c.e);
  mpz_class g = 0;
  for (auto& [v, q] : c.e.co) {
    mpz_class a = mpz_class(q * m);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
  }
  Q scale = Q(m) / Q(g);
  for (auto& [v, q] : c.e.co) q *= scale;
  Q rhs = -c.e.c * scale;  // sum a x (k) rhs
  mpz_class bound;
  if (c.k == CK::Le) {
    mpz_fdiv_q(bound.get_mpz_t(), rhs.get_num_mpz_t(), rhs.get_den_mpz_t());
  } else {
    mpz_cdiv_q(bound.get_mpz_t(), rhs.get_num_mpz_t(), rhs.get_den_mpz_t());
    bound -= 1;
  }
  c.e.c = -Q(bound);
  c.k = CK::Le;
}

std::string key(const Cons& c) {
  std::string s = std::to_string(int(c.k));
  for (auto& [v, q] : c.e.co) s += "|" + v + ":" + q.get_str();
  return s + "|" + c.e.c.get_str();
}

// substitute v := (rest)/(-a) from equation e (coefficient a on v)
void eliminate(std::vector<Cons>& cs, const std::string& v, const Lin& e) {
  Q a = e.co.at(v);
  for (auto& c : cs) {
    auto it = c.e.co.find(v);
    if (it == c.e.co.end()) continue;
    Q f = it->second / a;
    c.e.co.erase(it);
    for (auto& [w, q] : e.co)
      if (w != v) c.e.co[w] -= f * q;
    c.e.c -= f * e.c;
    clean(c.e);
  }
}

constexpr size_t kMaxCons = 4000;

// true when the conjunction has no solution with the integer variables
// integral; false means satisfiable or undecided
bool infeasible(std::vector<Cons> cs, const std::set<std::string>& ints) {
  for (auto& c : cs) clean(c.e);
  for (size_t i = 0; i < cs.size(); i++) {
    if (cs[i].k != CK::Ne) continue;
    if (cs[i].e.co.empty()) {
      if (!const_holds(cs[i])) return true;
      continue;
    }
    Cons lo = cs[i], hi = cs[i];
    lo.k = hi.k = CK::Lt;
    for (auto& [v, q] : hi.e.co) q = -q;
    hi.e.c = -hi.e.c;
    std::vector<Cons> a = cs, b = cs;
    a[i] = lo;
    b[i] = hi;
    return infeasible(std::move(a), ints) && infeasible(std::move(b), ints);
  }

  // equalities
  for (;;) {
    size_t pick = cs.size();
    for (size_t i = 0; i < cs.size(); i++)
      if (cs[i].k == CK::Eq) {
        if (cs[i].e.co.empty()) {
          if (cs[i].e.c != 0) return true;
          continue;
        }
        pick = i;
        break;
      }
    if (pick == cs.size()) break;
    Cons eq = cs[pick];
    cs.erase(cs.begin() + pick);
    std::string v;
    for (auto& [w, q] : eq.e.co)
      if (!ints.count(w)) {
        v = w;
        break;
      }
    if (v.empty()) {
      // all-integer equation: scale, check divisibility, look for a unit
      mpz_class m = lcm_den(eq.e);
      mpz_class g = 0;
      for (auto& [w, q] : eq.e.co) {
        mpz_class a = mpz_class(q * m);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
      }
      Q scale = Q(m) / Q(g);
      for (auto& [w, q] : eq.e.co) q *= scale;
      eq.e.c *= scale;
      if (eq.e.c.get_den() != 1) return true;
      for (auto& [w, q] : eq.e.co)
        if (abs(q) == 1) {
          v = w;
          break;
        }
      if (v.empty()) {
        Cons le = eq, ge = eq;
        le.k = ge.k = CK::Le;
        for (auto& [w, q] : ge.e.co) q = -q;
        ge.e.c = -ge.e.c;
        cs.push_back(le);
        cs.push_back(ge);
        continue;
      }
    }
    eliminate(cs, v, eq.e);
  }

  std::set<std::string> seen;
  std::vector<Cons> work;
  auto add = [&](Cons c) {
    tighten(c, ints);
    if (c.e.co.empty()) return const_holds(c);
    if (seen.insert(key(c)).second) work.push_back(std::move(c));
    return true;
  };
  for (auto& c : cs)
    if (!add(c)) return true;

  // Fourier-Motzkin on the rational relaxation, tightening integer rows
  for (;;) {
    std::map<std::string, std::pair<int, int>> count;
    for (auto& c : work)
      for (auto& [v, q] : c.e.co) (q > 0 ? count[v].first : count[v].second)++;
    if (count.empty()) return false;
    std::string v;
    long best = -1;
    for (auto& [w, pn] : count) {
      long cost = long(pn.first) * pn.second;
      if (best < 0 || cost < best) {
        best = cost;
        v = w;
      }
    }
    std::vector<Cons> pos, negs, rest;
    for (auto& c : work) {
      auto it = c.e.co.find(v);
      if (it == c.e.co.end())
        rest.push_back(c);
      else
        (it->second > 0 ? pos : negs).push_back(c);
    }
    if (rest.size() + pos.size() * negs.size() > kMaxCons) return false;
    work.clear();
    seen.clear();
    for (auto& c : rest)
      if (!add(c)) return true;
    for (auto& p : pos)
      for (auto& n : negs) {
        Q a = p.e.co.at(v), b = -n.e.co.at(v);
        Cons r;
        r.k = (p.k == CK::Lt || n.k == CK::Lt) ? CK::Lt : CK::Le;
        r.e = p.e;
        for (auto& [w, q] : r.e.co) q *= b;
        r.e.c *= b;
        for (auto& [w, q] : n.e.co) r.e.co[w] += a * q;
        r.e.c += a * n.e.c;
        clean(r.e);
        if (!add(r)) return true;
      }
  }
}

Cons to_cons(const Lin& l, Rel r, const Lin& g) {
  Cons c;
  Lin d = l;
  for (auto& [v, q] : g.co) d.co[v] -= q;
  d.c -= g.c;
  auto negate = [&] {
    for (auto& [v, q] : d.co) q = -q;
    d.c = -d.c;
  };
  switch (r) {
    case Rel::Eq: c.k = CK::Eq; break;
    case Rel::Ne: c.k = CK::Ne; break;
    case Rel::Le: c.k = CK::Le; break;
    case Rel::Lt: c.k = CK::Lt; break;
    case Rel::Ge: negate(); c.k = CK::Le; break;
    case Rel::Gt: negate(); c.k = CK::Lt; break;
  }
  c.e = d;
  clean(c.e);
  return c;
}

constexpr long kMaxLeaves = 20000;

class Refuter {
 public:
  const std::set<std::string>& ints;
  long leaves = 0;
  explicit Refuter(const std::set<std::string>& i) : ints(i) {}

  // every disjunctive branch of the conjunction todo must be infeasible
  bool refute(std::vector<const NF*> todo, std::vector<const NF*> atoms) {
    while (!todo.empty()) {
      const NF* n = todo.back();
      todo.pop_back();
      switch (n->k) {
        case NF::True: break;
        case NF::False: return true;
        case NF::Atom: atoms.push_back(n); break;
        case NF::And:
          for (auto& c : n->kids) todo.push_back(&c);
          break;
        case NF::Or:
          for (auto& c : n->kids) {
            auto t = todo;
            t.push_back(&c);
            if (!refute(std::move(t), atoms)) return false;
          }
          return true;
      }
    }
    if (++leaves > kMaxLeaves) throw Unknown{};
    std::vector<Cons> cs;
    for (auto* a : atoms) {
      Lin l, g;
      // nonlinear atoms are dropped, which only weakens the refutation
      if (!linear(a->l, l) || !linear(a->r, g)) continue;
      cs.push_back(to_cons(l, a->rel, g));
    }
    return infeasible(std::move(cs), ints);
  }
};

bool prove(const Formula& rho, const Formula& phi) {
  Translator tr;
  NF root = tr.formula(phi, false, {});
  if (rho) root = mk_bin(NF::And, tr.formula(rho, true, {}), std::move(root));
  Purifier pu;
  pu.walk(root);
  for (auto& s : pu.sides) root = mk_bin(NF::And, std::move(root), s);
  Refuter rf(pu.ints);
  bool ok = rf.refute({&root}, {});
  oracle_stats().leaves += rf.leaves;
  return ok;
}

bool falsifies(const Formula& rho, const Formula& phi, const State& s) {
  try {
    return (!rho || holds(rho, s)) && !holds(phi, s);
  } catch (const std::exception&) {
    return false;
  }
}

bool search_witness(const Formula& rho, const Formula& phi, State& out) {
  VarSet fv = free_vars(phi);
  if (rho)
    for (auto& v : free_vars(rho)) fv.insert(v);
  std::vector<std::string> vars(fv.begin(), fv.end());
  std::vector<Q> vals;
  for (long k : {0, 1, -1, 2, -2, 3, -3, 4, -4, 5, 6, 7, 8, 10, -10, 100})
    vals.push_back(Q(k));
  for (auto [n, d] : std::vector<std::pair<long, long>>{{1, 2}, {-1, 2}, {1, 3}, {2, 3}, {3, 2}})
    vals.push_back(Q(n, d));
  if (vars.empty()) {
    if (falsifies(rho, phi, {})) {
      out = {};
      return true;
    }
    return false;
  }
  if (vars.size() <= 3) {
    std::vector<size_t> idx(vars.size(), 0);
    for (;;) {
      State s;
      for (size_t i = 0; i < vars.size(); i++) s[vars[i]] = vals[idx[i]];
      if (falsifies(rho, phi, s)) {
        out = s;
        return true;
      }
      size_t i = 0;
      while (i < idx.size() && ++idx[i] == vals.size()) idx[i++] = 0;
      if (i == idx.size()) return false;
    }
  }
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<size_t> pick(0, vals.size() - 1);
  for (int trial = 0; trial < 4000; trial++) {
    State s;
    for (auto& v : vars) s[v] = vals[pick(rng)];
    if (falsifies(rho, phi, s)) {
      out = s;
      return true;
    }
  }
  return false;
}

bool prove_quietly(const Formula& rho, const Formula& phi) {
  try {
    return prove(rho, phi);
  } catch (const Unknown&) {
    return false;
  }
}


// collects x = t / t = x equations for witness candidates
void equations(const Formula& f, const std::string& x, std::vector<Term>& out) {
  if (f->kind == FK::Cmp) {
    if (f->rel != Rel::Eq) return;
    if (f->lhs->kind == TK::Var && f->lhs->var == x && !free_vars(f->rhs).count(x))
      out.push_back(f->rhs);
    if (f->rhs->kind == TK::Var && f->rhs->var == x && !free_vars(f->lhs).count(x))
      out.push_back(f->lhs);
    return;
  }
  if (f->game->kind == GK::Test) equations(f->game->test, x, out);
  if (f->game->kind == GK::Choice) {
    if (f->game->a->kind == GK::Test) equations(f->game->a->test, x, out);
  }
  equations(f->post, x, out);
}

void literals(const Term& t, std::vector<Q>& out) {
  if (!t) return;
  if (t->kind == TK::Lit) out.push_back(t->lit);
  literals(t->a, out);
  literals(t->b, out);
}

void literals(const Formula& f, std::vector<Q>& out) {
  if (f->kind == FK::Cmp) {
    literals(f->lhs, out);
    literals(f->rhs, out);
    return;
  }
  if (f->game->kind == GK::Test) literals(f->game->test, out);
  if (f->game->kind == GK::Assign) literals(f->game->term, out);
  literals(f->post, out);
}

// an instance f with rho -> phi[x := f] valid, searched over simple candidates
Term witness_search(const Formula& rho, const std::string& x, const Formula& phi) {
  static std::unordered_map<std::string, Term> cache;
  std::string key = (rho ? show(rho) : "-") + "\n" + x + "\n" + show(phi);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<Term> cands;
  equations(phi, x, cands);
  VarSet vs = free_vars(phi);
  if (rho)
    for (auto& v : free_vars(rho)) vs.insert(v);
  vs.erase(x);
  std::vector<Q> lits{Q(0), Q(1), Q(-1)};
  literals(phi, lits);
  for (auto& q : lits) cands.push_back(lit(q));
  for (auto& v : vs) {
    cands.push_back(var(v));
    cands.push_back(plus(var(v), lit(1)));
    cands.push_back(minus(var(v), lit(1)));
    cands.push_back(neg(var(v)));
    cands.push_back(abs_(var(v)));
  }
  Term found;
  std::set<std::string> tried;
  for (auto& c : cands) {
    if (!tried.insert(show(c)).second) continue;
    if (tried.size() > 40) break;
    Formula inst;
    try {
      inst = subst(phi, x, c);
    } catch (const InadmissibleSubstitution&) {
      continue;
    }
    if (prove_quietly(rho, inst)) {
      found = c;
      break;
    }
  }
  cache.emplace(key, found);
  return found;
}

}  // namespace

OracleResult oracle_decide(const Formula& rho, const Formula& phi) {
  oracle_stats().calls++;
  OracleResult r;
  if (!is_first_order(phi) || (rho && !is_first_order(rho))) return r;
  if (prove_quietly(rho, phi) ||
      (phi->kind == FK::Dia && phi->game->kind == GK::AssignAny &&
       oracle_witness(rho, phi->game->var, phi->post))) {
    r.verdict = Verdict::Valid;
    return r;
  }
  if (search_witness(rho, phi, r.witness)) r.verdict = Verdict::Refuted;
  return r;
}

}  // namespace cgl

namespace cgl {

Term oracle_witness(const Formula& rho, const std::string& x, const Formula& phi) {
  return witness_search(rho, x, phi);
}

}  // namespace cgl
