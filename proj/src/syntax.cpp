#include "cgl/syntax.hpp"

#include <sstream>

namespace cgl {

DivisionByZero::DivisionByZero(Term t)
    : std::runtime_error("division by zero in " + show(t)), at(std::move(t)) {}

InadmissibleSubstitution::InadmissibleSubstitution(const std::string& b)
    : std::runtime_error("inadmissible substitution: binder " + b), binder(b) {}

namespace {

Term mk(TK k, Term a = nullptr, Term b = nullptr) {
  auto n = std::make_shared<TermNode>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

}  // namespace

Term lit(const Q& q) {
  auto n = std::make_shared<TermNode>();
  n->kind = TK::Lit;
  n->lit = q;
  n->lit.canonicalize();
  return n;
}
Term lit(long n) { return lit(Q(n)); }
Term var(const std::string& x) {
  auto n = std::make_shared<TermNode>();
  n->kind = TK::Var;
  n->var = x;
  return n;
}
Term plus(Term a, Term b) { return mk(TK::Plus, a, b); }
Term times(Term a, Term b) { return mk(TK::Times, a, b); }
Term minus(Term a, Term b) { return mk(TK::Minus, a, b); }
Term neg(Term a) { return mk(TK::Neg, a); }
Term div_(Term a, Term b) { return mk(TK::Div, a, b); }
Term mod_(Term a, Term b) { return mk(TK::Mod, a, b); }
Term abs_(Term a) { return mk(TK::Abs, a); }
Term min_(Term a, Term b) { return mk(TK::Min, a, b); }
Term max_(Term a, Term b) { return mk(TK::Max, a, b); }

Game test(Formula f) {
  auto n = std::make_shared<GameNode>();
  n->kind = GK::Test;
  n->test = std::move(f);
  return n;
}
Game assign(const std::string& x, Term f) {
  auto n = std::make_shared<GameNode>();
  n->kind = GK::Assign;
  n->var = x;
  n->term = std::move(f);
  return n;
}
Game any(const std::string& x) {
  auto n = std::make_shared<GameNode>();
  n->kind = GK::AssignAny;
  n->var = x;
  return n;
}
static Game bin(GK k, Game a, Game b) {
  auto n = std::make_shared<GameNode>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}
Game choice(Game a, Game b) { return bin(GK::Choice, a, b); }
Game seq(Game a, Game b) { return bin(GK::Seq, a, b); }
Game star(Game a) { return bin(GK::Repeat, a, nullptr); }
Game dual(Game a) { return bin(GK::Dual, a, nullptr); }

Formula dia(Game a, Formula f) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = FK::Dia;
  n->game = std::move(a);
  n->post = std::move(f);
  return n;
}
Formula box(Game a, Formula f) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = FK::Box;
  n->game = std::move(a);
  n->post = std::move(f);
  return n;
}
Formula cmp(Term l, Rel r, Term g) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = FK::Cmp;
  n->lhs = std::move(l);
  n->rel = r;
  n->rhs = std::move(g);
  return n;
}

Formula tt() { return cmp(lit(1), Rel::Gt, lit(0)); }
Formula ff() { return cmp(lit(0), Rel::Gt, lit(1)); }
Formula land(Formula a, Formula b) { return dia(test(a), b); }
Formula lor(Formula a, Formula b) { return dia(choice(test(a), test(b)), tt()); }
Formula limp(Formula a, Formula b) { return box(test(a), b); }
Formula lnot(Formula a) { return limp(a, ff()); }
Formula liff(Formula a, Formula b) { return land(limp(a, b), limp(b, a)); }
Formula lforall(const std::string& x, Formula f) { return box(any(x), f); }
Formula lexists(const std::string& x, Formula f) { return dia(any(x), f); }
Formula succ(Term a, Term b) {
  return land(cmp(a, Rel::Ge, plus(b, lit(1))), cmp(b, Rel::Ge, lit(0)));
}
Game cap(Game a, Game b) { return dual(choice(dual(a), dual(b))); }

static bool is_lit(const Term& t, long v) { return t && t->kind == TK::Lit && t->lit == v; }

bool is_tt(const Formula& f) {
  return f && f->kind == FK::Cmp && f->rel == Rel::Gt && is_lit(f->lhs, 1) && is_lit(f->rhs, 0);
}
bool is_ff(const Formula& f) {
  return f && f->kind == FK::Cmp && f->rel == Rel::Gt && is_lit(f->lhs, 0) && is_lit(f->rhs, 1);
}
bool as_and(const Formula& f, Formula* a, Formula* b) {
  if (!f || f->kind != FK::Dia || f->game->kind != GK::Test) return false;
  *a = f->game->test;
  *b = f->post;
  return true;
}
bool as_or(const Formula& f, Formula* a, Formula* b) {
  if (!f || f->kind != FK::Dia || !is_tt(f->post)) return false;
  auto& g = f->game;
  if (g->kind != GK::Choice || g->a->kind != GK::Test || g->b->kind != GK::Test) return false;
  *a = g->a->test;
  *b = g->b->test;
  return true;
}
bool as_imp(const Formula& f, Formula* a, Formula* b) {
  if (!f || f->kind != FK::Box || f->game->kind != GK::Test) return false;
  *a = f->game->test;
  *b = f->post;
  return true;
}
bool as_not(const Formula& f, Formula* a) {
  Formula b;
  return as_imp(f, a, &b) && is_ff(b);
}

bool same(const Term& a, const Term& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case TK::Lit: return a->lit == b->lit;
    case TK::Var: return a->var == b->var;
    case TK::Neg:
    case TK::Abs: return same(a->a, b->a);
    default: return same(a->a, b->a) && same(a->b, b->b);
  }
}

bool same(const Game& a, const Game& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case GK::Test: return same(a->test, b->test);
    case GK::Assign: return a->var == b->var && same(a->term, b->term);
    case GK::AssignAny: return a->var == b->var;
    case GK::Repeat:
    case GK::Dual: return same(a->a, b->a);
    default: return same(a->a, b->a) && same(a->b, b->b);
  }
}

bool same(const Formula& a, const Formula& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  if (a->kind == FK::Cmp)
    return a->rel == b->rel && same(a->lhs, b->lhs) && same(a->rhs, b->rhs);
  return same(a->game, b->game) && same(a->post, b->post);
}

const char* rel_str(Rel r) {
  switch (r) {
    case Rel::Le: return "<=";
    case Rel::Lt: return "<";
    case Rel::Eq: return "=";
    case Rel::Ne: return "!=";
    case Rel::Gt: return ">";
    case Rel::Ge: return ">=";
  }
  return "?";
}

Rel rel_flip(Rel r) {
  switch (r) {
    case Rel::Le: return Rel::Ge;
    case Rel::Lt: return Rel::Gt;
    case Rel::Gt: return Rel::Lt;
    case Rel::Ge: return Rel::Le;
    default: return r;
  }
}

Rel rel_negate(Rel r) {
  switch (r) {
    case Rel::Le: return Rel::Gt;
    case Rel::Lt: return Rel::Ge;
    case Rel::Eq: return Rel::Ne;
    case Rel::Ne: return Rel::Eq;
    case Rel::Gt: return Rel::Le;
    case Rel::Ge: return Rel::Lt;
  }
  return r;
}

bool rel_holds(Rel r, const Q& a, const Q& b) {
  switch (r) {
    case Rel::Le: return a <= b;
    case Rel::Lt: return a < b;
    case Rel::Eq: return a == b;
    case Rel::Ne: return a != b;
    case Rel::Gt: return a > b;
    case Rel::Ge: return a >= b;
  }
  return false;
}

// states

Q lookup(const State& s, const std::string& x) {
  auto it = s.find(x);
  return it == s.end() ? Q(0) : it->second;
}

State rename_state(const State& s, const std::string& x, const std::string& y) {
  State out = s;
  out.erase(x);
  out.erase(y);
  Q vx = lookup(s, x), vy = lookup(s, y);
  if (vy != 0) out[x] = vy;
  if (vx != 0) out[y] = vx;
  return out;
}

std::string state_str(const State& s) {
  std::string out;
  for (auto& [k, v] : s) {
    if (!out.empty()) out += ",";
    out += k + "=" + show(v);
  }
  return out;
}

Q floor_q(const Q& q) {
  mpz_class z;
  mpz_fdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Q(z);
}

// Euclidean: 0 <= r < |g|
Q ediv(const Q& f, const Q& g) {
  Q x = f / g;
  if (g > 0) return floor_q(x);
  return -floor_q(-x);
}

Q emod(const Q& f, const Q& g) { return f - g * ediv(f, g); }

Q eval(const Term& t, const State& s) {
  switch (t->kind) {
    case TK::Lit: return t->lit;
    case TK::Var: return lookup(s, t->var);
    case TK::Plus: return eval(t->a, s) + eval(t->b, s);
    case TK::Times: return eval(t->a, s) * eval(t->b, s);
    case TK::Minus: return eval(t->a, s) - eval(t->b, s);
    case TK::Neg: return -eval(t->a, s);
    case TK::Div:
    case TK::Mod: {
      Q f = eval(t->a, s), g = eval(t->b, s);
      if (g == 0) throw DivisionByZero(t);
      return t->kind == TK::Div ? ediv(f, g) : emod(f, g);
    }
    case TK::Abs: return abs(eval(t->a, s));
    case TK::Min: {
      Q a = eval(t->a, s), b = eval(t->b, s);
      return a <= b ? a : b;
    }
    case TK::Max: {
      Q a = eval(t->a, s), b = eval(t->b, s);
      return a >= b ? a : b;
    }
  }
  return 0;
}

// static semantics

static void fv_term(const Term& t, VarSet& out) {
  if (!t) return;
  if (t->kind == TK::Var) out.insert(t->var);
  fv_term(t->a, out);
  fv_term(t->b, out);
}

VarSet free_vars(const Term& t) {
  VarSet s;
  fv_term(t, s);
  return s;
}

VarSet must_bound_vars(const Game& a) {
  switch (a->kind) {
    case GK::Test: return {};
    case GK::Assign:
    case GK::AssignAny: return {a->var};
    case GK::Choice: {
      VarSet l = must_bound_vars(a->a), r = must_bound_vars(a->b), out;
      for (auto& v : l)
        if (r.count(v)) out.insert(v);
      return out;
    }
    case GK::Seq: {
      VarSet l = must_bound_vars(a->a), r = must_bound_vars(a->b);
      l.insert(r.begin(), r.end());
      return l;
    }
    case GK::Repeat: return {};
    case GK::Dual: return must_bound_vars(a->a);
  }
  return {};
}

VarSet bound_vars(const Game& a) {
  switch (a->kind) {
    case GK::Test: return {};
    case GK::Assign:
    case GK::AssignAny: return {a->var};
    case GK::Choice:
    case GK::Seq: {
      VarSet l = bound_vars(a->a), r = bound_vars(a->b);
      l.insert(r.begin(), r.end());
      return l;
    }
    default: return bound_vars(a->a);
  }
}

VarSet free_vars(const Game& a) {
  switch (a->kind) {
    case GK::Test: return free_vars(a->test);
    case GK::Assign: return free_vars(a->term);
    case GK::AssignAny: return {};
    case GK::Choice: {
      VarSet l = free_vars(a->a), r = free_vars(a->b);
      l.insert(r.begin(), r.end());
      return l;
    }
    case GK::Seq: {
      VarSet l = free_vars(a->a), r = free_vars(a->b), m = must_bound_vars(a->a);
      for (auto& v : r)
        if (!m.count(v)) l.insert(v);
      return l;
    }
    default: return free_vars(a->a);
  }
}

VarSet free_vars(const Formula& f) {
  if (f->kind == FK::Cmp) {
    VarSet s = free_vars(f->lhs);
    fv_term(f->rhs, s);
    return s;
  }
  VarSet s = free_vars(f->game), p = free_vars(f->post), m = must_bound_vars(f->game);
  for (auto& v : p)
    if (!m.count(v)) s.insert(v);
  return s;
}

void all_vars(const Term& t, VarSet& out) { fv_term(t, out); }

void all_vars(const Game& a, VarSet& out) {
  if (!a) return;
  if (a->kind == GK::Assign || a->kind == GK::AssignAny) out.insert(a->var);
  if (a->test) all_vars(a->test, out);
  if (a->term) fv_term(a->term, out);
  all_vars(a->a, out);
  all_vars(a->b, out);
}

void all_vars(const Formula& f, VarSet& out) {
  if (!f) return;
  if (f->kind == FK::Cmp) {
    fv_term(f->lhs, out);
    fv_term(f->rhs, out);
    return;
  }
  all_vars(f->game, out);
  all_vars(f->post, out);
}

void binders(const Game& a, VarSet& out) {
  if (!a) return;
  if (a->kind == GK::Assign || a->kind == GK::AssignAny) out.insert(a->var);
  if (a->test) binders(a->test, out);
  binders(a->a, out);
  binders(a->b, out);
}

void binders(const Formula& f, VarSet& out) {
  if (!f || f->kind == FK::Cmp) return;
  binders(f->game, out);
  binders(f->post, out);
}

// renaming

std::string swap_name(const std::string& v, const std::string& x, const std::string& y) {
  if (v == x) return y;
  if (v == y) return x;
  return v;
}

Term rename(const Term& t, const std::string& x, const std::string& y) {
  if (!t) return t;
  switch (t->kind) {
    case TK::Lit: return t;
    case TK::Var: return (t->var == x || t->var == y) ? var(swap_name(t->var, x, y)) : t;
    default: return mk(t->kind, rename(t->a, x, y), rename(t->b, x, y));
  }
}

Game rename(const Game& a, const std::string& x, const std::string& y) {
  switch (a->kind) {
    case GK::Test: return test(rename(a->test, x, y));
    case GK::Assign: return assign(swap_name(a->var, x, y), rename(a->term, x, y));
    case GK::AssignAny: return any(swap_name(a->var, x, y));
    case GK::Choice: return choice(rename(a->a, x, y), rename(a->b, x, y));
    case GK::Seq: return seq(rename(a->a, x, y), rename(a->b, x, y));
    case GK::Repeat: return star(rename(a->a, x, y));
    case GK::Dual: return dual(rename(a->a, x, y));
  }
  return a;
}

Formula rename(const Formula& f, const std::string& x, const std::string& y) {
  switch (f->kind) {
    case FK::Cmp: return cmp(rename(f->lhs, x, y), f->rel, rename(f->rhs, x, y));
    case FK::Dia: return dia(rename(f->game, x, y), rename(f->post, x, y));
    case FK::Box: return box(rename(f->game, x, y), rename(f->post, x, y));
  }
  return f;
}

// substitution: the binder check is done once at the top, then replacement is blind

static Term replace(const Term& t, const std::string& x, const Term& f) {
  if (!t) return t;
  switch (t->kind) {
    case TK::Lit: return t;
    case TK::Var: return t->var == x ? f : t;
    default: return mk(t->kind, replace(t->a, x, f), replace(t->b, x, f));
  }
}

static Formula replace(const Formula& p, const std::string& x, const Term& f);

static Game replace(const Game& a, const std::string& x, const Term& f) {
  switch (a->kind) {
    case GK::Test: return test(replace(a->test, x, f));
    case GK::Assign: return assign(a->var, replace(a->term, x, f));
    case GK::AssignAny: return a;
    case GK::Choice: return choice(replace(a->a, x, f), replace(a->b, x, f));
    case GK::Seq: return seq(replace(a->a, x, f), replace(a->b, x, f));
    case GK::Repeat: return star(replace(a->a, x, f));
    case GK::Dual: return dual(replace(a->a, x, f));
  }
  return a;
}

static Formula replace(const Formula& p, const std::string& x, const Term& f) {
  switch (p->kind) {
    case FK::Cmp: return cmp(replace(p->lhs, x, f), p->rel, replace(p->rhs, x, f));
    case FK::Dia: return dia(replace(p->game, x, f), replace(p->post, x, f));
    case FK::Box: return box(replace(p->game, x, f), replace(p->post, x, f));
  }
  return p;
}

static void admissible(const VarSet& bound, const std::string& x, const Term& f) {
  if (bound.count(x)) throw InadmissibleSubstitution(x);
  for (auto& v : free_vars(f))
    if (bound.count(v)) throw InadmissibleSubstitution(v);
}

Term subst(const Term& t, const std::string& x, const Term& f) { return replace(t, x, f); }

Game subst(const Game& a, const std::string& x, const Term& f) {
  VarSet b;
  binders(a, b);
  admissible(b, x, f);
  return replace(a, x, f);
}

Formula subst(const Formula& p, const std::string& x, const Term& f) {
  VarSet b;
  binders(p, b);
  admissible(b, x, f);
  return replace(p, x, f);
}

std::string base_name(const std::string& v) {
  auto k = v.find('\'');
  return k == std::string::npos ? v : v.substr(0, k);
}

std::string fresh_name(const std::string& base, const VarSet& avoid) {
  std::string b = base_name(base);
  for (unsigned n = 1;; n++) {
    std::string c = b + "'" + std::to_string(n);
    if (!avoid.count(c)) return c;
  }
}

bool is_first_order(const Game& a) {
  switch (a->kind) {
    case GK::Test: return is_first_order(a->test);
    case GK::Assign:
    case GK::AssignAny: return true;
    case GK::Repeat: return false;
    case GK::Dual: return is_first_order(a->a);
    default: return is_first_order(a->a) && is_first_order(a->b);
  }
}

bool is_first_order(const Formula& f) {
  if (f->kind == FK::Cmp) return true;
  return is_first_order(f->game) && is_first_order(f->post);
}

// ground classical evaluation; Dual flips the modality (determinacy)

static bool holds_mod(bool diamond, const Game& a, const Formula& post, const State& s);

bool holds(const Formula& f, const State& s) {
  if (f->kind == FK::Cmp) return rel_holds(f->rel, eval(f->lhs, s), eval(f->rhs, s));
  return holds_mod(f->kind == FK::Dia, f->game, f->post, s);
}

static bool holds_mod(bool diamond, const Game& a, const Formula& post, const State& s) {
  switch (a->kind) {
    case GK::Test: {
      bool t = holds(a->test, s);
      return diamond ? (t && holds(post, s)) : (!t || holds(post, s));
    }
    case GK::Assign: {
      State n = s;
      n[a->var] = eval(a->term, s);
      return holds(post, n);
    }
    case GK::Choice: {
      bool l = holds_mod(diamond, a->a, post, s);
      if (diamond && l) return true;
      if (!diamond && !l) return false;
      return holds_mod(diamond, a->b, post, s);
    }
    case GK::Seq:
      return holds_mod(diamond, a->a, diamond ? dia(a->b, post) : box(a->b, post), s);
    case GK::Dual: return holds_mod(!diamond, a->a, post, s);
    default: throw NotGround("not ground-decidable: " + show(a));
  }
}

}  // namespace cgl
