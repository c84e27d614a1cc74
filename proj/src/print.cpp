#include "cgl/syntax.hpp"

namespace cgl {

std::string show(const Q& q) { return q.get_str(); }

// term precedence: 1 additive, 2 multiplicative, 3 unary, 4 atom
static std::string term(const Term& t, int ctx) {
  auto wrap = [&](int prec, std::string s) { return prec < ctx ? "(" + s + ")" : s; };
  switch (t->kind) {
    case TK::Lit:
      if (t->lit < 0) return wrap(3, show(t->lit));
      return show(t->lit);
    case TK::Var: return t->var;
    case TK::Plus: return wrap(1, term(t->a, 1) + " + " + term(t->b, 2));
    case TK::Minus: return wrap(1, term(t->a, 1) + " - " + term(t->b, 2));
    case TK::Times: return wrap(2, term(t->a, 2) + " * " + term(t->b, 3));
    case TK::Div: return wrap(2, term(t->a, 2) + " div " + term(t->b, 3));
    case TK::Mod: return wrap(2, term(t->a, 2) + " mod " + term(t->b, 3));
    case TK::Neg: {
      // -3 would lex as a literal, so a non-negative literal operand keeps its parens
      std::string inner = t->a->kind == TK::Lit && t->a->lit >= 0 ? "(" + show(t->a->lit) + ")"
                                                                  : term(t->a, 3);
      return wrap(3, "-" + inner);
    }
    case TK::Abs: return "abs(" + term(t->a, 0) + ")";
    case TK::Min: return "min(" + term(t->a, 0) + ", " + term(t->b, 0) + ")";
    case TK::Max: return "max(" + term(t->a, 0) + ", " + term(t->b, 0) + ")";
  }
  return "?";
}

std::string show(const Term& t) { return term(t, 0); }

static std::string formula(const Formula& f, int ctx);

static bool as_cap(const Game& g, Game* a, Game* b) {
  if (g->kind != GK::Dual || g->a->kind != GK::Choice) return false;
  auto& c = g->a;
  if (c->a->kind != GK::Dual || c->b->kind != GK::Dual) return false;
  *a = c->a->a;
  *b = c->b->a;
  return true;
}

// game precedence: 1 choice/cap, 2 seq, 3 postfix, 4 atom
static std::string game(const Game& g, int ctx) {
  auto wrap = [&](int prec, std::string s) { return prec < ctx ? "{" + s + "}" : s; };
  Game l, r;
  if (as_cap(g, &l, &r)) return wrap(1, game(l, 2) + " cap " + game(r, 1));
  switch (g->kind) {
    case GK::Test: return "?" + formula(g->test, 5);
    case GK::Assign: return g->var + " := " + show(g->term);
    case GK::AssignAny: return g->var + " := *";
    case GK::Choice: return wrap(1, game(g->a, 2) + " ++ " + game(g->b, 1));
    case GK::Seq: return wrap(2, game(g->a, 3) + "; " + game(g->b, 2));
    case GK::Repeat:
    case GK::Dual: {
      const char* op = g->kind == GK::Repeat ? "*" : "^d";
      auto& a = g->a;
      bool chain = (a->kind == GK::Repeat || a->kind == GK::Dual) && !as_cap(a, &l, &r);
      std::string inner = chain ? game(a, 3) : "{" + game(a, 0) + "}";
      return inner + op;
    }
  }
  return "?";
}

std::string show(const Game& g) { return game(g, 0); }

// x = a || x = b || ... with one shared left side, at least two members
static bool as_member(const Formula& f, Term* t, std::vector<Term>* xs) {
  Formula a, b;
  Formula cur = f;
  std::vector<Term> out;
  Term lhs;
  while (as_or(cur, &a, &b)) {
    if (a->kind != FK::Cmp || a->rel != Rel::Eq) return false;
    if (lhs && !same(lhs, a->lhs)) return false;
    lhs = a->lhs;
    out.push_back(a->rhs);
    cur = b;
  }
  if (!lhs || cur->kind != FK::Cmp || cur->rel != Rel::Eq || !same(lhs, cur->lhs)) return false;
  out.push_back(cur->rhs);
  *t = lhs;
  *xs = out;
  return true;
}

static bool as_iff(const Formula& f, Formula* a, Formula* b) {
  Formula l, r, a1, b1, a2, b2;
  if (!as_and(f, &l, &r)) return false;
  if (!as_imp(l, &a1, &b1) || !as_imp(r, &a2, &b2)) return false;
  if (!same(a1, b2) || !same(b1, a2)) return false;
  *a = a1;
  *b = b1;
  return true;
}

// formula precedence: 1 iff, 2 imp, 3 or, 4 and, 5 unary, 6 atom
static std::string formula(const Formula& f, int ctx) {
  auto wrap = [&](int prec, std::string s) { return prec < ctx ? "(" + s + ")" : s; };
  if (is_tt(f)) return "true";
  if (is_ff(f)) return "false";
  Formula a, b;
  Term t;
  std::vector<Term> xs;
  if (as_member(f, &t, &xs)) {
    std::string s = term(t, 1) + " in {";
    for (size_t i = 0; i < xs.size(); i++) s += (i ? ", " : "") + term(xs[i], 0);
    return s + "}";
  }
  if (as_iff(f, &a, &b)) return wrap(1, formula(a, 2) + " <-> " + formula(b, 2));
  if (as_not(f, &a)) return wrap(5, "!" + formula(a, 5));
  if (as_imp(f, &a, &b)) return wrap(2, formula(a, 3) + " -> " + formula(b, 2));
  if (as_or(f, &a, &b)) return wrap(3, formula(a, 4) + " || " + formula(b, 3));
  if (as_and(f, &a, &b)) return wrap(4, formula(a, 5) + " && " + formula(b, 4));
  switch (f->kind) {
    case FK::Cmp: return term(f->lhs, 1) + " " + rel_str(f->rel) + " " + term(f->rhs, 1);
    case FK::Dia: return wrap(5, "<" + game(f->game, 0) + "> " + formula(f->post, 5));
    case FK::Box: return wrap(5, "[" + game(f->game, 0) + "] " + formula(f->post, 5));
  }
  return "?";
}

std::string show(const Formula& f) { return formula(f, 0); }

}  // namespace cgl
