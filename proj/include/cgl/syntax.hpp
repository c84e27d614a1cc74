#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace cgl {

using Q = mpq_class;
using VarSet = std::set<std::string>;

// terms

enum class TK { Lit, Var, Plus, Times, Minus, Neg, Div, Mod, Abs, Min, Max };

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
  TK kind;
  Q lit;
  std::string var;
  Term a, b;
};

// games and formulas are mutually recursive

enum class GK { Test, Assign, AssignAny, Choice, Seq, Repeat, Dual };
enum class FK { Dia, Box, Cmp };
enum class Rel { Le, Lt, Eq, Ne, Gt, Ge };

struct GameNode;
struct FormulaNode;
using Game = std::shared_ptr<const GameNode>;
using Formula = std::shared_ptr<const FormulaNode>;

struct GameNode {
  GK kind;
  Formula test;
  std::string var;
  Term term;
  Game a, b;
};

struct FormulaNode {
  FK kind;
  Game game;
  Formula post;
  Term lhs, rhs;
  Rel rel = Rel::Eq;
};

// errors

struct DivisionByZero : std::runtime_error {
  Term at;
  explicit DivisionByZero(Term t);
};

struct InadmissibleSubstitution : std::runtime_error {
  std::string binder;
  explicit InadmissibleSubstitution(const std::string& b);
};

// construction
Term lit(const Q& q);
Term lit(long n);
Term var(const std::string& x);
Term plus(Term a, Term b);
Term times(Term a, Term b);
Term minus(Term a, Term b);
Term neg(Term a);
Term div_(Term a, Term b);
Term mod_(Term a, Term b);
Term abs_(Term a);
Term min_(Term a, Term b);
Term max_(Term a, Term b);

Game test(Formula f);
Game assign(const std::string& x, Term f);
Game any(const std::string& x);
Game choice(Game a, Game b);
Game seq(Game a, Game b);
Game star(Game a);
Game dual(Game a);

Formula dia(Game a, Formula f);
Formula box(Game a, Formula f);
Formula cmp(Term l, Rel r, Term g);

// derived connectives, elaborated into the core
Formula tt();
Formula ff();
Formula land(Formula a, Formula b);
Formula lor(Formula a, Formula b);
Formula limp(Formula a, Formula b);
Formula lnot(Formula a);
Formula liff(Formula a, Formula b);
Formula lforall(const std::string& x, Formula f);
Formula lexists(const std::string& x, Formula f);
Formula succ(Term a, Term b);  // a >= b+1 && b >= 0
Game cap(Game a, Game b);

// recognizers for the same shapes (nullptr-safe, exact inverse of the builders)
bool is_tt(const Formula& f);
bool is_ff(const Formula& f);
bool as_and(const Formula& f, Formula* a, Formula* b);
bool as_or(const Formula& f, Formula* a, Formula* b);
bool as_imp(const Formula& f, Formula* a, Formula* b);
bool as_not(const Formula& f, Formula* a);

// structural equality
bool same(const Term& a, const Term& b);
bool same(const Game& a, const Game& b);
bool same(const Formula& a, const Formula& b);

const char* rel_str(Rel r);
Rel rel_flip(Rel r);    // a r b  <=>  b flip(r) a
Rel rel_negate(Rel r);  // !(a r b) <=> a neg(r) b
bool rel_holds(Rel r, const Q& a, const Q& b);

// states
using State = std::map<std::string, Q>;
Q lookup(const State& s, const std::string& x);
State rename_state(const State& s, const std::string& x, const std::string& y);
std::string state_str(const State& s);

Q eval(const Term& t, const State& s);
Q floor_q(const Q& q);
Q ediv(const Q& f, const Q& g);
Q emod(const Q& f, const Q& g);

// static semantics
VarSet free_vars(const Term& t);
VarSet free_vars(const Game& a);
VarSet free_vars(const Formula& f);
VarSet bound_vars(const Game& a);
VarSet must_bound_vars(const Game& a);
// every variable name mentioned anywhere, bound or free
void all_vars(const Term& t, VarSet& out);
void all_vars(const Game& a, VarSet& out);
void all_vars(const Formula& f, VarSet& out);
// variables bound by any game nested anywhere in the expression
void binders(const Game& a, VarSet& out);
void binders(const Formula& f, VarSet& out);

// uniform renaming is a transposition x <-> y
std::string swap_name(const std::string& v, const std::string& x, const std::string& y);
Term rename(const Term& t, const std::string& x, const std::string& y);
Game rename(const Game& a, const std::string& x, const std::string& y);
Formula rename(const Formula& f, const std::string& x, const std::string& y);

// admissible substitution of f for free x
Term subst(const Term& t, const std::string& x, const Term& f);
Game subst(const Game& a, const std::string& x, const Term& f);
Formula subst(const Formula& p, const std::string& x, const Term& f);

// fresh names: smallest base'N not in avoid
std::string base_name(const std::string& v);
std::string fresh_name(const std::string& base, const VarSet& avoid);

// first-order fragment: no loops anywhere
bool is_first_order(const Game& a);
bool is_first_order(const Formula& f);

struct NotGround : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// classical ground evaluation of a first-order formula without x:=*
bool holds(const Formula& f, const State& s);

// printing (ASCII surface syntax)
std::string show(const Q& q);
std::string show(const Term& t);
std::string show(const Game& a);
std::string show(const Formula& f);

}  // namespace cgl
