#pragma once

#include "cgl/proof.hpp"

namespace cgl {

// Realizer syntax. The first block is the strategy language proper; the
// second holds the plumbing extraction needs to stay faithful to the proof
// (old values after an assignment, continuations of monotonicity, case
// analysis on a computed selector).
enum class RK {
  Unit, Pair, Fst, Snd, StateLam, NumLam, ProofLam, TermVal, IfTerm, Ind, Gen, RVar, AppState,
  AppNum, AppRz,
  Remember,  // Remember(y := x, R): bind y to x's value before the move that changes x
  LetNum,    // LetNum(x := f, R)
  Let,       // Let(p := R1, R2)
  Compose,   // Compose(R, ren, p. R', full): play R through the game of full, continue with R'
  Branch,    // Branch(R, l. R1, r. R2): selector of R picks the branch
  Open,      // Open(R, x, y, p. R'): unpack a witness pair
  Search,    // Search(x, phi): ground witness search for an existential leaf
};

struct RNode;
using Realizer = std::shared_ptr<const RNode>;

// Field use: Pair a b | Fst/Snd/StateLam/AppState a | NumLam x y a | ProofLam p phi a
//   TermVal f | IfTerm phi a b | Ind p a | Gen a p b c phi (init, step, post, loop) | RVar p
//   AppNum a f | AppRz a b | Remember y x a | LetNum x f a | Let p a b
//   Compose a ren p b phi=full | Branch a p.b q.c | Open a x y p.b | Search x phi
struct RNode {
  RK kind;
  std::string p, q, x, y;
  Formula phi;
  Term f;
  Renaming ren;
  Realizer a, b, c;
};

std::string rk_name(RK k);

Realizer r_unit();
Realizer r_pair(Realizer a, Realizer b);
Realizer r_fst(Realizer a);
Realizer r_snd(Realizer a);
Realizer r_statelam(Realizer a);
Realizer r_numlam(const std::string& x, Realizer body, const std::string& y = "");
Realizer r_prooflam(const std::string& p, Formula phi, Realizer body);
Realizer r_term(Term f);
Realizer r_num(const Q& q);
Realizer r_if(Formula cond, Realizer a, Realizer b);
Realizer r_ind(const std::string& w, Realizer body);
// loop is the [a*]J the generator realizes; needed only to eliminate a step
// structurally instead of playing it
Realizer r_gen(Realizer init, const std::string& p, Realizer step, Realizer post,
               Formula loop = nullptr);
Realizer r_var(const std::string& p);
Realizer r_appstate(Realizer a);
Realizer r_appnum(Realizer a, Term f);
Realizer r_apprz(Realizer a, Realizer b);
Realizer r_remember(const std::string& y, const std::string& x, Realizer a);
Realizer r_letnum(const std::string& x, Term f, Realizer a);
Realizer r_let(const std::string& p, Realizer a, Realizer b);
Realizer r_compose(Realizer a, Renaming ren, const std::string& p, Realizer b, Formula full);
Realizer r_branch(Realizer a, const std::string& l, Realizer b, const std::string& r, Realizer c);
Realizer r_open(Realizer a, const std::string& x, const std::string& y, const std::string& p,
                Realizer b);
Realizer r_search(const std::string& x, Formula phi);

// canonical realizer of a first-order formula: Unit for comparisons,
// IfTerm selectors for disjunctions, witness terms for existentials
Realizer fo_realizer(const Formula& phi);

std::string show(const Realizer& r);
size_t realizer_size(const Realizer& r);

}  // namespace cgl
