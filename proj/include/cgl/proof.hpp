#pragma once

#include "cgl/syntax.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace cgl {

struct SrcPos {
  int line = 0, col = 0;
};

enum class PK {
  PVar, Lam, App, NumLam, NumApp, DPair, BPair, ProjL, ProjR, InjL, InjR, Case, RCase,
  TCons, Unpack, Asgn, Seq, Swap, Stop, Go, For, FP, Rep, Roll, Unroll, Mon, QE, Dec,
  Split, Ghost
};

// modality flavor for constructors that share one notation across <> and []
enum class Tag { Dia, Box };

struct ProofNode;
using Proof = std::shared_ptr<const ProofNode>;
using Renaming = std::vector<std::pair<std::string, std::string>>;

// Field use by constructor (children a, b, c):
//   PVar p | Lam p phi a | App a b | NumLam x y a | NumApp a f | DPair/BPair a b
//   ProjL/ProjR a (tag) | InjL/InjR a | Case/RCase a p.b q.c
//   TCons x y p f a | Unpack a x y p b | Asgn y x p a (tag) | Seq/Swap a (tag)
//   Stop/Go/Roll/Unroll a | For a p q b c f=metric phi=inv y=M0 game
//   FP a p.b q.c | Rep a p.b phi=J c game | Mon a p b phi=post full ren
//   QE/Dec phi a? | Split f g | Ghost x f p a
// ann is the type the checker inferred for a node in inference position; it
// travels with the node through reduction so reducts stay checkable.
struct ProofNode {
  PK kind;
  Tag tag = Tag::Dia;
  std::string p, q, x, y;
  Formula phi, full, ann;
  Game game;
  Term f, g;
  Proof a, b, c;
  Renaming ren;
  SrcPos pos;
};

std::string pk_name(PK k);

// builders
Proof pvar(const std::string& p);
Proof plam(const std::string& p, Formula phi, Proof body);
Proof papp(Proof m, Proof n);
Proof numlam(const std::string& x, Proof body, const std::string& y = "");
Proof numapp(Proof m, Term f);
Proof dpair(Proof m, Proof n);
Proof bpair(Proof m, Proof n);
Proof projl(Tag t, Proof m);
Proof projr(Tag t, Proof m);
Proof injl(Proof m);
Proof injr(Proof m);
Proof pcase(Proof a, const std::string& l, Proof b, const std::string& r, Proof c);
Proof rcase(Proof a, const std::string& s, Proof b, const std::string& g, Proof c);
Proof tcons(const std::string& x, const std::string& y, const std::string& p, Term f, Proof m);
Proof unpack(Proof m, const std::string& y, const std::string& p, Proof n, const std::string& x = "");
Proof asgn(Tag t, const std::string& y, const std::string& x, const std::string& p, Proof m);
Proof pseq(Tag t, Proof m);
Proof pswap(Tag t, Proof m);
Proof stop(Proof m);
Proof go(Proof m);
Proof pfor(Proof a, const std::string& p, const std::string& q, Proof b, Proof c, Term metric,
           Formula inv, const std::string& m0 = "");
Proof fp(Proof a, const std::string& s, Proof b, const std::string& g, Proof c);
Proof rep(Proof m, const std::string& p, Proof n, Formula j, Proof o);
Proof roll(Proof m);
Proof unroll(Proof m);
Proof mon(Proof m, const std::string& p, Proof n, Formula post = nullptr);
Proof qe(Formula phi, Proof m = nullptr);
Proof dec(Formula phi, Proof m = nullptr);
Proof split(Term f, Term g);
Proof ghost(const std::string& x, Term f, const std::string& p, Proof m);

// copy with edits
Proof with(const Proof& m, const std::function<void(ProofNode&)>& edit);

// contexts: ordered, unique names, extension shadows
struct Context {
  std::vector<std::pair<std::string, Formula>> hyps;
  const Formula* find(const std::string& p) const;
  Context extend(const std::string& p, Formula f) const;
  Context rename(const std::string& x, const std::string& y) const;
};
void all_vars(const Context& g, VarSet& out);

bool alpha_eq(const Proof& m, const Proof& n);

// program variables mentioned anywhere, bound by proof binders, or free proof vars
void all_vars(const Proof& m, VarSet& out);
void proof_binders(const Proof& m, VarSet& out);
void all_pvars(const Proof& m, VarSet& out);
VarSet free_pvars(const Proof& m);

Proof rename_pt(const Proof& m, const std::string& x, const std::string& y);
Proof subst_pt(const Proof& m, const std::string& p, const Proof& n);
Proof subst_term_pt(const Proof& m, const std::string& x, const Term& f);

std::string show(const Proof& m);

}  // namespace cgl
