#include "cgl/realizer.hpp"

#include "cgl/oracle.hpp"

namespace cgl {

std::string rk_name(RK k) {
  switch (k) {
    case RK::Unit: return "Unit";
    case RK::Pair: return "Pair";
    case RK::Fst: return "Fst";
    case RK::Snd: return "Snd";
    case RK::StateLam: return "StateLam";
    case RK::NumLam: return "NumLam";
    case RK::ProofLam: return "ProofLam";
    case RK::TermVal: return "TermVal";
    case RK::IfTerm: return "IfTerm";
    case RK::Ind: return "Ind";
    case RK::Gen: return "Gen";
    case RK::RVar: return "RVar";
    case RK::AppState: return "AppState";
    case RK::AppNum: return "AppNum";
    case RK::AppRz: return "AppRz";
    case RK::Remember: return "Remember";
    case RK::LetNum: return "LetNum";
    case RK::Let: return "Let";
    case RK::Compose: return "Compose";
    case RK::Branch: return "Branch";
    case RK::Open: return "Open";
    case RK::Search: return "Search";
  }
  return "?";
}

namespace {
std::shared_ptr<RNode> mk(RK k) {
  auto n = std::make_shared<RNode>();
  n->kind = k;
  return n;
}
}  // namespace

Realizer r_unit() { return mk(RK::Unit); }
Realizer r_pair(Realizer a, Realizer b) {
  auto n = mk(RK::Pair);
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}
Realizer r_fst(Realizer a) {
  auto n = mk(RK::Fst);
  n->a = std::move(a);
  return n;
}
Realizer r_snd(Realizer a) {
  auto n = mk(RK::Snd);
  n->a = std::move(a);
  return n;
}
Realizer r_statelam(Realizer a) {
  auto n = mk(RK::StateLam);
  n->a = std::move(a);
  return n;
}
Realizer r_numlam(const std::string& x, Realizer body, const std::string& y) {
  auto n = mk(RK::NumLam);
  n->x = x;
  n->y = y;
  n->a = std::move(body);
  return n;
}
Realizer r_prooflam(const std::string& p, Formula phi, Realizer body) {
  auto n = mk(RK::ProofLam);
  n->p = p;
  n->phi = std::move(phi);
  n->a = std::move(body);
  return n;
}
Realizer r_term(Term f) {
  auto n = mk(RK::TermVal);
  n->f = std::move(f);
  return n;
}
Realizer r_num(const Q& q) { return r_term(lit(q)); }
Realizer r_if(Formula cond, Realizer a, Realizer b) {
  auto n = mk(RK::IfTerm);
  n->phi = std::move(cond);
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}
Realizer r_ind(const std::string& w, Realizer body) {
  auto n = mk(RK::Ind);
  n->p = w;
  n->a = std::move(body);
  return n;
}
Realizer r_gen(Realizer init, const std::string& p, Realizer step, Realizer post,
               Formula loop) {
  auto n = mk(RK::Gen);
  n->phi = std::move(loop);
  n->a = std::move(init);
  n->p = p;
  n->b = std::move(step);
  n->c = std::move(post);
  return n;
}
Realizer r_var(const std::string& p) {
  auto n = mk(RK::RVar);
  n->p = p;
  return n;
}
Realizer r_appstate(Realizer a) {
  auto n = mk(RK::AppState);
  n->a = std::move(a);
  return n;
}
Realizer r_appnum(Realizer a, Term f) {
  auto n = mk(RK::AppNum);
  n->a = std::move(a);
  n->f = std::move(f);
  return n;
}
Realizer r_apprz(Realizer a, Realizer b) {
  auto n = mk(RK::AppRz);
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}
Realizer r_remember(const std::string& y, const std::string& x, Realizer a) {
  auto n = mk(RK::Remember);
  n->y = y;
  n->x = x;
  n->a = std::move(a);
  return n;
}
Realizer r_letnum(const std::string& x, Term f, Realizer a) {
  auto n = mk(RK::LetNum);
  n->x = x;
  n->f = std::move(f);
  n->a = std::move(a);
  return n;
}
Realizer r_let(const std::string& p, Realizer a, Realizer b) {
  auto n = mk(RK::Let);
  n->p = p;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}
Realizer r_compose(Realizer a, Renaming ren, const std::string& p, Realizer b, Formula full) {
  auto n = mk(RK::Compose);
  n->a = std::move(a);
  n->ren = std::move(ren);
  n->p = p;
  n->b = std::move(b);
  n->phi = std::move(full);
  return n;
}
Realizer r_branch(Realizer a, const std::string& l, Realizer b, const std::string& r, Realizer c) {
  auto n = mk(RK::Branch);
  n->a = std::move(a);
  n->p = l;
  n->b = std::move(b);
  n->q = r;
  n->c = std::move(c);
  return n;
}
Realizer r_open(Realizer a, const std::string& x, const std::string& y, const std::string& p,
                Realizer b) {
  auto n = mk(RK::Open);
  n->a = std::move(a);
  n->x = x;
  n->y = y;
  n->p = p;
  n->b = std::move(b);
  return n;
}
Realizer r_search(const std::string& x, Formula phi) {
  auto n = mk(RK::Search);
  n->x = x;
  n->phi = std::move(phi);
  return n;
}

namespace {

Formula flip(const Formula& f, Game g) {
  return f->kind == FK::Dia ? box(std::move(g), f->post) : dia(std::move(g), f->post);
}

Realizer fo(const Formula& f) {
  if (f->kind == FK::Cmp) return r_unit();
  bool d = f->kind == FK::Dia;
  const Game& g = f->game;
  switch (g->kind) {
    case GK::Test:
      if (d) return r_pair(fo(g->test), fo(f->post));
      return r_prooflam("_", g->test, fo(f->post));
    case GK::Assign: return fo(f->post);
    case GK::AssignAny: {
      if (!d) return r_numlam(g->var, fo(f->post));
      Term w = oracle_witness(nullptr, g->var, f->post);
      return r_pair(w ? r_term(w) : r_search(g->var, f->post), fo(f->post));
    }
    case GK::Choice: {
      Formula l = d ? dia(g->a, f->post) : box(g->a, f->post);
      Formula r = d ? dia(g->b, f->post) : box(g->b, f->post);
      if (!d) return r_pair(fo(l), fo(r));
      return r_if(l, r_pair(r_num(0), fo(l)), r_pair(r_num(1), fo(r)));
    }
    case GK::Seq: {
      Formula inner = d ? dia(g->b, f->post) : box(g->b, f->post);
      return fo(d ? dia(g->a, inner) : box(g->a, inner));
    }
    case GK::Dual: return fo(flip(f, g->a));
    case GK::Repeat: break;
  }
  throw std::logic_error("fo_realizer: loop in " + show(f));
}

}  // namespace

Realizer fo_realizer(const Formula& phi) { return fo(phi); }

std::string show(const Realizer& r) {
  if (!r) return "?";
  auto s = [](const Realizer& x) { return show(x); };
  switch (r->kind) {
    case RK::Unit: return "()";
    case RK::Pair: return "(" + s(r->a) + ", " + s(r->b) + ")";
    case RK::Fst: return "fst " + s(r->a);
    case RK::Snd: return "snd " + s(r->a);
    case RK::StateLam: return "state. " + s(r->a);
    case RK::NumLam:
      return "\\" + r->x + (r->y.empty() ? "" : "[" + r->y + "]") + ": Q. " + s(r->a);
    case RK::ProofLam: return "\\" + r->p + ": " + show(r->phi) + ". " + s(r->a);
    case RK::TermVal: return show(r->f);
    case RK::IfTerm:
      return "if " + show(r->phi) + " then " + s(r->a) + " else " + s(r->b);
    case RK::Ind: return "ind(" + r->p + ". " + s(r->a) + ")";
    case RK::Gen: return "gen(" + s(r->a) + "; " + r->p + ". " + s(r->b) + "; " + r->p + ". " +
                         s(r->c) + ")";
    case RK::RVar: return r->p;
    case RK::AppState: return "at(" + s(r->a) + ")";
    case RK::AppNum: return "(" + s(r->a) + " " + show(r->f) + ")";
    case RK::AppRz: return "(" + s(r->a) + " " + s(r->b) + ")";
    case RK::Remember: return "remember " + r->y + " := " + r->x + ". " + s(r->a);
    case RK::LetNum: return "let " + r->x + " := " + show(r->f) + ". " + s(r->a);
    case RK::Let: return "let " + r->p + " = " + s(r->a) + " in " + s(r->b);
    case RK::Compose: {
      std::string ren;
      for (auto& [a, b] : r->ren) ren += " " + a + "~" + b;
      return "compose{" + ren + " }(" + s(r->a) + "; " + r->p + ". " + s(r->b) + ")";
    }
    case RK::Branch:
      return "branch " + s(r->a) + " of {" + r->p + " => " + s(r->b) + " | " + r->q + " => " +
             s(r->c) + "}";
    case RK::Open:
      return "open " + s(r->a) + " as " + r->x + "[" + r->y + "] " + r->p + ". " + s(r->b);
    case RK::Search: return "search " + r->x + ". " + show(r->phi);
  }
  return "?";
}

size_t realizer_size(const Realizer& r) {
  if (!r) return 0;
  return 1 + realizer_size(r->a) + realizer_size(r->b) + realizer_size(r->c);
}

}  // namespace cgl
