#include "cgl/engine.hpp"

#include "cgl/oracle.hpp"

#include <nlohmann/json.hpp>

#include <iostream>

namespace cgl {

// Runtime values. A code value is a realizer with an environment and the
// realizer state it was created in; hypotheses keep the state they were made
// in, which is what the renamed context of the proof expects. A suspended
// composition (k set) is what Compose evaluates to: eliminating it acts on
// the inner value and pushes the continuation along.
using StP = std::shared_ptr<const State>;
struct Env;
using EnvP = std::shared_ptr<const Env>;
struct Cont;
using ContP = std::shared_ptr<const Cont>;

struct Binding {
  ValueP val;
  Realizer poly;  // Ind self reference: re-evaluated at the state of each use
  EnvP poly_env;
};

struct Env {
  std::string name;
  Binding b;
  EnvP next;
};

struct Cont {
  ContP nest;  // when set: wrap the result as a composition with this continuation
  Formula nest_full;
  std::string p;
  Realizer body;
  EnvP env;
  StP st;
  State saved;
};

struct Value {
  Realizer r;
  EnvP env;
  StP st;
  ValueP inner;
  ContP k;
  Formula full;
};

const char* outcome_name(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::Finished: return "Finished";
    case OutcomeKind::AngelViolation: return "AngelViolation";
    case OutcomeKind::DemonViolation: return "DemonViolation";
    case OutcomeKind::FuelExhausted: return "FuelExhausted";
  }
  return "?";
}

IllStructuredRealizer::IllStructuredRealizer(const std::string& pos, const std::string& msg)
    : std::runtime_error(pos + ": " + msg), position(pos) {}

Q parse_q(const std::string& text) {
  std::string t = text;
  if (t.empty()) throw std::invalid_argument("empty number");
  auto slash = t.find('/');
  auto dot = t.find('.');
  auto digits = [](const std::string& s, bool sign) {
    size_t i = sign && !s.empty() && (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  if (slash != std::string::npos) {
    std::string a = t.substr(0, slash), b = t.substr(slash + 1);
    if (!digits(a, true) || !digits(b, false)) throw std::invalid_argument("bad number " + text);
    Q q(mpz_class(a[0] == '+' ? a.substr(1) : a), mpz_class(b));
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator in " + text);
    q.canonicalize();
    return q;
  }
  if (dot != std::string::npos) {
    std::string a = t.substr(0, dot), b = t.substr(dot + 1);
    bool negative = !a.empty() && a[0] == '-';
    std::string ia = (a.empty() || a == "-" || a == "+") ? "0" : a;
    if (!digits(ia, true) || !digits(b, false)) throw std::invalid_argument("bad number " + text);
    if (ia[0] == '-' || ia[0] == '+') ia = ia.substr(1);
    mpz_class den = 1;
    for (size_t i = 0; i < b.size(); ++i) den *= 10;
    Q q(mpz_class(ia) * den + mpz_class(b), den);
    q.canonicalize();
    return negative ? Q(-q) : q;
  }
  if (!digits(t, true)) throw std::invalid_argument("bad number " + text);
  return Q(mpz_class(t[0] == '+' ? t.substr(1) : t));
}

namespace {

struct Halt {
  OutcomeKind kind;
  std::string reason;
  State st;
};

ValueP code(Realizer r, EnvP env, StP st) {
  auto v = std::make_shared<Value>();
  v->r = std::move(r);
  v->env = std::move(env);
  v->st = std::move(st);
  return v;
}

ValueP code(Realizer r, EnvP env, State st) {
  return code(std::move(r), std::move(env), std::make_shared<const State>(std::move(st)));
}

ValueP suspended(ValueP inner, ContP k, Formula full) {
  auto v = std::make_shared<Value>();
  v->inner = std::move(inner);
  v->k = std::move(k);
  v->full = std::move(full);
  return v;
}

EnvP bind(const EnvP& env, const std::string& p, ValueP v) {
  auto e = std::make_shared<Env>();
  e->name = p;
  e->b.val = std::move(v);
  e->next = env;
  return e;
}

EnvP bind_poly(const EnvP& env, const std::string& p, Realizer r, EnvP at) {
  auto e = std::make_shared<Env>();
  e->name = p;
  e->b.poly = std::move(r);
  e->b.poly_env = std::move(at);
  e->next = env;
  return e;
}

const Binding* find(const EnvP& env, const std::string& p) {
  for (const Env* e = env.get(); e; e = e->next.get())
    if (e->name == p) return &e->b;
  return nullptr;
}

std::string clip(std::string s) {
  if (s.size() > 72) s = s.substr(0, 69) + "...";
  return s;
}

// Frames of the explicit continuation stack. Configurations are immutable
// values, so one can be resumed more than once: exhaustive verification
// forks at each Demon decision instead of replaying from the root.
struct Frame;
using FrameP = std::shared_ptr<const Frame>;
struct Frame {
  enum Kind { Then, Finish, Loop, Post, Check } kind;
  Game g;  // Then: the second game; Loop: the repetition
  bool dia = true;
  ContP k;      // Finish
  int iter = 0;  // Loop: index of the next iteration
  Formula post;  // Post: the rest of the theorem; Check: the postcondition
  FrameP next;

  static Frame then(Game g, bool dia) { return make(Then, std::move(g), dia); }
  static Frame finish(ContP k) {
    Frame f = make(Finish, nullptr, true);
    f.k = std::move(k);
    return f;
  }
  static Frame loop(Game g, bool dia, int iter) {
    Frame f = make(Loop, std::move(g), dia);
    f.iter = iter;
    return f;
  }
  static Frame closing(Kind kind, Formula post) {
    Frame f = make(kind, nullptr, true);
    f.post = std::move(post);
    return f;
  }

 private:
  static Frame make(Kind kind, Game g, bool dia) {
    Frame f;
    f.kind = kind;
    f.g = std::move(g);
    f.dia = dia;
    return f;
  }
};

FrameP push(FrameP next, Frame f) {
  f.next = std::move(next);
  return std::make_shared<const Frame>(std::move(f));
}

enum class Mode { Play, Iterate, Return, Ask, Halted, Done };
enum class Ask { Branch, Value, Test, Repeat };

struct Config {
  Mode mode = Mode::Play;
  Game g;
  bool dia = true;
  ValueP v;
  State w;
  FrameP stack;
  int iter = 0;
  Ask ask = Ask::Branch;  // mode Ask: what Demon decides
  OutcomeKind halt = OutcomeKind::Finished;
  std::string reason;
  bool post_holds = true;
  long fuel = 0;
};

struct Answer {
  Side side = Side::L;
  Q value;
  TestAnswer test = TestAnswer::Assert;
  RepeatAnswer repeat = RepeatAnswer::Stop;
};

class Machine {
 public:
  explicit Machine(std::vector<std::string>& trace, bool record = true)
      : trace_(trace), record_(record) {}

  Config run(Config c);
  Config answer(Config c, const Answer& a);
  Answer ask(DemonOracle& d, const Config& c);
  ValueP whnf(ValueP v);
  ValueP demand(ValueP v);
  Witness pack(ValueP v, const std::string& x);
  std::pair<int, ValueP> select(ValueP v);
  bool truth(const Formula& phi, const State& s);
  void emit(const std::string& line) {
    if (record_) trace_.push_back(line);
  }

  Game where;  // game being played, for error positions

 private:
  long fuel_ = 1000000;
  std::vector<std::string>& trace_;
  bool record_;

  void tick() {
    if (--fuel_ < 0) throw Halt{OutcomeKind::FuelExhausted, "fuel exhausted", last_};
  }
  State last_;  // state at the latest game position
  void step_play(Config& c);
  void step_iterate(Config& c);
  void step_return(Config& c);
  void halt(Config& c, OutcomeKind k, const std::string& reason) {
    c.mode = Mode::Halted;
    c.halt = k;
    c.reason = reason;
  }
  [[noreturn]] void ill(const std::string& msg) {
    throw IllStructuredRealizer(where ? clip(show(where)) : "realizer", msg);
  }
  const std::string& shown(const Game& g) {
    auto it = shown_.find(g.get());
    if (it == shown_.end()) it = shown_.emplace(g.get(), show(g)).first;
    return it->second;
  }
  std::map<const GameNode*, std::string> shown_;
  std::map<const FormulaNode*, std::string> tests_;
  const std::string& test_text(const Formula& f) {
    auto it = tests_.find(f.get());
    if (it == tests_.end()) it = tests_.emplace(f.get(), "(" + show(f) + ")").first;
    return it->second;
  }

  ValueP finish(const ContP& k, ValueP r, const State& post);
  ValueP project(ValueP v, int i);
  ValueP apply(ValueP f, ValueP arg);
  ValueP apply_num(ValueP f, const Q& val);
  ValueP advance(ValueP v, const std::string& x, const Q& val);
  std::pair<ValueP, ValueP> pair(ValueP v);
  Q number(ValueP v);
  Q search(const std::string& x, const Formula& phi, const State& s);
  Q eval_at(const Term& f, const State& s) {
    try {
      return eval(f, s);
    } catch (const DivisionByZero&) {
      ill("division by zero in " + show(f));
    }
  }
  static std::string kind_of(const ValueP& v) {
    return v->k ? "composition over " + clip(show(v->full)) : rk_name(v->r->kind);
  }
};

ValueP Machine::finish(const ContP& k, ValueP r, const State& post) {
  if (k->nest) return suspended(std::move(r), k->nest, k->nest_full);
  State st = *k->st;
  for (auto& [x, q] : post) st[x] = q;
  for (auto& [x, q] : k->saved) st[x] = q;
  return code(k->body, bind(k->env, k->p, std::move(r)), std::move(st));
}

ContP nest(const ContP& k, Formula full) {
  auto c = std::make_shared<Cont>();
  c->nest = k;
  c->nest_full = std::move(full);
  return c;
}

ValueP Machine::whnf(ValueP v) {
  for (;;) {
    tick();
    if (v->k) return v;
    const RNode& n = *v->r;
    switch (n.kind) {
      case RK::Unit:
      case RK::Pair:
      case RK::NumLam:
      case RK::ProofLam:
      case RK::TermVal:
      case RK::Gen:
      case RK::Remember:
      case RK::StateLam:
      case RK::Search: return v;
      case RK::Fst:
      case RK::Snd: v = project(code(n.a, v->env, v->st), n.kind == RK::Fst ? 0 : 1); break;
      case RK::AppState: {
        ValueP f = whnf(code(n.a, v->env, v->st));
        v = !f->k && f->r->kind == RK::StateLam ? code(f->r->a, f->env, v->st) : f;
        break;
      }
      case RK::RVar: {
        const Binding* b = find(v->env, n.p);
        if (!b) ill("unbound realizer variable " + n.p);
        v = b->poly ? code(b->poly, b->poly_env, v->st) : b->val;
        break;
      }
      case RK::AppRz:
        v = apply(code(n.a, v->env, v->st), code(n.b, v->env, v->st));
        break;
      case RK::AppNum: v = apply_num(code(n.a, v->env, v->st), eval_at(n.f, *v->st)); break;
      case RK::IfTerm: v = code(truth(n.phi, *v->st) ? n.a : n.b, v->env, v->st); break;
      case RK::Ind: v = code(n.a, bind_poly(v->env, n.p, v->r, v->env), v->st); break;
      case RK::LetNum: {
        State st = *v->st;
        st[n.x] = eval_at(n.f, st);
        v = code(n.a, v->env, std::move(st));
        break;
      }
      case RK::Let:
        v = code(n.b, bind(v->env, n.p, code(n.a, v->env, v->st)), v->st);
        break;
      case RK::Compose: {
        auto k = std::make_shared<Cont>();
        k->p = n.p;
        k->body = n.b;
        k->env = v->env;
        k->st = v->st;
        for (auto& [x, x2] : n.ren) k->saved[x2] = lookup(*v->st, x);
        v = suspended(code(n.a, v->env, v->st), k, n.phi);
        break;
      }
      case RK::Branch: {
        auto [s, rest] = select(code(n.a, v->env, v->st));
        v = code(s == 0 ? n.b : n.c, bind(v->env, s == 0 ? n.p : n.q, rest), v->st);
        break;
      }
      case RK::Open: {
        Witness w = pack(code(n.a, v->env, v->st), n.x);
        State st = *v->st;
        if (!n.y.empty()) st[n.y] = lookup(st, n.x);
        st[n.x] = w.value;
        v = code(n.b, bind(v->env, n.p, w.rest), std::move(st));
        break;
      }
    }
  }
}

// whnf, then look through the state boundaries a demanded shape does not
// care about
ValueP Machine::demand(ValueP v) {
  for (;;) {
    v = whnf(std::move(v));
    if (v->k) return v;
    const RNode& n = *v->r;
    if (n.kind == RK::Remember) {
      State st = *v->st;
      if (!n.y.empty()) st[n.y] = lookup(st, n.x);
      v = code(n.a, v->env, std::move(st));
    } else if (n.kind == RK::StateLam) {
      v = code(n.a, v->env, v->st);
    } else {
      return v;
    }
  }
}

ValueP Machine::project(ValueP v, int i) {
  v = demand(std::move(v));
  if (v->k) {
    const Formula& f = v->full;
    if (!f || f->kind == FK::Cmp) ill("projection from an untyped composition");
    const Game& g = f->game;
    if (f->kind == FK::Dia && g->kind == GK::Test)
      return i == 0 ? project(v->inner, 0) : finish(v->k, project(v->inner, 1), {});
    if (f->kind == FK::Box && g->kind == GK::Choice)
      return suspended(project(v->inner, i), v->k, box(i == 0 ? g->a : g->b, f->post));
    if (f->kind == FK::Box && g->kind == GK::Repeat) {
      if (i == 0) return finish(v->k, project(v->inner, 0), {});
      return suspended(project(v->inner, 1), nest(v->k, f), box(g->a, f));
    }
    ill("projection from " + kind_of(v));
  }
  const RNode& n = *v->r;
  if (n.kind == RK::Pair) return code(i == 0 ? n.a : n.b, v->env, v->st);
  if (n.kind == RK::Gen) {
    ValueP init = code(n.a, v->env, v->st);
    EnvP env = bind(v->env, n.p, init);
    if (i == 0) return code(n.c, env, v->st);
    std::string q = n.p + "'";
    auto k = std::make_shared<Cont>();
    k->p = q;
    k->body = r_gen(r_var(q), n.p, n.b, n.c, n.phi);
    k->env = v->env;
    k->st = v->st;
    Formula full = n.phi && n.phi->kind == FK::Box ? box(n.phi->game->a, n.phi) : nullptr;
    return suspended(code(n.b, env, v->st), k, full);
  }
  ill("projection from " + kind_of(v));
}

ValueP Machine::apply(ValueP f, ValueP arg) {
  f = demand(std::move(f));
  if (f->k) {
    if (!f->full || f->full->kind != FK::Box || f->full->game->kind != GK::Test)
      ill("application of " + kind_of(f));
    return finish(f->k, apply(f->inner, std::move(arg)), {});
  }
  if (f->r->kind != RK::ProofLam) ill("application of " + kind_of(f));
  return code(f->r->a, bind(f->env, f->r->p, std::move(arg)), f->st);
}

ValueP Machine::apply_num(ValueP f, const Q& val) {
  f = demand(std::move(f));
  if (f->k) {
    if (!f->full || f->full->kind != FK::Box || f->full->game->kind != GK::AssignAny)
      ill("numeric application of " + kind_of(f));
    return finish(f->k, apply_num(f->inner, val), {{f->full->game->var, val}});
  }
  const RNode& n = *f->r;
  if (n.kind != RK::NumLam) ill("numeric application of " + kind_of(f));
  State st = *f->st;
  if (!n.y.empty()) st[n.y] = lookup(st, n.x);
  st[n.x] = val;
  return code(n.a, f->env, std::move(st));
}

// the realizer of what follows an assignment x := val, at the new state
ValueP Machine::advance(ValueP v, const std::string& x, const Q& val) {
  v = whnf(std::move(v));
  if (v->k) return v;
  State st = *v->st;
  const RNode& n = *v->r;
  if (n.kind == RK::Remember) {
    if (!n.y.empty()) st[n.y] = lookup(st, n.x);
    st[x] = val;
    return code(n.a, v->env, std::move(st));
  }
  st[x] = val;
  return code(v->r, v->env, std::move(st));
}

std::pair<ValueP, ValueP> Machine::pair(ValueP v) {
  v = demand(std::move(v));
  if (v->k || v->r->kind != RK::Pair) ill("expected a pair, got " + kind_of(v));
  return {code(v->r->a, v->env, v->st), code(v->r->b, v->env, v->st)};
}

Q Machine::number(ValueP v) {
  v = demand(std::move(v));
  if (!v->k && v->r->kind == RK::TermVal) return eval_at(v->r->f, *v->st);
  if (!v->k && v->r->kind == RK::Search) return search(v->r->x, v->r->phi, *v->st);
  ill("expected a number, got " + kind_of(v));
}

Q Machine::search(const std::string& x, const Formula& phi, const State& s) {
  std::vector<Q> cands;
  for (long n = 0; n <= 64; ++n) {
    cands.emplace_back(n);
    if (n) cands.emplace_back(-n);
  }
  for (long d : {2, 3, 4, 5, 10})
    for (long n = -4 * d; n <= 4 * d; ++n) {
      Q q(n, d);
      q.canonicalize();
      if (q.get_den() != 1) cands.push_back(q);
    }
  for (auto& c : cands) {
    State t = s;
    t[x] = c;
    if (truth(phi, t)) return c;
  }
  ill("no witness for " + x + " in " + show(phi));
}

bool Machine::truth(const Formula& phi, const State& s) {
  try {
    return holds(phi, s);
  } catch (const NotGround&) {
  } catch (const DivisionByZero& e) {
    ill("division by zero in " + show(e.at));
  }
  Formula rho = tt();
  for (auto& v : free_vars(phi)) rho = land(rho, cmp(var(v), Rel::Eq, lit(lookup(s, v))));
  if (oracle_valid(rho, phi)) return true;
  if (oracle_valid(rho, lnot(phi))) return false;
  ill("cannot decide " + show(phi) + " at " + state_str(s));
}

Witness Machine::pack(ValueP v, const std::string& x) {
  v = demand(std::move(v));
  if (v->k) {
    const Formula& f = v->full;
    if (!f || f->kind != FK::Dia || f->game->kind != GK::AssignAny) ill("unpack of " + kind_of(v));
    Witness w = pack(v->inner, x);
    w.rest = finish(v->k, w.rest, {{x, w.value}});
    return w;
  }
  if (v->r->kind != RK::Pair) ill("expected a witness pair, got " + kind_of(v));
  Witness w;
  ValueP head = demand(code(v->r->a, v->env, v->st));
  if (!head->k && head->r->kind == RK::TermVal) w.term = head->r->f;
  w.value = number(head);
  w.rest = advance(code(v->r->b, v->env, v->st), x, w.value);
  return w;
}

std::pair<int, ValueP> Machine::select(ValueP v) {
  v = demand(std::move(v));
  if (v->k) {
    const Formula& f = v->full;
    if (f && f->kind == FK::Dia && f->game->kind == GK::Choice) {
      auto [s, rest] = select(v->inner);
      return {s, suspended(rest, v->k, cgl::dia(s == 0 ? f->game->a : f->game->b, f->post))};
    }
    if (f && f->kind == FK::Dia && f->game->kind == GK::Repeat) {
      auto [s, rest] = select(v->inner);
      if (s == 0) return {0, finish(v->k, rest, {})};
      return {1, suspended(rest, nest(v->k, f), cgl::dia(f->game->a, f))};
    }
    ill("selector of " + kind_of(v));
  }
  auto [sel, rest] = pair(v);
  Q k = number(sel);
  if (k != 0 && k != 1) ill("selector " + show(k) + " is neither 0 nor 1");
  return {k == 0 ? 0 : 1, rest};
}

void Machine::step_play(Config& c) {
  where = c.g;
  const Game g = c.g;
  ValueP h = g->kind == GK::Assign ? whnf(std::move(c.v)) : demand(std::move(c.v));
  if (h->k) {
    // a composition over g itself: play the inner strategy, then continue.
    // One over a prefix of g was reached through an erased sequence or dual.
    const Formula& f = h->full;
    if (!f || (f->kind == (c.dia ? FK::Dia : FK::Box) && same(f->game, g))) {
      c.stack = push(c.stack, Frame::finish(h->k));
      c.v = h->inner;
      return;
    }
    if (g->kind == GK::Dual) {
      c.g = g->a;
      c.dia = !c.dia;
      c.v = h;
      return;
    }
    if (g->kind != GK::Seq) ill("composition over " + clip(show(f)) + " played as " + clip(show(g)));
  }
  c.v = h;
  switch (g->kind) {
    case GK::Test: {
      if (!c.dia) {
        c.mode = Mode::Ask;
        c.ask = Ask::Test;
        return;
      }
      const std::string& t = test_text(g->test);
      auto [ev, rest] = pair(h);
      bool ok = truth(g->test, c.w);
      if (record_) emit("angel-test " + t + (ok ? " pass" : " fail"));
      if (!ok) return halt(c, OutcomeKind::AngelViolation, "angel-test " + t + " fail");
      c.v = rest;
      c.mode = Mode::Return;
      return;
    }
    case GK::Assign: {
      Q val = eval_at(g->term, c.w);
      if (record_) emit("assign " + g->var + " " + show(val));
      c.w[g->var] = val;
      c.v = advance(h, g->var, val);
      c.mode = Mode::Return;
      return;
    }
    case GK::AssignAny: {
      if (!c.dia) {
        c.mode = Mode::Ask;
        c.ask = Ask::Value;
        return;
      }
      Witness wit = pack(h, g->var);
      if (record_) emit("angel-choose " + g->var + " " + show(wit.value));
      c.w[g->var] = wit.value;
      c.v = wit.rest;
      c.mode = Mode::Return;
      return;
    }
    case GK::Choice: {
      if (!c.dia) {
        c.mode = Mode::Ask;
        c.ask = Ask::Branch;
        return;
      }
      auto [s, rest] = select(h);
      if (record_) emit(std::string("angel-branch ") + (s == 0 ? "L" : "R"));
      c.g = s == 0 ? g->a : g->b;
      c.v = rest;
      return;
    }
    case GK::Seq:
      c.stack = push(c.stack, Frame::then(g->b, c.dia));
      c.g = g->a;
      return;
    case GK::Dual:
      c.g = g->a;
      c.dia = !c.dia;
      return;
    case GK::Repeat:
      c.mode = Mode::Iterate;
      c.iter = 0;
      return;
  }
  ill("unknown game");
}

// c.g is the repetition, c.v the realizer of its next round
void Machine::step_iterate(Config& c) {
  where = c.g;
  if (c.iter > 0) {
    c.v = demand(std::move(c.v));
    if (c.v->k) {
      c.mode = Mode::Play;
      return;
    }
  }
  if (!c.dia) {
    c.mode = Mode::Ask;
    c.ask = Ask::Repeat;
    return;
  }
  auto [s, rest] = select(c.v);
  c.v = rest;
  if (s == 0) {
    if (record_) emit("angel-stop");
    c.mode = Mode::Return;
    return;
  }
  if (record_) emit("angel-repeat");
  c.stack = push(c.stack, Frame::loop(c.g, c.dia, c.iter + 1));
  c.g = c.g->a;
  c.mode = Mode::Play;
}

void Machine::step_return(Config& c) {
  if (!c.stack) {
    c.mode = Mode::Done;
    return;
  }
  const Frame f = *c.stack;
  c.stack = f.next;
  switch (f.kind) {
    case Frame::Then:
      c.g = f.g;
      c.dia = f.dia;
      c.mode = Mode::Play;
      return;
    case Frame::Finish: c.v = finish(f.k, std::move(c.v), c.w); return;
    case Frame::Loop:
      c.g = f.g;
      c.dia = f.dia;
      c.iter = f.iter;
      c.mode = Mode::Iterate;
      return;
    case Frame::Post:
      if (f.post->kind != FK::Cmp) {
        c.stack = push(c.stack, Frame::closing(Frame::Post, f.post->post));
        c.g = f.post->game;
        c.dia = f.post->kind == FK::Dia;
        c.mode = Mode::Play;
        return;
      }
      [[fallthrough]];
    case Frame::Check:
      c.post_holds = truth(f.post, c.w);
      if (record_) emit("post " + test_text(f.post) + (c.post_holds ? " true" : " false"));
      c.mode = Mode::Done;
      return;
  }
}

Config Machine::run(Config c) {
  fuel_ = c.fuel;
  try {
    for (;;) {
      if (c.mode == Mode::Play) {
        tick();
        last_ = c.w;
        step_play(c);
      } else if (c.mode == Mode::Iterate) {
        tick();
        last_ = c.w;
        step_iterate(c);
      } else if (c.mode == Mode::Return) {
        step_return(c);
      } else {
        break;
      }
    }
  } catch (const Halt& h) {
    halt(c, h.kind, h.reason);
    c.w = h.st;
  }
  c.fuel = fuel_;
  return c;
}

Config Machine::answer(Config c, const Answer& a) {
  fuel_ = c.fuel;
  last_ = c.w;
  where = c.g;
  const Game g = c.g;
  try {
    switch (c.ask) {
      case Ask::Test: {
        const std::string& t = test_text(g->test);
        if (a.test == TestAnswer::Concede) {
          if (record_) emit("demon-test " + t + " concede");
          halt(c, OutcomeKind::DemonViolation, "demon-test " + t + " concede");
          break;
        }
        if (record_) emit("demon-test " + t + " assert");
        if (!truth(g->test, c.w)) {
          if (record_) emit("demon-test " + t + " invalid");
          halt(c, OutcomeKind::DemonViolation, "demon-test " + t + " invalid");
          break;
        }
        c.v = apply(std::move(c.v), code(fo_realizer(g->test), nullptr, c.w));
        c.mode = Mode::Return;
        break;
      }
      case Ask::Value:
        if (record_) emit("demon-choose " + g->var + " " + show(a.value));
        c.w[g->var] = a.value;
        c.v = apply_num(std::move(c.v), a.value);
        c.mode = Mode::Return;
        break;
      case Ask::Branch: {
        int i = a.side == Side::L ? 0 : 1;
        if (record_) emit(std::string("demon-branch ") + (i == 0 ? "L" : "R"));
        c.v = project(std::move(c.v), i);
        c.g = i == 0 ? g->a : g->b;
        c.mode = Mode::Play;
        break;
      }
      case Ask::Repeat:
        if (a.repeat == RepeatAnswer::Stop) {
          if (record_) emit("demon-stop");
          c.v = project(std::move(c.v), 0);
          c.mode = Mode::Return;
          break;
        }
        if (record_) emit("demon-repeat");
        c.v = project(std::move(c.v), 1);
        c.stack = push(c.stack, Frame::loop(g, c.dia, c.iter + 1));
        c.g = g->a;
        c.mode = Mode::Play;
        break;
    }
  } catch (const Halt& h) {
    halt(c, h.kind, h.reason);
    c.w = h.st;
  }
  c.fuel = fuel_;
  return c;
}

Answer Machine::ask(DemonOracle& d, const Config& c) {
  Answer a;
  switch (c.ask) {
    case Ask::Test: a.test = d.assert_test(c.g->test, c.w); break;
    case Ask::Value: a.value = d.choose_value(c.g->var, c.w); break;
    case Ask::Branch: a.side = d.choose_branch(shown(c.g), c.w); break;
    case Ask::Repeat: a.repeat = d.continue_repeat(c.w, c.iter); break;
  }
  return a;
}

Outcome outcome_of(const Config& c) {
  Outcome o;
  o.state = c.w;
  if (c.mode == Mode::Halted) {
    o.kind = c.halt;
    o.reason = c.reason;
  } else {
    o.residual = c.v;
    o.post_holds = c.post_holds;
  }
  return o;
}

// Runs a configuration to the end, asking the oracle at each decision.
Outcome drive(Config c, DemonOracle& d, bool record) {
  std::vector<std::string> trace;
  Machine m(trace, record);
  try {
    for (c = m.run(std::move(c)); c.mode == Mode::Ask; c = m.run(m.answer(c, m.ask(d, c)))) {
    }
  } catch (IllStructuredRealizer& e) {
    e.trace = trace;
    throw;
  }
  Outcome o = outcome_of(c);
  o.trace = std::move(trace);
  return o;
}

Config start_formula(const Formula& phi, const Realizer& a, const State& omega, long fuel) {
  Config c;
  c.mode = Mode::Return;
  c.v = code(a, nullptr, omega);
  c.w = omega;
  c.stack = push(nullptr, Frame::closing(Frame::Post, phi));
  c.fuel = fuel;
  return c;
}

Config start_game(const Game& alpha, bool dia, const Realizer& a, const State& omega,
                  const Formula& post, long fuel) {
  Config c;
  c.g = alpha;
  c.dia = dia;
  c.v = code(a, nullptr, omega);
  c.w = omega;
  if (post) c.stack = push(nullptr, Frame::closing(Frame::Check, post));
  c.fuel = fuel;
  return c;
}

}  // namespace

Outcome play_formula(const Formula& phi, const Realizer& a, const State& omega,
                     DemonOracle& demon, long fuel) {
  return drive(start_formula(phi, a, omega, fuel), demon, true);
}

Outcome play(const Game& alpha, Role role, const Realizer& a, const State& omega,
             DemonOracle& demon, long fuel) {
  return drive(start_game(alpha, role == Role::AngelActive, a, omega, nullptr, fuel), demon, true);
}

bool angel_wins(const Outcome& o) {
  return o.kind == OutcomeKind::DemonViolation ||
         (o.kind == OutcomeKind::Finished && o.post_holds);
}

namespace {

// Depth-first over Demon's decisions, forking the configuration at each one.
// Decision indices follow ReplayDemon, so a losing path is replayed once
// with the trace on.
struct Explorer {
  const Menu& menu;
  Machine& m;
  VerifyResult& res;
  const LeafHook& hook;
  const State& start;
  std::vector<int> path;
  bool lost = false;

  int arity(const Config& c) const {
    switch (c.ask) {
      case Ask::Branch: return 2;
      case Ask::Value: return static_cast<int>(menu.values_for(c.g->var).size());
      case Ask::Test: return 1;
      case Ask::Repeat: return c.iter >= menu.depth ? 1 : 2;
    }
    return 0;
  }

  Answer nth(const Config& c, int i) const {
    Answer a;
    switch (c.ask) {
      case Ask::Branch: a.side = i == 0 ? Side::L : Side::R; break;
      case Ask::Value: a.value = menu.values_for(c.g->var)[i]; break;
      case Ask::Test: break;
      case Ask::Repeat: a.repeat = i == 0 ? RepeatAnswer::Stop : RepeatAnswer::Continue; break;
    }
    return a;
  }

  void explore(Config c) {
    c = m.run(std::move(c));
    if (c.mode != Mode::Ask) {
      ++res.leaves;
      Outcome o = outcome_of(c);
      if (hook) hook(start, o);
      if (!angel_wins(o)) lost = true;
      return;
    }
    int n = arity(c);
    if (n == 0) throw std::runtime_error("menu has no values for " + c.g->var);
    // ReplayDemon takes no index for a test
    bool indexed = c.ask != Ask::Test;
    for (int i = 0; i < n && !lost; ++i) {
      if (indexed) path.push_back(i);
      explore(m.answer(c, nth(c, i)));
      if (!lost && indexed) path.pop_back();
    }
  }
};

template <class Start>
VerifyResult enumerate(const std::vector<State>& states, const Menu& menu, const LeafHook& hook,
                       Start start) {
  VerifyResult res;
  std::vector<std::string> quiet;
  Machine m(quiet, false);
  for (auto& s : states) {
    Explorer dfs{menu, m, res, hook, s, {}};
    try {
      dfs.explore(start(s));
    } catch (IllStructuredRealizer&) {
      // replay the failing path with the trace on
      ReplayDemon again(menu, dfs.path);
      drive(start(s), again, true);
      throw;
    }
    if (dfs.lost) {
      ReplayDemon again(menu, dfs.path);
      res.all_win = false;
      res.counterexample = drive(start(s), again, true);
      if (angel_wins(*res.counterexample))
        throw std::logic_error("verify: replay of a losing path won");
      res.start = s;
      return res;
    }
  }
  return res;
}

}  // namespace

VerifyResult verify_exhaustive(const Game& alpha, Role role, const Realizer& a,
                               const std::vector<State>& states, const Formula& post,
                               const Menu& menu, long fuel, const LeafHook& hook) {
  return enumerate(states, menu, hook, [&](const State& s) {
    return start_game(alpha, role == Role::AngelActive, a, s, post, fuel);
  });
}

VerifyResult verify_formula(const Formula& phi, const Realizer& a,
                            const std::vector<State>& states, const Menu& menu, long fuel,
                            const LeafHook& hook) {
  return enumerate(states, menu, hook,
                   [&](const State& s) { return start_formula(phi, a, s, fuel); });
}

Outcome play_random(const Formula& phi, const Realizer& a, const State& omega, uint64_t seed,
                    const Menu& menu, long fuel) {
  std::vector<int> prefix;
  Outcome last;
  for (int tries = 0; tries < 100000; ++tries) {
    ReplayDemon d(menu, prefix);
    d.seed = seed;
    last = play_formula(phi, a, omega, d, fuel);
    if (last.kind != OutcomeKind::DemonViolation) return last;
    int i = static_cast<int>(d.taken.size()) - 1;
    while (i >= 0 && d.taken[i] + 1 >= d.arity[i]) --i;
    if (i < 0) break;
    prefix.assign(d.taken.begin(), d.taken.begin() + i);
    prefix.push_back(d.taken[i] + 1);
  }
  return last;
}

// ---- oracles

ScriptDemon ScriptDemon::from_text(const std::string& text) {
  std::vector<std::string> toks;
  std::string cur;
  bool comment = false;
  for (char c : text) {
    if (c == '#') comment = true;
    if (c == '\n') comment = false;
    if (comment || isspace(static_cast<unsigned char>(c)) || c == ',') {
      if (!cur.empty()) toks.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) toks.push_back(cur);
  return ScriptDemon(std::move(toks));
}

std::string ScriptDemon::take(const std::string& what) {
  if (next >= tokens.size()) throw ScriptExhausted("demon script exhausted at " + what);
  return tokens[next++];
}

Side ScriptDemon::choose_branch(const std::string& context, const State&) {
  std::string t = take("branch " + context);
  if (t == "L" || t == "l") return Side::L;
  if (t == "R" || t == "r") return Side::R;
  throw ScriptExhausted("demon script token " + std::to_string(next) + ": expected L or R, got " +
                        t);
}

Q ScriptDemon::choose_value(const std::string& x, const State&) {
  std::string t = take("value of " + x);
  try {
    return parse_q(t);
  } catch (const std::invalid_argument&) {
    throw ScriptExhausted("demon script token " + std::to_string(next) +
                          ": expected a number, got " + t);
  }
}

TestAnswer ScriptDemon::assert_test(const Formula&, const State&) {
  if (next < tokens.size() && tokens[next] == "concede") {
    ++next;
    return TestAnswer::Concede;
  }
  if (next < tokens.size() && tokens[next] == "assert") ++next;
  return TestAnswer::Assert;
}

RepeatAnswer ScriptDemon::continue_repeat(const State&, int iteration) {
  std::string t = take("repetition " + std::to_string(iteration));
  if (t == "stop") return RepeatAnswer::Stop;
  if (t == "continue" || t == "repeat") return RepeatAnswer::Continue;
  throw ScriptExhausted("demon script token " + std::to_string(next) +
                        ": expected stop or continue, got " + t);
}

std::string InteractiveDemon::ask(const std::string& prompt,
                                  const std::vector<std::string>& accept) {
  for (;;) {
    out << "? " << prompt << "\n" << std::flush;
    std::string line;
    if (!std::getline(in, line)) throw ScriptExhausted("end of input at: " + prompt);
    auto b = line.find_first_not_of(" \t\r");
    auto e = line.find_last_not_of(" \t\r");
    line = b == std::string::npos ? "" : line.substr(b, e - b + 1);
    if (accept.empty()) {
      try {
        parse_q(line);
        return line;
      } catch (const std::invalid_argument&) {
      }
    }
    for (auto& a : accept)
      if (line == a) return line;
    out << "! unrecognized answer: " << line << "\n";
  }
}

Side InteractiveDemon::choose_branch(const std::string& context, const State& s) {
  return ask("demon branch " + context + " at " + state_str(s) + " [L/R]", {"L", "R"}) == "L"
             ? Side::L
             : Side::R;
}

Q InteractiveDemon::choose_value(const std::string& x, const State& s) {
  return parse_q(ask("demon value " + x + " at " + state_str(s) + " [number]", {}));
}

TestAnswer InteractiveDemon::assert_test(const Formula& phi, const State& s) {
  return ask("demon test (" + show(phi) + ") at " + state_str(s) + " [assert/concede]",
             {"assert", "concede"}) == "assert"
             ? TestAnswer::Assert
             : TestAnswer::Concede;
}

RepeatAnswer InteractiveDemon::continue_repeat(const State& s, int iteration) {
  return ask("demon repeat " + std::to_string(iteration) + " at " + state_str(s) +
                 " [continue/stop]",
             {"continue", "stop"}) == "continue"
             ? RepeatAnswer::Continue
             : RepeatAnswer::Stop;
}

const std::vector<Q>& Menu::values_for(const std::string& x) const {
  auto it = values.find(x);
  return it == values.end() ? fallback : it->second;
}

Menu Menu::standard() {
  Menu m;
  for (long n = -1; n <= 2; ++n) m.fallback.emplace_back(n);
  for (long n = 1; n <= 9; ++n) {
    Q q(n, 10);
    q.canonicalize();
    m.fallback.push_back(q);
  }
  m.fallback.push_back(Q(1, 3));
  m.fallback.push_back(Q(2, 3));
  return m;
}

namespace {

Menu read_menu(const std::string& text) {
  using nlohmann::json;
  json j = json::parse(text);
  auto num = [](const json& v) -> Q {
    if (v.is_number_integer()) return Q(v.get<long>());
    if (v.is_string()) return parse_q(v.get<std::string>());
    throw std::runtime_error("menu: values are integers or strings like \"1/3\"");
  };
  Menu m = Menu::standard();
  if (!j.is_object()) throw std::runtime_error("menu: expected an object");
  if (j.contains("depth")) m.depth = j.at("depth").get<int>();
  if (j.contains("values"))
    for (auto& [x, vs] : j.at("values").items()) {
      std::vector<Q> qs;
      for (auto& v : vs) qs.push_back(num(v));
      m.values[x] = qs;
    }
  if (j.contains("fallback")) {
    m.fallback.clear();
    for (auto& v : j.at("fallback")) m.fallback.push_back(num(v));
  }
  if (j.contains("states"))
    for (auto& s : j.at("states")) {
      State st;
      for (auto& [x, v] : s.items()) st[x] = num(v);
      m.states.push_back(st);
    }
  return m;
}

}  // namespace

Menu Menu::from_json(const std::string& text) {
  try {
    return read_menu(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("menu: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("menu: ") + e.what());
  }
}

int ReplayDemon::pick(int n) {
  size_t pos = taken.size();
  int i = pos < prefix.size() ? prefix[pos] : 0;
  taken.push_back(i);
  arity.push_back(n);
  if (!seed || n <= 1) return i;
  // splitmix64 of (seed, position)
  uint64_t z = *seed + 0x9e3779b97f4a7c15ULL * (pos + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return static_cast<int>((i + z % static_cast<uint64_t>(n)) % static_cast<uint64_t>(n));
}

Side ReplayDemon::choose_branch(const std::string&, const State&) {
  return pick(2) == 0 ? Side::L : Side::R;
}

Q ReplayDemon::choose_value(const std::string& x, const State&) {
  const auto& vs = menu.values_for(x);
  if (vs.empty()) throw std::runtime_error("menu has no values for " + x);
  return vs[pick(static_cast<int>(vs.size()))];
}

TestAnswer ReplayDemon::assert_test(const Formula&, const State&) { return TestAnswer::Assert; }

RepeatAnswer ReplayDemon::continue_repeat(const State&, int iteration) {
  if (iteration >= menu.depth) {
    pick(1);
    return RepeatAnswer::Stop;
  }
  return pick(2) == 0 ? RepeatAnswer::Stop : RepeatAnswer::Continue;
}

// ---- extraction hooks

ValueP value_of(const Realizer& a, const State& s) { return code(a, nullptr, s); }

Witness force_witness(const ValueP& v, const std::string& x) {
  std::vector<std::string> scratch;
  Machine m(scratch);
  try {
    return m.pack(v, x);
  } catch (const Halt& h) {
    throw IllStructuredRealizer("witness", h.reason);
  }
}

Selection force_selector(const ValueP& v) {
  std::vector<std::string> scratch;
  Machine m(scratch);
  try {
    auto [s, rest] = m.select(v);
    return {s == 0 ? Side::L : Side::R, rest};
  } catch (const Halt& h) {
    throw IllStructuredRealizer("selector", h.reason);
  }
}

std::string show(const ValueP& v) {
  if (!v) return "-";
  if (v->k) return "compose(" + show(v->inner) + ")";
  return show(v->r);
}

}  // namespace cgl
