#include "cgl/parser.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <sstream>

namespace cgl {

ParseError::ParseError(int l, int c, const std::string& msg, std::vector<std::string> exp)
    : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg),
      line(l), col(c), expected(std::move(exp)) {}

const Definition* ProofScript::find(const std::string& name) const {
  for (auto& d : defs)
    if (d.name == name) return &d;
  return nullptr;
}

std::vector<const Definition*> ProofScript::theorems() const {
  std::vector<const Definition*> out;
  for (auto& d : defs)
    if (d.kind == DefKind::Theorem) out.push_back(&d);
  return out;
}

namespace {

enum class T { Ident, Num, Sym, End };

struct Tok {
  T kind;
  std::string text;
  int line, col;
};

// unicode aliases are rewritten to their ASCII spelling
const std::pair<const char*, const char*> kUnicode[] = {
    {"⟨", "<"},  {"⟩", ">"},   {"∪", "++"},  {"∩", "cap"},     {"∧", "&&"},     {"∨", "||"},
    {"¬", "!"},  {"→", "->"},  {"↔", "<->"}, {"≤", "<="},      {"≥", ">="},     {"≠", "!="},
    {"λ", "\\"}, {"∀", "forall"}, {"∃", "exists"}, {"⇒", "=>"}, {"≻", "succ"}, {"÷", "div"},
    {"·", "*"},
};

const char* kSyms[] = {"<->", "->", "&&", "||", "<=", ">=", "!=", ":=", "++", "=>", "^d",
                       "<",   ">",  "=",  "!",  "(",  ")",  "{",  "}",  "[",  "]",  ",",
                       ";",   ".",  ":",  "?",  "*",  "+",  "-",  "/",  "\\", "|",  "~"};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Tok> lex(const std::string& s) {
  std::vector<Tok> out;
  size_t i = 0;
  int line = 1, col = 1;
  auto adv = [&](size_t n) {
    for (size_t k = 0; k < n; k++) {
      if (s[i] == '\n') {
        line++;
        col = 1;
      } else if ((static_cast<unsigned char>(s[i]) & 0xC0) != 0x80) {
        col++;
      }
      i++;
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      adv(1);
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < s.size() && s[i + 1] == '/')) {
      while (i < s.size() && s[i] != '\n') adv(1);
      continue;
    }
    int l = line, cl = col;
    if (ident_start(c)) {
      size_t j = i;
      while (j < s.size() && ident_char(s[j])) j++;
      out.push_back({T::Ident, s.substr(i, j - i), l, cl});
      adv(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) j++;
      if (j + 1 < s.size() && s[j] == '.' && std::isdigit(static_cast<unsigned char>(s[j + 1]))) {
        j++;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) j++;
      }
      out.push_back({T::Num, s.substr(i, j - i), l, cl});
      adv(j - i);
      continue;
    }
    bool matched = false;
    if (static_cast<unsigned char>(c) >= 0x80) {
      for (auto& [u, a] : kUnicode) {
        size_t n = std::strlen(u);
        if (s.compare(i, n, u) == 0) {
          T k = ident_start(a[0]) ? T::Ident : T::Sym;
          out.push_back({k, a, l, cl});
          adv(n);
          matched = true;
          break;
        }
      }
    } else {
      for (auto* sym : kSyms) {
        size_t n = std::strlen(sym);
        if (s.compare(i, n, sym) == 0) {
          out.push_back({T::Sym, sym, l, cl});
          adv(n);
          matched = true;
          break;
        }
      }
    }
    if (!matched) throw ParseError(l, cl, std::string("unexpected character '") + c + "'");
  }
  out.push_back({T::End, "<end of input>", line, col});
  return out;
}

Q parse_number(const std::string& s) {
  auto dot = s.find('.');
  if (dot == std::string::npos) return Q(mpz_class(s));
  std::string frac = s.substr(dot + 1);
  mpz_class den = 1;
  for (size_t k = 0; k < frac.size(); k++) den *= 10;
  Q q(mpz_class(s.substr(0, dot) + frac), den);
  q.canonicalize();
  return q;
}

const char* kTermKeywords[] = {"div", "mod", "abs", "min", "max", "in", "succ", "cap",
                               "true", "false", "forall", "exists"};
const char* kTop[] = {"game", "formula", "proof", "theorem"};

bool is_term_keyword(const std::string& s) {
  for (auto* k : kTermKeywords)
    if (s == k) return true;
  for (auto* k : kTop)
    if (s == k) return true;
  return false;
}

bool is_rel(const std::string& s) {
  return s == "<=" || s == "<" || s == "=" || s == "!=" || s == ">" || s == ">=";
}

Rel to_rel(const std::string& s) {
  if (s == "<=") return Rel::Le;
  if (s == "<") return Rel::Lt;
  if (s == "=") return Rel::Eq;
  if (s == "!=") return Rel::Ne;
  if (s == ">") return Rel::Gt;
  return Rel::Ge;
}

class Parser {
 public:
  Parser(std::vector<Tok> toks, const ProofScript* defs) : toks_(std::move(toks)), defs_(defs) {}

  const Tok& peek(size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at(const std::string& s, size_t k = 0) const {
    auto& t = peek(k);
    return t.kind != T::End && t.kind != T::Num && t.text == s;
  }
  bool at_end() const { return peek().kind == T::End; }
  bool accept(const std::string& s) {
    if (!at(s)) return false;
    pos_++;
    return true;
  }
  [[noreturn]] void fail(std::vector<std::string> exp) const {
    auto& t = peek();
    std::string msg = "expected ";
    for (size_t i = 0; i < exp.size(); i++) msg += (i ? " or " : "") + exp[i];
    msg += ", got '" + t.text + "'";
    throw ParseError(t.line, t.col, msg, exp);
  }
  void expect(const std::string& s) {
    if (!accept(s)) fail({"'" + s + "'"});
  }
  std::string ident(const char* what = "identifier") {
    if (peek().kind != T::Ident) fail({what});
    return toks_[pos_++].text;
  }

  // terms

  bool term_start(size_t k = 0) const {
    auto& t = peek(k);
    if (t.kind == T::Num) return true;
    if (t.kind == T::Ident)
      return !is_term_keyword(t.text) || t.text == "abs" || t.text == "min" || t.text == "max";
    return t.text == "(" || t.text == "-";
  }

  Term term() {
    Term t = mul();
    for (;;) {
      if (accept("+")) t = plus(t, mul());
      else if (accept("-")) t = minus(t, mul());
      else return t;
    }
  }

  Term mul() {
    Term t = unary();
    for (;;) {
      if (at("*") && term_start(1)) {
        pos_++;
        t = times(t, unary());
      } else if (accept("div")) {
        t = div_(t, unary());
      } else if (accept("mod")) {
        t = mod_(t, unary());
      } else {
        return t;
      }
    }
  }

  Q number() {
    Q q = parse_number(toks_[pos_++].text);
    if (at("/") && peek(1).kind == T::Num) {
      pos_++;
      Q d = parse_number(toks_[pos_++].text);
      if (d == 0) throw ParseError(peek().line, peek().col, "zero denominator in literal");
      q /= d;
    }
    return q;
  }

  Term unary() {
    if (at("-")) {
      pos_++;
      if (peek().kind == T::Num) return lit(-number());
      return neg(unary());
    }
    return tatom();
  }

  Term tatom() {
    auto& t = peek();
    if (t.kind == T::Num) return lit(number());
    if (accept("(")) {
      Term r = term();
      expect(")");
      return r;
    }
    if (t.kind == T::Ident) {
      if (t.text == "abs") {
        pos_++;
        expect("(");
        Term a = term();
        expect(")");
        return abs_(a);
      }
      if (t.text == "min" || t.text == "max") {
        bool mn = t.text == "min";
        pos_++;
        expect("(");
        Term a = term();
        expect(",");
        Term b = term();
        expect(")");
        return mn ? min_(a, b) : max_(a, b);
      }
      if (!is_term_keyword(t.text)) {
        pos_++;
        return var(t.text);
      }
    }
    fail({"term"});
  }

  // games

  Game game() {
    Game g = seqg();
    if (accept("++")) return choice(g, game());
    if (accept("cap")) return cap(g, game());
    return g;
  }

  Game seqg() {
    Game g = postg();
    if (accept(";")) return seq(g, seqg());
    return g;
  }

  Game postg() {
    Game g = gatom();
    for (;;) {
      if (accept("*")) g = star(g);
      else if (accept("^d")) g = dual(g);
      else return g;
    }
  }

  Game gatom() {
    if (accept("{")) {
      Game g = game();
      expect("}");
      return g;
    }
    if (accept("?")) return test(unaryf());
    if (peek().kind == T::Ident && !is_term_keyword(peek().text)) {
      if (at(":=", 1)) {
        std::string x = ident();
        pos_++;
        if (at("*") && !term_start(1)) {
          pos_++;
          return any(x);
        }
        return assign(x, term());
      }
      if (defs_) {
        auto* d = defs_->find(peek().text);
        if (d && d->kind == DefKind::Game) {
          pos_++;
          return d->game;
        }
      }
    }
    fail({"'{'", "'?'", "assignment", "game name"});
  }

  // formulas

  Formula formula() {
    Formula f = impf();
    if (accept("<->")) return liff(f, impf());
    return f;
  }

  Formula impf() {
    Formula f = orf();
    if (accept("->")) return limp(f, impf());
    return f;
  }

  Formula orf() {
    Formula f = andf();
    if (accept("||")) return lor(f, orf());
    return f;
  }

  Formula andf() {
    Formula f = unaryf();
    if (accept("&&")) return land(f, andf());
    return f;
  }

  Formula unaryf() {
    if (accept("!")) return lnot(unaryf());
    if (accept("<")) {
      Game g = game();
      expect(">");
      return dia(g, unaryf());
    }
    if (accept("[")) {
      Game g = game();
      expect("]");
      return box(g, unaryf());
    }
    if (at("forall") || at("exists")) {
      bool all = peek().text == "forall";
      pos_++;
      std::string x = ident("variable");
      accept(".");
      Formula f = unaryf();
      return all ? lforall(x, f) : lexists(x, f);
    }
    return fatom();
  }

  Formula fatom() {
    if (accept("true")) return tt();
    if (accept("false")) return ff();
    if (defs_ && peek().kind == T::Ident) {
      auto* d = defs_->find(peek().text);
      if (d && d->kind == DefKind::Formula && !is_rel(peek(1).text) && peek(1).text != "in" &&
          peek(1).text != "succ") {
        pos_++;
        return d->formula;
      }
    }
    size_t save = pos_;
    if (term_start()) {
      try {
        return comparison();
      } catch (ParseError&) {
        // a parenthesised formula also starts like a term
        pos_ = save;
        if (!at("(")) throw;
      }
    }
    if (accept("(")) {
      Formula f = formula();
      expect(")");
      return f;
    }
    fail({"formula"});
  }

  Formula comparison() {
    Term l = term();
    if (accept("in")) {
      expect("{");
      std::vector<Term> xs{term()};
      while (accept(",")) xs.push_back(term());
      expect("}");
      Formula f = cmp(l, Rel::Eq, xs.back());
      for (size_t i = xs.size() - 1; i-- > 0;) f = lor(cmp(l, Rel::Eq, xs[i]), f);
      return f;
    }
    if (accept("succ")) return succ(l, term());
    if (!is_rel(peek().text) || peek().kind != T::Sym) fail({"comparison operator"});
    Rel r = to_rel(toks_[pos_++].text);
    Term rhs = term();
    Formula f = cmp(l, r, rhs);
    // chains only for < and <=, so a closing '>' of a diamond is never swallowed
    if ((r == Rel::Lt || r == Rel::Le) && (at("<") || at("<="))) {
      size_t save = pos_;
      Rel r2 = to_rel(toks_[pos_++].text);
      if (term_start()) {
        Term t2 = term();
        return land(f, cmp(rhs, r2, t2));
      }
      pos_ = save;
    }
    return f;
  }

  // proofs

  Tag tag() {
    if (accept("<")) {
      expect(">");
      return Tag::Dia;
    }
    if (accept("[")) {
      expect("]");
      return Tag::Box;
    }
    fail({"'<>'", "'[]'"});
  }

  std::string binder() { return ident("proof variable"); }

  Proof under(const std::vector<std::string>& bs) {
    for (auto& b : bs) scope_.push_back(b);
    Proof m = proof();
    scope_.resize(scope_.size() - bs.size());
    return m;
  }

  Proof payload() {
    if (!accept("(")) return nullptr;
    std::vector<Proof> xs{proof()};
    while (accept(",")) xs.push_back(proof());
    expect(")");
    Proof m = xs.back();
    for (size_t i = xs.size() - 1; i-- > 0;) m = dpair(xs[i], m);
    return m;
  }

  Proof proof() {
    auto& t = peek();
    SrcPos pos{t.line, t.col};
    Proof m = proof_inner();
    if (m->pos.line == pos.line && m->pos.col == pos.col) return m;
    return with(m, [&](ProofNode& n) { n.pos = pos; });
  }

  Proof proof_inner() {
    auto& t = peek();
    if (accept("\\")) {
      std::string v = ident("binder");
      expect(":");
      if (at("Q") && (at(".", 1) || at("[", 1))) {
        pos_++;
        std::string y;
        if (accept("[")) {
          y = ident("ghost variable");
          expect("]");
        }
        expect(".");
        return numlam(v, proof(), y);
      }
      Formula phi = formula();
      expect(".");
      return plam(v, phi, under({v}));
    }
    if (accept("(")) {
      Proof m = proof();
      expect(")");
      return m;
    }
    if (accept("<")) {
      Proof a = proof();
      expect(",");
      Proof b = proof();
      expect(">");
      return dpair(a, b);
    }
    if (accept("[")) {
      Proof a = proof();
      expect(",");
      Proof b = proof();
      expect("]");
      return bpair(a, b);
    }
    if (t.kind != T::Ident) fail({"proof term"});
    std::string k = t.text;
    bool bound = std::find(scope_.begin(), scope_.end(), k) != scope_.end();
    if (!bound) {
      if (auto m = keyword(k)) return m;
      if (defs_) {
        auto* d = defs_->find(k);
        if (d && d->kind == DefKind::Proof) {
          pos_++;
          return d->proof;
        }
      }
    }
    pos_++;
    return pvar(k);
  }

  Proof keyword(const std::string& k) {
    auto call1 = [&](auto mk) {
      pos_++;
      expect("(");
      Proof m = proof();
      expect(")");
      return mk(m);
    };
    if (k == "app" && at("(", 1)) {
      pos_++;
      expect("(");
      Proof a = proof();
      expect(",");
      Proof b = proof();
      expect(")");
      return papp(a, b);
    }
    if (k == "inst" && at("(", 1)) {
      pos_++;
      expect("(");
      Proof a = proof();
      expect(",");
      Term f = term();
      expect(")");
      return numapp(a, f);
    }
    if ((k == "fst" || k == "snd" || k == "seq" || k == "yield") && (at("<", 1) || at("[", 1))) {
      pos_++;
      Tag tg = tag();
      expect("(");
      Proof m = proof();
      expect(")");
      if (k == "fst") return projl(tg, m);
      if (k == "snd") return projr(tg, m);
      if (k == "seq") return pseq(tg, m);
      return pswap(tg, m);
    }
    if (at("(", 1)) {
      if (k == "inl") return call1(injl);
      if (k == "inr") return call1(injr);
      if (k == "stop") return call1(stop);
      if (k == "go") return call1(go);
      if (k == "roll") return call1(roll);
      if (k == "unroll") return call1(unroll);
    }
    if (k == "case") {
      pos_++;
      bool star = accept("*");
      Proof a = proof();
      expect("of");
      expect("{");
      std::string l = binder();
      expect("=>");
      Proof b = under({l});
      expect("|");
      std::string r = binder();
      expect("=>");
      Proof c = under({r});
      expect("}");
      return star ? rcase(a, l, b, r, c) : pcase(a, l, b, r, c);
    }
    if (k == "tcons" && at("(", 1)) {
      pos_++;
      expect("(");
      std::string x = ident("variable");
      expect(":=");
      Term f = term();
      expect(";");
      std::string y = ident("ghost variable");
      std::string p = binder();
      expect(".");
      Proof m = under({p});
      expect(")");
      return tcons(x, y, p, f, m);
    }
    if (k == "unpack" && (at("(", 1) || at("{", 1))) {
      pos_++;
      std::string x;
      if (accept("{")) {
        x = ident("variable");
        expect("}");
      }
      expect("(");
      Proof a = proof();
      expect(";");
      std::string y = ident("ghost variable");
      std::string p = binder();
      expect(".");
      Proof b = under({p});
      expect(")");
      return unpack(a, y, p, b, x);
    }
    if (k == "asgn" && (at("<", 1) || at("[", 1))) {
      pos_++;
      Tag tg = tag();
      expect("(");
      std::string x = ident("variable");
      expect(";");
      std::string y = ident("ghost variable");
      std::string p = binder();
      expect(".");
      Proof m = under({p});
      expect(")");
      return asgn(tg, y, x, p, m);
    }
    if (k == "for" && (at("(", 1) || at("{", 1))) {
      pos_++;
      Game g;
      if (accept("{")) {
        g = game();
        expect("}");
      }
      expect("(");
      Proof a = proof();
      expect(";");
      std::string p1 = binder(), q1 = binder();
      expect(".");
      Proof b = under({p1, q1});
      expect(";");
      std::string p2 = binder(), q2 = binder();
      expect(".");
      Proof c = under({p2, q2});
      expect(";");
      Term metric = term();
      expect(";");
      Formula inv = formula();
      expect(";");
      std::string m0 = ident("ghost variable");
      expect(")");
      if (p1 != p2 || q1 != q2) {
        // one binder pair is shared by both premisses
        c = subst_pt(subst_pt(c, p2, pvar(p1)), q2, pvar(q1));
      }
      Proof r = pfor(a, p1, q1, b, c, metric, inv, m0);
      if (g) r = with(r, [&](ProofNode& n) { n.game = g; });
      return r;
    }
    if (k == "FP" && at("(", 1)) {
      pos_++;
      expect("(");
      Proof a = proof();
      expect(";");
      std::string s = binder();
      expect(".");
      Proof b = under({s});
      expect(";");
      std::string g = binder();
      expect(".");
      Proof c = under({g});
      expect(")");
      return fp(a, s, b, g, c);
    }
    if (k == "rep" && (at("(", 1) || at("{", 1))) {
      pos_++;
      Game g;
      if (accept("{")) {
        g = game();
        expect("}");
      }
      expect("(");
      Proof a = proof();
      expect(";");
      std::string p = binder();
      expect(".");
      Proof b = under({p});
      expect(";");
      Formula j = formula();
      expect(";");
      Proof o = under({p});
      expect(")");
      Proof r = rep(a, p, b, j, o);
      if (g) r = with(r, [&](ProofNode& n) { n.game = g; });
      return r;
    }
    if (k == "mon" && (at("(", 1) || at("{", 1))) {
      pos_++;
      Formula full;
      Renaming ren;
      if (accept("{")) {
        full = formula();
        expect(";");
        while (peek().kind == T::Ident) {
          std::string a = ident();
          expect("~");
          std::string b = ident();
          ren.emplace_back(a, b);
          if (!accept(",")) break;
        }
        expect("}");
      }
      expect("(");
      Proof a = proof();
      expect(";");
      std::string p = binder();
      Formula post;
      if (accept(":")) post = formula();
      expect(".");
      Proof b = under({p});
      expect(")");
      Proof r = mon(a, p, b, post);
      if (full) r = with(r, [&](ProofNode& n) {
        n.full = full;
        n.ren = ren;
      });
      return r;
    }
    if ((k == "FO" || k == "dec") && at("[", 1)) {
      pos_++;
      expect("[");
      Formula phi = formula();
      expect("]");
      Proof m = payload();
      return k == "FO" ? qe(phi, m) : dec(phi, m);
    }
    if (k == "split" && at("(", 1)) {
      pos_++;
      expect("(");
      Term f = term();
      expect(",");
      Term g = term();
      expect(")");
      return split(f, g);
    }
    if (k == "ghost" && at("(", 1)) {
      pos_++;
      expect("(");
      std::string x = ident("variable");
      expect(":=");
      Term f = term();
      expect(";");
      std::string p = binder();
      expect(".");
      Proof m = under({p});
      expect(")");
      return ghost(x, f, p, m);
    }
    return nullptr;
  }

  // script

  void script(ProofScript& out) {
    ProofScript* self = &out;
    defs_ = self;
    while (!at_end()) {
      auto& t = peek();
      SrcPos pos{t.line, t.col};
      Definition d;
      d.pos = pos;
      if (accept("game")) {
        d.kind = DefKind::Game;
        d.name = ident("name");
        expect("=");
        d.game = game();
      } else if (accept("formula")) {
        d.kind = DefKind::Formula;
        d.name = ident("name");
        expect("=");
        d.formula = formula();
      } else if (accept("proof")) {
        d.kind = DefKind::Proof;
        d.name = ident("name");
        expect("=");
        d.proof = proof();
      } else if (accept("theorem")) {
        d.kind = DefKind::Theorem;
        d.name = ident("name");
        expect(":");
        d.formula = formula();
        expect(":=");
        d.proof = proof();
      } else {
        fail({"'game'", "'formula'", "'proof'", "'theorem'"});
      }
      if (out.find(d.name)) throw ParseError(pos.line, pos.col, "duplicate definition " + d.name);
      out.defs.push_back(d);
    }
  }

  size_t pos_ = 0;

 private:
  std::vector<Tok> toks_;
  const ProofScript* defs_;
  std::vector<std::string> scope_;
};

template <class F>
auto whole(const std::string& text, const ProofScript* defs, F f) {
  Parser p(lex(text), defs);
  auto r = f(p);
  if (!p.at_end()) p.fail({"end of input"});
  return r;
}

}  // namespace

ProofScript parse_script(const std::string& text, const std::string& file) {
  ProofScript s;
  s.file = file;
  Parser p(lex(text), nullptr);
  p.script(s);
  return s;
}

ProofScript load_script(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_script(ss.str(), path);
}

Term parse_term(const std::string& text) {
  return whole(text, nullptr, [](Parser& p) { return p.term(); });
}
Game parse_game(const std::string& text, const ProofScript* defs) {
  return whole(text, defs, [](Parser& p) { return p.game(); });
}
Formula parse_formula(const std::string& text, const ProofScript* defs) {
  return whole(text, defs, [](Parser& p) { return p.formula(); });
}
Proof parse_proof(const std::string& text, const ProofScript* defs) {
  return whole(text, defs, [](Parser& p) { return p.proof(); });
}

State parse_state(const std::string& text) {
  State s;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError(1, 1, "expected x=value in state: " + item);
    std::string k = item.substr(0, eq), v = item.substr(eq + 1);
    auto trim = [](std::string x) {
      x.erase(0, x.find_first_not_of(" \t"));
      x.erase(x.find_last_not_of(" \t") + 1);
      return x;
    };
    Term t = parse_term(trim(v));
    s[trim(k)] = eval(t, {});
  }
  return s;
}

// printing proofs

static std::string tag_str(Tag t) { return t == Tag::Dia ? "<>" : "[]"; }

std::string show(const Proof& m) {
  if (!m) return "?";
  switch (m->kind) {
    case PK::PVar: return m->p;
    case PK::Lam: return "\\" + m->p + " : " + show(m->phi) + ". " + show(m->a);
    case PK::App: return "app(" + show(m->a) + ", " + show(m->b) + ")";
    case PK::NumLam:
      return "\\" + m->x + " : Q" + (m->y.empty() ? "" : " [" + m->y + "]") + ". " + show(m->a);
    case PK::NumApp: return "inst(" + show(m->a) + ", " + show(m->f) + ")";
    case PK::DPair: return "<" + show(m->a) + ", " + show(m->b) + ">";
    case PK::BPair: return "[" + show(m->a) + ", " + show(m->b) + "]";
    case PK::ProjL: return "fst" + tag_str(m->tag) + "(" + show(m->a) + ")";
    case PK::ProjR: return "snd" + tag_str(m->tag) + "(" + show(m->a) + ")";
    case PK::InjL: return "inl(" + show(m->a) + ")";
    case PK::InjR: return "inr(" + show(m->a) + ")";
    case PK::Case:
    case PK::RCase:
      return std::string("case") + (m->kind == PK::RCase ? "* " : " ") + show(m->a) + " of {" +
             m->p + " => " + show(m->b) + " | " + m->q + " => " + show(m->c) + "}";
    case PK::TCons:
      return "tcons(" + m->x + " := " + show(m->f) + "; " + m->y + " " + m->p + ". " +
             show(m->a) + ")";
    case PK::Unpack:
      return "unpack" + (m->x.empty() ? "" : "{" + m->x + "}") + "(" + show(m->a) + "; " + m->y +
             " " + m->p + ". " + show(m->b) + ")";
    case PK::Asgn:
      return "asgn" + tag_str(m->tag) + "(" + m->x + "; " + m->y + " " + m->p + ". " +
             show(m->a) + ")";
    case PK::Seq: return "seq" + tag_str(m->tag) + "(" + show(m->a) + ")";
    case PK::Swap: return "yield" + tag_str(m->tag) + "(" + show(m->a) + ")";
    case PK::Stop: return "stop(" + show(m->a) + ")";
    case PK::Go: return "go(" + show(m->a) + ")";
    case PK::Roll: return "roll(" + show(m->a) + ")";
    case PK::Unroll: return "unroll(" + show(m->a) + ")";
    case PK::For:
      return "for" + (m->game ? "{" + show(m->game) + "}" : "") + "(" + show(m->a) + "; " + m->p +
             " " + m->q + ". " + show(m->b) + "; " + m->p + " " + m->q + ". " + show(m->c) + "; " +
             show(m->f) + "; " + show(m->phi) + "; " + m->y + ")";
    case PK::FP:
      return "FP(" + show(m->a) + "; " + m->p + ". " + show(m->b) + "; " + m->q + ". " +
             show(m->c) + ")";
    case PK::Rep:
      return "rep" + (m->game ? "{" + show(m->game) + "}" : "") + "(" + show(m->a) + "; " + m->p +
             ". " + show(m->b) + "; " + show(m->phi) + "; " + show(m->c) + ")";
    case PK::Mon: {
      std::string ann;
      if (m->full) {
        ann = "{" + show(m->full) + ";";
        for (size_t i = 0; i < m->ren.size(); i++)
          ann += (i ? ", " : " ") + m->ren[i].first + " ~ " + m->ren[i].second;
        ann += "}";
      }
      return "mon" + ann + "(" + show(m->a) + "; " + m->p +
             (m->phi ? " : " + show(m->phi) : "") + ". " + show(m->b) + ")";
    }
    case PK::QE:
    case PK::Dec:
      return std::string(m->kind == PK::QE ? "FO[" : "dec[") + show(m->phi) + "]" +
             (m->a ? "(" + show(m->a) + ")" : "");
    case PK::Split: return "split(" + show(m->f) + ", " + show(m->g) + ")";
    case PK::Ghost:
      return "ghost(" + m->x + " := " + show(m->f) + "; " + m->p + ". " + show(m->a) + ")";
  }
  return "?";
}

std::string print_script(const ProofScript& s) {
  std::string out;
  for (auto& d : s.defs) {
    switch (d.kind) {
      case DefKind::Game: out += "game " + d.name + " = " + show(d.game) + "\n\n"; break;
      case DefKind::Formula: out += "formula " + d.name + " = " + show(d.formula) + "\n\n"; break;
      case DefKind::Proof: out += "proof " + d.name + " = " + show(d.proof) + "\n\n"; break;
      case DefKind::Theorem:
        out += "theorem " + d.name + " : " + show(d.formula) + " :=\n  " + show(d.proof) + "\n\n";
        break;
    }
  }
  return out;
}

bool same_script(const ProofScript& a, const ProofScript& b) {
  if (a.defs.size() != b.defs.size()) return false;
  for (size_t i = 0; i < a.defs.size(); i++) {
    auto &x = a.defs[i], &y = b.defs[i];
    if (x.kind != y.kind || x.name != y.name) return false;
    if (x.game && !same(x.game, y.game)) return false;
    if (x.formula && !same(x.formula, y.formula)) return false;
    if (x.proof && !alpha_eq(x.proof, y.proof)) return false;
  }
  return true;
}

}  // namespace cgl
