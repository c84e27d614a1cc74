#include "cgl/json.hpp"

namespace cgl {

namespace {

const char* tag_name(Tag t) { return t == Tag::Dia ? "dia" : "box"; }

void put(Json& j, const char* key, const std::string& s) {
  if (!s.empty()) j[key] = s;
}

std::string text(const Json& j, const char* key) {
  if (!j.contains(key)) return "";
  if (!j.at(key).is_string()) throw std::runtime_error(std::string("json: ") + key + " is not a string");
  return j.at(key).get<std::string>();
}

Formula formula_of(const Json& j, const char* key) {
  std::string s = text(j, key);
  return s.empty() ? nullptr : parse_formula(s);
}

Game game_of(const Json& j, const char* key) {
  std::string s = text(j, key);
  return s.empty() ? nullptr : parse_game(s);
}

Term term_of(const Json& j, const char* key) {
  std::string s = text(j, key);
  return s.empty() ? nullptr : parse_term(s);
}

Json ren_json(const Renaming& ren) {
  Json a = Json::array();
  for (auto& [x, y] : ren) a.push_back(Json::array({x, y}));
  return a;
}

Renaming ren_of(const Json& j) {
  Renaming r;
  if (!j.contains("ren")) return r;
  for (auto& e : j.at("ren")) {
    if (!e.is_array() || e.size() != 2) throw std::runtime_error("json: ren entries are pairs");
    r.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  return r;
}

template <class E, int N, class Name>
E kind_of(const Json& j, Name name, const char* what) {
  std::string k = text(j, "node");
  for (int i = 0; i < N; ++i)
    if (name(static_cast<E>(i)) == k) return static_cast<E>(i);
  throw std::runtime_error(std::string("json: unknown ") + what + " node '" + k + "'");
}

bool has_tag(PK k) {
  switch (k) {
    case PK::ProjL:
    case PK::ProjR:
    case PK::Asgn:
    case PK::Seq:
    case PK::Swap: return true;
    default: return false;
  }
}

}  // namespace

Json to_json(const Proof& m) {
  if (!m) return nullptr;
  Json j;
  j["node"] = pk_name(m->kind);
  if (has_tag(m->kind)) j["tag"] = tag_name(m->tag);
  put(j, "p", m->p);
  put(j, "q", m->q);
  put(j, "x", m->x);
  put(j, "y", m->y);
  if (m->phi) j["phi"] = show(m->phi);
  if (m->full) j["full"] = show(m->full);
  if (m->ann) j["ann"] = show(m->ann);
  if (m->game) j["game"] = show(m->game);
  if (m->f) j["f"] = show(m->f);
  if (m->g) j["g"] = show(m->g);
  if (!m->ren.empty()) j["ren"] = ren_json(m->ren);
  if (m->a) j["a"] = to_json(m->a);
  if (m->b) j["b"] = to_json(m->b);
  if (m->c) j["c"] = to_json(m->c);
  if (m->pos.line) j["pos"] = Json::array({m->pos.line, m->pos.col});
  return j;
}

namespace {

Proof proof_of(const Json& j) {
  if (j.is_null()) return nullptr;
  if (!j.is_object()) throw std::runtime_error("json: proof nodes are objects");
  auto n = std::make_shared<ProofNode>();
  n->kind = kind_of<PK, static_cast<int>(PK::Ghost) + 1>(j, pk_name, "proof");
  std::string tag = text(j, "tag");
  if (!tag.empty() && tag != "dia" && tag != "box") throw std::runtime_error("json: bad tag " + tag);
  n->tag = tag == "box" ? Tag::Box : Tag::Dia;
  n->p = text(j, "p");
  n->q = text(j, "q");
  n->x = text(j, "x");
  n->y = text(j, "y");
  n->phi = formula_of(j, "phi");
  n->full = formula_of(j, "full");
  n->ann = formula_of(j, "ann");
  n->game = game_of(j, "game");
  n->f = term_of(j, "f");
  n->g = term_of(j, "g");
  n->ren = ren_of(j);
  if (j.contains("a")) n->a = proof_of(j.at("a"));
  if (j.contains("b")) n->b = proof_of(j.at("b"));
  if (j.contains("c")) n->c = proof_of(j.at("c"));
  if (j.contains("pos")) n->pos = {j.at("pos").at(0).get<int>(), j.at("pos").at(1).get<int>()};
  return n;
}

}  // namespace

Proof proof_from_json(const Json& j) {
  try {
    return proof_of(j);
  } catch (const Json::exception& e) {
    throw std::runtime_error(std::string("json: ") + e.what());
  }
}

Json to_json(const Realizer& r) {
  if (!r) return nullptr;
  Json j;
  j["node"] = rk_name(r->kind);
  put(j, "p", r->p);
  put(j, "q", r->q);
  put(j, "x", r->x);
  put(j, "y", r->y);
  if (r->phi) j["phi"] = show(r->phi);
  if (r->f) j["f"] = show(r->f);
  if (!r->ren.empty()) j["ren"] = ren_json(r->ren);
  if (r->a) j["a"] = to_json(r->a);
  if (r->b) j["b"] = to_json(r->b);
  if (r->c) j["c"] = to_json(r->c);
  return j;
}

namespace {

// children and fields each realizer node cannot do without
void require_fields(const RNode& n) {
  bool a = false, b = false, c = false, phi = false, f = false;
  switch (n.kind) {
    case RK::Unit:
    case RK::RVar: break;
    case RK::Pair:
    case RK::AppRz:
    case RK::Let:
    case RK::Open: a = b = true; break;
    case RK::Fst:
    case RK::Snd:
    case RK::StateLam:
    case RK::AppState:
    case RK::NumLam:
    case RK::ProofLam:
    case RK::Ind:
    case RK::Remember: a = true; break;
    case RK::LetNum:
    case RK::AppNum: a = f = true; break;
    case RK::TermVal: f = true; break;
    case RK::IfTerm: a = b = phi = true; break;
    case RK::Gen: a = b = c = phi = true; break;
    case RK::Compose: a = b = phi = true; break;
    case RK::Branch: a = b = c = true; break;
    case RK::Search: phi = true; break;
  }
  auto need = [&](bool want, bool have, const char* key) {
    if (want && !have)
      throw std::runtime_error("json: " + rk_name(n.kind) + " needs \"" + key + "\"");
  };
  need(a, n.a != nullptr, "a");
  need(b, n.b != nullptr, "b");
  need(c, n.c != nullptr, "c");
  need(phi, n.phi != nullptr, "phi");
  need(f, n.f != nullptr, "f");
}

Realizer realizer_of(const Json& j) {
  if (j.is_null()) return nullptr;
  if (!j.is_object()) throw std::runtime_error("json: realizer nodes are objects");
  auto n = std::make_shared<RNode>();
  n->kind = kind_of<RK, static_cast<int>(RK::Search) + 1>(j, rk_name, "realizer");
  n->p = text(j, "p");
  n->q = text(j, "q");
  n->x = text(j, "x");
  n->y = text(j, "y");
  n->phi = formula_of(j, "phi");
  n->f = term_of(j, "f");
  n->ren = ren_of(j);
  if (j.contains("a")) n->a = realizer_of(j.at("a"));
  if (j.contains("b")) n->b = realizer_of(j.at("b"));
  if (j.contains("c")) n->c = realizer_of(j.at("c"));
  require_fields(*n);
  return n;
}

}  // namespace

Realizer realizer_from_json(const Json& j) {
  try {
    return realizer_of(j);
  } catch (const Json::exception& e) {
    throw std::runtime_error(std::string("json: ") + e.what());
  }
}

Diagnostic diagnose(const std::string& file, const ParseError& e) {
  Diagnostic d;
  d.file = file;
  d.pos = {e.line, e.col};
  d.kind = "ParseError";
  std::string prefix = std::to_string(e.line) + ":" + std::to_string(e.col) + ": ";
  d.message = e.what();
  if (d.message.rfind(prefix, 0) == 0) d.message = d.message.substr(prefix.size());
  return d;
}

Diagnostic diagnose(const std::string& file, const CheckError& e) {
  Diagnostic d;
  d.file = file;
  d.pos = e.pos;
  d.kind = err_kind_name(e.kind);
  d.message = describe(e);
  d.path = e.path;
  d.rule = e.rule;
  d.expected = e.expected;
  d.got = e.got;
  d.witness = e.witness;
  return d;
}

Json to_json(const State& s) {
  Json j = Json::object();
  for (auto& [x, q] : s) j[x] = show(q);
  return j;
}

Json to_json(const Diagnostic& d) {
  Json j;
  j["file"] = d.file;
  j["line"] = d.pos.line;
  j["col"] = d.pos.col;
  j["kind"] = d.kind;
  j["message"] = d.message;
  put(j, "path", d.path);
  put(j, "rule", d.rule);
  put(j, "expected", d.expected);
  put(j, "got", d.got);
  if (d.witness) j["witness"] = to_json(*d.witness);
  if (!d.trace.empty()) j["trace"] = d.trace;
  return j;
}

std::string render(const Diagnostic& d) {
  std::string s = d.file + ":" + std::to_string(d.pos.line) + ":" + std::to_string(d.pos.col) +
                  ": error: " + d.kind + ": " + d.message;
  return s;
}

Json to_json(const Outcome& o) {
  Json j;
  j["outcome"] = outcome_name(o.kind);
  j["state"] = to_json(o.state);
  j["post_holds"] = o.post_holds;
  put(j, "reason", o.reason);
  j["trace"] = o.trace;
  return j;
}

}  // namespace cgl
