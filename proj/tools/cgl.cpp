// cgl: command line front end. Exit codes: 0 ok, 1 check or verify
// failure, 2 usage error.

#include "cgl/json.hpp"
#include "cgl/normalizer.hpp"
#include "cgl/extract.hpp"
#include "cgl/selftest.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace cgl;

namespace {

constexpr int kOk = 0, kFail = 1, kUsage = 2;

// an error that ends the command with a diagnostic
struct Fatal {
  Diagnostic d;
  int code;
};

[[noreturn]] void fatal(const std::string& file, SrcPos pos, const std::string& kind,
                        const std::string& msg, int code) {
  Diagnostic d;
  d.file = file;
  d.pos = pos;
  d.kind = kind;
  d.message = msg;
  throw Fatal{d, code};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) fatal(path, {1, 1}, "IOError", "cannot read file", kUsage);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ProofScript load(const std::string& path) {
  std::string text = slurp(path);
  try {
    return parse_script(text, path);
  } catch (const ParseError& e) {
    throw Fatal{diagnose(path, e), kFail};
  }
}

const Definition& theorem(const ProofScript& s, const std::string& name) {
  const Definition* d = s.find(name);
  if (!d || d->kind != DefKind::Theorem)
    fatal(s.file, {1, 1}, "UnknownTheorem", "no theorem named " + name, kUsage);
  return *d;
}

State state_arg(const std::string& text) {
  try {
    return parse_state(text);
  } catch (const ParseError& e) {
    Diagnostic d = diagnose("<state>", e);
    throw Fatal{d, kUsage};
  } catch (const std::exception& e) {
    fatal("<state>", {1, 1}, "ParseError", e.what(), kUsage);
  }
}

Menu menu_arg(const std::string& path) {
  if (path.empty()) return Menu::standard();
  std::string text = slurp(path);
  try {
    return Menu::from_json(text);
  } catch (const std::exception& e) {
    fatal(path, {1, 1}, "MenuError", e.what(), kUsage);
  }
}

Realizer realizer_arg(const std::string& path) {
  std::string text = slurp(path);
  try {
    Json j = Json::parse(text);
    return realizer_from_json(j.contains("realizer") ? j.at("realizer") : j);
  } catch (const std::exception& e) {
    fatal(path, {1, 1}, "RealizerError", e.what(), kUsage);
  }
}

// extraction with check errors turned into diagnostics
Extraction extract_or_fail(const ProofScript& s, const Definition& d, bool normalize_first,
                           long fuel) {
  try {
    return extract_theorem(s, d.name, normalize_first, fuel);
  } catch (const CheckError& e) {
    throw Fatal{diagnose(s.file, e), kFail};
  } catch (const FuelExhausted& e) {
    fatal(s.file, d.pos, "FuelExhausted",
          "normalizing " + d.name + " ran out of fuel after " + std::to_string(e.steps) + " steps",
          kFail);
  }
}

Diagnostic ill_diag(const std::string& file, const Definition& d, const IllStructuredRealizer& e) {
  Diagnostic g;
  g.file = file;
  g.pos = d.pos;
  g.kind = "IllStructuredRealizer";
  g.message = e.what();
  g.trace = e.trace;
  return g;
}

void print_outcome(const Outcome& o) {
  for (auto& l : o.trace) std::cout << l << "\n";
  std::cout << "outcome " << outcome_name(o.kind);
  if (!o.state.empty()) std::cout << " " << state_str(o.state);
  std::cout << "\n";
}

int cmd_check(const std::string& file, bool json) {
  ProofScript s = load(file);
  int rc = kOk;
  Json out = Json::array();
  for (const Definition* d : s.theorems()) {
    CheckResult r = check(Context{}, d->proof, d->formula, d->name);
    if (r.ok) {
      if (json) out.push_back({{"theorem", d->name}, {"ok", true}});
      else std::cout << "ok " << d->name << "\n";
      continue;
    }
    rc = kFail;
    Diagnostic g = diagnose(file, *r.error);
    if (json) out.push_back({{"theorem", d->name}, {"ok", false}, {"error", to_json(g)}});
    else std::cout << render(g) << "\n";
  }
  if (json) std::cout << out.dump(2) << "\n";
  return rc;
}

int cmd_normalize(const std::string& file, const std::string& only, long fuel, bool trace) {
  ProofScript s = load(file);
  if (!only.empty()) theorem(s, only);
  int rc = kOk;
  for (const Definition* d : s.theorems()) {
    if (!only.empty() && d->name != only) continue;
    CheckResult c = check(Context{}, d->proof, d->formula, d->name);
    if (!c.ok) {
      std::cout << render(diagnose(file, *c.error)) << "\n";
      rc = kFail;
      continue;
    }
    // leading hypotheses stay; the body is what reduces
    Proof body = c.annotated;
    std::vector<std::string> binders;
    while (body->kind == PK::Lam) {
      binders.push_back(body->p);
      body = body->a;
    }
    try {
      NormalizeResult r = normalize(body, fuel, trace);
      std::cout << "theorem " << d->name << ": " << r.steps << " step" << (r.steps == 1 ? "" : "s")
                << "\n";
      if (trace)
        for (size_t i = 0; i < r.trace.size(); ++i)
          std::cout << "  " << (i + 1) << " " << r.trace[i].rule << " " << r.trace[i].path << "\n"
                    << "    " << show(r.trace[i].term) << "\n";
      std::string lams;
      for (auto& p : binders) lams += "\\" + p + ". ";
      std::cout << "  normal form: " << lams << show(r.term) << "\n";
    } catch (const FuelExhausted& e) {
      Diagnostic g;
      g.file = file;
      g.pos = d->pos;
      g.kind = "FuelExhausted";
      g.message = "normalizing " + d->name + " ran out of fuel after " + std::to_string(e.steps) +
                  " steps";
      std::cout << render(g) << "\n";
      rc = kFail;
    }
  }
  return rc;
}

int cmd_extract(const std::string& file, const std::string& name, const std::string& out,
                bool normalize_first, long fuel) {
  ProofScript s = load(file);
  const Definition& d = theorem(s, name);
  Extraction ex = extract_or_fail(s, d, normalize_first, fuel);
  std::cout << "theorem " << name << ": " << show(ex.phi) << "\n";
  std::cout << "realizer: " << show(ex.realizer) << "\n";
  if (!out.empty()) {
    Json j;
    j["theorem"] = name;
    j["formula"] = show(ex.phi);
    j["realizer"] = to_json(ex.realizer);
    std::ofstream f(out);
    if (!f) fatal(out, {1, 1}, "IOError", "cannot write file", kUsage);
    f << j.dump(2) << "\n";
  }
  return kOk;
}

struct Strategy {
  Formula phi;
  Realizer a;
};

Strategy strategy(const ProofScript& s, const Definition& d, const std::string& rz_path,
                  bool normalize_first, long fuel) {
  if (!rz_path.empty()) return {d.formula, realizer_arg(rz_path)};
  Extraction ex = extract_or_fail(s, d, normalize_first, fuel);
  return {ex.phi, ex.realizer};
}

int cmd_play(const std::string& file, const std::string& name, const std::string& demon,
             const std::string& state, const std::string& menu_path, const std::string& rz_path,
             bool normalize_first, long fuel) {
  ProofScript s = load(file);
  const Definition& d = theorem(s, name);
  State omega = state_arg(state);
  Menu menu = menu_arg(menu_path);
  Strategy st = strategy(s, d, rz_path, normalize_first, fuel);
  Outcome o;
  try {
    if (demon == "interactive") {
      InteractiveDemon dm(std::cin, std::cout);
      o = play_formula(st.phi, st.a, omega, dm, fuel);
    } else if (demon.rfind("random:", 0) == 0) {
      uint64_t seed;
      try {
        seed = std::stoull(demon.substr(7));
      } catch (const std::exception&) {
        fatal("<demon>", {1, 8}, "UsageError", "seed is not a number: " + demon.substr(7), kUsage);
      }
      o = play_random(st.phi, st.a, omega, seed, menu, fuel);
    } else if (demon.rfind("script:", 0) == 0) {
      ScriptDemon dm = ScriptDemon::from_text(slurp(demon.substr(7)));
      o = play_formula(st.phi, st.a, omega, dm, fuel);
    } else {
      fatal("<demon>", {1, 1}, "UsageError",
            "demon is interactive, random:SEED or script:PATH, got " + demon, kUsage);
    }
  } catch (const IllStructuredRealizer& e) {
    Diagnostic g = ill_diag(file, d, e);
    for (auto& l : g.trace) std::cout << l << "\n";
    std::cout << render(g) << "\n";
    return kFail;
  } catch (const ScriptExhausted& e) {
    fatal(demon.substr(demon.find(':') + 1), {1, 1}, "ScriptExhausted", e.what(), kFail);
  }
  print_outcome(o);
  return angel_wins(o) ? kOk : kFail;
}

int cmd_verify(const std::string& file, const std::string& name, const std::string& menu_path,
               const std::vector<std::string>& states, const std::string& rz_path,
               bool normalize_first, long fuel) {
  ProofScript s = load(file);
  const Definition& d = theorem(s, name);
  Menu menu = menu_arg(menu_path);
  std::vector<State> starts = menu.states;
  for (auto& t : states) starts.push_back(state_arg(t));
  if (starts.empty())
    fatal(menu_path, {1, 1}, "UsageError", "no initial states: give --state or menu states",
          kUsage);
  Strategy st = strategy(s, d, rz_path, normalize_first, fuel);
  VerifyResult r;
  try {
    r = verify_formula(st.phi, st.a, starts, menu, fuel);
  } catch (const IllStructuredRealizer& e) {
    Diagnostic g = ill_diag(file, d, e);
    for (auto& l : g.trace) std::cout << l << "\n";
    std::cout << render(g) << "\n";
    return kFail;
  }
  if (r.all_win) {
    std::cout << "verify " << name << ": AllWin over " << starts.size() << " state"
              << (starts.size() == 1 ? "" : "s") << ", " << r.leaves << " leaves\n";
    return kOk;
  }
  std::cout << "verify " << name << ": CounterExample from " << state_str(r.start) << " after "
            << r.leaves << " leaves\n";
  print_outcome(*r.counterexample);
  return kFail;
}

int cmd_test(const std::string& corpus) {
  auto results = run_acceptance(corpus);
  int failed = 0;
  for (auto& c : results) {
    std::cout << (c.pass ? "PASS" : "FAIL") << " " << c.id << " " << c.name;
    if (!c.detail.empty()) std::cout << ": " << c.detail;
    std::cout << "\n";
    if (!c.pass) ++failed;
  }
  return failed ? kFail : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cgl: constructive game logic proof checker and strategy extractor"};
  app.require_subcommand(1);
  long fuel = 1000000;
  bool normalize_first = false;

  std::string file, name, out, demon, state, menu, realizer, corpus = "corpus";
  std::vector<std::string> states;
  bool json = false, trace = false;

  auto* c_check = app.add_subcommand("check", "check every theorem in FILE");
  c_check->add_option("FILE", file)->required();
  c_check->add_flag("--json", json, "diagnostics as JSON");

  auto* c_norm = app.add_subcommand("normalize", "normalize theorem proofs");
  c_norm->add_option("FILE", file)->required();
  c_norm->add_option("--theorem", name);
  c_norm->add_option("--fuel", fuel)->check(CLI::PositiveNumber);
  c_norm->add_flag("--trace", trace, "print every reduction");

  auto* c_ext = app.add_subcommand("extract", "extract a realizer");
  c_ext->add_option("FILE", file)->required();
  c_ext->add_option("--theorem", name)->required();
  c_ext->add_option("--emit-realizer", out, "write the realizer as JSON");
  c_ext->add_flag("--normalize", normalize_first, "normalize before extracting");
  c_ext->add_option("--fuel", fuel)->check(CLI::PositiveNumber);

  auto* c_play = app.add_subcommand("play", "play an extracted realizer against a Demon");
  c_play->add_option("FILE", file)->required();
  c_play->add_option("--theorem", name)->required();
  c_play->add_option("--demon", demon, "interactive | random:SEED | script:PATH")->required();
  c_play->add_option("--state", state, "initial state, e.g. \"x=1,y=1/2\"");
  c_play->add_option("--menu", menu, "Demon value menu (JSON) for random play");
  c_play->add_option("--realizer", realizer, "play this realizer (JSON) instead of extracting");
  c_play->add_flag("--normalize", normalize_first, "normalize before extracting");
  c_play->add_option("--fuel", fuel)->check(CLI::PositiveNumber);

  auto* c_ver = app.add_subcommand("verify", "play every Demon choice the menu allows");
  c_ver->add_option("FILE", file)->required();
  c_ver->add_option("--theorem", name)->required();
  c_ver->add_option("--menu", menu, "Demon menu (JSON)");
  c_ver->add_option("--state", states, "initial state (repeatable)");
  c_ver->add_option("--realizer", realizer, "verify this realizer (JSON) instead of extracting");
  c_ver->add_flag("--normalize", normalize_first, "normalize before extracting");
  c_ver->add_option("--fuel", fuel)->check(CLI::PositiveNumber);

  auto* c_test = app.add_subcommand("test", "run the acceptance checks on the corpus");
  c_test->add_option("--corpus", corpus, "directory holding the corpus files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*c_check) return cmd_check(file, json);
    if (*c_norm) return cmd_normalize(file, name, fuel, trace);
    if (*c_ext) return cmd_extract(file, name, out, normalize_first, fuel);
    if (*c_play) return cmd_play(file, name, demon, state, menu, realizer, normalize_first, fuel);
    if (*c_ver) return cmd_verify(file, name, menu, states, realizer, normalize_first, fuel);
    if (*c_test) return cmd_test(corpus);
  } catch (const Fatal& f) {
    std::cout << render(f.d) << "\n";
    return f.code;
  }
  return kUsage;
}
