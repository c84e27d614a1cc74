#pragma once

#include "cgl/checker.hpp"
#include "cgl/extract.hpp"
#include "cgl/normalizer.hpp"
#include "cgl/parser.hpp"

#include <gtest/gtest.h>

namespace cgl::testing {

inline std::string corpus(const std::string& name) { return std::string(CGL_CORPUS_DIR) + "/" + name; }

inline const ProofScript& script(const std::string& name) {
  static std::map<std::string, ProofScript> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, load_script(corpus(name))).first;
  return it->second;
}

inline const char* const kFiles[] = {"rules.cgl", "nim.cgl", "cake.cgl", "witness.cgl"};

inline State st(std::initializer_list<std::pair<const std::string, Q>> xs) { return State(xs); }

}  // namespace cgl::testing
