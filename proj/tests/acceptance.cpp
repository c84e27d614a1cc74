// One line per acceptance criterion; exits non-zero if any fails.

#include "cgl/selftest.hpp"

#include <iostream>

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: acceptance CORPUS_DIR\n";
    return 2;
  }
  int failed = 0;
  for (auto& c : cgl::run_acceptance(argv[1])) {
    std::cout << (c.pass ? "PASS" : "FAIL") << " " << c.id << " " << c.name;
    if (!c.detail.empty()) std::cout << ": " << c.detail;
    std::cout << "\n";
    if (!c.pass) ++failed;
  }
  return failed ? 1 : 0;
}
