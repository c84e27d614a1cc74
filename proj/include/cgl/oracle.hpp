#pragma once

#include "cgl/syntax.hpp"

namespace cgl {

// Decision procedure behind QE and Dec leaves. Valid means rho -> phi was
// proved; Refuted carries a concrete state checked with holds(); anything the
// procedure cannot settle is Unknown.
enum class Verdict { Valid, Refuted, Unknown };

struct OracleResult {
  Verdict verdict = Verdict::Unknown;
  State witness;
};

// rho may be null (read as true). Both must be first-order.
OracleResult oracle_decide(const Formula& rho, const Formula& phi);

inline bool oracle_valid(const Formula& rho, const Formula& phi) {
  return oracle_decide(rho, phi).verdict == Verdict::Valid;
}

// A term f built from phi's equations, literals and the free variables with
// rho -> phi[x := f] valid, or null. Also how oracle_decide settles a
// top-level <x := *>.
Term oracle_witness(const Formula& rho, const std::string& x, const Formula& phi);

// counters, reset by the caller
struct OracleStats {
  long calls = 0, leaves = 0;
};
OracleStats& oracle_stats();

}  // namespace cgl
