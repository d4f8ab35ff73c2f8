// Closed-form singularity counts and curve invariants for the discriminant
// of the generic midpoint projection of a degree-(d1,d2) curve pair, plus
// the consistency identities tying them together.
//
// chi_c is the Euler characteristic of the smooth critical curve; the
// discriminant curve itself has chi_cprime = chi_c - nodes. The two values
// differ (e.g. -8 vs -12 at (2,2)); reports carry both.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gsds {

struct InvariantSet {
  long long degree = 0;
  long long cusps = 0;
  long long nodes = 0;
  long long genus = 0;
  long long chi_c = 0;
  long long chi_cprime = 0;
};

struct IdentityCheck {
  std::string name;
  long long lhs = 0;
  long long rhs = 0;
  bool pass = false;
};

// Exact evaluation of the closed forms; throws std::invalid_argument for
// d1 < 2 or d2 < 2.
InvariantSet expected_invariants(int d1, int d2);

// chi(C') + n + c == d1 d2 - chi(X) chi(Y), with chi(X) = -d1(d1-2).
IdentityCheck euler_identity(int d1, int d2, long long cusps, long long nodes,
                             long long chi_cprime);

// (D-1)(D-2)/2 == g + n + c + d1*delta_P + d2*delta_Q with the
// transverse-branch delta invariants at infinity.
IdentityCheck serre_identity(int d1, int d2, const InvariantSet& invs);

// chi(C) + d1 d2 (d1+d2-2) == 2 - 2 g(C).
IdentityCheck genus_chi_identity(int d1, int d2, const InvariantSet& invs);

// Values actually measured by the pipeline; negative = not measured.
struct ComputedInvariants {
  long long degree = -1;
  long long cusps = -1;
  long long nodes = -1;
  long long cusps_direct = -1;  // from the rank-drop system on the curve pair
};

struct InvariantReport {
  int d1 = 0;
  int d2 = 0;
  InvariantSet expected;
  ComputedInvariants computed;
  std::vector<IdentityCheck> checks;
  std::vector<std::string> notes;
  bool pass = false;
};

// Compares computed against expected and runs every identity.
InvariantReport assemble_report(int d1, int d2,
                                const ComputedInvariants& computed,
                                std::vector<std::string> notes = {});

}  // namespace gsds
