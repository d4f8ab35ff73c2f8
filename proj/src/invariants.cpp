#include "gsds/invariants.hpp"

#include <stdexcept>

namespace gsds {

namespace {

long long choose2(long long d) { return d * (d - 1) / 2; }

}  // namespace

InvariantSet expected_invariants(int d1, int d2) {
  if (d1 < 2 || d2 < 2) {
    throw std::invalid_argument("expected_invariants: degrees must be >= 2");
  }
  const long long a = d1, b = d2;
  InvariantSet s;
  s.degree = a * b * (a + b - 2);
  s.cusps = 12 * choose2(a) * choose2(b);
  s.nodes = 2 * choose2(a) * choose2(b) * ((a + b) * (a + b) - a - b - 10);
  s.genus = a * b * (2 * a * b - 3 * (a + b) + 4) + 1;
  s.chi_c = -a * b * (4 * a * b - 5 * (a + b) + 6);
  s.chi_cprime = s.chi_c - s.nodes;
  return s;
}

IdentityCheck euler_identity(int d1, int d2, long long cusps, long long nodes,
                             long long chi_cprime) {
  const long long a = d1, b = d2;
  const long long chi_x = -a * (a - 2);
  const long long chi_y = -b * (b - 2);
  IdentityCheck c;
  c.name = "euler_covering";
  c.lhs = chi_cprime + nodes + cusps;
  c.rhs = a * b - chi_x * chi_y;
  c.pass = (c.lhs == c.rhs);
  return c;
}

IdentityCheck serre_identity(int d1, int d2, const InvariantSet& invs) {
  const long long a = d1, b = d2;
  const long long delta_p = b * (b - 1) * (b * (b - 1) - 1) / 2;
  const long long delta_q = a * (a - 1) * (a * (a - 1) - 1) / 2;
  IdentityCheck c;
  c.name = "serre_genus_delta";
  c.lhs = (invs.degree - 1) * (invs.degree - 2) / 2;
  c.rhs = invs.genus + invs.nodes + invs.cusps + a * delta_p + b * delta_q;
  c.pass = (c.lhs == c.rhs);
  return c;
}

IdentityCheck genus_chi_identity(int d1, int d2, const InvariantSet& invs) {
  const long long a = d1, b = d2;
  IdentityCheck c;
  c.name = "genus_chi";
  c.lhs = invs.chi_c + a * b * (a + b - 2);
  c.rhs = 2 - 2 * invs.genus;
  c.pass = (c.lhs == c.rhs);
  return c;
}

InvariantReport assemble_report(int d1, int d2,
                                const ComputedInvariants& computed,
                                std::vector<std::string> notes) {
  InvariantReport r;
  r.d1 = d1;
  r.d2 = d2;
  r.expected = expected_invariants(d1, d2);
  r.computed = computed;
  r.notes = std::move(notes);

  auto compare = [&](const std::string& name, long long got,
                     long long want) {
    IdentityCheck c;
    c.name = name;
    c.lhs = got;
    c.rhs = want;
    c.pass = (got == want);
    return c;
  };
  bool all = true;
  auto push = [&](IdentityCheck c, bool counted) {
    if (counted) all = all && c.pass;
    r.checks.push_back(std::move(c));
  };
  push(compare("degree_matches", computed.degree, r.expected.degree),
       computed.degree >= 0);
  push(compare("cusps_match", computed.cusps, r.expected.cusps),
       computed.cusps >= 0);
  push(compare("nodes_match", computed.nodes, r.expected.nodes),
       computed.nodes >= 0);
  push(compare("cusps_direct_match", computed.cusps_direct, r.expected.cusps),
       computed.cusps_direct >= 0);
  push(euler_identity(d1, d2, r.expected.cusps, r.expected.nodes,
                      r.expected.chi_cprime),
       true);
  push(serre_identity(d1, d2, r.expected), true);
  push(genus_chi_identity(d1, d2, r.expected), true);
  // measured values must be present for an end-to-end pass
  if (computed.degree < 0 || computed.cusps < 0 || computed.nodes < 0) {
    all = false;
  }
  r.pass = all;
  return r;
}

}  // namespace gsds
