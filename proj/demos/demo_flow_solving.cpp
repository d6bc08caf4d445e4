// Solves a forbidden-value flow instance on K4 and prints the audit trail:
// which values went around which cycles, and which repair rounds ran.

#include <iostream>

#include "groupflow/json_io.hpp"
#include "groupflow/solve.hpp"

int main() {
  using namespace groupflow;

  auto k4 = gen_complete(4);
  GroupTable z11(parse_group_spec("Z11"));

  // Forbid zero everywhere: the result is a nowhere-zero Z11-flow.
  ForbiddenMap fm;
  fm.forbidden.assign(k4.num_edges(), {0});

  auto rep = solve_forbidden_flow_3ec(k4, fm, z11);
  std::cout << canonical_dump(solver_report_to_json(rep, z11, fm));

  BoundaryMap zero{std::vector<int>(k4.num_vertices(), 0)};
  auto check = verify_flow(k4, z11, rep.flow, zero, fm);
  std::cout << "verified: " << (check.ok ? "yes" : check.violation) << "\n";
  return check.ok ? 0 : 1;
}
