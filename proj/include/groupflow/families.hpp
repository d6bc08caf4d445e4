#pragma once

// Reproduction suite for the witness families: theta-graph separations
// between a prime-order group and the elementary 2-group of nearly the same
// order, their planar-dual coloring counterparts, the Z3-to-Z5 coloring
// lift, and the edge-density screen for Z3-colorability.

#include <optional>
#include <string>
#include <vector>

#include "groupflow/decide.hpp"
#include "groupflow/group.hpp"
#include "groupflow/multigraph.hpp"
#include "groupflow/planar.hpp"

namespace groupflow {

inline long long smallest_prime_above(long long x) {
  auto is_prime = [](long long v) {
    if (v < 2) return false;
    for (long long d = 2; d * d <= v; ++d)
      if (v % d == 0) return false;
    return true;
  };
  long long p = x + 1;
  while (!is_prime(p)) ++p;
  return p;
}

struct SeparationWitness {
  Multigraph graph;
  bool colorability = false;  // verdicts are coloring verdicts (dual family)
  FiniteAbelianGroup good_group;  // yes verdict
  FiniteAbelianGroup bad_group;   // no verdict, order >= |good| - 1
  bool good_yes = false;
  bool bad_no = false;
  // Counterexample certificate for the bad group.
  std::optional<BoundaryMap> bad_beta;
  std::optional<EdgeGroupMap> bad_phi;
};

// G_{q, 2^(k-1)} separates Z_p (p the least prime above 2^(k-1)+1) from
// Z_2^k: connected for the prime, not for the 2-group, for odd q >= p.
inline SeparationWitness theta_separation(int k, int q, std::uint64_t budget = 4'000'000'000ULL) {
  if (k < 1) throw std::invalid_argument("separation needs k >= 1");
  long long p = smallest_prime_above((1LL << (k - 1)) + 1);
  if (q % 2 == 0) throw std::invalid_argument("separation needs odd q");
  int len = 1 << (k - 1);

  SeparationWitness w;
  w.graph = gen_theta(q, len);
  w.good_group = parse_group_spec("Z" + std::to_string(p));
  w.bad_group = parse_group_spec("Z2^" + std::to_string(k));

  GroupTable tg(w.good_group), tb(w.bad_group);
  auto good = is_group_connected(w.graph, tg, budget);
  if (good.budget_exceeded) throw BudgetExceededError("separation decider exceeded its budget");
  auto bad = is_group_connected(w.graph, tb, budget);
  if (bad.budget_exceeded) throw BudgetExceededError("separation decider exceeded its budget");
  w.good_yes = good.connected;
  w.bad_no = !bad.connected;
  w.bad_beta = bad.failing_beta;
  return w;
}

// Dual statement: the planar dual of the nested embedding, with coloring
// verdicts in place of connectivity verdicts.
inline SeparationWitness dual_separation(int k, int q, std::uint64_t budget = 4'000'000'000ULL) {
  if (k < 1) throw std::invalid_argument("separation needs k >= 1");
  long long p = smallest_prime_above((1LL << (k - 1)) + 1);
  if (q % 2 == 0) throw std::invalid_argument("separation needs odd q");
  int len = 1 << (k - 1);

  auto primal = gen_theta(q, len);
  auto rot = rotation_for_theta(primal, q, len);
  auto dual = planar_dual(primal, rot);

  SeparationWitness w;
  w.graph = dual.dual;
  w.colorability = true;
  w.good_group = parse_group_spec("Z" + std::to_string(p));
  w.bad_group = parse_group_spec("Z2^" + std::to_string(k));

  GroupTable tg(w.good_group), tb(w.bad_group);
  auto good = is_group_colorable(w.graph, tg, budget);
  if (good.budget_exceeded) throw BudgetExceededError("separation decider exceeded its budget");
  auto bad = is_group_colorable(w.graph, tb, budget);
  if (bad.budget_exceeded) throw BudgetExceededError("separation decider exceeded its budget");
  w.good_yes = good.colorable;
  w.bad_no = !bad.colorable;
  w.bad_phi = bad.failing_phi;
  return w;
}

// ---------------------------------------------------------------------------
// Z3 -> Z5 coloring lift.
//
// Z5 is read as {0, 1, -1, 2, -2} and Z3 as {0, 1, -1}; the reduction sends
// 0 -> 0, {1, -2} -> 1, {2, -1} -> -1, and a proper Z3-coloring for the
// reduced map lifts to Z5 through the identity on these representatives.
// ---------------------------------------------------------------------------

struct LiftResult {
  ColoringAssignment coloring;      // over Z5, aligned with the graph's vertices
  EdgeGroupMap reduced_phi;         // over Z3
  ColoringAssignment base_coloring; // over Z3
};

inline LiftResult lift_z3_to_z5(const Multigraph& g, const EdgeGroupMap& phi5,
                                std::uint64_t budget = 1'000'000'000) {
  GroupTable t5(parse_group_spec("Z5")), t3(parse_group_spec("Z3"));
  if (static_cast<int>(phi5.values.size()) != g.num_edges())
    throw std::invalid_argument("edge map must align with the graph's edges");

  auto z3check = is_group_colorable(g, t3, budget);
  if (z3check.budget_exceeded) throw BudgetExceededError("Z3 colorability check exceeded budget");
  if (!z3check.colorable) throw std::invalid_argument("graph is not Z3-colorable");

  LiftResult out;
  out.reduced_phi.values.resize(g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) {
    switch (phi5.values[e]) {
      case 0: out.reduced_phi.values[e] = 0; break;     // 0 -> 0
      case 1: case 3: out.reduced_phi.values[e] = 1; break;  // 1, -2 -> 1
      default: out.reduced_phi.values[e] = 2; break;    // 2, -1 -> -1
    }
  }
  auto base = find_coloring(g, t3, out.reduced_phi);
  if (!base) throw std::logic_error("Z3-colorable graph refused a coloring");
  out.base_coloring = *base;

  out.coloring.values.resize(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) {
    int c = out.base_coloring.values[v];
    out.coloring.values[v] = (c == 2) ? 4 : c;  // 0->0, 1->1, -1->-1
  }
  auto check = verify_coloring(g, t5, out.coloring, phi5);
  if (!check.ok) throw std::logic_error("lifted coloring failed verification: " + check.violation);
  return out;
}

// Density screen: a Z3-colorable graph has m < 2.8 n, so the ratio works
// as a pre-filter before the decider and as a cross-check after a yes verdict.
struct EdgeBound {
  double ratio = 0.0;
  bool passes = false;
};

inline EdgeBound edge_bound_check(const Multigraph& g) {
  EdgeBound b;
  if (g.num_vertices() == 0) { b.passes = true; return b; }
  b.ratio = static_cast<double>(g.num_edges()) / g.num_vertices();
  b.passes = g.num_edges() < 2.8 * g.num_vertices();
  return b;
}

}  // namespace groupflow
