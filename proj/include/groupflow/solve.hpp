#pragma once

// Constructive forbidden-value flow solvers. The structured route follows
// the two-step scheme: pick a special spanning tree, send flow around one
// lifted cycle per build pair in reverse order (choosing each value so that
// the whole simple-sum neighbourhood stays clear of the forbidden sets),
// then repair bad non-tree edges by pushing basis values around even
// subgraphs. Every result is verified against the original input before it
// is returned; any structured-path hiccup falls back to the exhaustive
// decider, which also certifies nonexistence.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "groupflow/constructible.hpp"
#include "groupflow/decide.hpp"
#include "groupflow/group.hpp"
#include "groupflow/multigraph.hpp"
#include "groupflow/cycle_structure.hpp"

namespace groupflow {

struct Step1Choice {
  int pair_index = 0;                   // position in the build order
  std::vector<std::string> cycle_edges; // lifted cycle, in traversal order
  GroupElement gamma;
};

struct Step2Round {
  GroupElement gamma;
  bool gamma_in_pi = true;
  std::vector<std::string> repaired_edges;
};

enum class SolverPath { structured, fallback };

struct SolverReport {
  bool found = false;
  Multigraph flow_graph;   // the graph the flow lives on (G - v for the apex form)
  FlowAssignment flow;     // aligned with flow_graph edges, input orientation
  SolverPath path = SolverPath::structured;
  std::vector<Step1Choice> step1_choices;
  std::vector<Step2Round> step2_rounds;
  SimpleSumBasis basis;
  std::string regime;      // "guaranteed" or "attempted"
  bool lift_shortcut_used = false;
  std::string failure_note;          // why the structured route was abandoned
  std::uint64_t fallback_space = 0;  // search space size when fallback certified
};

struct SolverOptions {
  bool require_structured = false;
  std::uint64_t fallback_budget = 2'000'000'000;
  long long tree_budget = 20'000'000;
};

namespace detail {

struct DartStep {
  int edge = -1;
  int dir = 0;  // +1 along the edge, -1 against
};

// BFS path between two vertices using only the allowed edges; returns dart
// steps. Empty when from == to.
inline std::optional<std::vector<DartStep>> bfs_path(const Multigraph& g, int from, int to,
                                                     const std::vector<bool>& allowed) {
  std::vector<int> via_edge(g.num_vertices(), -2);
  via_edge[from] = -1;
  std::vector<int> queue = {from};
  for (std::size_t qi = 0; qi < queue.size() && via_edge[to] == -2; ++qi) {
    int v = queue[qi];
    for (int e = 0; e < g.num_edges(); ++e) {
      if (!allowed[e]) continue;
      const auto& ed = g.edge(e);
      int w = -1;
      if (ed.tail == v) w = ed.head;
      else if (ed.head == v) w = ed.tail;
      else continue;
      if (via_edge[w] == -2) {
        via_edge[w] = e;
        queue.push_back(w);
      }
    }
  }
  if (via_edge[to] == -2) return std::nullopt;
  std::vector<DartStep> rev;
  int cur = to;
  while (cur != from) {
    int e = via_edge[cur];
    const auto& ed = g.edge(e);
    if (ed.head == cur) { rev.push_back({e, 1}); cur = ed.tail; }
    else { rev.push_back({e, -1}); cur = ed.head; }
  }
  std::reverse(rev.begin(), rev.end());
  return rev;
}

// Peels an even edge set into edge-disjoint cycles (as dart lists).
inline std::vector<std::vector<DartStep>> peel_cycles(const Multigraph& g,
                                                      std::vector<bool> present) {
  std::vector<std::vector<DartStep>> cycles;
  auto next_edge = [&](int v) {
    for (int e = 0; e < g.num_edges(); ++e)
      if (present[e] && (g.edge(e).tail == v || g.edge(e).head == v)) return e;
    return -1;
  };
  while (true) {
    int start_edge = -1;
    for (int e = 0; e < g.num_edges(); ++e)
      if (present[e]) { start_edge = e; break; }
    if (start_edge < 0) break;
    // Walk, recording the vertex trail; extract a cycle when a vertex repeats.
    std::vector<DartStep> trail;
    std::vector<int> verts = {g.edge(start_edge).tail};
    int cur = verts[0];
    while (true) {
      int e = next_edge(cur);
      if (e < 0) throw std::logic_error("even subgraph walk stalled");
      present[e] = false;
      int dir = g.edge(e).tail == cur ? 1 : -1;
      cur = dir > 0 ? g.edge(e).head : g.edge(e).tail;
      trail.push_back({e, dir});
      auto it = std::find(verts.begin(), verts.end(), cur);
      if (it != verts.end()) {
        std::size_t pos = it - verts.begin();
        std::vector<DartStep> cycle(trail.begin() + pos, trail.end());
        cycles.push_back(cycle);
        trail.resize(pos);
        verts.resize(pos + 1);
        if (trail.empty()) break;
      } else {
        verts.push_back(cur);
      }
    }
  }
  return cycles;
}

struct StructuredOutcome {
  bool ok = false;
  FlowAssignment flow;  // input orientation of H
  std::vector<Step1Choice> step1;
  std::vector<Step2Round> step2;
  bool shortcut_used = false;
  std::string note;
};

// Two-step solve on H (connected remainder of a cubic 3-edge-connected graph
// minus a degree-3 vertex). fm is index-aligned with H.
inline StructuredOutcome solve_structured(const Multigraph& h, const GroupTable& t,
                                          const ForbiddenMap& fm, const SimpleSumBasis& basis,
                                          long long tree_budget) {
  StructuredOutcome out;
  int m = h.num_edges();
  if (m == 0) {
    out.ok = true;
    out.flow.values.clear();
    return out;
  }

  auto tree = special_spanning_tree(h, tree_budget);
  if (tree.status != TreeSearchStatus::found) {
    out.note = tree.status == TreeSearchStatus::budget_exhausted
                   ? "special spanning tree search exhausted its budget"
                   : "no special spanning tree exists";
    return out;
  }
  const auto& deco = tree.decoration;

  std::vector<bool> is_red(m, false), is_blue(m, false);
  for (const auto& id : deco.tree_edges) is_red[h.edge_index(id)] = true;
  for (const auto& id : deco.nontree_edges) is_blue[h.edge_index(id)] = true;

  // Blue components and the contraction graph (pairs live there).
  std::vector<int> blue_comp(h.num_vertices(), -1);
  {
    int c = 0;
    for (int s = 0; s < h.num_vertices(); ++s) {
      if (blue_comp[s] >= 0) continue;
      blue_comp[s] = c;
      std::vector<int> stack = {s};
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int e = 0; e < m; ++e) {
          if (!is_blue[e]) continue;
          const auto& ed = h.edge(e);
          int w = -1;
          if (ed.tail == v) w = ed.head;
          else if (ed.head == v) w = ed.tail;
          else continue;
          if (blue_comp[w] < 0) { blue_comp[w] = c; stack.push_back(w); }
        }
      }
      ++c;
    }
  }

  // Pair index per red edge.
  int pair_count = static_cast<int>(deco.build_order.size());
  std::map<std::string, int> pair_of;
  for (int i = 0; i < pair_count; ++i) {
    pair_of[deco.build_order[i].first] = i;
    pair_of[deco.build_order[i].second] = i;
  }
  for (const auto& id : deco.tree_edges)
    if (!pair_of.count(id)) {
      out.note = "red edge missing from the build order";
      return out;
    }

  // All values live in the graph's own orientation; cycle directions enter
  // the selection criterion instead of flipping edges.
  std::vector<int> flow(m, t.zero());
  std::vector<ElementSet> banned(m);
  for (int e = 0; e < m; ++e) banned[e] = make_element_set(t, fm.forbidden[e]);

  ElementSet pi_prime(t.order());
  std::vector<int> pi_idx;
  {
    for (const auto& el : basis.pi) pi_idx.push_back(t.index(el));
    for (const auto& el : basis.pi_prime) pi_prime.set(t.index(el));
  }
  auto pi_prime_members = pi_prime.members();

  // ---- Step 1: assign the red pairs in reverse build order. ----
  for (int i = pair_count - 1; i >= 0; --i) {
    int ea = h.edge_index(deco.build_order[i].first);
    int eb = h.edge_index(deco.build_order[i].second);

    // Components of the contraction using pairs < i only.
    std::vector<int> uf(h.num_vertices());
    for (int v = 0; v < h.num_vertices(); ++v) uf[v] = v;
    std::function<int(int)> find = [&](int x) {
      while (uf[x] != x) x = uf[x] = uf[uf[x]];
      return x;
    };
    // Blue components are contracted from the start.
    for (int v = 0; v < h.num_vertices(); ++v)
      for (int w = v + 1; w < h.num_vertices(); ++w)
        if (blue_comp[v] == blue_comp[w]) uf[find(w)] = find(v);
    std::vector<bool> usable(m, false);
    for (int e = 0; e < m; ++e)
      if (is_red[e] && pair_of[h.edge(e).id] < i) {
        usable[e] = true;
        uf[find(h.edge(e).tail)] = find(h.edge(e).head);
      }

    const auto& eda = h.edge(ea);
    const auto& edb = h.edge(eb);
    int side_y = find(eda.head);
    int side_x = find(eda.tail);
    if (side_x == side_y) {
      out.note = "pair edge endpoints collapsed before their own step";
      return out;
    }
    int b_from, b_to;  // traverse eb from side_y to side_x
    int dir_b;
    if (find(edb.tail) == side_y && find(edb.head) == side_x) {
      dir_b = 1;
      b_from = edb.tail;
      b_to = edb.head;
    } else if (find(edb.head) == side_y && find(edb.tail) == side_x) {
      dir_b = -1;
      b_from = edb.head;
      b_to = edb.tail;
    } else {
      out.note = "pair edges do not join the same two components";
      return out;
    }

    // Connector paths use blue edges plus earlier red edges; the lift below
    // re-expands red steps across blue components, so paths here may use
    // blue edges and usable red edges alike.
    std::vector<bool> allowed(m, false);
    for (int e = 0; e < m; ++e) allowed[e] = is_blue[e] || usable[e];
    auto path_y = bfs_path(h, eda.head, b_from, allowed);
    auto path_x = bfs_path(h, b_to, eda.tail, allowed);
    if (!path_y || !path_x) {
      out.note = "pair cycle connector missing";
      return out;
    }
    std::vector<DartStep> cycle;
    cycle.push_back({ea, 1});
    cycle.insert(cycle.end(), path_y->begin(), path_y->end());
    cycle.push_back({eb, dir_b});
    cycle.insert(cycle.end(), path_x->begin(), path_x->end());

    // The two connector paths live in disjoint components of the
    // pairs-below-i reachability, so the lifted walk is a simple cycle;
    // splice out any repeat all the same and flag it.
    {
      bool changed = true;
      while (changed) {
        changed = false;
        std::vector<int> verts;
        verts.push_back(cycle[0].dir > 0 ? h.edge(cycle[0].edge).tail
                                         : h.edge(cycle[0].edge).head);
        for (const auto& st : cycle) {
          const auto& ed = h.edge(st.edge);
          verts.push_back(st.dir > 0 ? ed.head : ed.tail);
        }
        for (std::size_t a = 0; a < verts.size() && !changed; ++a)
          for (std::size_t b = a + 1; b + 1 < verts.size() && !changed; ++b)
            if (verts[a] == verts[b]) {
              bool loses_pair = false;
              for (std::size_t s = a; s < b; ++s)
                if (cycle[s].edge == ea || cycle[s].edge == eb) loses_pair = true;
              if (loses_pair) continue;
              cycle.erase(cycle.begin() + a, cycle.begin() + b);
              out.shortcut_used = true;
              changed = true;
            }
      }
    }

    // Pick the cycle value: for both pair edges, the accumulated flow plus
    // this push must stay clear of the forbidden set even after any later
    // simple-sum drift. Cycle directions enter the criterion directly.
    int da = 1;  // the cycle starts with ea forward
    int db = dir_b;
    int gamma = -1;
    for (int cand = 0; cand < t.order(); ++cand) {
      int va = t.add(flow[ea], da > 0 ? cand : t.neg(cand));
      int vb = t.add(flow[eb], db > 0 ? cand : t.neg(cand));
      bool good = true;
      for (int pp : pi_prime_members) {
        if (banned[ea].test(t.add(va, pp)) || banned[eb].test(t.add(vb, pp))) {
          good = false;
          break;
        }
      }
      if (good) { gamma = cand; break; }
    }
    if (gamma < 0) {
      out.note = "step 1 found no value clearing the simple-sum neighbourhood";
      return out;
    }

    Step1Choice choice;
    choice.pair_index = i;
    choice.gamma = t.element(gamma);
    for (const auto& st : cycle) {
      choice.cycle_edges.push_back(h.edge(st.edge).id);
      flow[st.edge] = t.add(flow[st.edge], st.dir > 0 ? gamma : t.neg(gamma));
    }
    out.step1.push_back(std::move(choice));
  }

  // Step-1 audit: every red edge's value keeps the whole simple-sum
  // neighbourhood clear of its forbidden set.
  for (int e = 0; e < m; ++e) {
    if (!is_red[e]) continue;
    for (int pp : pi_prime_members)
      if (banned[e].test(t.add(flow[e], pp))) {
        out.note = "step 1 left a red edge without simple-sum clearance";
        return out;
      }
  }

  // ---- Step 2: repair bad blue edges. ----
  std::vector<int> flow_after_step1 = flow;
  bool all_rounds_in_pi = true;
  // Red tree parents for fundamental cycles.
  std::vector<bool> red_only(m, false);
  for (int e = 0; e < m; ++e) red_only[e] = is_red[e];

  auto fundamental_cycle = [&](int blue_edge) {
    const auto& ed = h.edge(blue_edge);
    auto path = bfs_path(h, ed.head, ed.tail, red_only);
    if (!path) throw std::logic_error("red tree does not span");
    std::vector<DartStep> cyc;
    cyc.push_back({blue_edge, 1});
    cyc.insert(cyc.end(), path->begin(), path->end());
    return cyc;
  };

  auto is_bad = [&](int e) { return banned[e].test(flow[e]); };
  std::set<int> used_gamma_orbits;
  int round_guard = m + static_cast<int>(pi_idx.size()) + 4;
  while (true) {
    if (--round_guard < 0) {
      out.note = "step 2 did not terminate";
      return out;
    }
    std::vector<int> bad;
    for (int e = 0; e < m; ++e)
      if (is_blue[e] && is_bad(e)) bad.push_back(e);
    if (bad.empty()) break;

    int pick = bad.front();
    auto good_for = [&](int gamma, int e) {
      return !banned[e].test(t.add(flow[e], gamma)) && !banned[e].test(t.sub(flow[e], gamma));
    };
    int gamma = -1;
    bool in_pi = true;
    for (int cand : pi_idx)
      if (cand != t.zero() && good_for(cand, pick)) { gamma = cand; break; }
    if (gamma < 0) {
      in_pi = false;
      for (int cand = 1; cand < t.order(); ++cand)
        if (good_for(cand, pick)) { gamma = cand; break; }
    }
    if (gamma < 0) {
      out.note = "step 2 found no good repair value";
      return out;
    }
    all_rounds_in_pi = all_rounds_in_pi && in_pi;
    if (in_pi) {
      int orbit = std::min(gamma, t.neg(gamma));
      if (used_gamma_orbits.count(orbit)) {
        out.note = "step 2 revisited a repair value";
        return out;
      }
      used_gamma_orbits.insert(orbit);
    }

    std::vector<int> repaired;
    for (int e : bad)
      if (good_for(gamma, e)) repaired.push_back(e);

    // Symmetric difference of the fundamental cycles of the repaired edges.
    std::vector<bool> parity(m, false);
    for (int e : repaired)
      for (const auto& st : fundamental_cycle(e)) parity[st.edge] = !parity[st.edge];
    for (const auto& cyc : peel_cycles(h, parity))
      for (const auto& st : cyc)
        flow[st.edge] = t.add(flow[st.edge], st.dir > 0 ? gamma : t.neg(gamma));

    Step2Round round;
    round.gamma = t.element(gamma);
    round.gamma_in_pi = in_pi;
    for (int e : repaired) round.repaired_edges.push_back(h.edge(e).id);
    out.step2.push_back(std::move(round));

    for (int e : repaired)
      if (is_bad(e)) {
        out.note = "step 2 repair left an edge bad";
        return out;
      }
  }

  // Audit: with basis-only rounds, the total step-2 drift on any red edge is
  // a simple sum, which is what kept the step-1 choices safe.
  if (all_rounds_in_pi) {
    for (int e = 0; e < m; ++e) {
      if (!is_red[e]) continue;
      int drift = t.sub(flow[e], flow_after_step1[e]);
      if (!pi_prime.test(drift)) {
        out.note = "red edge drifted outside the simple sum";
        return out;
      }
    }
  }

  out.flow.values = flow;
  out.ok = true;
  return out;
}

inline Multigraph remove_vertex(const Multigraph& g, int v) {
  Multigraph h;
  for (int u = 0; u < g.num_vertices(); ++u)
    if (u != v) h.add_vertex(g.vertex_id(u));
  for (const auto& e : g.edges())
    if (e.tail != v && e.head != v)
      h.add_edge(e.id, g.vertex_id(e.tail), g.vertex_id(e.head));
  return h;
}

}  // namespace detail

// Flow on H = G - v avoiding the forbidden sets, for 3-edge-connected G with
// a degree-3 vertex v. The forbidden map is index-aligned with G; entries on
// edges at v must be empty. The guarantee regime is |Gamma| > 8k^3; any
// larger-than-k group is attempted and the report records which regime ran.
inline SolverReport solve_forbidden_flow_apex(const Multigraph& g, const std::string& apex_id,
                                              const ForbiddenMap& fm, const GroupTable& t,
                                              const SolverOptions& opts = {}) {
  if (edge_connectivity_class(g) < 3)
    throw std::invalid_argument("apex solver needs a 3-edge-connected graph");
  int v = g.vertex_index(apex_id);
  if (g.degree(v) != 3) throw std::invalid_argument("apex vertex must have degree 3");
  if (static_cast<int>(fm.forbidden.size()) != g.num_edges())
    throw std::invalid_argument("forbidden map must align with the graph's edges");
  for (int e = 0; e < g.num_edges(); ++e)
    if ((g.edge(e).tail == v || g.edge(e).head == v) && !fm.forbidden[e].empty())
      throw std::invalid_argument("forbidden sets on apex edges must be empty");

  SolverReport rep;
  int k = fm.bound();
  rep.regime = (static_cast<long long>(t.order()) > 8LL * k * k * k) ? "guaranteed" : "attempted";

  Multigraph h = detail::remove_vertex(g, v);
  ForbiddenMap fm_h = ForbiddenMap::empty(h.num_edges());
  for (int e = 0; e < h.num_edges(); ++e)
    fm_h.forbidden[e] = fm.forbidden[g.edge_index(h.edge(e).id)];
  rep.flow_graph = h;

  // Structured route, on the cubic expansion when needed. The basis size
  // follows the scheme's 2k, clamped for groups too small to host it (those
  // are far outside the guarantee regime and usually end in the fallback).
  std::string note;
  bool structured_ok = false;
  detail::StructuredOutcome sol;
  try {
    int basis_k = std::max(1, std::min(2 * std::max(k, 1), t.order() - 1));
    BasisOptions bopts;
    bopts.prefer_zero_free = true;
    rep.basis = choose_simple_sum_basis(t, basis_k, bopts);
    bool cubic = true;
    for (int u = 0; u < g.num_vertices(); ++u)
      if (g.degree(u) != 3) { cubic = false; break; }
    Multigraph hc = h;
    ForbiddenMap fm_hc = fm_h;
    if (!cubic) {
      auto exp = cubic_expansion(g);
      int vexp = exp.graph.vertex_index(apex_id);
      if (exp.graph.degree(vexp) != 3) throw std::logic_error("expansion changed the apex degree");
      hc = detail::remove_vertex(exp.graph, vexp);
      fm_hc = ForbiddenMap::empty(hc.num_edges());
      for (int e = 0; e < hc.num_edges(); ++e)
        if (g.has_edge(hc.edge(e).id))
          fm_hc.forbidden[e] = fm.forbidden[g.edge_index(hc.edge(e).id)];
    }
    sol = detail::solve_structured(hc, t, fm_hc, rep.basis, opts.tree_budget);
    if (sol.ok && !cubic) {
      // Restrict to the original edges of H.
      FlowAssignment restricted;
      restricted.values.resize(h.num_edges());
      for (int e = 0; e < h.num_edges(); ++e)
        restricted.values[e] = sol.flow.values[hc.edge_index(h.edge(e).id)];
      sol.flow = std::move(restricted);
    }
    structured_ok = sol.ok;
    note = sol.note;
  } catch (const std::exception& ex) {
    note = ex.what();
  }

  if (structured_ok) {
    BoundaryMap zero{std::vector<int>(h.num_vertices(), t.zero())};
    auto check = verify_flow(h, t, sol.flow, zero, fm_h);
    if (check.ok) {
      rep.found = true;
      rep.path = SolverPath::structured;
      rep.flow = sol.flow;
      rep.step1_choices = sol.step1;
      rep.step2_rounds = sol.step2;
      rep.lift_shortcut_used = sol.shortcut_used;
      return rep;
    }
    note = "structured flow failed verification: " + check.violation;
  }

  if (opts.require_structured)
    throw StructuredPathError("structured path failed: " + (note.empty() ? "unknown" : note));

  auto fb = exists_flow_avoiding(h, t, fm_h, opts.fallback_budget);
  if (fb.budget_exceeded) throw BudgetExceededError("fallback search exceeded its budget");
  rep.path = SolverPath::fallback;
  rep.failure_note = note;
  rep.fallback_space = fb.space;
  rep.found = fb.found;
  if (fb.found) {
    rep.flow = fb.flow;
    BoundaryMap zero{std::vector<int>(h.num_vertices(), t.zero())};
    auto check = verify_flow(h, t, rep.flow, zero, fm_h);
    if (!check.ok) throw std::logic_error("fallback flow failed verification: " + check.violation);
  }
  return rep;
}

// Corollary form: attach a degree-3 apex to a 3-edge-connected graph and
// solve on G = (G + apex) - apex. The apex joins the three least vertices
// (doubling up when the graph has fewer); 3-edge-connectivity of the result
// is checked, not assumed.
inline SolverReport solve_forbidden_flow_3ec(const Multigraph& g, const ForbiddenMap& fm,
                                             const GroupTable& t, const SolverOptions& opts = {}) {
  if (edge_connectivity_class(g) < 3)
    throw std::invalid_argument("solver needs a 3-edge-connected graph");
  if (static_cast<int>(fm.forbidden.size()) != g.num_edges())
    throw std::invalid_argument("forbidden map must align with the graph's edges");

  std::string apex = "apex";
  while (g.has_vertex(apex)) apex += "_";
  Multigraph ge;
  for (const auto& vid : g.vertex_ids()) ge.add_vertex(vid);
  ge.add_vertex(apex);
  for (const auto& e : g.edges()) ge.add_edge(e.id, g.vertex_id(e.tail), g.vertex_id(e.head));
  std::vector<std::string> targets;
  for (int i = 0; i < 3; ++i)
    targets.push_back(g.vertex_id(std::min(i, g.num_vertices() - 1)));
  for (int i = 0; i < 3; ++i) {
    std::string id = "apex:" + std::to_string(i);
    while (ge.has_edge(id)) id += "_";
    ge.add_edge(id, apex, targets[i]);
  }
  if (edge_connectivity_class(ge) < 3)
    throw std::logic_error("apex attachment broke 3-edge-connectivity");

  ForbiddenMap fme = ForbiddenMap::empty(ge.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) fme.forbidden[e] = fm.forbidden[e];

  auto rep = solve_forbidden_flow_apex(ge, apex, fme, t, opts);
  // flow_graph is (G + apex) - apex, which equals G edge-for-edge.
  int kk = fm.bound();
  rep.regime = (static_cast<long long>(t.order()) > 8LL * kk * kk * kk) ? "guaranteed" : "attempted";
  return rep;
}

// 2-edge-connected form. Normalizes to the 3-edge-connected core, merges the
// forbidden sets along each class path (at most k*q(G) values per core
// edge), solves there, and transports the values back with the recorded
// signs. Closed classes carry one value each and are handled directly.
inline SolverReport solve_forbidden_flow_2ec(const Multigraph& g, const ForbiddenMap& fm,
                                             const GroupTable& t, const SolverOptions& opts = {}) {
  if (edge_connectivity_class(g) < 2)
    throw std::invalid_argument("solver needs a 2-edge-connected graph");
  if (static_cast<int>(fm.forbidden.size()) != g.num_edges())
    throw std::invalid_argument("forbidden map must align with the graph's edges");

  auto norm = normalize_to_subdivision(g);
  auto part = cycle_equivalence(g);
  int k = fm.bound();
  long long kq = static_cast<long long>(k) * part.cyclicity;
  SolverReport rep;
  rep.flow_graph = g;
  rep.regime = (static_cast<long long>(t.order()) > 8LL * kq * kq * kq) ? "guaranteed" : "attempted";
  rep.flow.values.assign(g.num_edges(), t.zero());

  // Closed classes: one value per class, avoiding the sign-adjusted union.
  for (const auto& cp : norm.closed_classes) {
    ElementSet banned(t.order());
    for (std::size_t i = 0; i < cp.edge_ids.size(); ++i) {
      int e = g.edge_index(cp.edge_ids[i]);
      for (int bad : fm.forbidden[e]) banned.set(cp.signs[i] > 0 ? bad : t.neg(bad));
    }
    int gamma = -1;
    for (int cand = 0; cand < t.order(); ++cand)
      if (!banned.test(cand)) { gamma = cand; break; }
    if (gamma < 0) {
      // The class admits no value at all; certify through the fallback.
      if (opts.require_structured)
        throw StructuredPathError("a detached class admits no flow value");
      auto fb = exists_flow_avoiding(g, t, fm, opts.fallback_budget);
      if (fb.budget_exceeded) throw BudgetExceededError("fallback search exceeded its budget");
      rep.path = SolverPath::fallback;
      rep.found = fb.found;
      rep.fallback_space = fb.space;
      rep.failure_note = "a detached class admits no flow value";
      if (fb.found) rep.flow = fb.flow;
      return rep;
    }
    for (std::size_t i = 0; i < cp.edge_ids.size(); ++i) {
      int e = g.edge_index(cp.edge_ids[i]);
      rep.flow.values[e] = cp.signs[i] > 0 ? gamma : t.neg(gamma);
    }
  }

  // Core: merged forbidden sets, solved by the 3-edge-connected machinery.
  if (norm.core.num_edges() > 0) {
    ForbiddenMap fm_core = ForbiddenMap::empty(norm.core.num_edges());
    for (int ce = 0; ce < norm.core.num_edges(); ++ce) {
      const auto& cp = norm.core_paths[ce];
      ElementSet banned(t.order());
      for (std::size_t i = 0; i < cp.edge_ids.size(); ++i) {
        int e = g.edge_index(cp.edge_ids[i]);
        for (int bad : fm.forbidden[e]) banned.set(cp.signs[i] > 0 ? bad : t.neg(bad));
      }
      fm_core.forbidden[ce] = banned.members();
    }
    auto sub = solve_forbidden_flow_3ec(norm.core, fm_core, t, opts);
    rep.path = sub.path;
    rep.step1_choices = sub.step1_choices;
    rep.step2_rounds = sub.step2_rounds;
    rep.basis = sub.basis;
    rep.lift_shortcut_used = sub.lift_shortcut_used;
    rep.failure_note = sub.failure_note;
    rep.fallback_space = sub.fallback_space;
    if (!sub.found) {
      // Flows correspond bijectively between G and the core, so the core's
      // certified nonexistence carries over; re-certify on G all the same.
      if (opts.require_structured)
        throw StructuredPathError("core instance admits no flow");
      auto fb = exists_flow_avoiding(g, t, fm, opts.fallback_budget);
      if (fb.budget_exceeded) throw BudgetExceededError("fallback search exceeded its budget");
      rep.found = fb.found;
      rep.path = SolverPath::fallback;
      rep.fallback_space = fb.space;
      if (fb.found) rep.flow = fb.flow;
      return rep;
    }
    for (int ce = 0; ce < norm.core.num_edges(); ++ce) {
      const auto& cp = norm.core_paths[ce];
      int val = sub.flow.values[ce];
      for (std::size_t i = 0; i < cp.edge_ids.size(); ++i) {
        int e = g.edge_index(cp.edge_ids[i]);
        rep.flow.values[e] = cp.signs[i] > 0 ? val : t.neg(val);
      }
    }
  }

  rep.found = true;
  BoundaryMap zero{std::vector<int>(g.num_vertices(), t.zero())};
  auto check = verify_flow(g, t, rep.flow, zero, fm);
  if (!check.ok) {
    if (opts.require_structured)
      throw StructuredPathError("transported flow failed verification: " + check.violation);
    auto fb = exists_flow_avoiding(g, t, fm, opts.fallback_budget);
    if (fb.budget_exceeded) throw BudgetExceededError("fallback search exceeded its budget");
    rep.path = SolverPath::fallback;
    rep.failure_note = "transported flow failed verification: " + check.violation;
    rep.found = fb.found;
    rep.fallback_space = fb.space;
    if (fb.found) rep.flow = fb.flow;
  }
  return rep;
}

}  // namespace groupflow
