#pragma once

// Exhaustive, certificate-producing deciders for group connectivity and
// group colorability, the generalized forbidden-value flow search, and the
// independent certificate checkers every solver and test defers to.
//
// Boundaries, flows, edge maps and colorings are index-aligned with the
// graph's canonical vertex/edge order; the JSON layer translates ids.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "groupflow/group.hpp"
#include "groupflow/multigraph.hpp"

namespace groupflow {

struct BudgetExceededError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct StructuredPathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BoundaryMap {
  std::vector<int> beta;  // element index per vertex; must sum to zero
};

struct FlowAssignment {
  std::vector<int> values;  // element index per edge
};

struct EdgeGroupMap {
  std::vector<int> values;  // element index per edge
};

struct ColoringAssignment {
  std::vector<int> values;  // element index per vertex
};

// Per-edge forbidden sets F_e, as sorted element indices.
struct ForbiddenMap {
  std::vector<std::vector<int>> forbidden;

  static ForbiddenMap empty(int num_edges) {
    ForbiddenMap fm;
    fm.forbidden.assign(num_edges, {});
    return fm;
  }
  int bound() const {
    std::size_t k = 0;
    for (const auto& f : forbidden) k = std::max(k, f.size());
    return static_cast<int>(k);
  }
};

struct VerifyResult {
  bool ok = true;
  std::string violation;  // names the offending vertex or edge
};

// Conservation against beta plus forbidden-value avoidance, by direct
// summation. This is the final arbiter for every solver result.
inline VerifyResult verify_flow(const Multigraph& g, const GroupTable& t,
                                const FlowAssignment& f, const BoundaryMap& beta,
                                const ForbiddenMap& fm) {
  if (static_cast<int>(f.values.size()) != g.num_edges())
    return {false, "flow size does not match edge count"};
  if (static_cast<int>(beta.beta.size()) != g.num_vertices())
    return {false, "boundary size does not match vertex count"};
  if (static_cast<int>(fm.forbidden.size()) != g.num_edges())
    return {false, "forbidden map size does not match edge count"};
  for (int v = 0; v < g.num_vertices(); ++v) {
    int sum = t.zero();
    for (int e = 0; e < g.num_edges(); ++e) {
      if (g.edge(e).tail == v) sum = t.add(sum, f.values[e]);
      if (g.edge(e).head == v) sum = t.sub(sum, f.values[e]);
    }
    if (sum != beta.beta[v])
      return {false, "conservation fails at vertex " + g.vertex_id(v)};
  }
  for (int e = 0; e < g.num_edges(); ++e)
    for (int bad : fm.forbidden[e])
      if (f.values[e] == bad)
        return {false, "forbidden value on edge " + g.edge(e).id};
  return {};
}

inline VerifyResult verify_coloring(const Multigraph& g, const GroupTable& t,
                                    const ColoringAssignment& c, const EdgeGroupMap& phi) {
  if (static_cast<int>(c.values.size()) != g.num_vertices())
    return {false, "coloring size does not match vertex count"};
  if (static_cast<int>(phi.values.size()) != g.num_edges())
    return {false, "edge map size does not match edge count"};
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& ed = g.edge(e);
    if (t.sub(c.values[ed.head], c.values[ed.tail]) == phi.values[e])
      return {false, "coloring clashes on edge " + ed.id};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Flow search: fix a spanning tree, enumerate the non-tree values, complete
// the tree values from conservation. |Gamma|^(m-n+1) assignments per
// boundary instead of |Gamma|^m.
// ---------------------------------------------------------------------------

struct FlowSearch {
  bool found = false;
  FlowAssignment flow;
  std::uint64_t space = 0;     // assignments in the enumerated space
  std::uint64_t tried = 0;
  bool budget_exceeded = false;
};

namespace detail {

struct TreeScheme {
  std::vector<int> parent_edge;   // per vertex, -1 at root
  std::vector<int> nontree;       // edge indices
  std::vector<int> reverse_bfs;   // vertices, leaves first, root last
};

inline TreeScheme tree_scheme(const Multigraph& g) {
  TreeScheme s;
  s.parent_edge = bfs_spanning_tree(g);
  std::vector<bool> is_tree(g.num_edges(), false);
  for (int v = 0; v < g.num_vertices(); ++v)
    if (s.parent_edge[v] >= 0) is_tree[s.parent_edge[v]] = true;
  for (int e = 0; e < g.num_edges(); ++e)
    if (!is_tree[e]) s.nontree.push_back(e);
  // Reverse BFS order: recompute discovery order from parent depths.
  std::vector<int> depth(g.num_vertices(), 0), order;
  for (int v = 0; v < g.num_vertices(); ++v) {
    int d = 0, u = v;
    while (s.parent_edge[u] >= 0) {
      const auto& ed = g.edge(s.parent_edge[u]);
      u = (ed.tail == u) ? ed.head : ed.tail;
      ++d;
    }
    depth[v] = d;
  }
  for (int v = 0; v < g.num_vertices(); ++v) order.push_back(v);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return depth[a] > depth[b]; });
  s.reverse_bfs = order;
  return s;
}

inline std::uint64_t pow_capped(std::uint64_t base, int exp, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > cap / std::max<std::uint64_t>(base, 1)) return cap + 1;
    r *= base;
  }
  return r;
}

}  // namespace detail

// First flow with the given boundary avoiding every forbidden set, in
// canonical odometer order over the non-tree edges (first non-tree edge is
// the least significant digit). The budget counts completed assignments.
inline FlowSearch find_flow(const Multigraph& g, const GroupTable& t, const BoundaryMap& beta,
                            const ForbiddenMap& fm, std::uint64_t budget = UINT64_MAX) {
  FlowSearch res;
  auto scheme = detail::tree_scheme(g);
  int k = t.order();
  int free = static_cast<int>(scheme.nontree.size());
  res.space = detail::pow_capped(k, free, UINT64_MAX - 1);

  std::vector<int> digits(free, 0);
  std::vector<int> f(g.num_edges(), t.zero());
  while (true) {
    if (res.tried >= budget) { res.budget_exceeded = true; return res; }
    ++res.tried;
    for (int i = 0; i < free; ++i) f[scheme.nontree[i]] = digits[i];
    bool ok = true;
    // Forbidden check on non-tree edges first.
    for (int i = 0; i < free && ok; ++i)
      for (int bad : fm.forbidden[scheme.nontree[i]])
        if (digits[i] == bad) { ok = false; break; }
    if (ok) {
      for (int v : scheme.reverse_bfs) {
        int pe = scheme.parent_edge[v];
        if (pe < 0) continue;
        int residual = t.zero();
        for (int e = 0; e < g.num_edges(); ++e) {
          if (e == pe) continue;
          if (g.edge(e).tail == v) residual = t.add(residual, f[e]);
          if (g.edge(e).head == v) residual = t.sub(residual, f[e]);
        }
        int need = t.sub(beta.beta[v], residual);
        f[pe] = (g.edge(pe).tail == v) ? need : t.neg(need);
        for (int bad : fm.forbidden[pe])
          if (f[pe] == bad) { ok = false; break; }
        if (!ok) break;
      }
    }
    if (ok) {
      res.found = true;
      res.flow.values = f;
      return res;
    }
    int i = 0;
    for (; i < free; ++i) {
      if (++digits[i] < k) break;
      digits[i] = 0;
    }
    if (i == free) return res;
  }
}

// Zero-boundary flow avoiding the given forbidden sets.
inline FlowSearch exists_flow_avoiding(const Multigraph& g, const GroupTable& t,
                                       const ForbiddenMap& fm, std::uint64_t budget = UINT64_MAX) {
  if (!is_connected(g)) throw std::invalid_argument("flow search needs a connected graph");
  BoundaryMap zero{std::vector<int>(g.num_vertices(), t.zero())};
  return find_flow(g, t, zero, fm, budget);
}

// ---------------------------------------------------------------------------
// Group connectivity.
// ---------------------------------------------------------------------------

struct ConnectivityVerdict {
  bool connected = false;
  std::optional<BoundaryMap> failing_beta;  // certificate for "no"
  std::optional<std::string> bridge_id;     // early rejection witness
  bool budget_exceeded = false;
  std::uint64_t checked = 0;
};

// Decides whether every zero-sum boundary admits a nowhere-zero flow.
// Boundaries are enumerated little-endian over vertices 0..n-2; the last
// vertex absorbs the negated sum. A bridge forces the zero boundary to fail,
// so bridged inputs return early with that certificate.
inline ConnectivityVerdict is_group_connected(const Multigraph& g, const GroupTable& t,
                                              std::uint64_t budget = 1'000'000'000) {
  if (!is_connected(g)) throw std::invalid_argument("connectivity decider needs a connected graph");
  ConnectivityVerdict v;
  int n = g.num_vertices(), k = t.order();
  if (g.num_edges() > 0) {
    int bridge = find_bridge(g);
    if (bridge >= 0) {
      v.connected = false;
      v.bridge_id = g.edge(bridge).id;
      v.failing_beta = BoundaryMap{std::vector<int>(n, t.zero())};
      return v;
    }
  }
  ForbiddenMap zero_forbidden;
  zero_forbidden.forbidden.assign(g.num_edges(), {t.zero()});

  std::vector<int> digits(std::max(n - 1, 0), 0);
  while (true) {
    BoundaryMap beta;
    beta.beta.assign(n, t.zero());
    int sum = t.zero();
    for (int i = 0; i + 1 < n; ++i) {
      beta.beta[i] = digits[i];
      sum = t.add(sum, digits[i]);
    }
    if (n > 0) beta.beta[n - 1] = t.neg(sum);

    auto r = find_flow(g, t, beta, zero_forbidden, budget - std::min<std::uint64_t>(budget, v.checked));
    v.checked += r.tried;
    if (r.budget_exceeded || v.checked >= budget) {
      v.budget_exceeded = true;
      return v;
    }
    if (!r.found) {
      v.connected = false;
      v.failing_beta = beta;
      return v;
    }
    int i = 0;
    for (; i + 1 < n; ++i) {
      if (++digits[i] < k) break;
      digits[i] = 0;
    }
    if (i + 1 >= n) break;
  }
  v.connected = true;
  return v;
}

// ---------------------------------------------------------------------------
// Group colorability.
// ---------------------------------------------------------------------------

struct ColorabilityVerdict {
  bool colorable = false;
  std::optional<EdgeGroupMap> failing_phi;  // certificate for "no"
  bool budget_exceeded = false;
  std::uint64_t checked = 0;
};

namespace detail {

// Backtracking proper-coloring search under the edge map phi. Colors are
// assigned in BFS vertex order with each component root pinned to zero
// (properness is invariant under adding a constant per component).
inline bool colorable_under(const Multigraph& g, const GroupTable& t,
                            const std::vector<int>& phi, ColoringAssignment* out) {
  int n = g.num_vertices();
  std::vector<int> order, root(n, 0);
  std::vector<bool> seen(n, false);
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    seen[s] = true;
    root[s] = 1;
    std::vector<int> queue = {s};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      int v = queue[qi];
      order.push_back(v);
      for (int e = 0; e < g.num_edges(); ++e) {
        const auto& ed = g.edge(e);
        int w = -1;
        if (ed.tail == v) w = ed.head;
        else if (ed.head == v) w = ed.tail;
        else continue;
        if (!seen[w]) { seen[w] = true; queue.push_back(w); }
      }
    }
  }
  std::vector<int> c(n, -1);
  std::vector<int> pos(n, 0);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;

  std::function<bool(int)> rec = [&](int idx) -> bool {
    if (idx == n) return true;
    int v = order[idx];
    int lo = 0, hi = root[v] ? 1 : t.order();
    for (int val = lo; val < hi; ++val) {
      c[v] = val;
      bool ok = true;
      for (int e = 0; e < g.num_edges() && ok; ++e) {
        const auto& ed = g.edge(e);
        if (ed.tail == v && c[ed.head] >= 0 && t.sub(c[ed.head], val) == phi[e]) ok = false;
        if (ed.head == v && c[ed.tail] >= 0 && t.sub(val, c[ed.tail]) == phi[e]) ok = false;
      }
      if (ok && rec(idx + 1)) return true;
    }
    c[v] = -1;
    return false;
  };
  bool ok = rec(0);
  if (ok && out) out->values = c;
  return ok;
}

}  // namespace detail

// Decides whether every edge map phi admits a proper coloring. Adding a
// vertex potential to phi preserves the verdict, so phi is normalized to
// zero on a spanning forest and only the non-forest values are enumerated.
inline ColorabilityVerdict is_group_colorable(const Multigraph& g, const GroupTable& t,
                                              std::uint64_t budget = 1'000'000'000) {
  ColorabilityVerdict v;
  int k = t.order();
  // Spanning forest: BFS per component.
  std::vector<bool> forest_edge(g.num_edges(), false), seen(g.num_vertices(), false);
  for (int s = 0; s < g.num_vertices(); ++s) {
    if (seen[s]) continue;
    seen[s] = true;
    std::vector<int> queue = {s};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      int u = queue[qi];
      for (int e = 0; e < g.num_edges(); ++e) {
        const auto& ed = g.edge(e);
        int w = -1;
        if (ed.tail == u) w = ed.head;
        else if (ed.head == u) w = ed.tail;
        else continue;
        if (!seen[w]) {
          seen[w] = true;
          forest_edge[e] = true;
          queue.push_back(w);
        }
      }
    }
  }
  std::vector<int> free_edges;
  for (int e = 0; e < g.num_edges(); ++e)
    if (!forest_edge[e]) free_edges.push_back(e);

  std::vector<int> digits(free_edges.size(), 0), phi(g.num_edges(), t.zero());
  while (true) {
    if (v.checked >= budget) { v.budget_exceeded = true; return v; }
    ++v.checked;
    for (std::size_t i = 0; i < free_edges.size(); ++i) phi[free_edges[i]] = digits[i];
    if (!detail::colorable_under(g, t, phi, nullptr)) {
      v.colorable = false;
      v.failing_phi = EdgeGroupMap{phi};
      return v;
    }
    std::size_t i = 0;
    for (; i < free_edges.size(); ++i) {
      if (++digits[i] < k) break;
      digits[i] = 0;
    }
    if (i == free_edges.size()) break;
  }
  v.colorable = true;
  return v;
}

// Proper coloring for one particular phi (exists iff the graph is
// Gamma-colorable restricted to that map).
inline std::optional<ColoringAssignment> find_coloring(const Multigraph& g, const GroupTable& t,
                                                       const EdgeGroupMap& phi) {
  ColoringAssignment c;
  if (detail::colorable_under(g, t, phi.values, &c)) return c;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Profiles over all groups of bounded order.
// ---------------------------------------------------------------------------

struct GroupVerdict {
  FiniteAbelianGroup group;
  bool yes = false;
  std::optional<BoundaryMap> beta;     // connectivity counterexample
  std::optional<std::string> bridge_id;
  std::optional<EdgeGroupMap> phi;     // colorability counterexample
};

struct Profile {
  enum class Kind { connectivity, colorability };
  Kind kind = Kind::connectivity;
  long long max_order = 0;
  std::vector<std::vector<GroupVerdict>> by_order;  // index 0 = order 1
  std::optional<long long> weak_number;             // least order with some yes
  // Least order from which every tested group up to max_order says yes;
  // bounded evidence only, not the unbounded strong number itself.
  std::optional<long long> strong_evidence_number;
  bool budget_exceeded = false;
  long long completed_up_to = 0;
};

namespace detail {

inline std::uint64_t profile_estimate(const Multigraph& g, long long order) {
  // Enumerated assignments are |Gamma|^m in the worst case for either kind.
  return pow_capped(static_cast<std::uint64_t>(order), g.num_edges(), UINT64_MAX - 1);
}

}  // namespace detail

inline Profile connectivity_profile(const Multigraph& g, long long max_order,
                                    std::uint64_t budget = 1'000'000'000) {
  Profile p;
  p.kind = Profile::Kind::connectivity;
  p.max_order = max_order;
  std::uint64_t used = 0;
  for (long long n = 1; n <= max_order; ++n) {
    std::vector<GroupVerdict> row;
    for (const auto& grp : enumerate_groups_of_order(n)) {
      std::uint64_t est = detail::profile_estimate(g, n);
      if (used + est > budget) {
        p.budget_exceeded = true;
        p.completed_up_to = n - 1;
        return p;
      }
      GroupTable t(grp);
      auto verdict = is_group_connected(g, t, budget - used);
      used += verdict.checked;
      GroupVerdict gv;
      gv.group = grp;
      gv.yes = verdict.connected;
      gv.beta = verdict.failing_beta;
      gv.bridge_id = verdict.bridge_id;
      row.push_back(std::move(gv));
    }
    p.by_order.push_back(std::move(row));
    p.completed_up_to = n;
  }
  for (long long n = 1; n <= max_order && !p.weak_number; ++n)
    for (const auto& gv : p.by_order[n - 1])
      if (gv.yes) { p.weak_number = n; break; }
  for (long long n0 = 1; n0 <= max_order && !p.strong_evidence_number; ++n0) {
    bool all = true;
    for (long long n = n0; n <= max_order && all; ++n)
      for (const auto& gv : p.by_order[n - 1])
        if (!gv.yes) { all = false; break; }
    if (all) p.strong_evidence_number = n0;
  }
  return p;
}

inline Profile colorability_profile(const Multigraph& g, long long max_order,
                                    std::uint64_t budget = 1'000'000'000) {
  Profile p;
  p.kind = Profile::Kind::colorability;
  p.max_order = max_order;
  std::uint64_t used = 0;
  for (long long n = 1; n <= max_order; ++n) {
    std::vector<GroupVerdict> row;
    for (const auto& grp : enumerate_groups_of_order(n)) {
      std::uint64_t est = detail::profile_estimate(g, n);
      if (used + est > budget) {
        p.budget_exceeded = true;
        p.completed_up_to = n - 1;
        return p;
      }
      GroupTable t(grp);
      auto verdict = is_group_colorable(g, t, budget - used);
      used += verdict.checked;
      GroupVerdict gv;
      gv.group = grp;
      gv.yes = verdict.colorable;
      gv.phi = verdict.failing_phi;
      row.push_back(std::move(gv));
    }
    p.by_order.push_back(std::move(row));
    p.completed_up_to = n;
  }
  for (long long n = 1; n <= max_order && !p.weak_number; ++n)
    for (const auto& gv : p.by_order[n - 1])
      if (gv.yes) { p.weak_number = n; break; }
  for (long long n0 = 1; n0 <= max_order && !p.strong_evidence_number; ++n0) {
    bool all = true;
    for (long long n = n0; n <= max_order && all; ++n)
      for (const auto& gv : p.by_order[n - 1])
        if (!gv.yes) { all = false; break; }
    if (all) p.strong_evidence_number = n0;
  }
  return p;
}

}  // namespace groupflow
