#pragma once

// Shared oracles and corpus builders for the test suites. Everything here is
// deliberately naive: direct enumeration, definition-level checks, no reuse
// of the library's search strategies.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "groupflow/decide.hpp"
#include "groupflow/group.hpp"
#include "groupflow/multigraph.hpp"

namespace gftest {

using namespace groupflow;

// Independent partition counter p(n) by the coin-style recurrence.
inline long long partition_count(int n) {
  std::vector<long long> p(n + 1, 0);
  p[0] = 1;
  for (int part = 1; part <= n; ++part)
    for (int s = part; s <= n; ++s) p[s] += p[s - part];
  return p[n];
}

// All edge sets of simple cycles: subsets where every touched vertex has
// degree exactly 2 and the touched subgraph is connected. Exponential in m.
inline std::vector<std::vector<int>> all_cycle_edge_sets(const Multigraph& g) {
  int m = g.num_edges(), n = g.num_vertices();
  std::vector<std::vector<int>> cycles;
  for (unsigned long long mask = 1; mask < (1ULL << m); ++mask) {
    std::vector<int> deg(n, 0), first(n, -1);
    std::vector<int> edges;
    for (int e = 0; e < m; ++e)
      if (mask >> e & 1) {
        edges.push_back(e);
        ++deg[g.edge(e).tail];
        ++deg[g.edge(e).head];
      }
    bool ok = true;
    for (int v = 0; v < n && ok; ++v)
      if (deg[v] != 0 && deg[v] != 2) ok = false;
    if (!ok) continue;
    // Connectivity over touched vertices.
    int start = g.edge(edges[0]).tail;
    std::set<int> seen = {start};
    std::vector<int> stack = {start};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int e : edges) {
        int w = -1;
        if (g.edge(e).tail == v) w = g.edge(e).head;
        else if (g.edge(e).head == v) w = g.edge(e).tail;
        else continue;
        if (!seen.count(w)) { seen.insert(w); stack.push_back(w); }
      }
    }
    for (int v = 0; v < n && ok; ++v)
      if (deg[v] > 0 && !seen.count(v)) ok = false;
    if (ok) cycles.push_back(edges);
  }
  return cycles;
}

// Cycle-equivalence straight from the definition: e1 ~ e2 iff every cycle
// containing one contains the other.
inline std::vector<std::vector<int>> cycle_classes_by_definition(const Multigraph& g) {
  auto cycles = all_cycle_edge_sets(g);
  int m = g.num_edges();
  std::vector<int> cls(m, -1);
  int next = 0;
  for (int e1 = 0; e1 < m; ++e1) {
    if (cls[e1] >= 0) continue;
    cls[e1] = next;
    for (int e2 = e1 + 1; e2 < m; ++e2) {
      if (cls[e2] >= 0) continue;
      bool equivalent = true;
      for (const auto& c : cycles) {
        bool h1 = std::find(c.begin(), c.end(), e1) != c.end();
        bool h2 = std::find(c.begin(), c.end(), e2) != c.end();
        if (h1 != h2) { equivalent = false; break; }
      }
      if (equivalent) cls[e2] = next;
    }
    ++next;
  }
  std::vector<std::vector<int>> out(next);
  for (int e = 0; e < m; ++e) out[cls[e]].push_back(e);
  return out;
}

// Colorability by raw enumeration of every edge map (no switching classes).
inline bool colorable_raw(const Multigraph& g, const GroupTable& t) {
  int m = g.num_edges(), k = t.order();
  std::vector<int> phi(m, 0);
  while (true) {
    if (!groupflow::find_coloring(g, t, EdgeGroupMap{phi})) return false;
    int i = 0;
    for (; i < m; ++i) {
      if (++phi[i] < k) break;
      phi[i] = 0;
    }
    if (i == m) return true;
  }
}

// Chromatic number of the underlying simple graph by backtracking.
inline int chromatic_number(const Multigraph& g) {
  int n = g.num_vertices();
  if (n == 0) return 0;
  std::set<std::pair<int, int>> adj;
  for (const auto& e : g.edges())
    adj.insert({std::min(e.tail, e.head), std::max(e.tail, e.head)});
  for (int k = 1; k <= n; ++k) {
    std::vector<int> c(n, -1);
    std::function<bool(int)> rec = [&](int v) -> bool {
      if (v == n) return true;
      for (int col = 0; col < k; ++col) {
        bool ok = true;
        for (int u = 0; u < v && ok; ++u)
          if (c[u] == col && adj.count({std::min(u, v), std::max(u, v)})) ok = false;
        if (ok) {
          c[v] = col;
          if (rec(v + 1)) return true;
          c[v] = -1;
        }
      }
      return false;
    };
    if (rec(0)) return k;
  }
  return n;
}

// Multigraph isomorphism by backtracking over degree-compatible bijections.
inline bool isomorphic(const Multigraph& a, const Multigraph& b) {
  int n = a.num_vertices();
  if (n != b.num_vertices() || a.num_edges() != b.num_edges()) return false;
  auto mult = [](const Multigraph& g) {
    std::map<std::pair<int, int>, int> m;
    for (const auto& e : g.edges())
      ++m[{std::min(e.tail, e.head), std::max(e.tail, e.head)}];
    return m;
  };
  auto ma = mult(a), mb = mult(b);
  std::vector<int> da(n, 0), db(n, 0);
  for (const auto& e : a.edges()) { ++da[e.tail]; ++da[e.head]; }
  for (const auto& e : b.edges()) { ++db[e.tail]; ++db[e.head]; }
  std::vector<int> perm(n, -1);
  std::vector<bool> used(n, false);
  std::function<bool(int)> rec = [&](int v) -> bool {
    if (v == n) {
      std::map<std::pair<int, int>, int> mapped;
      for (const auto& [key, cnt] : ma) {
        int x = perm[key.first], y = perm[key.second];
        mapped[{std::min(x, y), std::max(x, y)}] += cnt;
      }
      return mapped == mb;
    }
    for (int w = 0; w < n; ++w) {
      if (used[w] || da[v] != db[w]) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u) {
        auto ita = ma.find({std::min(u, v), std::max(u, v)});
        int need = ita == ma.end() ? 0 : ita->second;
        auto itb = mb.find({std::min(perm[u], w), std::max(perm[u], w)});
        int have = itb == mb.end() ? 0 : itb->second;
        if (need != have) ok = false;
      }
      if (!ok) continue;
      used[w] = true;
      perm[v] = w;
      if (rec(v + 1)) return true;
      used[w] = false;
      perm[v] = -1;
    }
    return false;
  };
  return rec(0);
}

// ---------------------------------------------------------------------------
// Corpus.
// ---------------------------------------------------------------------------

// All 2-edge-connected multigraphs with the given vertex count and at most
// max_edges edges, one labeled representative per isomorphism class.
inline std::vector<Multigraph> two_edge_connected_corpus(int max_vertices, int max_edges) {
  std::vector<Multigraph> out;
  for (int n = 2; n <= max_vertices; ++n) {
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
    int s = static_cast<int>(slots.size());
    std::vector<int> mult(s, 0);
    std::set<std::vector<int>> seen_canon;

    // Permutations of vertices for canonical forms.
    std::vector<int> base(n);
    std::iota(base.begin(), base.end(), 0);
    std::vector<std::vector<int>> perms;
    std::vector<int> p = base;
    do { perms.push_back(p); } while (std::next_permutation(p.begin(), p.end()));

    std::function<void(int, int)> rec = [&](int idx, int remaining) {
      if (idx == s) {
        int total = max_edges - remaining;
        if (total == 0) return;
        // Canonical multiplicity vector over all vertex permutations.
        std::vector<int> best;
        for (const auto& q : perms) {
          std::vector<int> img(s, 0);
          for (int t2 = 0; t2 < s; ++t2) {
            int a = q[slots[t2].first], b = q[slots[t2].second];
            if (a > b) std::swap(a, b);
            int pos = -1;
            for (int u = 0; u < s; ++u)
              if (slots[u] == std::make_pair(a, b)) { pos = u; break; }
            img[pos] = mult[t2];
          }
          if (best.empty() || img < best) best = img;
        }
        if (seen_canon.count(best)) return;
        seen_canon.insert(best);
        Multigraph g;
        for (int i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i));
        int eid = 0;
        for (int t2 = 0; t2 < s; ++t2)
          for (int c = 0; c < mult[t2]; ++c)
            g.add_edge("e" + std::to_string(eid++), "v" + std::to_string(slots[t2].first),
                       "v" + std::to_string(slots[t2].second));
        if (edge_connectivity_class(g) >= 2) out.push_back(std::move(g));
        return;
      }
      for (int c = 0; c <= remaining; ++c) {
        mult[idx] = c;
        rec(idx + 1, remaining - c);
      }
      mult[idx] = 0;
    };
    rec(0, max_edges);
  }
  return out;
}

// K4 with one subdivided edge (e5 split through vertex w).
inline Multigraph k4_subdivided() {
  auto k4 = gen_complete(4);
  Multigraph g;
  for (const auto& v : k4.vertex_ids()) g.add_vertex(v);
  g.add_vertex("w");
  for (const auto& e : k4.edges()) {
    if (e.id == "e5") continue;
    g.add_edge(e.id, k4.vertex_id(e.tail), k4.vertex_id(e.head));
  }
  g.add_edge("e5a", "v2", "w");
  g.add_edge("e5b", "w", "v3");
  return g;
}

// Two triangles sharing a single vertex (a cut vertex; 2-edge-connected).
inline Multigraph figure_eight() {
  Multigraph g;
  for (int i = 0; i < 5; ++i) g.add_vertex("v" + std::to_string(i));
  g.add_edge("a0", "v0", "v1");
  g.add_edge("a1", "v1", "v2");
  g.add_edge("a2", "v2", "v0");
  g.add_edge("b0", "v0", "v3");
  g.add_edge("b1", "v3", "v4");
  g.add_edge("b2", "v4", "v0");
  return g;
}

// Three triangles joined in a ring by single edges: one class of three
// bridgelike joints plus per-triangle classes; exercises repeated rebuilds.
inline Multigraph triangle_ring() {
  Multigraph g;
  for (int t = 0; t < 3; ++t)
    for (int i = 0; i < 3; ++i) g.add_vertex("t" + std::to_string(t) + "v" + std::to_string(i));
  int e = 0;
  auto add = [&](const std::string& a, const std::string& b) {
    g.add_edge("e" + std::to_string(e++), a, b);
  };
  for (int t = 0; t < 3; ++t) {
    std::string p = "t" + std::to_string(t) + "v";
    add(p + "0", p + "1");
    add(p + "1", p + "2");
    add(p + "2", p + "0");
  }
  add("t0v0", "t1v1");
  add("t1v0", "t2v1");
  add("t2v0", "t0v1");
  return g;
}

inline Multigraph with_multiplied_edges(const Multigraph& g, int factor) {
  Multigraph out;
  for (const auto& v : g.vertex_ids()) out.add_vertex(v);
  for (const auto& e : g.edges()) {
    out.add_edge(e.id, g.vertex_id(e.tail), g.vertex_id(e.head));
    for (int c = 1; c < factor; ++c)
      out.add_edge(e.id + "m" + std::to_string(c), g.vertex_id(e.tail), g.vertex_id(e.head));
  }
  return out;
}

}  // namespace gftest
