#pragma once

// 2-constructible recognition with witness extraction, the special spanning
// tree search (tree whose blue-contraction is 2-constructible), and the
// expansion of high-degree vertices into cycles that keeps a graph cubic and
// 3-edge-connected.

#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "groupflow/multigraph.hpp"

namespace groupflow {

namespace detail {

using WitnessPairs = std::vector<std::pair<std::string, std::string>>;

struct TwoConstructibleMemo {
  std::unordered_map<std::string, std::optional<WitnessPairs>> table;
};

inline std::string subgraph_key(const Multigraph& g, const std::vector<int>& verts,
                                const std::vector<int>& edges) {
  std::vector<std::string> vs, es;
  for (int v : verts) vs.push_back(g.vertex_id(v));
  for (int e : edges)
    es.push_back(g.edge(e).id + ">" + g.vertex_id(g.edge(e).tail) + ">" +
                 g.vertex_id(g.edge(e).head));
  std::sort(vs.begin(), vs.end());
  std::sort(es.begin(), es.end());
  std::string key = "V";
  for (auto& s : vs) { key += s; key += ','; }
  key += "|E";
  for (auto& s : es) { key += s; key += ';'; }
  return key;
}

// Recursive split search over edge pairs. Vertices/edges index into g.
inline std::optional<WitnessPairs> two_constructible_rec(const Multigraph& g,
                                                         const std::vector<int>& verts,
                                                         const std::vector<int>& edges,
                                                         TwoConstructibleMemo& memo) {
  if (verts.size() == 1) {
    if (edges.empty()) return WitnessPairs{};
    return std::nullopt;
  }
  if (edges.size() != 2 * (verts.size() - 1)) return std::nullopt;

  std::string key = subgraph_key(g, verts, edges);
  if (auto it = memo.table.find(key); it != memo.table.end()) return it->second;

  std::optional<WitnessPairs> result;
  std::unordered_map<int, int> vpos;
  for (std::size_t i = 0; i < verts.size(); ++i) vpos[verts[i]] = static_cast<int>(i);

  for (std::size_t i = 0; i < edges.size() && !result; ++i) {
    for (std::size_t j = i + 1; j < edges.size() && !result; ++j) {
      // Components after deleting the candidate pair.
      std::vector<int> comp(verts.size(), -1);
      int nc = 0;
      for (std::size_t s = 0; s < verts.size(); ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = nc;
        std::vector<int> stack = {static_cast<int>(s)};
        while (!stack.empty()) {
          int v = stack.back();
          stack.pop_back();
          for (std::size_t k = 0; k < edges.size(); ++k) {
            if (k == i || k == j) continue;
            const auto& ed = g.edge(edges[k]);
            int a = vpos[ed.tail], b = vpos[ed.head];
            int o = -1;
            if (a == v) o = b;
            else if (b == v) o = a;
            else continue;
            if (comp[o] < 0) { comp[o] = nc; stack.push_back(o); }
          }
        }
        ++nc;
      }
      if (nc != 2) continue;
      const auto& ei = g.edge(edges[i]);
      const auto& ej = g.edge(edges[j]);
      if (comp[vpos[ei.tail]] == comp[vpos[ei.head]]) continue;
      if (comp[vpos[ej.tail]] == comp[vpos[ej.head]]) continue;

      std::vector<int> v0, v1, e0, e1;
      for (std::size_t s = 0; s < verts.size(); ++s)
        (comp[s] == 0 ? v0 : v1).push_back(verts[s]);
      for (std::size_t k = 0; k < edges.size(); ++k) {
        if (k == i || k == j) continue;
        (comp[vpos[g.edge(edges[k]).tail]] == 0 ? e0 : e1).push_back(edges[k]);
      }
      auto r0 = two_constructible_rec(g, v0, e0, memo);
      if (!r0) continue;
      auto r1 = two_constructible_rec(g, v1, e1, memo);
      if (!r1) continue;
      WitnessPairs w = *r0;
      w.insert(w.end(), r1->begin(), r1->end());
      w.emplace_back(ei.id, ej.id);
      result = std::move(w);
    }
  }
  memo.table[key] = result;
  return result;
}

}  // namespace detail

struct TwoConstructible {
  bool ok = false;
  // Pairs in build order: replaying them from the edgeless graph joins two
  // components at a time and reconstructs the input.
  std::vector<std::pair<std::string, std::string>> build_order;
};

inline TwoConstructible is_2_constructible(const Multigraph& h) {
  std::vector<int> verts(h.num_vertices()), edges(h.num_edges());
  for (int v = 0; v < h.num_vertices(); ++v) verts[v] = v;
  for (int e = 0; e < h.num_edges(); ++e) edges[e] = e;
  if (verts.empty()) return {false, {}};
  detail::TwoConstructibleMemo memo;
  auto r = detail::two_constructible_rec(h, verts, edges, memo);
  if (!r) return {false, {}};
  return {true, *r};
}

// ---------------------------------------------------------------------------
// Special spanning tree: red tree + blue rest, blue-contraction
// 2-constructible. Lexicographic edge-order backtracking, red branch first;
// the first witness in that order is returned.
// ---------------------------------------------------------------------------

struct TreeDecoration {
  std::vector<std::string> tree_edges;     // red
  std::vector<std::string> nontree_edges;  // blue
  std::vector<std::pair<std::string, std::string>> build_order;
};

enum class TreeSearchStatus { found, not_found, budget_exhausted };

struct TreeSearchResult {
  TreeSearchStatus status = TreeSearchStatus::not_found;
  TreeDecoration decoration;
  long long nodes = 0;
};

namespace detail {

struct TreeSearch {
  const Multigraph& h;
  int n, m, blue_total, allowed_blue_cycles;
  std::vector<int> color;  // 0 undecided, 1 red, 2 blue
  std::vector<int> red_uf, blue_uf;
  std::vector<int> red_edges, blue_edges;
  int blue_cycles = 0;
  long long budget, nodes = 0;
  TwoConstructibleMemo memo;
  std::optional<TreeDecoration> found;

  TreeSearch(const Multigraph& hh, long long b) : h(hh), budget(b) {
    n = h.num_vertices();
    m = h.num_edges();
    blue_total = m - (n - 1);
    allowed_blue_cycles = blue_total - (n - 1) / 2;
    red_uf.resize(n);
    blue_uf.resize(n);
    for (int i = 0; i < n; ++i) red_uf[i] = blue_uf[i] = i;
    color.assign(m, 0);
  }

  int find(std::vector<int>& uf, int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  }

  bool feasible() const {
    return n % 2 == 1 && blue_total >= 0 && allowed_blue_cycles >= 0;
  }

  // Contraction of blue components with red edges; vertices named by the
  // least contained vertex id so memo keys transfer between trees.
  Multigraph contraction() {
    std::vector<int> comp_min(n, -1);
    for (int v = 0; v < n; ++v) {
      int r = find(blue_uf, v);
      if (comp_min[r] < 0) comp_min[r] = v;  // v ascends, first hit is the least
    }
    Multigraph c;
    std::vector<int> order;
    for (int v = 0; v < n; ++v)
      if (find(blue_uf, v) == v) order.push_back(v);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return comp_min[a] < comp_min[b]; });
    std::unordered_map<int, std::string> name;
    for (int r : order) {
      name[r] = h.vertex_id(comp_min[r]);
      c.add_vertex(name[r]);
    }
    for (int e : red_edges)
      c.add_edge(h.edge(e).id, name[find(blue_uf, h.edge(e).tail)],
                 name[find(blue_uf, h.edge(e).head)]);
    return c;
  }

  bool leaf_check() {
    auto c = contraction();
    if (c.num_vertices() >= 2) {
      for (int v = 0; v < c.num_vertices(); ++v)
        if (c.degree(v) < 2) return false;
    }
    std::vector<int> verts(c.num_vertices()), edges(c.num_edges());
    for (int v = 0; v < c.num_vertices(); ++v) verts[v] = v;
    for (int e = 0; e < c.num_edges(); ++e) edges[e] = e;
    auto w = two_constructible_rec(c, verts, edges, memo);
    if (!w) return false;
    TreeDecoration d;
    for (int e : red_edges) d.tree_edges.push_back(h.edge(e).id);
    for (int e : blue_edges) d.nontree_edges.push_back(h.edge(e).id);
    d.build_order = *w;
    found = d;
    return true;
  }

  bool dfs(int idx) {
    if (++nodes > budget) return false;
    if (idx == m) return leaf_check();
    const auto& ed = h.edge(idx);
    int remaining = m - idx;
    int red_need = (n - 1) - static_cast<int>(red_edges.size());
    int blue_need = blue_total - static_cast<int>(blue_edges.size());
    if (red_need + blue_need != remaining) return false;

    // Red branch.
    if (red_need > 0 && find(red_uf, ed.tail) != find(red_uf, ed.head) &&
        find(blue_uf, ed.tail) != find(blue_uf, ed.head)) {
      auto saved_red = red_uf;
      red_uf[find(red_uf, ed.tail)] = find(red_uf, ed.head);
      red_edges.push_back(idx);
      color[idx] = 1;
      if (dfs(idx + 1)) return true;
      if (nodes > budget) return false;
      color[idx] = 0;
      red_edges.pop_back();
      red_uf = saved_red;
    }

    // Blue branch.
    if (blue_need > 0) {
      int bt = find(blue_uf, ed.tail), bh = find(blue_uf, ed.head);
      bool cycle = (bt == bh);
      if (cycle && blue_cycles + 1 > allowed_blue_cycles) return false;
      bool red_conflict = false;
      if (!cycle) {
        for (int e : red_edges) {
          int a = find(blue_uf, h.edge(e).tail), b = find(blue_uf, h.edge(e).head);
          if ((a == bt && b == bh) || (a == bh && b == bt)) { red_conflict = true; break; }
        }
      }
      if (!red_conflict) {
        auto saved_blue = blue_uf;
        if (!cycle) blue_uf[bt] = bh;
        blue_cycles += cycle;
        blue_edges.push_back(idx);
        color[idx] = 2;
        if (dfs(idx + 1)) return true;
        if (nodes > budget) return false;
        color[idx] = 0;
        blue_edges.pop_back();
        blue_cycles -= cycle;
        blue_uf = saved_blue;
      }
    }
    return false;
  }
};

}  // namespace detail

inline TreeSearchResult special_spanning_tree(const Multigraph& h,
                                              long long node_budget = 20'000'000) {
  TreeSearchResult res;
  if (!is_connected(h)) throw std::invalid_argument("special spanning tree needs a connected graph");
  if (h.num_vertices() == 1) {
    res.status = TreeSearchStatus::found;
    return res;
  }

  // The witness is a pure function of the graph; repeated solver calls on
  // the same core hit this cache.
  static std::mutex cache_mutex;
  static std::unordered_map<std::string, TreeDecoration> cache;
  std::string key;
  for (const auto& v : h.vertex_ids()) { key += v; key += ';'; }
  for (const auto& e : h.edges()) {
    key += e.id;
    key += '>';
    key += std::to_string(e.tail);
    key += '>';
    key += std::to_string(e.head);
    key += ';';
  }
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) {
      res.status = TreeSearchStatus::found;
      res.decoration = it->second;
      return res;
    }
  }

  detail::TreeSearch search(h, node_budget);
  if (!search.feasible()) {
    res.status = TreeSearchStatus::not_found;
    return res;
  }
  bool ok = search.dfs(0);
  res.nodes = search.nodes;
  if (ok) {
    res.status = TreeSearchStatus::found;
    res.decoration = *search.found;
    std::lock_guard<std::mutex> lock(cache_mutex);
    cache.emplace(std::move(key), res.decoration);
  } else {
    res.status = search.nodes > search.budget ? TreeSearchStatus::budget_exhausted
                                              : TreeSearchStatus::not_found;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Cubic expansion.
// ---------------------------------------------------------------------------

struct CubicExpansion {
  Multigraph graph;                         // cubic and 3-edge-connected
  std::vector<std::string> auxiliary_edges; // replacement-cycle edges
  // Original edge ids are preserved and carry the expansion mapping.
};

// Replaces every vertex of degree d > 3 by a d-cycle. Cyclic neighbor
// orderings are tried in deterministic order until the 3-edge-connectivity
// check passes; throws if the permutation budget runs out.
inline CubicExpansion cubic_expansion(const Multigraph& g, long long ordering_budget = 5040) {
  if (edge_connectivity_class(g) < 3)
    throw std::invalid_argument("cubic expansion needs a 3-edge-connected graph");
  CubicExpansion out;
  Multigraph cur = g;
  for (int orig = 0; orig < g.num_vertices(); ++orig) {
    const std::string vid = g.vertex_id(orig);
    int v = cur.vertex_index(vid);
    int d = cur.degree(v);
    if (d <= 3) continue;

    // Incident edge ends in canonical order; parallel edges contribute both.
    struct End { int edge; bool at_head; };
    std::vector<End> ends;
    for (int e = 0; e < cur.num_edges(); ++e) {
      if (cur.edge(e).tail == v) ends.push_back({e, false});
      if (cur.edge(e).head == v) ends.push_back({e, true});
    }

    std::vector<int> perm(d);
    for (int i = 0; i < d; ++i) perm[i] = i;
    long long tried = 0;
    bool done = false;
    while (!done) {
      if (++tried > ordering_budget)
        throw std::runtime_error("cubic expansion: no cyclic ordering kept the graph 3-edge-connected within budget");
      Multigraph cand;
      for (int u = 0; u < cur.num_vertices(); ++u)
        if (u != v) cand.add_vertex(cur.vertex_id(u));
      std::vector<std::string> ring(d);
      for (int i = 0; i < d; ++i) {
        ring[i] = vid + "@" + std::to_string(i);
        cand.add_vertex(ring[i]);
      }
      for (int e = 0; e < cur.num_edges(); ++e) {
        const auto& ed = cur.edge(e);
        std::string t = ed.tail == v ? "" : cur.vertex_id(ed.tail);
        std::string hd = ed.head == v ? "" : cur.vertex_id(ed.head);
        for (int i = 0; i < d; ++i) {
          const auto& end = ends[perm[i]];
          if (end.edge != e) continue;
          if (end.at_head) hd = ring[i];
          else t = ring[i];
        }
        cand.add_edge(ed.id, t, hd);
      }
      std::vector<std::string> aux;
      for (int i = 0; i < d; ++i) {
        std::string id = "x:" + vid + ":" + std::to_string(i);
        cand.add_edge(id, ring[i], ring[(i + 1) % d]);
        aux.push_back(id);
      }
      if (edge_connectivity_class(cand) >= 3) {
        cur = std::move(cand);
        out.auxiliary_edges.insert(out.auxiliary_edges.end(), aux.begin(), aux.end());
        done = true;
      } else {
        // Next ordering: permute positions 1..d-1, first position pinned
        // (cyclic symmetry).
        if (!std::next_permutation(perm.begin() + 1, perm.end()))
          throw std::runtime_error("cubic expansion: exhausted cyclic orderings without 3-edge-connectivity");
      }
    }
  }
  for (int v = 0; v < cur.num_vertices(); ++v)
    if (cur.degree(v) != 3)
      throw std::logic_error("cubic expansion left a non-cubic vertex");
  out.graph = std::move(cur);
  return out;
}

}  // namespace groupflow
