#pragma once

// Loop-free directed multigraphs with stable string ids, plus the small
// structural toolbox the deciders and solvers lean on: connectivity
// classification by exhaustive small-cut enumeration, spanning trees,
// degeneracy, and the theta-graph family generator.

#include <algorithm>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace groupflow {

struct Edge {
  std::string id;
  int tail = -1;
  int head = -1;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Parallel edges are allowed; loops are not. Vertex and edge order is the
// insertion order, which is also the canonical order used by every
// deterministic search in the library.
class Multigraph {
 public:
  int add_vertex(const std::string& id) {
    if (vertex_index_.count(id)) throw std::invalid_argument("duplicate vertex id: " + id);
    vertex_index_[id] = static_cast<int>(vertex_ids_.size());
    vertex_ids_.push_back(id);
    return static_cast<int>(vertex_ids_.size()) - 1;
  }

  int add_edge(const std::string& id, const std::string& tail, const std::string& head) {
    int t = vertex_index(tail), h = vertex_index(head);
    if (t == h) throw std::invalid_argument("loop edge rejected: " + id);
    if (edge_index_.count(id)) throw std::invalid_argument("duplicate edge id: " + id);
    edge_index_[id] = static_cast<int>(edges_.size());
    edges_.push_back(Edge{id, t, h});
    return static_cast<int>(edges_.size()) - 1;
  }

  int num_vertices() const { return static_cast<int>(vertex_ids_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const std::string& vertex_id(int v) const { return vertex_ids_[v]; }
  const std::vector<std::string>& vertex_ids() const { return vertex_ids_; }
  const Edge& edge(int e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }

  int vertex_index(const std::string& id) const {
    auto it = vertex_index_.find(id);
    if (it == vertex_index_.end()) throw std::invalid_argument("unknown vertex id: " + id);
    return it->second;
  }
  int edge_index(const std::string& id) const {
    auto it = edge_index_.find(id);
    if (it == edge_index_.end()) throw std::invalid_argument("unknown edge id: " + id);
    return it->second;
  }
  bool has_vertex(const std::string& id) const { return vertex_index_.count(id) > 0; }
  bool has_edge(const std::string& id) const { return edge_index_.count(id) > 0; }

  int degree(int v) const {
    int d = 0;
    for (const auto& e : edges_) d += (e.tail == v) + (e.head == v);
    return d;
  }

  // Incident edge indices in edge order.
  std::vector<int> incident_edges(int v) const {
    std::vector<int> out;
    for (int e = 0; e < num_edges(); ++e)
      if (edges_[e].tail == v || edges_[e].head == v) out.push_back(e);
    return out;
  }

  friend bool operator==(const Multigraph& a, const Multigraph& b) {
    return a.vertex_ids_ == b.vertex_ids_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<std::string> vertex_ids_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, int> vertex_index_;
  std::unordered_map<std::string, int> edge_index_;
};

namespace detail {

// Underlying connectivity ignoring a set of deleted edges, as component ids.
inline std::vector<int> components_ignoring(const Multigraph& g, const std::vector<bool>& deleted) {
  std::vector<int> comp(g.num_vertices(), -1);
  int c = 0;
  for (int s = 0; s < g.num_vertices(); ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = c;
    std::vector<int> stack = {s};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int e = 0; e < g.num_edges(); ++e) {
        if (deleted[e]) continue;
        const auto& ed = g.edge(e);
        int w = -1;
        if (ed.tail == v) w = ed.head;
        else if (ed.head == v) w = ed.tail;
        else continue;
        if (comp[w] < 0) { comp[w] = c; stack.push_back(w); }
      }
    }
    ++c;
  }
  return comp;
}

inline int component_count(const std::vector<int>& comp) {
  int m = 0;
  for (int c : comp) m = std::max(m, c + 1);
  return m;
}

}  // namespace detail

inline bool is_connected(const Multigraph& g) {
  if (g.num_vertices() == 0) return true;
  std::vector<bool> none(g.num_edges(), false);
  return detail::component_count(detail::components_ignoring(g, none)) <= 1;
}

// First bridge in edge order, or -1.
inline int find_bridge(const Multigraph& g) {
  std::vector<bool> del(g.num_edges(), false);
  for (int e = 0; e < g.num_edges(); ++e) {
    del[e] = true;
    if (detail::component_count(detail::components_ignoring(g, del)) > 1) return e;
    del[e] = false;
  }
  return -1;
}

// First 2-edge-cut {e1,e2} in lexicographic edge order, or nullopt.
// Assumes the graph is connected and bridgeless when interpreting the result.
inline std::optional<std::pair<int, int>> find_two_edge_cut(const Multigraph& g) {
  std::vector<bool> del(g.num_edges(), false);
  for (int e1 = 0; e1 < g.num_edges(); ++e1) {
    del[e1] = true;
    for (int e2 = e1 + 1; e2 < g.num_edges(); ++e2) {
      del[e2] = true;
      if (detail::component_count(detail::components_ignoring(g, del)) > 1)
        return std::make_pair(e1, e2);
      del[e2] = false;
    }
    del[e1] = false;
  }
  return std::nullopt;
}

// 0 = disconnected, 1 = has a bridge, 2 = exactly 2-edge-connected,
// 3 = 3-edge-connected or better. Exhaustive small-cut enumeration.
inline int edge_connectivity_class(const Multigraph& g) {
  if (!is_connected(g)) return 0;
  if (find_bridge(g) >= 0) return 1;
  if (find_two_edge_cut(g)) return 2;
  return 3;
}

// Largest d such that some subgraph has minimum degree d, via iterated
// minimum-degree removal. Parallel edges count with multiplicity.
inline int degeneracy(const Multigraph& g) {
  int n = g.num_vertices();
  if (n == 0) return 0;
  std::vector<bool> removed(n, false);
  std::vector<int> deg(n, 0);
  for (const auto& e : g.edges()) { ++deg[e.tail]; ++deg[e.head]; }
  int best = 0;
  for (int round = 0; round < n; ++round) {
    int v = -1;
    for (int u = 0; u < n; ++u)
      if (!removed[u] && (v < 0 || deg[u] < deg[v])) v = u;
    best = std::max(best, deg[v]);
    removed[v] = true;
    for (const auto& e : g.edges()) {
      if (e.tail == v && !removed[e.head]) --deg[e.head];
      if (e.head == v && !removed[e.tail]) --deg[e.tail];
    }
  }
  return best;
}

// BFS spanning tree from vertex 0 over the underlying graph: returns parent
// edge per vertex (-1 at the root), scanning edges in canonical order.
// Throws if the graph is disconnected.
inline std::vector<int> bfs_spanning_tree(const Multigraph& g) {
  int n = g.num_vertices();
  std::vector<int> parent_edge(n, -1), order;
  std::vector<bool> seen(n, false);
  if (n == 0) return parent_edge;
  std::queue<int> q;
  q.push(0);
  seen[0] = true;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    order.push_back(v);
    for (int e = 0; e < g.num_edges(); ++e) {
      const auto& ed = g.edge(e);
      int w = -1;
      if (ed.tail == v) w = ed.head;
      else if (ed.head == v) w = ed.tail;
      else continue;
      if (!seen[w]) {
        seen[w] = true;
        parent_edge[w] = e;
        q.push(w);
      }
    }
  }
  if (static_cast<int>(order.size()) != n) throw std::invalid_argument("graph is disconnected");
  return parent_edge;
}

// ---------------------------------------------------------------------------
// Generators.
// ---------------------------------------------------------------------------

// Theta graph: two terminals s,t joined by q internally disjoint directed
// paths of the given length, all edges oriented from s towards t.
// Vertices: s, t, then p{i}_{j}; edges p{i}e{j} along path i.
inline Multigraph gen_theta(int q, int len) {
  if (q < 2) throw std::invalid_argument("theta graph needs q >= 2");
  if (len < 1) throw std::invalid_argument("theta graph needs len >= 1");
  Multigraph g;
  g.add_vertex("s");
  g.add_vertex("t");
  for (int i = 0; i < q; ++i)
    for (int j = 1; j < len; ++j)
      g.add_vertex("p" + std::to_string(i) + "_" + std::to_string(j));
  for (int i = 0; i < q; ++i) {
    std::string prev = "s";
    for (int j = 1; j < len; ++j) {
      std::string v = "p" + std::to_string(i) + "_" + std::to_string(j);
      g.add_edge("p" + std::to_string(i) + "e" + std::to_string(j - 1), prev, v);
      prev = v;
    }
    g.add_edge("p" + std::to_string(i) + "e" + std::to_string(len - 1), prev, "t");
  }
  return g;
}

inline Multigraph gen_cycle(int n) {
  if (n < 2) throw std::invalid_argument("cycle needs n >= 2 (no loops)");
  Multigraph g;
  for (int i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i));
  for (int i = 0; i < n; ++i)
    g.add_edge("e" + std::to_string(i), "v" + std::to_string(i),
               "v" + std::to_string((i + 1) % n));
  return g;
}

inline Multigraph gen_complete(int n) {
  if (n < 2) throw std::invalid_argument("complete graph needs n >= 2");
  Multigraph g;
  for (int i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i));
  int e = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      g.add_edge("e" + std::to_string(e++), "v" + std::to_string(i), "v" + std::to_string(j));
  return g;
}

inline Multigraph gen_path(int n) {
  if (n < 2) throw std::invalid_argument("path needs n >= 2");
  Multigraph g;
  for (int i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i));
  for (int i = 0; i + 1 < n; ++i)
    g.add_edge("e" + std::to_string(i), "v" + std::to_string(i), "v" + std::to_string(i + 1));
  return g;
}

// Triangular prism C3 x K2.
inline Multigraph gen_prism() {
  Multigraph g;
  for (int i = 0; i < 6; ++i) g.add_vertex("v" + std::to_string(i));
  int e = 0;
  auto add = [&](int a, int b) {
    g.add_edge("e" + std::to_string(e++), "v" + std::to_string(a), "v" + std::to_string(b));
  };
  add(0, 1); add(1, 2); add(2, 0);
  add(3, 4); add(4, 5); add(5, 3);
  add(0, 3); add(1, 4); add(2, 5);
  return g;
}

// Every edge duplicated (ids suffixed with "b").
inline Multigraph doubled(const Multigraph& g) {
  Multigraph out;
  for (const auto& v : g.vertex_ids()) out.add_vertex(v);
  for (const auto& e : g.edges()) out.add_edge(e.id, g.vertex_id(e.tail), g.vertex_id(e.head));
  for (const auto& e : g.edges()) out.add_edge(e.id + "b", g.vertex_id(e.tail), g.vertex_id(e.head));
  return out;
}

}  // namespace groupflow
