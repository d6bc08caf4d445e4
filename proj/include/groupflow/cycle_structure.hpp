#pragma once

// Cycle-equivalence classes (cyclicity), strongly connected orientations,
// and the rebuild of a 2-edge-connected graph into a subdivision of a
// 3-edge-connected core with one core edge per equivalence class.

#include <optional>
#include <string>
#include <vector>

#include "groupflow/multigraph.hpp"

namespace groupflow {

// Partition of the edges into cycle-equivalence classes: two distinct edges
// share a class iff they form a 2-edge-cut. Cyclicity is the largest class.
struct CyclePartition {
  std::vector<std::vector<int>> classes;  // edge indices, sorted; classes ordered by least edge
  std::vector<int> class_of;              // per edge index
  int cyclicity = 0;
};

inline CyclePartition cycle_equivalence(const Multigraph& g) {
  if (edge_connectivity_class(g) < 2)
    throw std::invalid_argument("cycle equivalence needs a 2-edge-connected graph");
  int m = g.num_edges();
  std::vector<int> uf(m);
  for (int i = 0; i < m; ++i) uf[i] = i;
  auto find = [&](int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  std::vector<bool> del(m, false);
  for (int e1 = 0; e1 < m; ++e1) {
    del[e1] = true;
    for (int e2 = e1 + 1; e2 < m; ++e2) {
      if (find(e1) == find(e2)) continue;
      del[e2] = true;
      if (detail::component_count(detail::components_ignoring(g, del)) > 1)
        uf[find(e1)] = find(e2);
      del[e2] = false;
    }
    del[e1] = false;
  }
  CyclePartition p;
  p.class_of.assign(m, -1);
  std::vector<int> root_to_class(m, -1);
  for (int e = 0; e < m; ++e) {
    int r = find(e);
    if (root_to_class[r] < 0) {
      root_to_class[r] = static_cast<int>(p.classes.size());
      p.classes.emplace_back();
    }
    p.class_of[e] = root_to_class[r];
    p.classes[root_to_class[r]].push_back(e);
  }
  for (auto& c : p.classes) p.cyclicity = std::max(p.cyclicity, static_cast<int>(c.size()));
  return p;
}

// Per-edge signs (+1 keep, -1 flip) making the orientation strongly
// connected. Input must be connected and bridgeless. DFS orientation: tree
// edges away from the root, remaining edges towards earlier vertices.
inline std::vector<int> strongly_connected_orientation(const Multigraph& g) {
  if (edge_connectivity_class(g) < 2)
    throw std::invalid_argument("strong orientation needs a bridgeless connected graph");
  int n = g.num_vertices(), m = g.num_edges();
  std::vector<int> sign(m, 0), disc(n, -1);
  int timer = 0;
  std::vector<std::pair<int, int>> stack;  // (vertex, next edge index to scan)
  if (n == 0) return sign;
  disc[0] = timer++;
  stack.emplace_back(0, 0);
  while (!stack.empty()) {
    auto [v, ei] = stack.back();
    int child = -1;
    for (; ei < m && child < 0; ++ei) {
      const auto& ed = g.edge(ei);
      int w;
      if (ed.tail == v) w = ed.head;
      else if (ed.head == v) w = ed.tail;
      else continue;
      if (sign[ei] != 0) continue;
      sign[ei] = (ed.tail == v) ? 1 : -1;  // orient v -> w
      if (disc[w] < 0) {
        disc[w] = timer++;
        child = w;
      }
    }
    stack.back().second = ei;
    if (child >= 0) stack.emplace_back(child, 0);
    else if (ei >= m) stack.pop_back();
  }
  return sign;
}

// One cycle-equivalence class rendered as a run of input edges. Signs map a
// value on the run back to the input orientation: f_input(e) = sign * value.
struct ClassPath {
  std::vector<std::string> edge_ids;
  std::vector<int> signs;
  bool closed = false;  // run returns to its start vertex; detached from the core
};

// Result of normalizing a 2-edge-connected graph. `gprime` is the rebuilt
// graph (same edge ids, strongly connected orientation) in which every class
// forms a single directed run; `core` is the 3-edge-connected graph obtained
// by suppressing open runs to single edges. Closed runs (single cycles and
// cut-vertex handles) carry a flow value independent of the rest of the
// graph, so they detach instead of entering the core.
struct SubdivisionResult {
  std::vector<int> orientation_signs;  // per input edge: strong-orientation sign
  Multigraph gprime;
  std::vector<ClassPath> closed_classes;
  Multigraph core;
  std::vector<ClassPath> core_paths;  // aligned with core.edges()
};

namespace detail {

struct Run {
  std::vector<int> edges;  // edge indices in traversal order
  int start = -1, end = -1;
  bool closed_marker = false;
};

// Decomposes one class into maximal directed runs through vertices whose
// incident edges all belong to the class.
inline std::vector<Run> trace_runs(const Multigraph& g, const std::vector<int>& cls) {
  std::vector<bool> in_class(g.num_edges(), false);
  for (int e : cls) in_class[e] = true;
  std::vector<bool> interior(g.num_vertices(), true);
  std::vector<int> deg(g.num_vertices(), 0);
  for (int e = 0; e < g.num_edges(); ++e) {
    ++deg[g.edge(e).tail];
    ++deg[g.edge(e).head];
    if (!in_class[e]) {
      interior[g.edge(e).tail] = false;
      interior[g.edge(e).head] = false;
    }
  }
  for (int v = 0; v < g.num_vertices(); ++v)
    if (deg[v] == 0) interior[v] = false;

  std::vector<bool> used(g.num_edges(), false);
  auto next_from = [&](int v) -> int {
    for (int e : cls)
      if (!used[e] && g.edge(e).tail == v) return e;
    return -1;
  };

  std::vector<Run> runs;
  // Open runs start at a non-interior tail.
  for (int e0 : cls) {
    if (used[e0] || interior[g.edge(e0).tail]) continue;
    Run r;
    r.start = g.edge(e0).tail;
    int e = e0;
    while (true) {
      used[e] = true;
      r.edges.push_back(e);
      int h = g.edge(e).head;
      if (!interior[h]) { r.end = h; break; }
      int nx = next_from(h);
      if (nx < 0) throw std::logic_error("class run tracing stalled");
      e = nx;
    }
    r.closed_marker = (r.end == r.start);  // handle attached at one vertex
    runs.push_back(std::move(r));
  }
  // Whatever remains forms closed runs through interior vertices only.
  for (int e0 : cls) {
    if (used[e0]) continue;
    Run r;
    r.start = g.edge(e0).tail;
    r.closed_marker = true;
    int e = e0;
    while (e >= 0 && !used[e]) {
      used[e] = true;
      r.edges.push_back(e);
      e = next_from(g.edge(e).head);
    }
    if (g.edge(r.edges.back()).head != r.start)
      throw std::logic_error("closed run tracing stalled");
    r.end = r.start;
    runs.push_back(std::move(r));
  }
  return runs;
}

struct ClassSplit {
  std::vector<bool> deleted;
  std::vector<int> comp;
  int comps_with_edges = 0;
  int first_edge_comp = -1;
};

inline ClassSplit split_by_class(const Multigraph& g, const std::vector<int>& cls) {
  ClassSplit s;
  s.deleted.assign(g.num_edges(), false);
  for (int e : cls) s.deleted[e] = true;
  s.comp = components_ignoring(g, s.deleted);
  std::vector<bool> has_edge(component_count(s.comp), false);
  for (int e = 0; e < g.num_edges(); ++e)
    if (!s.deleted[e]) has_edge[s.comp[g.edge(e).tail]] = true;
  for (int c = 0; c < static_cast<int>(has_edge.size()); ++c)
    if (has_edge[c]) {
      ++s.comps_with_edges;
      if (s.first_edge_comp < 0) s.first_edge_comp = c;
    }
  return s;
}

}  // namespace detail

// Rebuilds until every class is a single directed run, then suppresses runs.
// Throws on inputs that are not 2-edge-connected.
inline SubdivisionResult normalize_to_subdivision(const Multigraph& input) {
  if (edge_connectivity_class(input) < 2)
    throw std::invalid_argument("normalization needs a 2-edge-connected graph");

  SubdivisionResult res;
  res.orientation_signs = strongly_connected_orientation(input);

  // Working copy with the strong orientation applied.
  Multigraph g;
  for (const auto& v : input.vertex_ids()) g.add_vertex(v);
  for (int e = 0; e < input.num_edges(); ++e) {
    const auto& ed = input.edge(e);
    if (res.orientation_signs[e] > 0)
      g.add_edge(ed.id, input.vertex_id(ed.tail), input.vertex_id(ed.head));
    else
      g.add_edge(ed.id, input.vertex_id(ed.head), input.vertex_id(ed.tail));
  }

  int fresh = 0;
  auto fresh_vertex = [&](const Multigraph& h) {
    std::string id;
    do { id = "nz" + std::to_string(fresh++); } while (h.has_vertex(id) || input.has_vertex(id));
    return id;
  };

  int guard = 4 * input.num_edges() + 16;
  while (true) {
    if (--guard < 0) throw std::logic_error("subdivision rebuild did not converge");
    auto part = cycle_equivalence(g);
    int target = -1;
    detail::ClassSplit split;
    for (std::size_t c = 0; c < part.classes.size(); ++c) {
      split = detail::split_by_class(g, part.classes[c]);
      if (split.comps_with_edges > 1) { target = static_cast<int>(c); break; }
    }
    if (target < 0) break;

    // Rebuild for this class: G1 is the first component with edges; its two
    // attaching runs are re-laid as one directed path on the G2 side.
    const auto& cls = part.classes[target];
    int g1 = split.first_edge_comp;
    auto runs = detail::trace_runs(g, cls);
    int out_run = -1, in_run = -1;
    for (std::size_t r = 0; r < runs.size(); ++r) {
      if (runs[r].closed_marker) continue;
      if (split.comp[runs[r].start] == g1) {
        if (out_run >= 0) throw std::logic_error("class attaches G1 by two outgoing runs");
        out_run = static_cast<int>(r);
      }
      if (split.comp[runs[r].end] == g1) {
        if (in_run >= 0) throw std::logic_error("class attaches G1 by two incoming runs");
        in_run = static_cast<int>(r);
      }
    }
    if (out_run < 0 || in_run < 0 || out_run == in_run)
      throw std::logic_error("class does not attach G1 by one outgoing and one incoming run");

    const auto& p1 = runs[out_run];
    const auto& p2 = runs[in_run];
    int v1 = p1.start, vs = p1.end, u1 = p2.start, ut = p2.end;

    std::vector<bool> dropped(g.num_vertices(), false);
    auto mark_interior = [&](const detail::Run& r) {
      for (std::size_t i = 0; i + 1 < r.edges.size(); ++i)
        dropped[g.edge(r.edges[i]).head] = true;
    };
    mark_interior(p1);
    mark_interior(p2);

    std::vector<bool> relaid(g.num_edges(), false);
    for (int e : p1.edges) relaid[e] = true;
    for (int e : p2.edges) relaid[e] = true;

    Multigraph h;
    for (int v = 0; v < g.num_vertices(); ++v)
      if (!dropped[v] && v != vs) h.add_vertex(g.vertex_id(v));
    auto mapped = [&](int v) { return g.vertex_id(v == vs ? v1 : v); };
    for (int e = 0; e < g.num_edges(); ++e) {
      if (relaid[e]) continue;
      h.add_edge(g.edge(e).id, mapped(g.edge(e).tail), mapped(g.edge(e).head));
    }
    std::vector<int> path_edges = p1.edges;
    path_edges.insert(path_edges.end(), p2.edges.begin(), p2.edges.end());
    std::string prev = mapped(u1);
    for (std::size_t i = 0; i < path_edges.size(); ++i) {
      std::string nxt;
      if (i + 1 == path_edges.size()) {
        nxt = mapped(ut);
      } else {
        nxt = fresh_vertex(h);
        h.add_vertex(nxt);
      }
      h.add_edge(g.edge(path_edges[i]).id, prev, nxt);
      prev = nxt;
    }
    g = std::move(h);
  }

  res.gprime = g;

  // Suppress: open runs become core edges; closed runs detach.
  auto part = cycle_equivalence(g);
  std::vector<std::optional<detail::Run>> open_run(part.classes.size());
  for (std::size_t c = 0; c < part.classes.size(); ++c) {
    auto runs = detail::trace_runs(g, part.classes[c]);
    if (runs.size() != 1) throw std::logic_error("class not reduced to a single run");
    if (runs[0].closed_marker) {
      ClassPath cp;
      cp.closed = true;
      for (int e : runs[0].edges) {
        cp.edge_ids.push_back(g.edge(e).id);
        cp.signs.push_back(res.orientation_signs[input.edge_index(g.edge(e).id)]);
      }
      res.closed_classes.push_back(std::move(cp));
    } else {
      open_run[c] = runs[0];
    }
  }

  std::vector<bool> keep(g.num_vertices(), false);
  for (const auto& r : open_run) {
    if (!r) continue;
    keep[r->start] = true;
    keep[r->end] = true;
  }
  for (int v = 0; v < g.num_vertices(); ++v)
    if (keep[v]) res.core.add_vertex(g.vertex_id(v));
  for (std::size_t c = 0; c < open_run.size(); ++c) {
    if (!open_run[c]) continue;
    const auto& r = *open_run[c];
    ClassPath cp;
    for (int e : r.edges) {
      cp.edge_ids.push_back(g.edge(e).id);
      cp.signs.push_back(res.orientation_signs[input.edge_index(g.edge(e).id)]);
    }
    res.core.add_edge(g.edge(r.edges.front()).id, g.vertex_id(r.start), g.vertex_id(r.end));
    res.core_paths.push_back(std::move(cp));
  }

  if (res.core.num_edges() > 0 && edge_connectivity_class(res.core) < 3)
    throw std::logic_error("suppressed core is not 3-edge-connected");
  return res;
}

}  // namespace groupflow
