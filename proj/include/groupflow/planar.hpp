#pragma once

// Rotation systems, face tracing, and planar duals. Embeddings are inputs
// here; nothing in this header computes one from scratch beyond the fixed
// generators for the shipped families (cycles, nested theta graphs, K4).

#include <string>
#include <vector>

#include "groupflow/multigraph.hpp"

namespace groupflow {

struct EdgeEnd {
  int edge = -1;
  bool at_head = false;  // false: the end at the tail vertex
  friend bool operator==(const EdgeEnd&, const EdgeEnd&) = default;
};

// Cyclic order of incident edge ends per vertex.
struct RotationSystem {
  std::vector<std::vector<EdgeEnd>> at;
  friend bool operator==(const RotationSystem&, const RotationSystem&) = default;
};

// Darts: 2*e is the tail->head traversal of edge e, 2*e+1 the reverse.
struct FaceTracing {
  int face_count = 0;
  std::vector<int> face_of_dart;            // size 2m
  std::vector<std::vector<int>> face_darts; // walk order per face
};

namespace detail {

inline void check_rotation(const Multigraph& g, const RotationSystem& rot) {
  if (static_cast<int>(rot.at.size()) != g.num_vertices())
    throw std::invalid_argument("rotation system vertex count mismatch");
  std::vector<int> seen(2 * g.num_edges(), 0);
  for (int v = 0; v < g.num_vertices(); ++v) {
    for (const auto& end : rot.at[v]) {
      if (end.edge < 0 || end.edge >= g.num_edges())
        throw std::invalid_argument("rotation references unknown edge");
      const auto& ed = g.edge(end.edge);
      int at = end.at_head ? ed.head : ed.tail;
      if (at != v) throw std::invalid_argument("rotation lists an edge end at the wrong vertex");
      ++seen[2 * end.edge + (end.at_head ? 1 : 0)];
    }
  }
  for (int s : seen)
    if (s != 1) throw std::invalid_argument("rotation must list every edge end exactly once");
}

}  // namespace detail

inline FaceTracing trace_faces(const Multigraph& g, const RotationSystem& rot) {
  detail::check_rotation(g, rot);
  int m = g.num_edges();
  // Position of each end inside its vertex rotation.
  std::vector<int> pos(2 * m, -1), end_vertex(2 * m, -1);
  for (int v = 0; v < g.num_vertices(); ++v)
    for (std::size_t i = 0; i < rot.at[v].size(); ++i) {
      const auto& end = rot.at[v][i];
      pos[2 * end.edge + (end.at_head ? 1 : 0)] = static_cast<int>(i);
      end_vertex[2 * end.edge + (end.at_head ? 1 : 0)] = v;
    }

  // Dart d traverses edge e towards vertex w; the successor leaves w along
  // the next end after (e, w-side) in the rotation at w.
  auto successor = [&](int dart) {
    int e = dart / 2;
    bool forward = (dart % 2) == 0;
    int arrival_end = 2 * e + (forward ? 1 : 0);
    int w = end_vertex[arrival_end];
    const auto& ring = rot.at[w];
    int nxt = (pos[arrival_end] + 1) % static_cast<int>(ring.size());
    const auto& leave = ring[nxt];
    // Leaving w: take the other direction of that end's edge.
    return 2 * leave.edge + (leave.at_head ? 1 : 0);
  };

  FaceTracing t;
  t.face_of_dart.assign(2 * m, -1);
  for (int d0 = 0; d0 < 2 * m; ++d0) {
    if (t.face_of_dart[d0] >= 0) continue;
    int f = t.face_count++;
    t.face_darts.emplace_back();
    int d = d0;
    do {
      t.face_of_dart[d] = f;
      t.face_darts[f].push_back(d);
      d = successor(d);
    } while (d != d0);
  }
  return t;
}

struct DualResult {
  Multigraph dual;
  RotationSystem dual_rotation;
  FaceTracing faces;  // of the primal
};

// Dual of a connected genus-0 embedding: one vertex per face (ids f0, f1,
// ... in tracing order), one edge per primal edge carrying the same id,
// directed from the face of the forward dart to the face of the backward
// dart. Throws if the Euler check V - E + F = 2 fails.
inline DualResult planar_dual(const Multigraph& g, const RotationSystem& rot) {
  if (!is_connected(g)) throw std::invalid_argument("dual needs a connected graph");
  DualResult r;
  r.faces = trace_faces(g, rot);
  long long euler = static_cast<long long>(g.num_vertices()) - g.num_edges() + r.faces.face_count;
  if (euler != 2)
    throw std::invalid_argument("rotation system is not planar (Euler check failed)");
  for (int f = 0; f < r.faces.face_count; ++f) r.dual.add_vertex("f" + std::to_string(f));
  for (int e = 0; e < g.num_edges(); ++e) {
    int lf = r.faces.face_of_dart[2 * e];
    int rf = r.faces.face_of_dart[2 * e + 1];
    r.dual.add_edge(g.edge(e).id, "f" + std::to_string(lf), "f" + std::to_string(rf));
  }
  // Dual rotation: around a face, ends appear in face-walk order. The dart
  // of edge e on face f is the tail end of the dual edge iff it is e's
  // forward dart.
  r.dual_rotation.at.resize(r.faces.face_count);
  for (int f = 0; f < r.faces.face_count; ++f)
    for (int d : r.faces.face_darts[f])
      r.dual_rotation.at[f].push_back(EdgeEnd{d / 2, (d % 2) != 0});
  return r;
}

// ---------------------------------------------------------------------------
// Shipped embeddings.
// ---------------------------------------------------------------------------

// Any 2-regular rotation is the unique one.
inline RotationSystem rotation_for_cycle(const Multigraph& g) {
  RotationSystem rot;
  rot.at.resize(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v)
    for (int e = 0; e < g.num_edges(); ++e) {
      if (g.edge(e).tail == v) rot.at[v].push_back(EdgeEnd{e, false});
      if (g.edge(e).head == v) rot.at[v].push_back(EdgeEnd{e, true});
    }
  return rot;
}

// Nested embedding of the theta graph from gen_theta: paths drawn
// concentrically, path 0 innermost. At s paths leave in index order, at t
// they arrive in reverse order; internal vertices are 2-regular.
inline RotationSystem rotation_for_theta(const Multigraph& g, int q, int len) {
  RotationSystem rot;
  rot.at.resize(g.num_vertices());
  auto eid = [&](int path, int j) {
    return g.edge_index("p" + std::to_string(path) + "e" + std::to_string(j));
  };
  int s = g.vertex_index("s"), t = g.vertex_index("t");
  for (int i = 0; i < q; ++i) rot.at[s].push_back(EdgeEnd{eid(i, 0), false});
  for (int i = q - 1; i >= 0; --i) rot.at[t].push_back(EdgeEnd{eid(i, len - 1), true});
  for (int i = 0; i < q; ++i)
    for (int j = 1; j < len; ++j) {
      int v = g.vertex_index("p" + std::to_string(i) + "_" + std::to_string(j));
      rot.at[v].push_back(EdgeEnd{eid(i, j - 1), true});
      rot.at[v].push_back(EdgeEnd{eid(i, j), false});
    }
  return rot;
}

// Planar embedding of gen_complete(4): outer triangle v0 v1 v2, v3 inside.
inline RotationSystem rotation_for_k4(const Multigraph& g) {
  RotationSystem rot;
  rot.at.resize(4);
  auto end = [&](const std::string& id, bool at_head) {
    return EdgeEnd{g.edge_index(id), at_head};
  };
  // gen_complete(4) edge ids: e0=v0v1 e1=v0v2 e2=v0v3 e3=v1v2 e4=v1v3 e5=v2v3.
  rot.at[0] = {end("e0", false), end("e2", false), end("e1", false)};
  rot.at[1] = {end("e3", false), end("e4", false), end("e0", true)};
  rot.at[2] = {end("e1", true), end("e5", false), end("e3", true)};
  rot.at[3] = {end("e5", true), end("e2", true), end("e4", true)};
  return rot;
}

}  // namespace groupflow
