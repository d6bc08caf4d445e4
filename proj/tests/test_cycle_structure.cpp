#include <catch2/catch_amalgamated.hpp>

#include "groupflow/cycle_structure.hpp"
#include "groupflow/decide.hpp"
#include "test_support.hpp"

using namespace groupflow;

namespace {

// Applies the recorded strong orientation to the input graph.
Multigraph oriented_copy(const Multigraph& g, const std::vector<int>& signs) {
  Multigraph out;
  for (const auto& v : g.vertex_ids()) out.add_vertex(v);
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& ed = g.edge(e);
    if (signs[e] > 0) out.add_edge(ed.id, g.vertex_id(ed.tail), g.vertex_id(ed.head));
    else out.add_edge(ed.id, g.vertex_id(ed.head), g.vertex_id(ed.tail));
  }
  return out;
}

bool strongly_connected(const Multigraph& g) {
  int n = g.num_vertices();
  auto reach = [&](bool forward) {
    std::vector<bool> seen(n, false);
    seen[0] = true;
    std::vector<int> stack = {0};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const auto& e : g.edges()) {
        int from = forward ? e.tail : e.head;
        int to = forward ? e.head : e.tail;
        if (from == v && !seen[to]) { seen[to] = true; stack.push_back(to); }
      }
    }
    for (bool b : seen)
      if (!b) return false;
    return true;
  };
  return reach(true) && reach(false);
}

std::set<std::set<std::string>> cycle_id_sets(const Multigraph& g) {
  std::set<std::set<std::string>> out;
  for (const auto& c : gftest::all_cycle_edge_sets(g)) {
    std::set<std::string> ids;
    for (int e : c) ids.insert(g.edge(e).id);
    out.insert(ids);
  }
  return out;
}

}  // namespace

TEST_CASE("cycle equivalence classes") {
  SECTION("theta graphs: one class per path") {
    for (auto [q, len] : std::vector<std::pair<int, int>>{{3, 1}, {3, 2}, {5, 2}, {4, 3}}) {
      auto g = gen_theta(q, len);
      auto p = cycle_equivalence(g);
      CHECK(p.cyclicity == len);
      CHECK(static_cast<int>(p.classes.size()) == q);
    }
  }

  SECTION("3-edge-connected graphs have cyclicity 1") {
    CHECK(cycle_equivalence(gen_complete(4)).cyclicity == 1);
    CHECK(cycle_equivalence(gen_prism()).cyclicity == 1);
  }

  SECTION("a cycle is a single class") {
    for (int n : {2, 3, 6}) {
      auto p = cycle_equivalence(gen_cycle(n));
      CHECK(p.classes.size() == 1);
      CHECK(p.cyclicity == n);
    }
  }

  SECTION("matches the every-cycle definition on small graphs") {
    std::vector<Multigraph> corpus = {gen_cycle(4),     gen_theta(3, 2),
                                      gen_theta(2, 3),  gen_complete(4),
                                      gftest::figure_eight(), doubled(gen_cycle(3)),
                                      gftest::k4_subdivided()};
    for (const auto& g : corpus) {
      if (g.num_edges() > 8) continue;
      auto expect = gftest::cycle_classes_by_definition(g);
      auto got = cycle_equivalence(g).classes;
      auto norm = [](std::vector<std::vector<int>> cs) {
        for (auto& c : cs) std::sort(c.begin(), c.end());
        std::sort(cs.begin(), cs.end());
        return cs;
      };
      CHECK(norm(expect) == norm(got));
    }
  }

  CHECK_THROWS_AS(cycle_equivalence(gen_path(3)), std::invalid_argument);
}

TEST_CASE("strongly connected orientation") {
  for (const auto& g : {gen_cycle(5), gen_theta(3, 2), gen_complete(4), gen_prism(),
                        gftest::figure_eight(), doubled(gen_cycle(4))}) {
    auto signs = strongly_connected_orientation(g);
    CHECK(strongly_connected(oriented_copy(g, signs)));
  }
  CHECK_THROWS_AS(strongly_connected_orientation(gen_path(3)), std::invalid_argument);
}

TEST_CASE("normalization to a 3-edge-connected core") {
  SECTION("already 3-edge-connected input maps to itself") {
    auto g = gen_complete(4);
    auto r = normalize_to_subdivision(g);
    CHECK(r.closed_classes.empty());
    CHECK(r.core.num_edges() == 6);
    CHECK(r.core.num_vertices() == 4);
    for (const auto& cp : r.core_paths) CHECK(cp.edge_ids.size() == 1);
  }

  SECTION("a lone cycle detaches completely") {
    auto r = normalize_to_subdivision(gen_cycle(3));
    REQUIRE(r.closed_classes.size() == 1);
    CHECK(r.closed_classes[0].edge_ids.size() == 3);
    CHECK(r.core.num_edges() == 0);
  }

  SECTION("theta graph contracts each path to one core edge") {
    auto g = gen_theta(3, 2);
    auto r = normalize_to_subdivision(g);
    CHECK(r.closed_classes.empty());
    REQUIRE(r.core.num_edges() == 3);
    CHECK(r.core.num_vertices() == 2);
    for (const auto& cp : r.core_paths) CHECK(cp.edge_ids.size() == 2);
    CHECK(gftest::isomorphic(r.core, gen_theta(3, 1)));
  }

  SECTION("cut-vertex handles detach as closed classes") {
    auto r = normalize_to_subdivision(gftest::figure_eight());
    CHECK(r.closed_classes.size() == 2);
    CHECK(r.core.num_edges() == 0);
  }

  SECTION("two triangles joined by two edges") {
    Multigraph g;
    for (int i = 0; i < 6; ++i) g.add_vertex("v" + std::to_string(i));
    g.add_edge("a0", "v0", "v1");
    g.add_edge("a1", "v1", "v2");
    g.add_edge("a2", "v2", "v0");
    g.add_edge("b0", "v3", "v4");
    g.add_edge("b1", "v4", "v5");
    g.add_edge("b2", "v5", "v3");
    g.add_edge("c0", "v1", "v4");
    g.add_edge("c1", "v2", "v5");
    auto r = normalize_to_subdivision(g);
    CHECK(r.closed_classes.empty());
    CHECK(edge_connectivity_class(r.core) == 3);
    // The rebuilt graph keeps every cycle edge-set of the input.
    CHECK(cycle_id_sets(g) == cycle_id_sets(r.gprime));
  }

  SECTION("a ring of triangles needs repeated rebuilds") {
    auto g = gftest::triangle_ring();
    REQUIRE(edge_connectivity_class(g) == 2);
    auto part = cycle_equivalence(g);
    CHECK(part.cyclicity == 3);  // the three joint edges form one class
    auto r = normalize_to_subdivision(g);
    CHECK(r.closed_classes.empty());
    CHECK(edge_connectivity_class(r.core) == 3);
    CHECK(cycle_id_sets(g) == cycle_id_sets(r.gprime));
  }

  SECTION("cycle edge-sets preserved across rebuilds") {
    std::vector<Multigraph> corpus = {gen_theta(3, 2), gen_theta(2, 3), gen_cycle(5),
                                      gftest::figure_eight(), gftest::k4_subdivided(),
                                      doubled(gen_cycle(3))};
    for (const auto& g : corpus) {
      if (g.num_edges() > 10) continue;
      auto r = normalize_to_subdivision(g);
      CHECK(cycle_id_sets(g) == cycle_id_sets(r.gprime));
    }
  }

  SECTION("flows transport both ways between input and rebuilt graph") {
    std::mt19937 rng(20240811);
    std::vector<Multigraph> corpus = {gen_theta(3, 2), gftest::k4_subdivided(),
                                      gftest::figure_eight()};
    GroupTable t(parse_group_spec("Z7"));
    for (const auto& g : corpus) {
      auto r = normalize_to_subdivision(g);
      auto w = oriented_copy(g, r.orientation_signs);
      // Random circulations on the reoriented input, via non-tree pushes.
      auto scheme_tree = bfs_spanning_tree(w);
      for (int trial = 0; trial < 20; ++trial) {
        BoundaryMap zero{std::vector<int>(w.num_vertices(), 0)};
        ForbiddenMap none = ForbiddenMap::empty(w.num_edges());
        // Sample a random point of the circulation space by fixing random
        // non-tree values and completing over the tree.
        std::vector<int> values(w.num_edges(), 0);
        std::vector<bool> is_tree(w.num_edges(), false);
        for (int v = 0; v < w.num_vertices(); ++v)
          if (scheme_tree[v] >= 0) is_tree[scheme_tree[v]] = true;
        ForbiddenMap pin = ForbiddenMap::empty(w.num_edges());
        for (int e = 0; e < w.num_edges(); ++e) {
          if (is_tree[e]) continue;
          int want = std::uniform_int_distribution<int>(0, t.order() - 1)(rng);
          for (int x = 0; x < t.order(); ++x)
            if (x != want) pin.forbidden[e].push_back(x);
        }
        auto flow = find_flow(w, t, zero, pin);
        REQUIRE(flow.found);
        // Same values, same ids: must be a circulation of gprime too.
        FlowAssignment on_prime;
        on_prime.values.resize(r.gprime.num_edges());
        for (int e = 0; e < r.gprime.num_edges(); ++e)
          on_prime.values[e] = flow.flow.values[w.edge_index(r.gprime.edge(e).id)];
        BoundaryMap zero2{std::vector<int>(r.gprime.num_vertices(), 0)};
        auto check = verify_flow(r.gprime, t, on_prime, zero2, ForbiddenMap::empty(r.gprime.num_edges()));
        CHECK(check.ok);
        // And back: circulations of gprime are circulations of the input.
        auto scheme2 = bfs_spanning_tree(r.gprime);
        std::vector<bool> is_tree2(r.gprime.num_edges(), false);
        for (int v = 0; v < r.gprime.num_vertices(); ++v)
          if (scheme2[v] >= 0) is_tree2[scheme2[v]] = true;
        ForbiddenMap pin2 = ForbiddenMap::empty(r.gprime.num_edges());
        for (int e = 0; e < r.gprime.num_edges(); ++e) {
          if (is_tree2[e]) continue;
          int want = std::uniform_int_distribution<int>(0, t.order() - 1)(rng);
          for (int x = 0; x < t.order(); ++x)
            if (x != want) pin2.forbidden[e].push_back(x);
        }
        BoundaryMap zerog{std::vector<int>(r.gprime.num_vertices(), 0)};
        auto flow2 = find_flow(r.gprime, t, zerog, pin2);
        REQUIRE(flow2.found);
        FlowAssignment on_w;
        on_w.values.resize(w.num_edges());
        for (int e = 0; e < w.num_edges(); ++e)
          on_w.values[e] = flow2.flow.values[r.gprime.edge_index(w.edge(e).id)];
        auto check2 = verify_flow(w, t, on_w, zero, none);
        CHECK(check2.ok);
      }
    }
  }

  SECTION("every small 2-edge-connected multigraph normalizes cleanly") {
    for (const auto& g : gftest::two_edge_connected_corpus(4, 6)) {
      auto r = normalize_to_subdivision(g);
      // The detached classes and core paths partition the edge ids.
      std::set<std::string> seen;
      for (const auto& cp : r.closed_classes)
        for (const auto& id : cp.edge_ids) CHECK(seen.insert(id).second);
      for (const auto& cp : r.core_paths)
        for (const auto& id : cp.edge_ids) CHECK(seen.insert(id).second);
      CHECK(static_cast<int>(seen.size()) == g.num_edges());
      if (r.core.num_edges() > 0) CHECK(edge_connectivity_class(r.core) == 3);
      CHECK(cycle_id_sets(g) == cycle_id_sets(r.gprime));
    }
  }

  CHECK_THROWS_AS(normalize_to_subdivision(gen_path(4)), std::invalid_argument);
}
