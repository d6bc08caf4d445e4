#include <catch2/catch_amalgamated.hpp>

#include "groupflow/cycle_structure.hpp"
#include "groupflow/decide.hpp"
#include "groupflow/planar.hpp"
#include "test_support.hpp"

using namespace groupflow;

namespace {

BoundaryMap zero_boundary(const Multigraph& g) {
  return BoundaryMap{std::vector<int>(g.num_vertices(), 0)};
}

// Universal single-forbidden-value test, enumerating every edge map phi of
// |Gamma|^m directly (the criterion's right-hand side, kept naive).
bool universal_forbidden_value_test(const Multigraph& g, const GroupTable& t) {
  int m = g.num_edges();
  std::vector<int> phi(m, 0);
  while (true) {
    ForbiddenMap fm;
    fm.forbidden.resize(m);
    for (int e = 0; e < m; ++e) fm.forbidden[e] = {phi[e]};
    if (!exists_flow_avoiding(g, t, fm).found) return false;
    int i = 0;
    for (; i < m; ++i) {
      if (++phi[i] < t.order()) break;
      phi[i] = 0;
    }
    if (i == m) return true;
  }
}

}  // namespace

TEST_CASE("flow verification") {
  auto c3 = gen_cycle(3);
  GroupTable t(parse_group_spec("Z2"));
  FlowAssignment ones{std::vector<int>{1, 1, 1}};
  ForbiddenMap zero_fm;
  zero_fm.forbidden.assign(3, {0});
  CHECK(verify_flow(c3, t, ones, zero_boundary(c3), zero_fm).ok);

  FlowAssignment zeros{std::vector<int>{0, 0, 0}};
  CHECK(verify_flow(c3, t, zeros, zero_boundary(c3), ForbiddenMap::empty(3)).ok);
  auto bad = verify_flow(c3, t, zeros, zero_boundary(c3), zero_fm);
  CHECK_FALSE(bad.ok);
  CHECK(bad.violation.find("e0") != std::string::npos);

  FlowAssignment tampered{std::vector<int>{1, 0, 1}};
  auto r = verify_flow(c3, t, tampered, zero_boundary(c3), ForbiddenMap::empty(3));
  CHECK_FALSE(r.ok);
  CHECK(r.violation.find("vertex") != std::string::npos);
}

TEST_CASE("coloring verification") {
  auto c3 = gen_cycle(3);
  GroupTable t(parse_group_spec("Z3"));
  EdgeGroupMap zero_phi{std::vector<int>{0, 0, 0}};
  ColoringAssignment ok{std::vector<int>{0, 1, 2}};
  CHECK(verify_coloring(c3, t, ok, zero_phi).ok);
  ColoringAssignment clash{std::vector<int>{0, 0, 1}};
  auto r = verify_coloring(c3, t, clash, zero_phi);
  CHECK_FALSE(r.ok);
  CHECK(r.violation.find("e0") != std::string::npos);
}

TEST_CASE("flow search with forbidden sets") {
  GroupTable z2(parse_group_spec("Z2"));

  SECTION("nothing forbidden yields the zero flow") {
    auto g = gen_theta(3, 2);
    auto r = exists_flow_avoiding(g, z2, ForbiddenMap::empty(g.num_edges()));
    REQUIRE(r.found);
    for (int v : r.flow.values) CHECK(v == 0);
  }

  SECTION("cycle with one zero-forbidden edge") {
    auto c3 = gen_cycle(3);
    ForbiddenMap fm = ForbiddenMap::empty(3);
    fm.forbidden[0] = {0};
    auto r = exists_flow_avoiding(c3, z2, fm);
    REQUIRE(r.found);
    CHECK(r.flow.values == std::vector<int>{1, 1, 1});
  }

  SECTION("parallel-edge parity obstruction") {
    auto g31 = gen_theta(3, 1);
    ForbiddenMap fm;
    fm.forbidden.assign(3, {0});
    auto r = exists_flow_avoiding(g31, z2, fm);
    CHECK_FALSE(r.found);
    CHECK(r.space == 4);  // |Z2|^(3-2+1)
  }

  SECTION("budget guard") {
    auto g = gen_theta(3, 2);
    ForbiddenMap fm;
    fm.forbidden.assign(6, {0});
    auto r = exists_flow_avoiding(g, GroupTable(parse_group_spec("Z5")), fm, 2);
    CHECK(r.budget_exceeded);
  }
}

TEST_CASE("group connectivity decider") {
  GroupTable z2(parse_group_spec("Z2")), z3(parse_group_spec("Z3"));

  SECTION("parallel triple") {
    CHECK(is_group_connected(gen_theta(3, 1), z3).connected);
    auto no = is_group_connected(gen_theta(3, 1), z2);
    CHECK_FALSE(no.connected);
    REQUIRE(no.failing_beta);
    // The certificate really has no nowhere-zero flow.
    ForbiddenMap zfm;
    zfm.forbidden.assign(3, {0});
    CHECK_FALSE(find_flow(gen_theta(3, 1), z2, *no.failing_beta, zfm).found);
  }

  SECTION("theta with paths of length 2 against the Klein group") {
    GroupTable z22(parse_group_spec("Z2^2"));
    auto g = gen_theta(3, 2);
    auto no = is_group_connected(g, z22);
    CHECK_FALSE(no.connected);
    REQUIRE(no.failing_beta);
    ForbiddenMap zfm;
    zfm.forbidden.assign(g.num_edges(), {0});
    CHECK_FALSE(find_flow(g, z22, *no.failing_beta, zfm).found);
  }

  SECTION("bridges are rejected with a certificate") {
    Multigraph g;  // two digons joined by a bridge
    for (const char* v : {"a", "b", "c", "d"}) g.add_vertex(v);
    g.add_edge("p0", "a", "b");
    g.add_edge("p1", "a", "b");
    g.add_edge("bridge", "b", "c");
    g.add_edge("q0", "c", "d");
    g.add_edge("q1", "c", "d");
    auto r = is_group_connected(g, z3);
    CHECK_FALSE(r.connected);
    REQUIRE(r.bridge_id);
    CHECK(*r.bridge_id == "bridge");
    REQUIRE(r.failing_beta);
    ForbiddenMap zfm;
    zfm.forbidden.assign(g.num_edges(), {0});
    CHECK_FALSE(find_flow(g, z3, *r.failing_beta, zfm).found);
  }

  SECTION("trivial group") {
    GroupTable z1{FiniteAbelianGroup{}};
    CHECK_FALSE(is_group_connected(gen_cycle(3), z1).connected);
  }
}

TEST_CASE("group colorability decider") {
  GroupTable z2(parse_group_spec("Z2")), z3(parse_group_spec("Z3"));

  CHECK(is_group_colorable(gen_cycle(3), z3).colorable);
  CHECK_FALSE(is_group_colorable(gen_cycle(3), z2).colorable);
  CHECK_FALSE(is_group_colorable(gen_complete(4), z3).colorable);

  SECTION("no-verdicts carry a checkable edge map") {
    auto no = is_group_colorable(gen_complete(4), z3);
    REQUIRE(no.failing_phi);
    CHECK_FALSE(find_coloring(gen_complete(4), z3, *no.failing_phi));
  }

  SECTION("switching reduction agrees with raw enumeration") {
    std::vector<Multigraph> corpus = {gen_cycle(3), gen_cycle(4), gen_theta(2, 1),
                                      gen_theta(3, 1), gen_path(4), gen_theta(2, 2)};
    for (const auto& g : corpus) {
      if (g.num_edges() > 5) continue;
      for (const char* spec : {"Z2", "Z3"}) {
        GroupTable t(parse_group_spec(spec));
        CHECK(is_group_colorable(g, t).colorable == gftest::colorable_raw(g, t));
      }
    }
  }
}

TEST_CASE("criterion equivalence on a small corpus") {
  // Definition-level decider vs. the universal forbidden-value test, over
  // all 2-edge-connected multigraphs with <= 3 vertices and <= 5 edges and
  // groups of order <= 4. The acceptance suite runs the full corpus.
  auto corpus = gftest::two_edge_connected_corpus(3, 5);
  REQUIRE(corpus.size() >= 8);
  std::vector<GroupTable> tables;
  for (long long n = 1; n <= 4; ++n)
    for (const auto& grp : enumerate_groups_of_order(n)) tables.emplace_back(grp);
  for (const auto& g : corpus) {
    for (const auto& t : tables) {
      bool lhs = is_group_connected(g, t).connected;
      bool rhs = universal_forbidden_value_test(g, t);
      INFO("graph with " << g.num_vertices() << " vertices, " << g.num_edges()
                         << " edges, group " << format_group_spec(t.group()));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("planar duality transfers connectivity to colorability") {
  struct Instance {
    Multigraph g;
    RotationSystem rot;
  };
  std::vector<Instance> instances;
  for (int n : {2, 3, 5}) {
    auto c = gen_cycle(n);
    instances.push_back({c, rotation_for_cycle(c)});
  }
  for (auto [q, len] : std::vector<std::pair<int, int>>{{3, 1}, {3, 2}}) {
    auto g = gen_theta(q, len);
    instances.push_back({g, rotation_for_theta(g, q, len)});
  }
  auto k4 = gen_complete(4);
  instances.push_back({k4, rotation_for_k4(k4)});

  for (const auto& inst : instances) {
    auto dual = planar_dual(inst.g, inst.rot).dual;
    for (long long n = 2; n <= 5; ++n) {
      for (const auto& grp : enumerate_groups_of_order(n)) {
        GroupTable t(grp);
        bool conn = is_group_connected(inst.g, t).connected;
        bool col = is_group_colorable(dual, t).colorable;
        INFO("group " << format_group_spec(grp) << ", primal edges " << inst.g.num_edges());
        CHECK(conn == col);
      }
    }
  }
}

TEST_CASE("connectivity yes-verdicts respect the cyclicity bound") {
  std::vector<Multigraph> corpus = {gen_theta(3, 1), gen_theta(5, 1), gen_theta(3, 2),
                                    gen_cycle(3),    gen_complete(4), doubled(gen_cycle(3))};
  for (const auto& g : corpus) {
    auto part = cycle_equivalence(g);
    for (long long n = 2; n <= 6; ++n)
      for (const auto& grp : enumerate_groups_of_order(n)) {
        GroupTable t(grp);
        if (is_group_connected(g, t).connected) CHECK(t.order() > part.cyclicity);
      }
  }
}

TEST_CASE("profiles") {
  SECTION("theta weak connectivity numbers") {
    auto p = connectivity_profile(gen_theta(3, 1), 3);
    REQUIRE(p.weak_number);
    CHECK(*p.weak_number == 3);
  }

  SECTION("colorability profile of the triangle") {
    auto p = colorability_profile(gen_cycle(3), 4);
    REQUIRE(p.weak_number);
    CHECK(*p.weak_number == 3);
    REQUIRE(p.strong_evidence_number);
    CHECK(*p.strong_evidence_number == 3);
  }

  SECTION("monotonicity chain against degeneracy") {
    std::vector<Multigraph> corpus = {gen_cycle(3), gen_cycle(5), gen_path(4), gen_complete(4)};
    for (const auto& g : corpus) {
      long long col = degeneracy(g) + 1;
      auto p = colorability_profile(g, col);
      REQUIRE(p.weak_number);
      CHECK(gftest::chromatic_number(g) <= *p.weak_number);
      REQUIRE(p.strong_evidence_number);
      CHECK(*p.strong_evidence_number <= col);
      CHECK(*p.weak_number <= *p.strong_evidence_number);
    }
  }

  SECTION("budget refusal reports a partial profile") {
    auto p = connectivity_profile(gen_theta(5, 2), 5, 1000);
    CHECK(p.budget_exceeded);
    CHECK(p.completed_up_to < 5);
  }
}
