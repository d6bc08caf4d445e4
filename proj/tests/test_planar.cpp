#include <catch2/catch_amalgamated.hpp>

#include "groupflow/planar.hpp"
#include "test_support.hpp"

using namespace groupflow;

TEST_CASE("face tracing basics") {
  auto c4 = gen_cycle(4);
  auto rot = rotation_for_cycle(c4);
  auto faces = trace_faces(c4, rot);
  CHECK(faces.face_count == 2);
  for (int f = 0; f < faces.face_count; ++f) CHECK(faces.face_darts[f].size() == 4);

  SECTION("rotation validation") {
    RotationSystem bad = rot;
    bad.at[0].pop_back();
    CHECK_THROWS_AS(trace_faces(c4, bad), std::invalid_argument);
  }
}

TEST_CASE("planar duals of the shipped embeddings") {
  SECTION("cycle dual is a parallel bundle") {
    for (int n : {2, 3, 5, 8}) {
      auto cn = gen_cycle(n);
      auto d = planar_dual(cn, rotation_for_cycle(cn));
      CHECK(d.dual.num_vertices() == 2);
      CHECK(d.dual.num_edges() == n);
      CHECK(gftest::isomorphic(d.dual, gen_theta(n, 1)));
    }
  }

  SECTION("nested theta dual is a cycle with multiplied edges") {
    for (auto [q, len] : std::vector<std::pair<int, int>>{{3, 1}, {5, 2}, {3, 2}, {4, 3}}) {
      auto g = gen_theta(q, len);
      auto d = planar_dual(g, rotation_for_theta(g, q, len));
      CHECK(d.dual.num_vertices() == q);
      CHECK(d.dual.num_edges() == q * len);
      CHECK(gftest::isomorphic(d.dual, gftest::with_multiplied_edges(gen_cycle(q), len)));
    }
    // dual(G_{3,1}) is a triangle.
    auto g31 = gen_theta(3, 1);
    auto d = planar_dual(g31, rotation_for_theta(g31, 3, 1));
    CHECK(gftest::isomorphic(d.dual, gen_cycle(3)));
  }

  SECTION("K4 is self-dual in shape") {
    auto k4 = gen_complete(4);
    auto d = planar_dual(k4, rotation_for_k4(k4));
    CHECK(d.dual.num_vertices() == 4);
    CHECK(d.dual.num_edges() == 6);
    CHECK(d.faces.face_count == 4);
    for (int f = 0; f < 4; ++f) CHECK(d.faces.face_darts[f].size() == 3);
  }

  SECTION("dual of dual is isomorphic to the primal") {
    auto check_involution = [](const Multigraph& g, const RotationSystem& rot) {
      auto d1 = planar_dual(g, rot);
      auto d2 = planar_dual(d1.dual, d1.dual_rotation);
      CHECK(gftest::isomorphic(d2.dual, g));
    };
    auto c5 = gen_cycle(5);
    check_involution(c5, rotation_for_cycle(c5));
    auto g52 = gen_theta(5, 2);
    check_involution(g52, rotation_for_theta(g52, 5, 2));
    auto k4 = gen_complete(4);
    check_involution(k4, rotation_for_k4(k4));
  }

  SECTION("nonplanar rotation fails the Euler check") {
    // K4 with two ends swapped at one vertex embeds on the torus instead.
    auto k4 = gen_complete(4);
    auto rot = rotation_for_k4(k4);
    std::swap(rot.at[3][0], rot.at[3][1]);
    CHECK_THROWS_AS(planar_dual(k4, rot), std::invalid_argument);
  }

  SECTION("dual edge ids equal primal edge ids") {
    auto g = gen_theta(3, 2);
    auto d = planar_dual(g, rotation_for_theta(g, 3, 2));
    for (const auto& e : g.edges()) CHECK(d.dual.has_edge(e.id));
  }
}
