#include <doctest.h>

#include <algorithm>
#include <set>

#include "support/builders.hpp"
#include "support/cactus_checks.hpp"
#include "support/oracles.hpp"
#include "trailorient/connectivity.hpp"
#include "trailorient/generators.hpp"

using namespace trailorient;

namespace {

std::set<EdgeId> as_set(const std::vector<EdgeId>& v) { return {v.begin(), v.end()}; }

void check_cactus_shape(const MultiGraph& g, const Cactus& c) { CHECK(oracle::cactus_shape_problem(g, c) == ""); }

}  // namespace

TEST_CASE("find_bridges examples") {
  CHECK(as_set(find_bridges(build::path(2))) == std::set<EdgeId>{0, 1});
  CHECK(find_bridges(build::cycle(3)).empty());
  const auto two_triangles = build::edges(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {2, 3}});
  CHECK(as_set(find_bridges(two_triangles)) == oracle::bridges(two_triangles));
  CHECK(as_set(find_bridges(two_triangles)) == std::set<EdgeId>{6});
  CHECK(find_bridges(build::edges(2, {{0, 1}, {0, 1}})).empty());
}

TEST_CASE("find_bridges agrees with deletion on random small graphs") {
  Rng rng(11);
  for (int round = 0; round < 300; ++round) {
    const auto n = static_cast<VertexId>(2 + draw_below(rng, 6));
    const auto m = static_cast<EdgeId>(n - 1 + draw_below(rng, 5));
    const auto g = random_connected(n, m, rng, round % 3 == 0);
    CHECK(as_set(find_bridges(g)) == oracle::bridges(g));
    CHECK(is_two_edge_connected(g) == oracle::two_edge_connected(g));
  }
}

TEST_CASE("find_bridges on exhaustive graphs up to 5 vertices and 7 edges") {
  for_each_multigraph(5, 7, true, false, [](const MultiGraph& g) {
    CHECK(as_set(find_bridges(g)) == oracle::bridges(g));
    return true;
  });
}

TEST_CASE("is_two_edge_connected examples") {
  CHECK(is_two_edge_connected(MultiGraph(1)));
  CHECK_FALSE(is_two_edge_connected(build::path(2)));
  CHECK(is_two_edge_connected(build::edges(2, {{0, 1}, {0, 1}})));
  CHECK_FALSE(is_two_edge_connected(MultiGraph(2)));
  CHECK_FALSE(is_two_edge_connected(MultiGraph(0)));
  CHECK_FALSE(is_two_edge_connected(build::cycle(3), 0));
}

TEST_CASE("is_strongly_connected with mixed semantics") {
  MultiGraph d(3);
  d.add_edge(0, 1, EdgeState::FixedForward);
  d.add_edge(1, 2, EdgeState::FixedForward);
  d.add_edge(2, 0, EdgeState::FixedForward);
  CHECK(is_strongly_connected(d));
  CHECK_FALSE(is_strongly_connected(d, 1));

  const auto fig1 = fig1_instance();
  CHECK(is_strongly_connected(fig1.graph));
  auto oriented = fig1.graph;
  for (EdgeId e : fig1.trails[0].edges) oriented.set_state(e, EdgeState::OrientedForward);
  CHECK_FALSE(is_strongly_connected(oriented));
  CHECK(oracle::strongly_connected(fig1.graph));
  CHECK_FALSE(oracle::strongly_connected(oriented));
}

TEST_CASE("is_strongly_connected agrees with closure on random mixed graphs") {
  Rng rng(3);
  for (int round = 0; round < 300; ++round) {
    const auto n = static_cast<VertexId>(2 + draw_below(rng, 6));
    MultiGraph g(n);
    const auto m = 1 + draw_below(rng, 10);
    for (std::uint64_t i = 0; i < m; ++i) {
      const auto u = static_cast<VertexId>(draw_below(rng, n));
      const auto v = static_cast<VertexId>(draw_below(rng, n));
      const auto s = draw_below(rng, 4);
      g.add_edge(u, v, s == 0 ? EdgeState::Undirected
                       : s == 1 ? EdgeState::FixedForward
                       : s == 2 ? EdgeState::OrientedForward
                                : EdgeState::OrientedReversed);
    }
    CHECK(is_strongly_connected(g) == oracle::strongly_connected(g));
    CHECK(is_strongly_connected(g, 0) == oracle::strongly_connected(g, 0));
  }
}

TEST_CASE("three_edge_components examples") {
  SUBCASE("K4 is one node") {
    const auto k4 = build::complete(4);
    const auto c = three_edge_components(k4);
    CHECK(c.node_count == 1);
    CHECK(c.edges.empty());
    CHECK(is_three_edge_connected(k4));
    for (VertexId v = 1; v < 4; ++v) CHECK(oracle::edge_connectivity(k4, 0, v) >= 3);
  }
  SUBCASE("4-cycle is a cactus 4-cycle") {
    const auto c4 = build::cycle(4);
    const auto c = three_edge_components(c4);
    CHECK(c.node_count == 4);
    CHECK(c.cycle_count() == 1);
    CHECK(c.cycle_edges(0).size() == 4);
    CHECK_FALSE(is_three_edge_connected(c4));
    check_cactus_shape(c4, c);
    CHECK(oracle::two_cuts(c4).size() == 6);
  }
  SUBCASE("two blocks joined by a cut pair") {
    const auto g = build::two_blocks();
    const auto c = three_edge_components(g);
    CHECK(c.node_count == 2);
    CHECK(c.cycle_count() == 1);
    const auto cyc = c.cycle_edges(0);
    CHECK(std::set<EdgeId>(cyc.begin(), cyc.end()) == std::set<EdgeId>{10, 11});
    const auto cuts = oracle::two_cuts(g);
    REQUIRE(cuts.size() == 1);
    CHECK(cuts[0] == std::pair<EdgeId, EdgeId>{10, 11});
    check_cactus_shape(g, c);
    CHECK(c.cut_pairs().size() == 1);
  }
  SUBCASE("single vertex") {
    const auto c = three_edge_components(MultiGraph(1));
    CHECK(c.node_count == 1);
    CHECK(c.edges.empty());
  }
  SUBCASE("not 2-edge connected") {
    CHECK_THROWS_AS(three_edge_components(build::path(2)), std::invalid_argument);
  }
}

TEST_CASE("cactus matches the max-flow partition on random 2-edge-connected graphs") {
  Rng rng(5);
  for (int round = 0; round < 200; ++round) {
    const auto n = static_cast<VertexId>(2 + draw_below(rng, 9));
    const auto m = static_cast<EdgeId>(n + draw_below(rng, n + 2));
    const auto g = random_two_edge_connected(n, m, rng, round % 4 == 0);
    const auto c = three_edge_components(g);
    check_cactus_shape(g, c);
    CHECK(oracle::same_partition(c.vertex_to_node, oracle::three_edge_classes(g)));
    CHECK(is_three_edge_connected(g) == (c.node_count == 1));

    // Consecutive cycle edges are genuine 2-cuts.
    const auto cuts = oracle::two_cuts(g);
    const std::set<std::pair<EdgeId, EdgeId>> cut_set(cuts.begin(), cuts.end());
    for (const auto& cp : c.cut_pairs()) CHECK(cut_set.count(std::minmax(cp.e, cp.f)) == 1);
  }
}

TEST_CASE("build_cactus honours the keep mask") {
  // K4 with edge 0-1 masked out has the cut pairs of the remaining degree-2 vertices.
  const auto k4 = build::complete(4);
  std::vector<EdgeEnds> ends;
  for (const auto& rec : k4.edges()) ends.push_back({rec.tail, rec.head});
  const std::vector<std::uint8_t> keep{0, 1, 1, 1, 1, 1};
  const auto c = build_cactus(4, ends, keep);
  auto h = k4;
  h.remove_edge(0);
  CHECK(oracle::same_partition(c.vertex_to_node, oracle::three_edge_classes(h)));
  CHECK_FALSE(c.is_critical(0));
}
