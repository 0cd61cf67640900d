#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "orbgrowth/bfs.hpp"
#include "orbgrowth/catalog.hpp"
#include "orbgrowth/end_profile.hpp"
#include "orbgrowth/finite_wrapper.hpp"
#include "orbgrowth/lobes.hpp"
#include "orbgrowth/product.hpp"
#include "orbgrowth/tree_of_lobes.hpp"

using namespace orbgrowth;

namespace {

std::vector<VertexKey> sample_vertices(SphereTable const& table, std::size_t n,
                                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<VertexKey> out;
  std::uniform_int_distribution<std::uint32_t> sphere_pick(0, table.radius());
  while (out.size() < n) {
    auto r = sphere_pick(rng);
    if (table.sphere_size(r) == 0) continue;
    std::uniform_int_distribution<std::size_t> member_pick(
        0, table.sphere(r).size() - 1);
    out.emplace_back(table.sphere(r).key(member_pick(rng)));
  }
  return out;
}

}  // namespace

TEST_CASE("expand: sphere sizes of Gamma(2, K3)") {
  auto graph = tree_of_lobes(2, complete_lobe(3));
  auto table = expand(*graph, 3);
  CHECK(table.sizes() == std::vector<Count>{1, 4, 8, 16});
}

TEST_CASE("expand: sphere sizes of Gamma(2, P5)") {
  auto graph = tree_of_lobes(2, petersen_lobe());
  auto table = expand(*graph, 2);
  CHECK(table.sphere_size(1) == 6);
  CHECK(table.sphere_size(2) == 30);
}

TEST_CASE("expand: product spheres convolve the base spheres") {
  auto base = tree_of_lobes(2, complete_lobe(3));
  auto product = product_wreath(base, 2);
  auto table = expand(*product, 2);
  CHECK(table.sphere_size(1) == 8);
  CHECK(table.sphere_size(2) == 32);  // 2*1*8 + 4*4
}

TEST_CASE("expand: determinism and serialization") {
  auto graph = tree_of_lobes(2, petersen_lobe());
  auto t1 = expand(*graph, 4);
  auto graph2 = tree_of_lobes(2, petersen_lobe());
  auto t2 = expand(*graph2, 4);
  CHECK(t1.serialize() == t2.serialize());
}

TEST_CASE("expand: sphere invariants") {
  auto graph = tree_of_lobes(2, petersen_lobe());
  auto table = expand(*graph, 4);

  // Spheres are disjoint and sorted; each member of S_r has a neighbor in
  // S_{r-1}, and the recorded parent is one such neighbor.
  for (std::uint32_t r = 1; r <= 4; ++r) {
    auto const& sphere = table.sphere(r);
    auto const& prev = table.sphere(r - 1);
    for (std::size_t i = 0; i < sphere.size(); ++i) {
      if (i + 1 < sphere.size()) CHECK(sphere.key(i) < sphere.key(i + 1));
      CHECK_FALSE(prev.contains(sphere.key(i)));
    }
    for (std::size_t i : {std::size_t{0}, sphere.size() - 1}) {
      VertexKey parent(prev.key(sphere.parents()[i]));
      std::vector<VertexKey> nbrs;
      graph->append_undirected_neighbors(VertexKey(sphere.key(i)), nbrs);
      CHECK(std::find(nbrs.begin(), nbrs.end(), parent) != nbrs.end());
    }
  }
}

TEST_CASE("expand: budget exhaustion is a typed partial-result error") {
  auto graph = tree_of_lobes(2, complete_lobe(3));
  try {
    expand(*graph, 6, {.budget = 20});
    FAIL("expected BudgetExceeded");
  } catch (BudgetExceeded const& e) {
    CHECK(e.completed_radius() == 2);  // 1 + 4 + 8 = 13 <= 20 < 29
    REQUIRE(e.partial() != nullptr);
    CHECK(e.partial()->sizes() == std::vector<Count>{1, 4, 8});
  }
}

TEST_CASE("adjacency symmetry on sampled vertices") {
  auto check_graph = [](LazyRootedDigraph const& graph, std::uint32_t radius,
                        std::size_t samples, std::uint64_t seed) {
    auto table = expand(graph, radius);
    for (auto const& v : sample_vertices(table, samples, seed)) {
      for (auto const& u : graph.out_neighbors(v)) {
        auto back = graph.in_neighbors(u);
        CHECK(std::find(back.begin(), back.end(), v) != back.end());
      }
      for (auto const& u : graph.in_neighbors(v)) {
        auto fwd = graph.out_neighbors(u);
        CHECK(std::find(fwd.begin(), fwd.end(), v) != fwd.end());
      }
    }
  };
  check_graph(*tree_of_lobes(2, petersen_lobe()), 4, 60, 11);
  check_graph(*product_wreath(tree_of_lobes(2, complete_lobe(3)), 2), 3, 60,
              12);
  check_graph(*tree_of_lobes(2, lobe_from_group(catalog_group("frobenius21"),
                                                0, 1)),
              3, 60, 13);
}

TEST_CASE("distance") {
  auto graph = tree_of_lobes(2, complete_lobe(3));
  auto table = expand(*graph, 4);
  VertexKey v(table.sphere(3).key(0));
  CHECK(distance(*graph, v, v, 5) == 0);

  // Two neighbors of the root in the same lobe are adjacent.
  auto root_nbrs = graph->out_neighbors(graph->root());
  CHECK(distance(*graph, root_nbrs[0], root_nbrs[1], 3) == 1);

  auto p5 = tree_of_lobes(2, petersen_lobe());
  // A within-lobe antipode of the root: one step of lobe length 2.
  REQUIRE(p5->lobe().dist[0][5] == 2);
  VertexKey antipode = TreeOfLobesDigraph::encode_address({{0, 4}});
  CHECK(distance(*p5, p5->root(), antipode, 5) == 2);

  // Cap overflow is a value, not an error.
  CHECK_FALSE(distance(*graph, graph->root(), VertexKey(table.sphere(4).key(0)), 3));
}

TEST_CASE("distance agrees with the structural oracle on samples") {
  auto base = tree_of_lobes(2, petersen_lobe());
  auto table = expand(*base, 4);
  for (auto const& v : sample_vertices(table, 40, 17)) {
    auto structural = base->distance_from_root(v);
    REQUIRE(structural);
    CHECK(distance(*base, base->root(), v, 8) ==
          static_cast<std::uint32_t>(*structural));
  }

  // Same check on an oriented-lobe construction, where the undirected
  // metric must merge the two arc directions.
  auto oriented =
      tree_of_lobes(2, lobe_from_group(catalog_group("frobenius21"), 0, 1));
  auto otable = expand(*oriented, 3);
  for (auto const& v : sample_vertices(otable, 40, 18)) {
    auto structural = oriented->distance_from_root(v);
    REQUIRE(structural);
    CHECK(distance(*oriented, oriented->root(), v, 6) ==
          static_cast<std::uint32_t>(*structural));
  }
}

TEST_CASE("expand at radius zero") {
  auto graph = tree_of_lobes(2, complete_lobe(3));
  auto table = expand(*graph, 0);
  CHECK(table.radius() == 0);
  CHECK(table.sizes() == std::vector<Count>{1});
  CHECK(table.distance_of(graph->root()) == 0);
}

TEST_CASE("local params of Gamma(2, K3) are (1, 2, 1) at every radius") {
  auto graph = tree_of_lobes(2, complete_lobe(3));
  auto table = expand(*graph, 5);
  for (std::uint32_t r = 1; r <= 4; ++r) {
    for (std::size_t i : {std::size_t{0}, table.sphere(r).size() - 1}) {
      auto lp = local_params(*graph, table, VertexKey(table.sphere(r).key(i)));
      CHECK(lp.a == 1);
      CHECK(lp.b == 2);
      CHECK(lp.c == 1);
      CHECK(lp.a + lp.b + lp.c == table.sphere_size(1));
    }
  }
}

TEST_CASE("local params: a + b + c = s_1, and the product shows mixed (b,c)") {
  auto product = product_wreath(tree_of_lobes(2, complete_lobe(3)), 2);
  auto table = expand(*product, 4);
  bool saw_distinct_bc = false;
  LocalParams first;
  bool have_first = false;
  auto const& s3 = table.sphere(3);
  for (std::size_t i = 0; i < s3.size(); ++i) {
    auto lp = local_params(*product, table, VertexKey(s3.key(i)));
    CHECK(lp.a + lp.b + lp.c == table.sphere_size(1));
    if (!have_first) {
      first = lp;
      have_first = true;
    } else if (lp.b != first.b || lp.c != first.c) {
      saw_distinct_bc = true;
    }
  }
  // One-ended constructions must show differing (b, c) within large spheres.
  CHECK(saw_distinct_bc);
}

TEST_CASE("local params preconditions") {
  auto graph = tree_of_lobes(2, complete_lobe(3));
  auto table = expand(*graph, 3);
  CHECK_THROWS_AS(local_params(*graph, table, graph->root()), ValueError);
  CHECK_THROWS_AS(
      local_params(*graph, table, VertexKey(table.sphere(3).key(0))),
      ValueError);
}

TEST_CASE("end profiles") {
  auto tree = tree_of_lobes(2, complete_lobe(3));
  auto tree_table = expand(*tree, 5);
  auto profile = end_profile(*tree, tree_table, 1, 5);
  CHECK(profile.component_count == 4);  // (m-1) * s_1

  auto product = product_wreath(tree_of_lobes(2, complete_lobe(3)), 2);
  auto prod_table = expand(*product, 6);
  CHECK(end_profile(*product, prod_table, 2, 6).component_count == 1);

  auto k4 = wrap_lobe(complete_lobe(4));
  auto k4_table = expand(*k4, 2);
  CHECK(end_profile(*k4, k4_table, 0, 2).component_count == 0);

  CHECK_THROWS_AS(end_profile(*tree, tree_table, 3, 3), ValueError);
  CHECK_THROWS_AS(end_profile(*tree, tree_table, 1, 7), ValueError);
}

TEST_CASE("end profile components only split as r grows") {
  auto tree = tree_of_lobes(2, petersen_lobe());
  auto table = expand(*tree, 5);
  Count previous = 1;
  for (std::uint32_t r = 0; r <= 3; ++r) {
    auto profile = end_profile(*tree, table, r, 5);
    CHECK(profile.component_count >= previous);
    previous = profile.component_count;
  }
}

TEST_CASE("sphere bound check") {
  auto graph = tree_of_lobes(2, complete_lobe(3));
  auto table = expand(*graph, 3);
  CHECK_FALSE(check_sphere_bound(table));  // 16 <= 4 * 3^2

  auto p5 = tree_of_lobes(2, petersen_lobe());
  auto p5_table = expand(*p5, 2);
  CHECK_FALSE(check_sphere_bound(p5_table));  // 30 <= 6 * 5, equality

  auto violation = check_sphere_bound(std::vector<Count>{1, 4, 37});
  REQUIRE(violation);
  CHECK(violation->radius == 2);
  CHECK(violation->size == 37);
  CHECK(violation->bound == 12);

  CHECK_THROWS_AS(check_sphere_bound(std::vector<Count>{1}), ValueError);
}

TEST_CASE("rerooted views reproduce the sphere counts") {
  auto tree = tree_of_lobes(2, petersen_lobe());
  auto table = expand(*tree, 4);
  auto root_sizes = table.sizes();
  for (auto const& v : sample_vertices(table, 5, 23)) {
    auto view = reroot(tree, v);
    CHECK(expand(*view, 4).sizes() == root_sizes);
  }
}

TEST_CASE("in-valency equals out-valency at the root") {
  auto check = [](LazyRootedDigraph const& graph) {
    CHECK(graph.out_neighbors(graph.root()).size() ==
          graph.in_neighbors(graph.root()).size());
  };
  check(*tree_of_lobes(2, complete_lobe(3)));
  check(*tree_of_lobes(2, petersen_lobe()));
  check(*tree_of_lobes(2, lobe_from_group(catalog_group("frobenius21"), 0, 1)));
  check(*product_wreath(tree_of_lobes(2, complete_lobe(3)), 2));
  check(*wrap_lobe(petersen_lobe()));
}
