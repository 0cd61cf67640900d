#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "orbgrowth/catalog.hpp"
#include "orbgrowth/perm_group.hpp"
#include "oracles.hpp"

using namespace orbgrowth;

namespace {

std::vector<std::size_t> cell_sizes(std::vector<std::vector<Point>> const& cells) {
  std::vector<std::size_t> sizes;
  for (auto const& c : cells) sizes.push_back(c.size());
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

}  // namespace

TEST_CASE("orbit computation") {
  auto c4 = catalog_group("cyclic4");
  CHECK(orbit(c4, 0) == std::vector<Point>{0, 1, 2, 3});

  FinitePermGroup trivial(4, {Permutation::identity(4)});
  CHECK(orbit(trivial, 2) == std::vector<Point>{2});

  auto d4 = catalog_group("dihedral4");
  CHECK(orbit(d4, 1) == std::vector<Point>{0, 1, 2, 3});

  CHECK_THROWS_AS(orbit(c4, 7), ValueError);
}

TEST_CASE("stabilizer suborbits match brute force") {
  auto sym4 = catalog_group("sym4");
  auto cells = stabilizer_suborbits(sym4, 0);
  CHECK(cells == std::vector<std::vector<Point>>{{0}, {1, 2, 3}});
  CHECK(cells == oracles::brute_stabilizer_suborbits(sym4, 0));

  auto c5 = catalog_group("cyclic5");
  CHECK(stabilizer_suborbits(c5, 0).size() == 5);  // regular: all singletons

  auto petersen = catalog_group("petersen");
  for (Point base : {Point{0}, Point{7}}) {
    auto pc = stabilizer_suborbits(petersen, base);
    CHECK(cell_sizes(pc) == std::vector<std::size_t>{1, 3, 6});
    CHECK(pc == oracles::brute_stabilizer_suborbits(petersen, base));
  }

  FinitePermGroup intransitive(4, {Permutation::from_cycles("(0 1)", 4)});
  CHECK_THROWS_WITH_AS(stabilizer_suborbits(intransitive, 0),
                       doctest::Contains("different orbits"), ValueError);
}

TEST_CASE("paired suborbits") {
  auto sym4 = catalog_group("sym4");
  auto cells = stabilizer_suborbits(sym4, 0);
  auto paired = paired_suborbit(sym4, 0, cells[1]);
  CHECK(paired.cell == cells[1]);
  CHECK(paired.self_paired);

  // Frobenius group of order 21: the two 3-element suborbits are paired
  // with each other, not with themselves.
  auto f21 = catalog_group("frobenius21");
  auto fc = stabilizer_suborbits(f21, 0);
  REQUIRE(cell_sizes(fc) == std::vector<std::size_t>{1, 3, 3});
  auto p1 = paired_suborbit(f21, 0, fc[1]);
  CHECK(p1.cell == fc[2]);
  CHECK_FALSE(p1.self_paired);
  auto p2 = paired_suborbit(f21, 0, fc[2]);
  CHECK(p2.cell == fc[1]);

  // Brute-force pair-orbit oracle agrees.
  CHECK(p1.cell == oracles::brute_paired_cell(f21, 0, fc[1].front()));

  auto diag = paired_suborbit(sym4, 0, cells[0]);
  CHECK(diag.cell == std::vector<Point>{0});
  CHECK(diag.self_paired);

  CHECK_THROWS_AS(paired_suborbit(sym4, 0, std::vector<Point>{1, 2}),
                  ValueError);
}

TEST_CASE("paired suborbits have equal sizes across the catalog") {
  for (auto const& entry : group_catalog()) {
    auto g = parse_group_text(entry.file_text);
    if (!is_transitive(g)) continue;
    auto cells = stabilizer_suborbits(g, 0);
    for (auto const& cell : cells) {
      auto paired = paired_suborbit(g, 0, cell);
      CHECK(paired.cell.size() == cell.size());
    }
  }
}

TEST_CASE("primitivity") {
  CHECK(is_primitive(catalog_group("sym4")).primitive);
  CHECK(is_primitive(catalog_group("cyclic5")).primitive);
  CHECK(is_primitive(catalog_group("frobenius21")).primitive);
  CHECK(is_primitive(catalog_group("petersen")).primitive);

  auto d4 = is_primitive(catalog_group("dihedral4"));
  REQUIRE_FALSE(d4.primitive);
  REQUIRE(d4.witness.has_value());
  CHECK(d4.witness->blocks ==
        std::vector<std::vector<Point>>{{0, 2}, {1, 3}});

  CHECK_FALSE(is_primitive(catalog_group("cyclic4")).primitive);
  CHECK_FALSE(is_primitive(catalog_group("cyclic6")).primitive);

  FinitePermGroup intransitive(4, {Permutation::from_cycles("(0 1)", 4)});
  CHECK_THROWS_AS(is_primitive(intransitive), ValueError);
}

TEST_CASE("primitivity agrees with exhaustive partition search, degree <= 8") {
  for (auto const& entry : group_catalog()) {
    auto g = parse_group_text(entry.file_text);
    if (g.degree > 8 || !is_transitive(g)) continue;
    CAPTURE(entry.name);
    CHECK(is_primitive(g).primitive == oracles::brute_is_primitive(g));
  }
}

TEST_CASE("product action wreath") {
  auto sym4 = catalog_group("sym4");
  CHECK(product_action_wreath(sym4, 2).degree == 16);

  auto sym3 = catalog_group("sym3");
  auto w = product_action_wreath(sym3, 2);
  REQUIRE(w.degree == 9);
  auto cells = stabilizer_suborbits(w, 0);
  CHECK(cell_sizes(cells) == std::vector<std::size_t>{1, 4, 4});
  CHECK(cells == oracles::brute_stabilizer_suborbits(w, 0));

  CHECK_THROWS_AS(product_action_wreath(sym3, 1), ValueError);
  FinitePermGroup big(100, {Permutation::identity(100)});
  CHECK_THROWS_WITH_AS(product_action_wreath(big, 4),
                       doctest::Contains("cap"), ValueError);
}

TEST_CASE("wreath of a primitive non-regular base is primitive") {
  for (auto const& name : {"sym3", "frobenius21"}) {
    auto w = product_action_wreath(catalog_group(name), 2);
    CAPTURE(name);
    CHECK(is_primitive(w).primitive);
  }
}

TEST_CASE("wreath of a suborbit-size-p base has subdegrees 2p, p^2, 2p^2") {
  auto f21 = catalog_group("frobenius21");
  auto base_cells = stabilizer_suborbits(f21, 0);
  REQUIRE(cell_sizes(base_cells) == std::vector<std::size_t>{1, 3, 3});

  auto w = product_action_wreath(f21, 2);
  auto cells = stabilizer_suborbits(w, 0);
  std::multiset<std::size_t> sizes;
  for (auto const& c : cells) sizes.insert(c.size());
  CHECK(sizes == std::multiset<std::size_t>{1, 6, 6, 9, 9, 18});
}

TEST_CASE("orbital digraphs") {
  auto c4 = catalog_group("cyclic4");
  auto cycle = orbital_digraph(c4, 0, 1);
  CHECK(cycle.arcs == std::vector<std::pair<Point, Point>>{
                          {0, 1}, {1, 2}, {2, 3}, {3, 0}});
  CHECK(cycle.out_valency == 1);
  CHECK(cycle.in_valency == 1);

  auto sym4 = catalog_group("sym4");
  auto k4 = orbital_digraph(sym4, 0, 1);
  CHECK(k4.arcs.size() == 12);  // complete digraph on 4 vertices

  auto petersen = catalog_group("petersen");
  auto pg = orbital_digraph(petersen, 0, 7);  // {0,1} and {2,3} are disjoint
  CHECK(pg.arcs.size() == 30);                // 15 edges, both directions
  CHECK(pg.out_valency == 3);
  CHECK(pg.in_valency == 3);

  CHECK_THROWS_AS(orbital_digraph(sym4, 2, 2), ValueError);
}

TEST_CASE("orbital digraph valencies are constant for transitive groups") {
  auto f21 = catalog_group("frobenius21");
  auto dg = orbital_digraph(f21, 0, 1);
  std::vector<Count> out_val(dg.vertex_count, 0), in_val(dg.vertex_count, 0);
  for (auto const& [u, v] : dg.arcs) {
    ++out_val[u];
    ++in_val[v];
  }
  for (Point v = 0; v < dg.vertex_count; ++v) {
    CHECK(out_val[v] == dg.out_valency);
    CHECK(in_val[v] == dg.in_valency);
  }
}

TEST_CASE("group file parsing") {
  auto g = parse_group_text("# header\ndegree 4\n(0 1 2 3)  # rotation\n(1 3)\n");
  CHECK(g.degree == 4);
  CHECK(g.generators.size() == 2);

  CHECK_THROWS_AS(parse_group_text("(0 1)\n"), ValueError);
  CHECK_THROWS_AS(parse_group_text("degree 4\n"), ValueError);
  CHECK_THROWS_AS(parse_group_text("degree 4\n(0 9)\n"), ValueError);
}

TEST_CASE("catalog files on disk mirror the built-in catalog") {
  for (auto const& entry : group_catalog()) {
    std::ifstream in(std::string(ORBGROWTH_DATA_DIR) + "/groups/" + entry.name +
                     ".grp");
    REQUIRE(in.good());
    std::stringstream buffer;
    buffer << in.rdbuf();
    CHECK(buffer.str() == entry.file_text);
  }
}

TEST_CASE("suborbit cells partition the domain across the catalog") {
  for (auto const& entry : group_catalog()) {
    auto g = parse_group_text(entry.file_text);
    if (!is_transitive(g)) continue;
    auto cells = stabilizer_suborbits(g, 0);
    std::size_t total = 0;
    std::set<Point> seen;
    for (auto const& c : cells) {
      total += c.size();
      seen.insert(c.begin(), c.end());
    }
    CHECK(total == g.degree);
    CHECK(seen.size() == g.degree);
  }
}
