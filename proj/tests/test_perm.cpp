#include <doctest.h>

#include "orbgrowth/perm.hpp"

using orbgrowth::ParseError;
using orbgrowth::Permutation;
using orbgrowth::Point;
using orbgrowth::ValueError;

TEST_CASE("permutation validation") {
  CHECK_THROWS_AS(Permutation({0, 0, 2}), ValueError);
  CHECK_THROWS_AS(Permutation({0, 3}), ValueError);
  CHECK(Permutation::identity(4).is_identity());
}

TEST_CASE("cycle notation round trip") {
  auto g = Permutation::from_cycles("(0 1 2 3)(4 5)", 6);
  CHECK(g[0] == 1);
  CHECK(g[3] == 0);
  CHECK(g[4] == 5);
  CHECK(g[5] == 4);
  CHECK(g.to_cycles() == "(0 1 2 3)(4 5)");
  CHECK(Permutation::from_cycles(g.to_cycles(), 6) == g);
}

TEST_CASE("cycle composition and inverse") {
  auto g = Permutation::from_cycles("(0 1 2 3)", 4);
  auto h = Permutation::from_cycles("(1 3)", 4);
  auto gh = g.then(h);
  CHECK(gh[0] == 3);  // 0 -> 1 -> 3
  CHECK(g.then(g.inverse()).is_identity());
  CHECK(g.inverse()[1] == 0);
}

TEST_CASE("non-disjoint cycles apply left to right") {
  auto g = Permutation::from_cycles("(0 1)(1 2)", 3);
  CHECK(g[0] == 2);  // 0 -> 1, then 1 -> 2
  CHECK(g[1] == 0);
  CHECK(g[2] == 1);
}

TEST_CASE("cycle parse errors carry positions") {
  CHECK_THROWS_AS(Permutation::from_cycles("(0 1", 4), ParseError);
  CHECK_THROWS_AS(Permutation::from_cycles("(0 9)", 4), ParseError);
  CHECK_THROWS_AS(Permutation::from_cycles("(0 0)", 4), ParseError);
  CHECK_THROWS_AS(Permutation::from_cycles("0 1 2", 4), ParseError);
}
