// Brute-force oracles for the unit and acceptance suites. Everything here
// enumerates exhaustively and stays independent of the library's own
// algorithms (Schreier generators, block closure, label invariants).
#ifndef ORBGROWTH_TESTS_ORACLES_HPP_
#define ORBGROWTH_TESTS_ORACLES_HPP_

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "orbgrowth/perm.hpp"
#include "orbgrowth/perm_group.hpp"

namespace oracles {

using orbgrowth::FinitePermGroup;
using orbgrowth::Permutation;
using orbgrowth::Point;

/// Every element of the group, by closure under generator multiplication.
inline std::vector<Permutation> enumerate_elements(FinitePermGroup const& g,
                                                   std::size_t cap = 200000) {
  std::set<Permutation> seen;
  std::vector<Permutation> queue{Permutation::identity(g.degree)};
  seen.insert(queue.front());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (auto const& gen : g.generators) {
      auto next = queue[head].then(gen);
      if (seen.insert(next).second) {
        if (seen.size() > cap)
          throw std::runtime_error("oracle group enumeration cap exceeded");
        queue.push_back(std::move(next));
      }
    }
  }
  return queue;
}

/// Stabiliser suborbits by filtering the full element list.
inline std::vector<std::vector<Point>> brute_stabilizer_suborbits(
    FinitePermGroup const& g, Point basepoint) {
  auto elements = enumerate_elements(g);
  std::vector<Permutation> stab;
  for (auto const& e : elements)
    if (e[basepoint] == basepoint) stab.push_back(e);

  std::vector<bool> assigned(g.degree, false);
  std::vector<std::vector<Point>> cells;
  for (Point p = 0; p < g.degree; ++p) {
    if (assigned[p]) continue;
    std::set<Point> cell;
    for (auto const& e : stab) cell.insert(e[p]);
    std::vector<Point> sorted(cell.begin(), cell.end());
    for (Point q : sorted) assigned[q] = true;
    cells.push_back(std::move(sorted));
  }
  return cells;
}

/// The suborbit paired with the cell of beta, from the full pair orbit
/// (alpha,beta)^G: the set { gamma : (gamma, alpha) in the orbit }.
inline std::vector<Point> brute_paired_cell(FinitePermGroup const& g,
                                            Point alpha, Point beta) {
  auto elements = enumerate_elements(g);
  std::set<Point> cell;
  for (auto const& e : elements)
    if (e[beta] == alpha) cell.insert(e[alpha]);
  return {cell.begin(), cell.end()};
}

/// Exhaustive primitivity: searches every partition of the domain into
/// equal-size blocks for a G-invariant one. Feasible for degree <= 8.
inline bool brute_is_primitive(FinitePermGroup const& g) {
  Point n = g.degree;
  std::vector<Point> block_of(n, 0);

  // Recursively assign points to blocks of size `bs` canonically: the
  // smallest unassigned point always opens the next block.
  auto invariant = [&](std::vector<std::vector<Point>> const& blocks) {
    std::set<std::set<Point>> system;
    for (auto const& b : blocks) system.insert(std::set<Point>(b.begin(), b.end()));
    for (auto const& gen : g.generators)
      for (auto const& b : blocks) {
        std::set<Point> image;
        for (Point p : b) image.insert(gen[p]);
        if (!system.contains(image)) return false;
      }
    return true;
  };

  for (Point bs = 2; bs < n; ++bs) {
    if (n % bs != 0) continue;
    std::vector<std::vector<Point>> blocks;
    std::vector<bool> used(n, false);

    std::function<bool()> search = [&]() -> bool {
      Point first = 0;
      while (first < n && used[first]) ++first;
      if (first == n) return invariant(blocks);
      used[first] = true;
      blocks.push_back({first});
      // choose bs-1 companions from the remaining points
      std::vector<Point> free;
      for (Point p = first + 1; p < n; ++p)
        if (!used[p]) free.push_back(p);
      std::vector<Point> pick;
      std::function<bool(std::size_t)> choose = [&](std::size_t start) -> bool {
        if (pick.size() == static_cast<std::size_t>(bs - 1)) {
          for (Point p : pick) {
            used[p] = true;
            blocks.back().push_back(p);
          }
          bool found = search();
          for (Point p : pick) used[p] = false;
          blocks.back().resize(1);
          return found;
        }
        for (std::size_t i = start; i < free.size(); ++i) {
          pick.push_back(free[i]);
          if (choose(i + 1)) return true;
          pick.pop_back();
        }
        return false;
      };
      bool found = choose(0);
      blocks.pop_back();
      used[first] = false;
      return found;
    };

    if (search()) return false;  // invariant nontrivial proper system found
  }
  return true;
}

}  // namespace oracles

#endif  // ORBGROWTH_TESTS_ORACLES_HPP_
