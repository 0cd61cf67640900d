#ifndef ORBGROWTH_LOBES_HPP_
#define ORBGROWTH_LOBES_HPP_

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "orbgrowth/base.hpp"
#include "orbgrowth/perm_group.hpp"

namespace orbgrowth {

/// A finite digraph used as the lobe of a tree-of-lobes construction.
/// Vertices are 0..size-1 with vertex 0 the designated basepoint; entry
/// vertices of fresh lobe copies are identified with the basepoint.
///
/// Invariants checked at construction: at least three vertices, connected,
/// no cut vertex (connectivity >= 2), loop-free arcs. The distance matrix
/// is the undirected metric (arc in either direction) and is symmetric.
struct LobeSpec {
  std::string name;
  Point size = 0;
  std::vector<std::pair<Point, Point>> arcs;
  std::vector<std::vector<Point>> out_adj, in_adj, undirected_adj;
  std::vector<std::vector<std::uint32_t>> dist;
  std::set<std::uint32_t> distance_set;  // distances realised from any vertex
  std::uint32_t diameter = 0;
  bool vertex_transitive = false;
  bool arc_transitive = false;
  bool distance_transitive = false;
  std::optional<FinitePermGroup> automorphisms;

  /// Sizes of the distance cells from the basepoint: index d -> |{v : d(0,v)=d}|.
  std::vector<Count> distance_partition;

  bool is_complete() const { return diameter == 1; }
  bool arcs_symmetric = false;  // every arc present in both directions
};

namespace detail {

inline std::vector<std::vector<std::uint32_t>> all_pairs_undirected_distance(
    Point n, std::vector<std::vector<Point>> const& undirected_adj) {
  std::vector<std::vector<std::uint32_t>> dist(
      n, std::vector<std::uint32_t>(n, UINT32_MAX));
  for (Point s = 0; s < n; ++s) {
    dist[s][s] = 0;
    std::vector<Point> queue{s};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Point v = queue[head];
      for (Point w : undirected_adj[v]) {
        if (dist[s][w] == UINT32_MAX) {
          dist[s][w] = dist[s][v] + 1;
          queue.push_back(w);
        }
      }
    }
  }
  return dist;
}

/// Orbit id of every ordered pair (u,v), u != v, under coordinatewise
/// action of the generators; ids are assigned in scan order.
inline std::vector<std::uint32_t> pair_orbit_ids(FinitePermGroup const& group) {
  Point n = group.degree;
  std::vector<std::uint32_t> id(static_cast<std::size_t>(n) * n, UINT32_MAX);
  std::uint32_t next_id = 0;
  for (Point u = 0; u < n; ++u) {
    for (Point v = 0; v < n; ++v) {
      if (u == v) continue;
      std::size_t code = static_cast<std::size_t>(u) * n + v;
      if (id[code] != UINT32_MAX) continue;
      std::uint32_t this_id = next_id++;
      std::vector<std::pair<Point, Point>> queue{{u, v}};
      id[code] = this_id;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        auto [a, b] = queue[head];
        for (auto const& g : group.generators) {
          Point a2 = g[a], b2 = g[b];
          std::size_t c2 = static_cast<std::size_t>(a2) * n + b2;
          if (id[c2] == UINT32_MAX) {
            id[c2] = this_id;
            queue.emplace_back(a2, b2);
          }
        }
      }
    }
  }
  return id;
}

}  // namespace detail

/// Builds a LobeSpec from an arc list, validating the lobe invariants and
/// computing transitivity flags from the supplied automorphism generators
/// (flags stay false without them).
inline LobeSpec make_lobe(std::string name, Point size,
                          std::vector<std::pair<Point, Point>> arcs,
                          std::optional<FinitePermGroup> automorphisms) {
  if (size < 3)
    throw ValueError("lobe '" + name +
                     "': connectivity-one constructions need lobes with at "
                     "least three vertices");
  LobeSpec lobe;
  lobe.name = std::move(name);
  lobe.size = size;
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  for (auto const& [u, v] : arcs) {
    if (u >= size || v >= size)
      throw ValueError("lobe '" + lobe.name + "': arc endpoint out of range");
    if (u == v) throw ValueError("lobe '" + lobe.name + "': loop arc");
  }
  lobe.arcs = std::move(arcs);

  lobe.out_adj.resize(size);
  lobe.in_adj.resize(size);
  lobe.undirected_adj.resize(size);
  for (auto const& [u, v] : lobe.arcs) {
    lobe.out_adj[u].push_back(v);
    lobe.in_adj[v].push_back(u);
    lobe.undirected_adj[u].push_back(v);
    lobe.undirected_adj[v].push_back(u);
  }
  for (auto& row : lobe.undirected_adj) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  lobe.arcs_symmetric = true;
  for (auto const& [u, v] : lobe.arcs)
    if (!std::binary_search(lobe.arcs.begin(), lobe.arcs.end(),
                            std::make_pair(v, u)))
      lobe.arcs_symmetric = false;

  lobe.dist = detail::all_pairs_undirected_distance(size, lobe.undirected_adj);
  for (Point v = 0; v < size; ++v) {
    if (lobe.dist[0][v] == UINT32_MAX)
      throw ValueError("lobe '" + lobe.name + "': digraph is not connected");
  }
  for (Point u = 0; u < size; ++u)
    for (Point v = 0; v < size; ++v) {
      lobe.diameter = std::max(lobe.diameter, lobe.dist[u][v]);
      if (lobe.dist[u][v] > 0) lobe.distance_set.insert(lobe.dist[u][v]);
    }

  // Connectivity >= 2: removing any single vertex leaves the rest connected.
  for (Point cut = 0; cut < size; ++cut) {
    Point start = cut == 0 ? 1 : 0;
    std::vector<bool> seen(size, false);
    seen[cut] = true;
    seen[start] = true;
    std::vector<Point> queue{start};
    std::size_t reached = 1;
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (Point w : lobe.undirected_adj[queue[head]])
        if (!seen[w]) {
          seen[w] = true;
          ++reached;
          queue.push_back(w);
        }
    if (reached + 1 < static_cast<std::size_t>(size))
      throw ValueError("lobe '" + lobe.name + "': vertex " +
                       std::to_string(cut) +
                       " is a cut vertex (connectivity must be >= 2)");
  }

  lobe.distance_partition.assign(lobe.diameter + 1, 0);
  for (Point v = 0; v < size; ++v) ++lobe.distance_partition[lobe.dist[0][v]];

  if (automorphisms) {
    if (automorphisms->degree != size)
      throw ValueError("lobe '" + lobe.name +
                       "': automorphism degree mismatch");
    auto ids = detail::pair_orbit_ids(*automorphisms);
    auto pair_id = [&](Point u, Point v) {
      return ids[static_cast<std::size_t>(u) * size + v];
    };
    for (auto const& g : automorphisms->generators)
      for (auto const& [u, v] : lobe.arcs)
        if (!std::binary_search(lobe.arcs.begin(), lobe.arcs.end(),
                                std::make_pair(g[u], g[v])))
          throw ValueError("lobe '" + lobe.name +
                           "': supplied generators do not preserve arcs");

    lobe.vertex_transitive =
        orbit(*automorphisms, 0).size() == static_cast<std::size_t>(size);
    lobe.arc_transitive = true;
    for (auto const& [u, v] : lobe.arcs)
      if (pair_id(u, v) != pair_id(lobe.arcs[0].first, lobe.arcs[0].second))
        lobe.arc_transitive = false;
    lobe.distance_transitive = lobe.vertex_transitive;
    for (std::uint32_t d : lobe.distance_set) {
      std::optional<std::uint32_t> witness;
      for (Point u = 0; u < size && lobe.distance_transitive; ++u)
        for (Point v = 0; v < size; ++v) {
          if (u == v || lobe.dist[u][v] != d) continue;
          if (!witness) witness = pair_id(u, v);
          if (pair_id(u, v) != *witness) {
            lobe.distance_transitive = false;
            break;
          }
        }
    }
    lobe.automorphisms = std::move(automorphisms);
  }
  return lobe;
}

/// The complete digraph K_t (arcs in both directions), t >= 3.
inline LobeSpec complete_lobe(Point t) {
  if (t < 3)
    throw ValueError(
        "complete_lobe: lobes of connectivity-one constructions must have at "
        "least three vertices");
  std::vector<std::pair<Point, Point>> arcs;
  for (Point u = 0; u < t; ++u)
    for (Point v = 0; v < t; ++v)
      if (u != v) arcs.emplace_back(u, v);
  // Sym(t) generators.
  std::vector<Point> cycle(t), swap01(t);
  for (Point i = 0; i < t; ++i) {
    cycle[i] = (i + 1) % t;
    swap01[i] = i;
  }
  std::swap(swap01[0], swap01[1]);
  std::vector<Permutation> gens;
  gens.emplace_back(std::move(cycle));
  gens.emplace_back(std::move(swap01));
  return make_lobe("K" + std::to_string(t), t, std::move(arcs),
                   FinitePermGroup(t, std::move(gens)));
}

/// The Petersen graph as a digraph (arcs both ways): vertices are the ten
/// 2-subsets of {0..4} in lexicographic order, adjacent iff disjoint.
inline LobeSpec petersen_lobe() {
  std::vector<std::pair<Point, Point>> subsets;
  for (Point a = 0; a < 5; ++a)
    for (Point b = a + 1; b < 5; ++b) subsets.emplace_back(a, b);
  std::vector<std::pair<Point, Point>> arcs;
  for (Point i = 0; i < 10; ++i)
    for (Point j = 0; j < 10; ++j) {
      if (i == j) continue;
      auto [a, b] = subsets[i];
      auto [c, d] = subsets[j];
      if (a != c && a != d && b != c && b != d) arcs.emplace_back(i, j);
    }
  std::vector<Permutation> gens;
  gens.push_back(Permutation::from_cycles("(0 4 7 9 3)(1 5 8 2 6)", 10));
  gens.push_back(Permutation::from_cycles("(1 4)(2 5)(3 6)", 10));
  return make_lobe("P5", 10, std::move(arcs), FinitePermGroup(10, std::move(gens)));
}

/// The orbital digraph of (alpha, beta) under a primitive non-regular
/// group, re-indexed so that alpha becomes the basepoint 0, packaged as a
/// lobe. Rejects groups failing a hypothesis of the construction, naming
/// the failure.
inline LobeSpec lobe_from_group(FinitePermGroup const& group, Point alpha,
                                Point beta) {
  require_transitive(group, "lobe_from_group");
  auto prim = is_primitive(group);
  if (!prim.primitive)
    throw ValueError("lobe_from_group: group is imprimitive (block of size " +
                     std::to_string(prim.witness->blocks.front().size()) +
                     " found); construction requires a primitive group");
  // Regular <=> the stabiliser of a point is trivial.
  auto cells = stabilizer_suborbits(group, alpha);
  if (cells.size() == group.degree)
    throw ValueError(
        "lobe_from_group: group acts regularly; construction requires a "
        "non-regular group");

  auto digraph = orbital_digraph(group, alpha, beta);

  // Relabel so the basepoint is vertex 0.
  auto relabel = [&](Point p) {
    if (p == alpha) return Point{0};
    if (p == 0) return alpha;
    return p;
  };
  std::vector<std::pair<Point, Point>> arcs;
  arcs.reserve(digraph.arcs.size());
  for (auto const& [u, v] : digraph.arcs)
    arcs.emplace_back(relabel(u), relabel(v));

  std::vector<Permutation> gens;
  for (auto const& g : group.generators) {
    std::vector<Point> images(group.degree);
    for (Point p = 0; p < group.degree; ++p)
      images[relabel(p)] = relabel(g[p]);
    gens.emplace_back(std::move(images));
  }

  LobeSpec lobe;
  try {
    lobe = make_lobe("orbital(" + std::to_string(alpha) + "," +
                         std::to_string(beta) + ")",
                     group.degree, std::move(arcs),
                     FinitePermGroup(group.degree, std::move(gens)));
  } catch (ValueError const& e) {
    throw ValueError(std::string("lobe_from_group: ") + e.what());
  }
  return lobe;
}

}  // namespace orbgrowth

#endif  // ORBGROWTH_LOBES_HPP_
