#ifndef ORBGROWTH_PERM_GROUP_HPP_
#define ORBGROWTH_PERM_GROUP_HPP_

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "orbgrowth/base.hpp"
#include "orbgrowth/perm.hpp"

namespace orbgrowth {

/// Hard cap on the number of points of any materialised finite action.
inline constexpr Count kMaxFiniteDegree = 1'000'000;

/// A finite permutation group given by its degree and a non-empty list of
/// generating permutations (the identity is an allowed generator).
struct FinitePermGroup {
  Point degree = 0;
  std::vector<Permutation> generators;

  FinitePermGroup(Point deg, std::vector<Permutation> gens)
      : degree(deg), generators(std::move(gens)) {
    if (generators.empty())
      throw ValueError("generator list must be non-empty");
    for (auto const& g : generators)
      if (g.degree() != degree)
        throw ValueError("generator degree does not match group degree");
    if (degree == 0) throw ValueError("group degree must be positive");
  }
};

/// A partition of {0..degree-1} into blocks of equal size.
struct BlockSystem {
  std::vector<std::vector<Point>> blocks;
};

struct PrimitivityResult {
  bool primitive = false;
  std::optional<BlockSystem> witness;  // nontrivial proper system if not
};

/// An orbital digraph (Omega, (alpha,beta)^G) of a transitive group.
struct FiniteOrbitalDigraph {
  Point vertex_count = 0;
  std::vector<std::pair<Point, Point>> arcs;  // sorted, loop-free
  Point basepoint = 0;
  Point witness = 0;
  Count out_valency = 0;
  Count in_valency = 0;
};

// -------------------------------------------------------------------------
// Orbits and transversals
// -------------------------------------------------------------------------

/// The orbit of `point` under the group, sorted ascending.
inline std::vector<Point> orbit(FinitePermGroup const& group, Point point) {
  if (point >= group.degree)
    throw ValueError("orbit: point index out of range");
  std::vector<bool> seen(group.degree, false);
  std::vector<Point> queue{point};
  seen[point] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Point p = queue[head];
    for (auto const& g : group.generators) {
      Point q = g[p];
      if (!seen[q]) {
        seen[q] = true;
        queue.push_back(q);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

/// Orbit of `point` together with a transversal: transversal[q] is a group
/// element mapping `point` to q, for every q in the orbit.
struct OrbitTransversal {
  std::vector<Point> points;                       // sorted orbit
  std::map<Point, Permutation> representatives;    // point -> u with base^u = point
};

inline OrbitTransversal orbit_with_transversal(FinitePermGroup const& group,
                                               Point point) {
  if (point >= group.degree)
    throw ValueError("orbit: point index out of range");
  OrbitTransversal result;
  result.representatives.emplace(point, Permutation::identity(group.degree));
  std::vector<Point> queue{point};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Point p = queue[head];
    for (auto const& g : group.generators) {
      Point q = g[p];
      if (!result.representatives.contains(q)) {
        result.representatives.emplace(q, result.representatives.at(p).then(g));
        queue.push_back(q);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  result.points = std::move(queue);
  return result;
}

inline bool is_transitive(FinitePermGroup const& group) {
  return orbit(group, 0).size() == group.degree;
}

inline void require_transitive(FinitePermGroup const& group,
                               std::string_view op) {
  auto first = orbit(group, 0);
  if (first.size() == group.degree) return;
  Point outside = 0;
  while (std::binary_search(first.begin(), first.end(), outside)) ++outside;
  throw ValueError(std::string(op) +
                   ": group is not transitive (points 0 and " +
                   std::to_string(outside) + " lie in different orbits)");
}

// -------------------------------------------------------------------------
// Stabiliser suborbits via Schreier generators
// -------------------------------------------------------------------------

/// Schreier generators of the stabiliser of `basepoint`, deduplicated.
inline std::vector<Permutation> schreier_generators(FinitePermGroup const& group,
                                                    Point basepoint) {
  auto tv = orbit_with_transversal(group, basepoint);
  std::set<Permutation> gens;
  for (Point p : tv.points) {
    auto const& u_p = tv.representatives.at(p);
    for (auto const& g : group.generators) {
      Point q = g[p];
      Permutation s = u_p.then(g).then(tv.representatives.at(q).inverse());
      if (!s.is_identity()) gens.insert(std::move(s));
    }
  }
  std::vector<Permutation> out(gens.begin(), gens.end());
  if (out.empty()) out.push_back(Permutation::identity(group.degree));
  return out;
}

/// The orbits of the stabiliser G_basepoint on {0..degree-1}, each sorted,
/// ordered by smallest member. {basepoint} is always one of the cells.
inline std::vector<std::vector<Point>> stabilizer_suborbits(
    FinitePermGroup const& group, Point basepoint) {
  if (basepoint >= group.degree)
    throw ValueError("stabilizer_suborbits: basepoint out of range");
  require_transitive(group, "stabilizer_suborbits");
  FinitePermGroup stab(group.degree, schreier_generators(group, basepoint));
  std::vector<bool> assigned(group.degree, false);
  std::vector<std::vector<Point>> cells;
  for (Point p = 0; p < group.degree; ++p) {
    if (assigned[p]) continue;
    auto cell = orbit(stab, p);
    for (Point q : cell) assigned[q] = true;
    cells.push_back(std::move(cell));
  }
  return cells;
}

/// The suborbit paired with `suborbit` at `basepoint`: if the cell is
/// Delta(alpha) for the orbital Delta = (alpha,beta)^G, the result is
/// Delta*(alpha) = { gamma : (gamma, alpha) in Delta }.
struct PairedSuborbit {
  std::vector<Point> cell;
  bool self_paired = false;
};

inline PairedSuborbit paired_suborbit(FinitePermGroup const& group,
                                      Point basepoint,
                                      std::vector<Point> const& suborbit) {
  auto cells = stabilizer_suborbits(group, basepoint);
  auto const* found = static_cast<std::vector<Point> const*>(nullptr);
  for (auto const& cell : cells)
    if (cell == suborbit) found = &cell;
  if (found == nullptr)
    throw ValueError("paired_suborbit: input is not a stabiliser orbit");

  if (suborbit.size() == 1 && suborbit[0] == basepoint)
    return {suborbit, true};  // diagonal orbital

  // With beta in the cell and u mapping basepoint to beta, the element
  // u^{-1} maps beta back to basepoint, so (alpha, beta)^(u^{-1}) =
  // (alpha^(u^{-1}), alpha) puts gamma := alpha^(u^{-1}) in Delta*(alpha).
  Point beta = suborbit.front();
  auto tv = orbit_with_transversal(group, basepoint);
  Point gamma = tv.representatives.at(beta).inverse()[basepoint];
  for (auto const& cell : cells) {
    if (std::binary_search(cell.begin(), cell.end(), gamma))
      return {cell, cell == suborbit};
  }
  throw Error("paired_suborbit: internal error, pair cell not found");
}

// -------------------------------------------------------------------------
// Primitivity via minimal block closure
// -------------------------------------------------------------------------

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a < b) std::swap(a, b);  // keep the smaller index as the root
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

/// Finest G-invariant partition in which `a` and `b` share a class.
inline std::vector<std::vector<Point>> minimal_block_system(
    FinitePermGroup const& group, Point a, Point b) {
  UnionFind uf(group.degree);
  uf.unite(a, b);
  bool changed = true;
  while (changed) {
    changed = false;
    for (Point p = 0; p < group.degree; ++p) {
      auto rep = static_cast<Point>(uf.find(p));
      if (rep == p) continue;
      for (auto const& g : group.generators)
        if (uf.unite(g[p], g[rep])) changed = true;
    }
  }
  std::map<std::size_t, std::vector<Point>> classes;
  for (Point p = 0; p < group.degree; ++p) classes[uf.find(p)].push_back(p);
  std::vector<std::vector<Point>> blocks;
  for (auto& [root, members] : classes) blocks.push_back(std::move(members));
  return blocks;
}

}  // namespace detail

/// Primitivity test by minimal-block closure from every seed pair (0, b).
inline PrimitivityResult is_primitive(FinitePermGroup const& group) {
  require_transitive(group, "is_primitive");
  for (Point b = 1; b < group.degree; ++b) {
    auto blocks = detail::minimal_block_system(group, 0, b);
    if (blocks.size() > 1 && blocks.front().size() > 1)
      return {false, BlockSystem{std::move(blocks)}};
  }
  return {true, std::nullopt};
}

// -------------------------------------------------------------------------
// Product-action wreath product
// -------------------------------------------------------------------------

/// Big-endian mixed-radix encoding of coordinate tuples: coordinate 0 is
/// the most significant digit.
inline Count encode_tuple(std::vector<Point> const& tuple, Point base_degree) {
  Count value = 0;
  for (Point x : tuple) value = value * base_degree + x;
  return value;
}

inline std::vector<Point> decode_tuple(Count value, Point base_degree,
                                       Point m) {
  std::vector<Point> tuple(m);
  for (Point i = m; i-- > 0;) {
    tuple[i] = static_cast<Point>(value % base_degree);
    value /= base_degree;
  }
  return tuple;
}

/// The wreath product (base) Wr Sym(m) in its product action on
/// degree^m points. Generated by the base generators acting on coordinate 0
/// together with coordinate-permuting generators of Sym(m).
inline FinitePermGroup product_action_wreath(FinitePermGroup const& base,
                                             Point m) {
  if (m < 2) throw ValueError("product_action_wreath: m must be >= 2");
  Count big_degree = 1;
  for (Point i = 0; i < m; ++i) {
    big_degree = sat_mul(big_degree, base.degree);
    if (big_degree > kMaxFiniteDegree)
      throw ValueError(
          "product_action_wreath: degree^m exceeds the finite-action cap of " +
          std::to_string(kMaxFiniteDegree) + " points");
  }
  auto degree = static_cast<Point>(big_degree);

  std::vector<Permutation> gens;
  // Base generators on coordinate 0.
  for (auto const& g : base.generators) {
    std::vector<Point> images(degree);
    for (Count v = 0; v < degree; ++v) {
      auto tuple = decode_tuple(v, base.degree, m);
      tuple[0] = g[tuple[0]];
      images[v] = static_cast<Point>(encode_tuple(tuple, base.degree));
    }
    gens.emplace_back(std::move(images));
  }
  // Coordinate permutations generating Sym(m): the transposition (0 1) and,
  // for m > 2, the m-cycle. Acting by sigma sends the tuple x to y with
  // y[sigma(i)] = x[i].
  auto coordinate_perm = [&](std::vector<Point> const& sigma) {
    std::vector<Point> images(degree);
    for (Count v = 0; v < degree; ++v) {
      auto tuple = decode_tuple(v, base.degree, m);
      std::vector<Point> moved(m);
      for (Point i = 0; i < m; ++i) moved[sigma[i]] = tuple[i];
      images[v] = static_cast<Point>(encode_tuple(moved, base.degree));
    }
    return Permutation(std::move(images));
  };
  {
    std::vector<Point> swap01(m);
    std::iota(swap01.begin(), swap01.end(), 0);
    std::swap(swap01[0], swap01[1]);
    gens.push_back(coordinate_perm(swap01));
  }
  if (m > 2) {
    std::vector<Point> cycle(m);
    for (Point i = 0; i < m; ++i) cycle[i] = (i + 1) % m;
    gens.push_back(coordinate_perm(cycle));
  }
  return FinitePermGroup(degree, std::move(gens));
}

// -------------------------------------------------------------------------
// Orbital digraphs
// -------------------------------------------------------------------------

inline FiniteOrbitalDigraph orbital_digraph(FinitePermGroup const& group,
                                            Point alpha, Point beta) {
  if (alpha == beta)
    throw ValueError("orbital_digraph: diagonal orbital rejected");
  if (alpha >= group.degree || beta >= group.degree)
    throw ValueError("orbital_digraph: point index out of range");

  auto code = [&](Point a, Point b) {
    return static_cast<std::uint64_t>(a) * group.degree + b;
  };
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::pair<Point, Point>> queue{{alpha, beta}};
  seen.insert(code(alpha, beta));
  for (std::size_t head = 0; head < queue.size(); ++head) {
    auto [a, b] = queue[head];
    for (auto const& g : group.generators) {
      Point a2 = g[a], b2 = g[b];
      if (seen.insert(code(a2, b2)).second) queue.emplace_back(a2, b2);
    }
  }
  std::sort(queue.begin(), queue.end());

  FiniteOrbitalDigraph result;
  result.vertex_count = group.degree;
  result.arcs = std::move(queue);
  result.basepoint = alpha;
  result.witness = beta;
  for (auto const& [a, b] : result.arcs) {
    if (a == alpha) ++result.out_valency;
    if (b == alpha) ++result.in_valency;
  }
  return result;
}

// -------------------------------------------------------------------------
// Group file format
// -------------------------------------------------------------------------

/// Parses the plain-text group format: first non-comment line "degree n",
/// then one generator per line in cycle notation; '#' starts a comment.
inline FinitePermGroup parse_group_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<Point> degree;
  std::vector<Permutation> gens;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    auto end = line.find_last_not_of(" \t\r");
    std::string token = line.substr(begin, end - begin + 1);
    if (!degree) {
      if (token.rfind("degree", 0) != 0)
        throw ValueError("group file line " + std::to_string(lineno) +
                         ": expected 'degree n' before generators");
      std::uint64_t n = 0;
      try {
        n = std::stoull(token.substr(6));
      } catch (std::exception const&) {
        throw ValueError("group file line " + std::to_string(lineno) +
                         ": bad degree");
      }
      if (n == 0 || n > kMaxFiniteDegree)
        throw ValueError("group file line " + std::to_string(lineno) +
                         ": degree out of range");
      degree = static_cast<Point>(n);
    } else {
      try {
        gens.push_back(Permutation::from_cycles(token, *degree));
      } catch (ParseError const& e) {
        throw ValueError("group file line " + std::to_string(lineno) + ": " +
                         e.what());
      }
    }
  }
  if (!degree) throw ValueError("group file: missing 'degree n' line");
  if (gens.empty()) throw ValueError("group file: no generators");
  return FinitePermGroup(*degree, std::move(gens));
}

}  // namespace orbgrowth

#endif  // ORBGROWTH_PERM_GROUP_HPP_
