#ifndef ORBGROWTH_BFS_HPP_
#define ORBGROWTH_BFS_HPP_

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "orbgrowth/base.hpp"
#include "orbgrowth/lazy_digraph.hpp"

namespace orbgrowth {

inline constexpr Count kDefaultVertexBudget = 5'000'000;

/// One BFS layer. Keys are stored back to back in a flat byte buffer and
/// kept sorted, so membership is a binary search and the table stays
/// compact for multi-million-vertex balls.
class Sphere {
 public:
  std::size_t size() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }

  std::string_view key(std::size_t i) const {
    return std::string_view(bytes_.data() + offsets_[i],
                            offsets_[i + 1] - offsets_[i]);
  }

  std::optional<std::uint32_t> find(std::string_view k) const {
    std::size_t lo = 0, hi = size();
    while (lo < hi) {
      std::size_t mid = lo + (hi - lo) / 2;
      auto cmp = key(mid).compare(k);
      if (cmp == 0) return static_cast<std::uint32_t>(mid);
      if (cmp < 0)
        lo = mid + 1;
      else
        hi = mid;
    }
    return std::nullopt;
  }

  bool contains(std::string_view k) const { return find(k).has_value(); }

  /// BFS parent of member i as an index into the previous sphere; empty
  /// when parents were not recorded (or for the root sphere).
  std::vector<std::uint32_t> const& parents() const { return parents_; }

  void append(std::string_view k, std::uint32_t parent) {
    if (offsets_.empty()) offsets_.push_back(0);
    bytes_.insert(bytes_.end(), k.begin(), k.end());
    offsets_.push_back(static_cast<std::uint64_t>(bytes_.size()));
    parents_.push_back(parent);
  }

  void clear_parents() {
    parents_.clear();
    parents_.shrink_to_fit();
  }

  std::vector<char> const& raw_bytes() const { return bytes_; }

 private:
  std::vector<char> bytes_;
  std::vector<std::uint64_t> offsets_;
  std::vector<std::uint32_t> parents_;
};

/// Sphere decomposition of the ball of a given radius around the root:
/// S_0 = {root}, spheres are disjoint, and every member of S_r (r >= 1)
/// is adjacent (in either arc direction) to some member of S_{r-1}.
/// Within each sphere members are sorted lexicographically by key.
class SphereTable {
 public:
  std::uint32_t radius() const {
    return static_cast<std::uint32_t>(spheres_.size()) - 1;
  }

  Sphere const& sphere(std::uint32_t r) const { return spheres_.at(r); }

  Count sphere_size(std::uint32_t r) const {
    return r < spheres_.size() ? spheres_[r].size() : 0;
  }

  /// s_0..s_R as a vector.
  std::vector<Count> sizes() const {
    std::vector<Count> out;
    out.reserve(spheres_.size());
    for (auto const& s : spheres_) out.push_back(s.size());
    return out;
  }

  /// Ball sizes b_0..b_R (cumulative sphere sizes).
  std::vector<Count> ball_sizes() const {
    std::vector<Count> out;
    Count total = 0;
    for (auto const& s : spheres_) {
      total += s.size();
      out.push_back(total);
    }
    return out;
  }

  Count total_vertices() const { return total_; }

  /// Distance of a key from the root, if the key lies in the ball.
  std::optional<std::uint32_t> distance_of(std::string_view key) const {
    for (std::uint32_t r = 0; r < spheres_.size(); ++r)
      if (spheres_[r].contains(key)) return r;
    return std::nullopt;
  }

  std::string const& descriptor() const { return descriptor_; }

  /// Canonical byte serialisation; equal tables serialise identically.
  std::string serialize() const {
    std::string out;
    varint_append(out, spheres_.size());
    for (auto const& s : spheres_) {
      varint_append(out, s.size());
      for (std::size_t i = 0; i < s.size(); ++i) {
        auto k = s.key(i);
        varint_append(out, k.size());
        out.append(k.data(), k.size());
      }
    }
    return out;
  }

 private:
  friend struct ExpandAccess;
  std::vector<Sphere> spheres_;
  Count total_ = 0;
  std::string descriptor_;
};

struct ExpandAccess {
  static std::vector<Sphere>& spheres(SphereTable& t) { return t.spheres_; }
  static Count& total(SphereTable& t) { return t.total_; }
  static std::string& descriptor(SphereTable& t) { return t.descriptor_; }
};

/// Vertex budget exhausted mid-expansion. Carries the completed radius and
/// the partial table so callers can degrade gracefully.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::uint32_t completed_radius,
                 std::shared_ptr<SphereTable> partial, Count budget)
      : Error("vertex budget of " + std::to_string(budget) +
              " exceeded; last completed radius is " +
              std::to_string(completed_radius)),
        completed_radius_(completed_radius),
        partial_(std::move(partial)) {}

  std::uint32_t completed_radius() const { return completed_radius_; }
  std::shared_ptr<SphereTable> const& partial() const { return partial_; }

 private:
  std::uint32_t completed_radius_;
  std::shared_ptr<SphereTable> partial_;
};

struct ExpandOptions {
  Count budget = kDefaultVertexBudget;
  bool store_parents = true;
};

/// Exact BFS layers under the undirected metric (arc in either direction).
/// Layer order is lexicographic by key within each sphere; the recorded
/// parent of a vertex is its lexicographically least neighbor in the
/// previous sphere among those that discovered it.
inline SphereTable expand(LazyRootedDigraph const& graph, std::uint32_t radius,
                          ExpandOptions const& options = {}) {
  SphereTable table;
  ExpandAccess::descriptor(table) = graph.descriptor();
  auto& spheres = ExpandAccess::spheres(table);
  auto& total = ExpandAccess::total(table);

  spheres.emplace_back();
  spheres[0].append(graph.root(), 0);
  total = 1;
  if (total > options.budget)
    throw BudgetExceeded(0, std::make_shared<SphereTable>(std::move(table)),
                         options.budget);

  std::vector<VertexKey> neighbor_buf;
  for (std::uint32_t r = 0; r < radius; ++r) {
    Sphere const& current = spheres[r];
    Sphere const* previous = r > 0 ? &spheres[r - 1] : nullptr;

    // Candidate children, tagged with the discovering parent index.
    std::vector<std::pair<VertexKey, std::uint32_t>> candidates;
    for (std::size_t i = 0; i < current.size(); ++i) {
      VertexKey v(current.key(i));
      neighbor_buf.clear();
      graph.append_undirected_neighbors(v, neighbor_buf);
      for (auto& n : neighbor_buf) {
        if (current.contains(n)) continue;
        if (previous != nullptr && previous->contains(n)) continue;
        candidates.emplace_back(std::move(n),
                                static_cast<std::uint32_t>(i));
      }
    }
    std::sort(candidates.begin(), candidates.end());
    Sphere next;
    for (auto& [key, parent] : candidates) {
      if (next.size() > 0 && next.key(next.size() - 1) == key) continue;
      next.append(key, parent);
    }
    if (!options.store_parents) next.clear_parents();

    total += next.size();
    if (total > options.budget) {
      total -= next.size();
      throw BudgetExceeded(r, std::make_shared<SphereTable>(std::move(table)),
                           options.budget);
    }
    spheres.push_back(std::move(next));
    if (spheres.back().size() == 0 && r + 1 < radius) {
      // Finite graph exhausted: remaining spheres are empty.
      while (spheres.size() <= radius) spheres.emplace_back();
      break;
    }
  }
  return table;
}

/// Exact distance between two vertices if it is at most `cap`, otherwise
/// nullopt. Bidirectional BFS under the undirected metric.
inline std::optional<std::uint32_t> distance(LazyRootedDigraph const& graph,
                                             VertexKey const& u,
                                             VertexKey const& v,
                                             std::uint32_t cap) {
  if (u == v) return 0;
  if (cap == 0) return std::nullopt;

  std::unordered_map<VertexKey, std::uint32_t> dist_u{{u, 0}};
  std::unordered_map<VertexKey, std::uint32_t> dist_v{{v, 0}};
  std::vector<VertexKey> frontier_u{u}, frontier_v{v};
  std::uint32_t depth_u = 0, depth_v = 0;
  std::vector<VertexKey> neighbor_buf;

  while (depth_u + depth_v < cap && (!frontier_u.empty() || !frontier_v.empty())) {
    bool grow_u = frontier_u.size() <= frontier_v.size();
    if (frontier_u.empty()) grow_u = false;
    if (frontier_v.empty()) grow_u = true;
    auto& frontier = grow_u ? frontier_u : frontier_v;
    auto& mine = grow_u ? dist_u : dist_v;
    auto& theirs = grow_u ? dist_v : dist_u;
    auto& depth = grow_u ? depth_u : depth_v;

    std::vector<VertexKey> next;
    std::optional<std::uint32_t> best;
    for (auto const& w : frontier) {
      neighbor_buf.clear();
      graph.append_undirected_neighbors(w, neighbor_buf);
      for (auto& n : neighbor_buf) {
        if (auto it = theirs.find(n); it != theirs.end()) {
          std::uint32_t d = depth + 1 + it->second;
          if (!best || d < *best) best = d;
        }
        if (!mine.contains(n)) {
          mine.emplace(n, depth + 1);
          next.push_back(std::move(n));
        }
      }
    }
    ++depth;
    if (best) {
      // A meeting at this depth is optimal: any shorter path would have
      // met in earlier frontiers.
      return *best <= cap ? best : std::nullopt;
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

/// Local sphere-intersection parameters of a vertex gamma at distance
/// r >= 1 from the root alpha:
///   a = |S_1(alpha) ∩ S_r(gamma)|
///   b = |S_1(alpha) ∩ S_{r+1}(gamma)|
///   c = |S_1(alpha) ∩ S_{r-1}(gamma)|
/// Always a + b + c = s_1.
struct LocalParams {
  Count a = 0, b = 0, c = 0;
};

inline LocalParams local_params(LazyRootedDigraph const& graph,
                                SphereTable const& table,
                                VertexKey const& gamma) {
  auto r_opt = table.distance_of(gamma);
  if (!r_opt || *r_opt == 0)
    throw ValueError("local_params: vertex must lie in the table at distance >= 1");
  std::uint32_t r = *r_opt;
  if (table.radius() < r + 1)
    throw ValueError("local_params: table radius must be at least d(alpha,gamma)+1");

  LocalParams result;
  Sphere const& s1 = table.sphere(1);
  for (std::size_t i = 0; i < s1.size(); ++i) {
    VertexKey u(s1.key(i));
    auto d = distance(graph, u, gamma, r + 1);
    if (!d) throw Error("local_params: internal error, neighbor beyond cap");
    if (*d == r)
      ++result.a;
    else if (*d == r + 1)
      ++result.b;
    else if (*d + 1 == r)
      ++result.c;
    else
      throw Error("local_params: triangle inequality violated by construction");
  }
  return result;
}

/// First violation of the sphere-growth bound s_r <= s_1 (s_1 - 1)^(r-1).
struct SphereBoundViolation {
  std::uint32_t radius = 0;
  Count size = 0;
  Count bound = 0;
};

/// Checks the bound for 1 <= r <= R; a violation indicates a construction
/// bug, never a property of a genuine vertex-primitive digraph.
inline std::optional<SphereBoundViolation> check_sphere_bound(
    std::vector<Count> const& sizes) {
  if (sizes.size() < 2 || sizes[1] < 2)
    throw ValueError("check_sphere_bound: need radius >= 1 and s_1 >= 2");
  Count s1 = sizes[1];
  Count bound = s1;
  for (std::uint32_t r = 1; r < sizes.size(); ++r) {
    if (r > 1) bound = sat_mul(bound, s1 - 1);
    if (sizes[r] > bound) return SphereBoundViolation{r, sizes[r], bound};
  }
  return std::nullopt;
}

inline std::optional<SphereBoundViolation> check_sphere_bound(
    SphereTable const& table) {
  return check_sphere_bound(table.sizes());
}

}  // namespace orbgrowth

#endif  // ORBGROWTH_BFS_HPP_
