#ifndef ORBGROWTH_FINITE_WRAPPER_HPP_
#define ORBGROWTH_FINITE_WRAPPER_HPP_

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbgrowth/base.hpp"
#include "orbgrowth/lazy_digraph.hpp"
#include "orbgrowth/lobes.hpp"
#include "orbgrowth/perm_group.hpp"

namespace orbgrowth {

/// Lazy interface over an explicit finite digraph, rooted at its basepoint.
/// With an automorphism group supplied the suborbit invariant is the exact
/// stabiliser-orbit cell of each vertex; without one it degrades to the
/// distance from the root (a sound refinement, flagged non-exact).
class FiniteWrapperDigraph final : public LazyRootedDigraph {
 public:
  FiniteWrapperDigraph(FiniteOrbitalDigraph digraph,
                       std::optional<FinitePermGroup> automorphisms,
                       std::string name)
      : digraph_(std::move(digraph)), name_(std::move(name)) {
    Point n = digraph_.vertex_count;
    if (n == 0) throw ValueError("wrap_finite: empty digraph");
    out_adj_.resize(n);
    in_adj_.resize(n);
    undirected_adj_.resize(n);
    for (auto const& [u, v] : digraph_.arcs) {
      if (u >= n || v >= n)
        throw ValueError("wrap_finite: arc endpoint out of range");
      if (u == v) throw ValueError("wrap_finite: loop arc");
      out_adj_[u].push_back(v);
      in_adj_[v].push_back(u);
      undirected_adj_[u].push_back(v);
      undirected_adj_[v].push_back(u);
    }
    for (auto& row : undirected_adj_) {
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
    }

    dist_from_root_.assign(n, UINT32_MAX);
    dist_from_root_[digraph_.basepoint] = 0;
    std::vector<Point> queue{digraph_.basepoint};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Point v = queue[head];
      for (Point w : undirected_adj_[v])
        if (dist_from_root_[w] == UINT32_MAX) {
          dist_from_root_[w] = dist_from_root_[v] + 1;
          queue.push_back(w);
        }
    }
    if (queue.size() != n)
      throw ValueError("wrap_finite: digraph is not connected");

    if (automorphisms) {
      if (automorphisms->degree != n)
        throw ValueError("wrap_finite: automorphism degree mismatch");
      auto sorted_arcs = digraph_.arcs;
      std::sort(sorted_arcs.begin(), sorted_arcs.end());
      for (auto const& g : automorphisms->generators)
        for (auto const& [u, v] : sorted_arcs)
          if (!std::binary_search(sorted_arcs.begin(), sorted_arcs.end(),
                                  std::make_pair(g[u], g[v])))
            throw ValueError(
                "wrap_finite: supplied generators do not preserve arcs");
      orbit_cell_.assign(n, 0);
      auto cells = stabilizer_suborbits(*automorphisms, digraph_.basepoint);
      for (std::uint32_t c = 0; c < cells.size(); ++c)
        for (Point p : cells[c]) orbit_cell_[p] = c;

      vertex_transitive_ =
          orbit(*automorphisms, 0).size() == static_cast<std::size_t>(n);
      distance_transitive_ = vertex_transitive_;
      if (distance_transitive_) {
        auto ids = detail::pair_orbit_ids(*automorphisms);
        auto all_dist = detail::all_pairs_undirected_distance(n, undirected_adj_);
        std::vector<std::optional<std::uint32_t>> witness;
        for (Point u = 0; u < n && distance_transitive_; ++u)
          for (Point v = 0; v < n; ++v) {
            if (u == v) continue;
            auto d = all_dist[u][v];
            if (witness.size() <= d) witness.resize(d + 1);
            auto id = ids[static_cast<std::size_t>(u) * n + v];
            if (!witness[d]) witness[d] = id;
            if (*witness[d] != id) {
              distance_transitive_ = false;
              break;
            }
          }
      }
      automorphisms_ = std::move(automorphisms);
    }

    root_ = key_of(digraph_.basepoint);
  }

  FiniteOrbitalDigraph const& digraph() const { return digraph_; }
  std::optional<FinitePermGroup> const& automorphisms() const {
    return automorphisms_;
  }

  static VertexKey key_of(Point v) {
    VertexKey out;
    varint_append(out, v);
    return out;
  }

  Point vertex_of(VertexKey const& key) const {
    std::size_t pos = 0;
    auto v = varint_read(key, pos);
    if (pos != key.size() || v >= digraph_.vertex_count)
      throw ValueError("finite wrapper: invalid vertex key");
    return static_cast<Point>(v);
  }

  VertexKey const& root() const override { return root_; }

  std::vector<VertexKey> out_neighbors(VertexKey const& v) const override {
    return keys_of(out_adj_[vertex_of(v)]);
  }
  std::vector<VertexKey> in_neighbors(VertexKey const& v) const override {
    return keys_of(in_adj_[vertex_of(v)]);
  }
  void append_undirected_neighbors(VertexKey const& v,
                                   std::vector<VertexKey>& out) const override {
    for (Point w : undirected_adj_[vertex_of(v)]) out.push_back(key_of(w));
  }

  std::string descriptor() const override { return "finite(" + name_ + ")"; }

  std::optional<Count> distance_from_root(VertexKey const& v) const override {
    return dist_from_root_[vertex_of(v)];
  }

  std::optional<std::string> suborbit_invariant(
      VertexKey const& v) const override {
    std::string bytes;
    if (automorphisms_)
      varint_append(bytes, orbit_cell_[vertex_of(v)]);
    else
      varint_append(bytes, dist_from_root_[vertex_of(v)]);
    return bytes;
  }

  bool suborbit_invariant_exact() const override {
    return automorphisms_.has_value();
  }

  bool is_distance_transitive() const override { return distance_transitive_; }

  bool supports_reroot() const override { return vertex_transitive_; }

  bool is_finite() const override { return true; }

 private:
  std::vector<VertexKey> keys_of(std::vector<Point> const& points) const {
    std::vector<VertexKey> out;
    out.reserve(points.size());
    for (Point p : points) out.push_back(key_of(p));
    return out;
  }

  FiniteOrbitalDigraph digraph_;
  std::string name_;
  std::optional<FinitePermGroup> automorphisms_;
  std::vector<std::vector<Point>> out_adj_, in_adj_, undirected_adj_;
  std::vector<std::uint32_t> dist_from_root_;
  std::vector<std::uint32_t> orbit_cell_;
  bool vertex_transitive_ = false;
  bool distance_transitive_ = false;
  VertexKey root_;
};

inline std::shared_ptr<FiniteWrapperDigraph const> wrap_finite(
    FiniteOrbitalDigraph digraph,
    std::optional<FinitePermGroup> automorphisms = std::nullopt,
    std::string name = "digraph") {
  return std::make_shared<FiniteWrapperDigraph>(
      std::move(digraph), std::move(automorphisms), std::move(name));
}

/// Wraps a lobe (complete, Petersen, or group-orbital) as an analysable
/// finite digraph, keeping its automorphism group for exact suborbits.
inline std::shared_ptr<FiniteWrapperDigraph const> wrap_lobe(
    LobeSpec const& lobe) {
  FiniteOrbitalDigraph digraph;
  digraph.vertex_count = lobe.size;
  digraph.arcs = lobe.arcs;
  digraph.basepoint = 0;
  digraph.witness = lobe.out_adj[0].empty() ? 0 : lobe.out_adj[0][0];
  for (auto const& [u, v] : lobe.arcs) {
    if (u == 0) ++digraph.out_valency;
    if (v == 0) ++digraph.in_valency;
  }
  return wrap_finite(std::move(digraph), lobe.automorphisms, lobe.name);
}

}  // namespace orbgrowth

#endif  // ORBGROWTH_FINITE_WRAPPER_HPP_
