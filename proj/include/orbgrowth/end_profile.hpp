#ifndef ORBGROWTH_END_PROFILE_HPP_
#define ORBGROWTH_END_PROFILE_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "orbgrowth/bfs.hpp"
#include "orbgrowth/lazy_digraph.hpp"

namespace orbgrowth {

/// Finite-radius end probe: connected components of the annulus
/// B_R \ B_r under the undirected metric, restricted to components that
/// reach the outer sphere S_R. Components that die out before S_R are
/// finite pockets and cannot witness ends, so they are not reported.
struct EndProfile {
  std::uint32_t inner_radius = 0;
  std::uint32_t outer_radius = 0;
  Count component_count = 0;
  std::vector<Count> frontier_sizes;  // members of S_R per component, descending
};

inline EndProfile end_profile(LazyRootedDigraph const& graph,
                              SphereTable const& table, std::uint32_t r,
                              std::uint32_t big_r) {
  if (r >= big_r) throw ValueError("end_profile: need r < R");
  if (big_r > table.radius())
    throw ValueError("end_profile: R exceeds the expanded radius");

  // Global indices for the annulus vertices, sphere by sphere.
  std::vector<std::size_t> base(big_r + 2, 0);
  for (std::uint32_t s = r + 1; s <= big_r; ++s)
    base[s + 1] = base[s] + table.sphere(s).size();
  std::size_t n = base[big_r + 1];

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  auto unite = [&](std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };

  // A neighbor of a sphere-s vertex lies in sphere s-1, s or s+1.
  auto locate = [&](std::string_view key,
                    std::uint32_t s) -> std::optional<std::size_t> {
    std::uint32_t lo = std::max(r + 1, s > 0 ? s - 1 : 0);
    std::uint32_t hi = std::min(big_r, s + 1);
    for (std::uint32_t t = lo; t <= hi; ++t)
      if (auto idx = table.sphere(t).find(key)) return base[t] + *idx;
    return std::nullopt;
  };

  std::vector<VertexKey> neighbor_buf;
  for (std::uint32_t s = r + 1; s <= big_r; ++s) {
    auto const& sphere = table.sphere(s);
    for (std::size_t i = 0; i < sphere.size(); ++i) {
      VertexKey v(sphere.key(i));
      neighbor_buf.clear();
      graph.append_undirected_neighbors(v, neighbor_buf);
      for (auto const& nb : neighbor_buf)
        if (auto j = locate(nb, s)) unite(base[s] + i, *j);
    }
  }

  std::map<std::size_t, Count> frontier;
  auto const& outer = table.sphere(big_r);
  for (std::size_t i = 0; i < outer.size(); ++i)
    ++frontier[find(base[big_r] + i)];

  EndProfile profile;
  profile.inner_radius = r;
  profile.outer_radius = big_r;
  profile.component_count = frontier.size();
  for (auto const& [root, count] : frontier)
    profile.frontier_sizes.push_back(count);
  std::sort(profile.frontier_sizes.rbegin(), profile.frontier_sizes.rend());
  return profile;
}

}  // namespace orbgrowth

#endif  // ORBGROWTH_END_PROFILE_HPP_
