#ifndef ORBGROWTH_SUBORBITS_HPP_
#define ORBGROWTH_SUBORBITS_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "orbgrowth/base.hpp"
#include "orbgrowth/bfs.hpp"
#include "orbgrowth/lazy_digraph.hpp"
#include "orbgrowth/tree_of_lobes.hpp"

namespace orbgrowth {

/// Within-lobe geodesic lengths along the tree path from the root; the
/// fundamental suborbit invariant of tree-of-lobes vertices.
using DistanceLabel = std::vector<std::uint32_t>;

inline DistanceLabel label_of(TreeOfLobesDigraph const& graph,
                              VertexKey const& v) {
  return graph.label_of(v);
}

/// Number of labels realisable in sphere S_r: compositions of r with parts
/// in the lobe's realisable-distance set.
inline Count count_labels(std::set<std::uint32_t> const& distance_set,
                          std::uint32_t r) {
  if (distance_set.empty() || *distance_set.begin() != 1)
    throw ValueError("count_labels: distance set must be non-empty with min 1");
  std::vector<Count> k(r + 1, 0);
  k[0] = 1;
  for (std::uint32_t n = 1; n <= r; ++n)
    for (std::uint32_t part : distance_set)
      if (part <= n) k[n] += k[n - part];
  return k[r];
}

/// One suborbit cell (or invariant-refinement cell) of a sphere.
struct SuborbitRecord {
  std::uint32_t radius = 0;
  std::string invariant;  // construction-specific canonical bytes
  Count size = 0;
  bool exact = false;  // true: cell is a whole suborbit; false: lower bound
};

/// Partition of each sphere of the table into invariant classes, sorted by
/// (radius, invariant bytes). Cell sizes at radius r sum to s_r. The exact
/// flag is set when the construction proves its invariant separates orbits
/// exactly: tree-of-lobes with a distance-transitive lobe, products of
/// distance-transitive bases, and finite wrappers carrying their group.
inline std::vector<SuborbitRecord> suborbit_partition(
    LazyRootedDigraph const& graph, SphereTable const& table) {
  bool exact = graph.suborbit_invariant_exact();
  std::vector<SuborbitRecord> records;
  for (std::uint32_t r = 0; r <= table.radius(); ++r) {
    auto const& sphere = table.sphere(r);
    std::map<std::string, Count> cells;
    for (std::size_t i = 0; i < sphere.size(); ++i) {
      auto inv = graph.suborbit_invariant(VertexKey(sphere.key(i)));
      if (!inv)
        throw ValueError(
            "suborbit_partition: construction does not supply a suborbit "
            "invariant: " +
            graph.descriptor());
      ++cells[*inv];
    }
    for (auto& [invariant, size] : cells)
      records.push_back(SuborbitRecord{r, invariant, size, exact});
  }
  return records;
}

/// The subdegree multiset mu restricted to the horizon: size -> number of
/// cells of that size. Multiplicities are certified lower bounds ("at
/// least"); a size is marked recurring when it appears in either of the
/// last two spheres, the finite-horizon signal for "occurs infinitely
/// often".
struct SubdegreeMultiset {
  std::map<Count, Count> multiplicity;
  std::uint32_t horizon = 0;
  std::set<Count> recurring;

  enum class HeightEvidence { omega_consistent, greater_than_omega };
  HeightEvidence height = HeightEvidence::omega_consistent;
};

/// Lower and upper subdegree sequences assembled from exact records.
/// lower[0] = 1 is the trivial suborbit; lower[i] for i >= 1 enumerates the
/// nontrivial subdegrees ascending with multiplicity. upper lists the
/// distinct nontrivial sizes ascending (M_1 = upper[0]). n_r counts cells
/// per sphere (n_r[0] = 1) and N_r = n_1 + ... + n_r.
struct SequenceView {
  std::vector<Count> lower;
  std::vector<Count> upper;
  std::vector<Count> n_r;
  std::vector<Count> N_r;
};

inline std::pair<SubdegreeMultiset, SequenceView> subdegree_sequences(
    std::vector<SuborbitRecord> const& records, std::uint32_t horizon) {
  std::vector<SuborbitRecord const*> in_horizon;
  std::uint32_t max_radius = 0;
  for (auto const& rec : records) {
    if (!rec.exact)
      throw ValueError(
          "subdegree_sequences: non-exact records (invariant refinements) "
          "cannot be assembled into subdegree sequences");
    if (rec.radius <= horizon) {
      in_horizon.push_back(&rec);
      max_radius = std::max(max_radius, rec.radius);
    }
  }
  // Ties in the lower-sequence enumeration are ordered by size, then
  // radius of first appearance, then invariant bytes.
  std::sort(in_horizon.begin(), in_horizon.end(),
            [](SuborbitRecord const* a, SuborbitRecord const* b) {
              return std::tie(a->size, a->radius, a->invariant) <
                     std::tie(b->size, b->radius, b->invariant);
            });

  SubdegreeMultiset mu;
  mu.horizon = max_radius;
  SequenceView view;
  view.n_r.assign(max_radius + 1, 0);
  std::map<Count, std::set<std::uint32_t>> radii_of_size;
  for (auto const* rec : in_horizon) {
    ++mu.multiplicity[rec->size];
    ++view.n_r[rec->radius];
    radii_of_size[rec->size].insert(rec->radius);
    view.lower.push_back(rec->size);
    if (rec->radius >= 1 &&
        (view.upper.empty() || view.upper.back() != rec->size))
      view.upper.push_back(rec->size);
  }
  view.upper.erase(std::unique(view.upper.begin(), view.upper.end()),
                   view.upper.end());
  view.N_r.assign(max_radius + 1, 0);
  for (std::uint32_t r = 1; r <= max_radius; ++r)
    view.N_r[r] = view.N_r[r - 1] + view.n_r[r];

  for (auto const& [size, radii] : radii_of_size) {
    if (max_radius >= 1 &&
        (radii.contains(max_radius) || radii.contains(max_radius - 1)))
      mu.recurring.insert(size);
    // Height evidence: the same size appearing in every sphere so far is
    // the finite-horizon signature of a multiplicity that never stabilises.
    if (max_radius >= 2 &&
        radii.size() >= static_cast<std::size_t>(max_radius))
      mu.height = SubdegreeMultiset::HeightEvidence::greater_than_omega;
  }
  return {std::move(mu), std::move(view)};
}

/// Suborbit size of a tree-of-lobes vertex as the product over its address
/// path: m * cell(l_1) for the first step and (m-1) * cell(l_i) after,
/// where cell(d) is the size of the lobe's distance-d cell from its
/// basepoint. Requires a distance-transitive lobe, where per-step orbit
/// sizes are exactly the distance-partition sizes.
inline Count lobe_composition_size(TreeOfLobesDigraph const& graph,
                                   VertexKey const& v) {
  if (!graph.lobe().distance_transitive)
    throw ValueError(
        "lobe_composition_size: requires a distance-transitive lobe");
  auto label = graph.label_of(v);
  Count size = 1;
  for (std::size_t i = 0; i < label.size(); ++i) {
    Count branches = i == 0 ? graph.lobe_multiplicity()
                            : graph.lobe_multiplicity() - 1;
    size = sat_mul(size, sat_mul(branches,
                                 graph.lobe().distance_partition[label[i]]));
  }
  return size;
}

/// m-fold convolution of base sphere sizes: the size of sphere r of the
/// product digraph is the sum over compositions r = k_1 + ... + k_m of
/// the products s_{k_1} * ... * s_{k_m}.
inline Count sphere_convolution(std::vector<Count> const& base_sizes,
                                std::uint32_t m, std::uint32_t r) {
  if (m < 1) throw ValueError("sphere_convolution: m must be >= 1");
  if (r >= base_sizes.size())
    throw ValueError("sphere_convolution: base sizes do not reach radius r");
  std::vector<Count> acc(base_sizes.begin(),
                         base_sizes.begin() + r + 1);
  for (std::uint32_t step = 1; step < m; ++step) {
    std::vector<Count> next(r + 1, 0);
    for (std::uint32_t i = 0; i <= r; ++i)
      for (std::uint32_t j = 0; i + j <= r; ++j)
        next[i + j] += acc[i] * base_sizes[j];
    acc = std::move(next);
  }
  return acc[r];
}

}  // namespace orbgrowth

#endif  // ORBGROWTH_SUBORBITS_HPP_
