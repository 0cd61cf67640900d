#ifndef ORBGROWTH_TREE_OF_LOBES_HPP_
#define ORBGROWTH_TREE_OF_LOBES_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "orbgrowth/base.hpp"
#include "orbgrowth/lazy_digraph.hpp"
#include "orbgrowth/lobes.hpp"

namespace orbgrowth {

/// One step of a tree-of-lobes address: enter the lobe_choice-th fresh lobe
/// of the current vertex and move to the non-entry position vertex_choice.
struct LobeStep {
  std::uint32_t lobe_choice = 0;    // first step < m, later steps < m-1
  std::uint32_t vertex_choice = 0;  // < |lobe| - 1; position vertex_choice+1
  friend bool operator==(LobeStep const&, LobeStep const&) = default;
};

using TreeOfLobesAddress = std::vector<LobeStep>;

/// The connectivity-one digraph whose lobes are copies of a fixed finite
/// lobe, with every vertex lying in exactly m lobes. Vertices are addressed
/// by the sequence of (lobe, position) choices from the root; the entry
/// vertex of each fresh lobe copy sits at the lobe's basepoint position 0,
/// which fixes one concrete isomorphism per lobe copy. Lobe copies carry
/// the lobe's arc orientation as given (complete and Petersen lobes carry
/// both arc directions).
class TreeOfLobesDigraph final : public LazyRootedDigraph {
 public:
  TreeOfLobesDigraph(std::uint32_t m, LobeSpec lobe)
      : m_(m), lobe_(std::move(lobe)), root_(encode_address({})) {
    if (m_ < 2) throw ValueError("tree_of_lobes: m must be >= 2");
    if (!lobe_.vertex_transitive || !lobe_.arc_transitive)
      warnings_.push_back(
          "lobe '" + lobe_.name +
          "' is not known vertex- and arc-transitive; sphere and label "
          "analysis remain valid but the full automorphism group may be "
          "smaller than the construction intends");
  }

  std::uint32_t lobe_multiplicity() const { return m_; }
  LobeSpec const& lobe() const { return lobe_; }
  std::vector<std::string> const& warnings() const { return warnings_; }

  static VertexKey encode_address(TreeOfLobesAddress const& address) {
    VertexKey out;
    varint_append(out, address.size());
    for (auto const& step : address) {
      varint_append(out, step.lobe_choice);
      varint_append(out, step.vertex_choice);
    }
    return out;
  }

  TreeOfLobesAddress decode_address(VertexKey const& key) const {
    std::size_t pos = 0;
    auto k = varint_read(key, pos);
    TreeOfLobesAddress address;
    address.reserve(k);
    for (std::uint64_t i = 0; i < k; ++i) {
      LobeStep step;
      step.lobe_choice = static_cast<std::uint32_t>(varint_read(key, pos));
      step.vertex_choice = static_cast<std::uint32_t>(varint_read(key, pos));
      std::uint32_t lobe_limit = i == 0 ? m_ : m_ - 1;
      if (step.lobe_choice >= lobe_limit)
        throw ValueError("tree_of_lobes: lobe choice out of range in key");
      if (step.vertex_choice + 1 >= lobe_.size)
        throw ValueError("tree_of_lobes: vertex choice out of range in key");
      address.push_back(step);
    }
    if (pos != key.size())
      throw ValueError("tree_of_lobes: trailing bytes in key");
    return address;
  }

  VertexKey const& root() const override { return root_; }

  std::vector<VertexKey> out_neighbors(VertexKey const& v) const override {
    return neighbors(v, lobe_.out_adj);
  }
  std::vector<VertexKey> in_neighbors(VertexKey const& v) const override {
    return neighbors(v, lobe_.in_adj);
  }
  void append_undirected_neighbors(VertexKey const& v,
                                   std::vector<VertexKey>& out) const override {
    auto list = neighbors(v, lobe_.undirected_adj);
    out.insert(out.end(), std::make_move_iterator(list.begin()),
               std::make_move_iterator(list.end()));
  }

  std::string descriptor() const override {
    return "lobes(m=" + std::to_string(m_) + ", lobe=" + lobe_.name + ")";
  }

  /// Within-lobe geodesic length of each address step; the graph distance
  /// from the root is the sum of the entries.
  std::vector<std::uint32_t> label_of(VertexKey const& v) const {
    auto address = decode_address(v);
    if (address.empty())
      throw ValueError("label_of: the empty label is reserved for the root");
    std::vector<std::uint32_t> label;
    label.reserve(address.size());
    for (auto const& step : address)
      label.push_back(lobe_.dist[0][step.vertex_choice + 1]);
    return label;
  }

  std::optional<Count> distance_from_root(VertexKey const& v) const override {
    auto address = decode_address(v);
    Count sum = 0;
    for (auto const& step : address)
      sum += lobe_.dist[0][step.vertex_choice + 1];
    return sum;
  }

  std::optional<std::string> suborbit_invariant(
      VertexKey const& v) const override {
    auto address = decode_address(v);
    std::string bytes;
    for (auto const& step : address)
      varint_append(bytes, lobe_.dist[0][step.vertex_choice + 1]);
    return bytes;
  }

  /// Labels separate suborbits for every lobe; they are exact (label
  /// classes are whole suborbits) when the lobe is distance-transitive.
  bool suborbit_invariant_exact() const override {
    return lobe_.distance_transitive;
  }

  /// Distance-transitive iff the lobe is complete (with its full symmetry).
  bool is_distance_transitive() const override {
    return lobe_.is_complete() && lobe_.vertex_transitive &&
           lobe_.arc_transitive;
  }

  bool supports_reroot() const override { return lobe_.vertex_transitive; }

 private:
  std::vector<VertexKey> neighbors(
      VertexKey const& v, std::vector<std::vector<Point>> const& adj) const {
    auto address = decode_address(v);
    std::vector<VertexKey> out;
    std::uint32_t fresh = address.empty() ? m_ : m_ - 1;
    out.reserve(static_cast<std::size_t>(fresh) * adj[0].size() +
                (address.empty() ? 0 : adj[1].size()));

    // Fresh lobes: v sits at the basepoint position 0 of each.
    TreeOfLobesAddress child = address;
    child.push_back({});
    for (std::uint32_t l = 0; l < fresh; ++l)
      for (Point q : adj[0]) {
        child.back() = {l, q - 1};
        out.push_back(encode_address(child));
      }

    // Return lobe: v sits at position vertex_choice + 1 of the lobe it was
    // reached through; position 0 is the entry vertex one step up.
    if (!address.empty()) {
      LobeStep last = address.back();
      Point p = last.vertex_choice + 1;
      TreeOfLobesAddress sibling = address;
      for (Point q : adj[p]) {
        if (q == 0) {
          TreeOfLobesAddress parent(address.begin(), address.end() - 1);
          out.push_back(encode_address(parent));
        } else {
          sibling.back() = {last.lobe_choice, q - 1};
          out.push_back(encode_address(sibling));
        }
      }
    }
    return out;
  }

  std::uint32_t m_;
  LobeSpec lobe_;
  VertexKey root_;
  std::vector<std::string> warnings_;
};

inline std::shared_ptr<TreeOfLobesDigraph const> tree_of_lobes(
    std::uint32_t m, LobeSpec lobe) {
  return std::make_shared<TreeOfLobesDigraph>(m, std::move(lobe));
}

}  // namespace orbgrowth

#endif  // ORBGROWTH_TREE_OF_LOBES_HPP_
