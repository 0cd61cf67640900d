#ifndef ORBGROWTH_LAZY_DIGRAPH_HPP_
#define ORBGROWTH_LAZY_DIGRAPH_HPP_

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "orbgrowth/base.hpp"

namespace orbgrowth {

/// Canonical byte-sequence identifying a vertex within one construction.
/// Key equality is vertex equality; keys sort lexicographically by bytes.
using VertexKey = std::string;

/// An infinite (or finite) rooted digraph explored on demand. Neighbor
/// lists are finite, deterministic and order-stable per vertex, and
/// u in out_neighbors(v) iff v in in_neighbors(u).
///
/// Implementations may additionally expose structural knowledge used by
/// the suborbit analysis: a constant-time distance-from-root oracle and a
/// per-vertex suborbit invariant (vertices in one stabiliser orbit share
/// the invariant; the exactness flag records whether the converse is
/// proven for the construction).
class LazyRootedDigraph {
 public:
  virtual ~LazyRootedDigraph() = default;

  virtual VertexKey const& root() const = 0;
  virtual std::vector<VertexKey> out_neighbors(VertexKey const& v) const = 0;
  virtual std::vector<VertexKey> in_neighbors(VertexKey const& v) const = 0;

  /// Human-readable construction expression.
  virtual std::string descriptor() const = 0;

  /// Neighbors under the undirected metric (arc in either direction),
  /// deduplicated, appended to `out`. Constructions with symmetric arc
  /// sets should override this with a single pass.
  virtual void append_undirected_neighbors(VertexKey const& v,
                                           std::vector<VertexKey>& out) const {
    auto fwd = out_neighbors(v);
    auto bwd = in_neighbors(v);
    std::size_t start = out.size();
    out.insert(out.end(), std::make_move_iterator(fwd.begin()),
               std::make_move_iterator(fwd.end()));
    out.insert(out.end(), std::make_move_iterator(bwd.begin()),
               std::make_move_iterator(bwd.end()));
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(start), out.end());
    out.erase(std::unique(out.begin() + static_cast<std::ptrdiff_t>(start),
                          out.end()),
              out.end());
  }

  /// Exact graph distance from the root, when the construction can read it
  /// off the key without search.
  virtual std::optional<Count> distance_from_root(VertexKey const&) const {
    return std::nullopt;
  }

  /// Canonical invariant separating stabiliser orbits, or nullopt when the
  /// construction supports none.
  virtual std::optional<std::string> suborbit_invariant(
      VertexKey const&) const {
    return std::nullopt;
  }

  /// True when equal invariants are proven to imply one orbit (cells are
  /// exact); false when the invariant only refines (lower bounds).
  virtual bool suborbit_invariant_exact() const { return false; }

  /// True when the construction is known distance-transitive.
  virtual bool is_distance_transitive() const { return false; }

  /// Whether reroot() is available (vertex-transitive constructions).
  virtual bool supports_reroot() const { return false; }

  virtual bool is_finite() const { return false; }
};

namespace detail {

/// Root-swapped view over an existing construction.
class RerootedView final : public LazyRootedDigraph {
 public:
  RerootedView(std::shared_ptr<LazyRootedDigraph const> base, VertexKey root)
      : base_(std::move(base)), root_(std::move(root)) {}

  VertexKey const& root() const override { return root_; }
  std::vector<VertexKey> out_neighbors(VertexKey const& v) const override {
    return base_->out_neighbors(v);
  }
  std::vector<VertexKey> in_neighbors(VertexKey const& v) const override {
    return base_->in_neighbors(v);
  }
  void append_undirected_neighbors(VertexKey const& v,
                                   std::vector<VertexKey>& out) const override {
    base_->append_undirected_neighbors(v, out);
  }
  std::string descriptor() const override {
    return base_->descriptor() + " rerooted at " + to_hex(root_);
  }
  bool is_finite() const override { return base_->is_finite(); }

 private:
  std::shared_ptr<LazyRootedDigraph const> base_;
  VertexKey root_;
};

}  // namespace detail

/// The same digraph viewed from a different root; keys are unchanged.
/// Rejected for constructions that are not vertex-transitive.
inline std::shared_ptr<LazyRootedDigraph const> reroot(
    std::shared_ptr<LazyRootedDigraph const> graph, VertexKey const& v) {
  if (!graph->supports_reroot())
    throw ValueError("construction does not supply a re-rooting map: " +
                     graph->descriptor());
  return std::make_shared<detail::RerootedView>(std::move(graph), v);
}

}  // namespace orbgrowth

#endif  // ORBGROWTH_LAZY_DIGRAPH_HPP_
