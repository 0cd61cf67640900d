#ifndef ORBGROWTH_PRODUCT_HPP_
#define ORBGROWTH_PRODUCT_HPP_

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "orbgrowth/base.hpp"
#include "orbgrowth/lazy_digraph.hpp"

namespace orbgrowth {

/// The orbital digraph of a product-action wreath product over a base
/// digraph: vertices are m-tuples of base vertices, and two tuples are
/// adjacent iff they agree in all but one coordinate and differ by a base
/// adjacency there. Distances add over coordinates, and spheres are the
/// m-fold convolution of the base spheres.
class ProductDigraph final : public LazyRootedDigraph {
 public:
  ProductDigraph(std::shared_ptr<LazyRootedDigraph const> base, std::uint32_t m)
      : base_(std::move(base)), m_(m) {
    if (m_ < 2) throw ValueError("product_wreath: m must be >= 2");
    std::vector<VertexKey> coords(m_, base_->root());
    root_ = encode_tuple(coords);
  }

  std::uint32_t arity() const { return m_; }
  LazyRootedDigraph const& base() const { return *base_; }

  VertexKey encode_tuple(std::vector<VertexKey> const& coords) const {
    if (coords.size() != m_)
      throw ValueError("product tuple has wrong number of coordinates");
    VertexKey out;
    for (auto const& c : coords) {
      varint_append(out, c.size());
      out += c;
    }
    return out;
  }

  std::vector<VertexKey> decode_tuple(VertexKey const& key) const {
    std::vector<VertexKey> coords;
    coords.reserve(m_);
    std::size_t pos = 0;
    for (std::uint32_t i = 0; i < m_; ++i) {
      auto len = varint_read(key, pos);
      if (pos + len > key.size())
        throw ValueError("product key: truncated coordinate");
      coords.emplace_back(key.substr(pos, len));
      pos += len;
    }
    if (pos != key.size()) throw ValueError("product key: trailing bytes");
    return coords;
  }

  VertexKey const& root() const override { return root_; }

  std::vector<VertexKey> out_neighbors(VertexKey const& v) const override {
    return neighbors(v, [&](VertexKey const& c) { return base_->out_neighbors(c); });
  }
  std::vector<VertexKey> in_neighbors(VertexKey const& v) const override {
    return neighbors(v, [&](VertexKey const& c) { return base_->in_neighbors(c); });
  }
  void append_undirected_neighbors(VertexKey const& v,
                                   std::vector<VertexKey>& out) const override {
    auto coords = decode_tuple(v);
    std::vector<VertexKey> buf;
    for (std::uint32_t i = 0; i < m_; ++i) {
      buf.clear();
      base_->append_undirected_neighbors(coords[i], buf);
      VertexKey original = std::move(coords[i]);
      for (auto& n : buf) {
        coords[i] = std::move(n);
        out.push_back(encode_tuple(coords));
      }
      coords[i] = std::move(original);
    }
  }

  std::string descriptor() const override {
    return "wreath(base=" + base_->descriptor() + ", m=" + std::to_string(m_) +
           ")";
  }

  std::optional<Count> distance_from_root(VertexKey const& v) const override {
    auto coords = decode_tuple(v);
    Count sum = 0;
    for (auto const& c : coords) {
      auto d = base_->distance_from_root(c);
      if (!d) return std::nullopt;
      sum += *d;
    }
    return sum;
  }

  /// Multiset of coordinate distances from the base root, sorted.
  std::optional<std::string> suborbit_invariant(
      VertexKey const& v) const override {
    auto coords = decode_tuple(v);
    std::vector<Count> dists;
    dists.reserve(m_);
    for (auto const& c : coords) {
      auto d = base_->distance_from_root(c);
      if (!d) return std::nullopt;
      dists.push_back(*d);
    }
    std::sort(dists.begin(), dists.end());
    std::string bytes;
    for (Count d : dists) varint_append(bytes, d);
    return bytes;
  }

  /// The distance multiset separates the stabiliser orbits exactly when the
  /// base group is distance-transitive.
  bool suborbit_invariant_exact() const override {
    return base_->is_distance_transitive();
  }

  bool supports_reroot() const override { return base_->supports_reroot(); }

  bool is_finite() const override { return base_->is_finite(); }

 private:
  template <typename NeighborFn>
  std::vector<VertexKey> neighbors(VertexKey const& v, NeighborFn&& fn) const {
    auto coords = decode_tuple(v);
    std::vector<VertexKey> out;
    for (std::uint32_t i = 0; i < m_; ++i) {
      auto list = fn(coords[i]);
      VertexKey original = std::move(coords[i]);
      for (auto& n : list) {
        coords[i] = std::move(n);
        out.push_back(encode_tuple(coords));
      }
      coords[i] = std::move(original);
    }
    return out;
  }

  std::shared_ptr<LazyRootedDigraph const> base_;
  std::uint32_t m_;
  VertexKey root_;
};

inline std::shared_ptr<ProductDigraph const> product_wreath(
    std::shared_ptr<LazyRootedDigraph const> base, std::uint32_t m) {
  return std::make_shared<ProductDigraph>(std::move(base), m);
}

}  // namespace orbgrowth

#endif  // ORBGROWTH_PRODUCT_HPP_
