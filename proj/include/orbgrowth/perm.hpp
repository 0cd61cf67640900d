#ifndef ORBGROWTH_PERM_HPP_
#define ORBGROWTH_PERM_HPP_

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "orbgrowth/base.hpp"

namespace orbgrowth {

/// A permutation of {0..degree-1}, stored as its image list. Permutations
/// act on the right: the image of p under g is g[p].
class Permutation {
 public:
  explicit Permutation(std::vector<Point> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (Point img : images_) {
      if (img >= images_.size() || seen[img])
        throw ValueError("permutation images are not a bijection");
      seen[img] = true;
    }
  }

  static Permutation identity(Point degree) {
    std::vector<Point> images(degree);
    std::iota(images.begin(), images.end(), 0);
    return Permutation(std::move(images));
  }

  Point degree() const { return static_cast<Point>(images_.size()); }

  Point operator[](Point p) const { return images_[p]; }

  bool is_identity() const {
    for (Point p = 0; p < degree(); ++p)
      if (images_[p] != p) return false;
    return true;
  }

  Permutation inverse() const {
    std::vector<Point> inv(images_.size());
    for (Point p = 0; p < degree(); ++p) inv[images_[p]] = p;
    return Permutation(std::move(inv));
  }

  /// Composition "this, then g": (p)^(this*g) = ((p)^this)^g.
  Permutation then(Permutation const& g) const {
    if (g.degree() != degree())
      throw ValueError("composing permutations of different degrees");
    std::vector<Point> images(images_.size());
    for (Point p = 0; p < degree(); ++p) images[p] = g.images_[images_[p]];
    return Permutation(std::move(images));
  }

  std::vector<Point> const& images() const { return images_; }

  friend bool operator==(Permutation const&, Permutation const&) = default;
  friend auto operator<=>(Permutation const& a, Permutation const& b) {
    return a.images_ <=> b.images_;
  }

  /// Parses disjoint-cycle notation, e.g. "(0 1 2 3)(4 5)". Commas are
  /// accepted as separators; "()" denotes the identity. Cycles are applied
  /// left to right.
  static Permutation from_cycles(std::string_view text, Point degree);

  /// Renders disjoint-cycle notation; "()" for the identity.
  std::string to_cycles() const {
    std::string out;
    std::vector<bool> done(images_.size(), false);
    for (Point start = 0; start < degree(); ++start) {
      if (done[start] || images_[start] == start) continue;
      out.push_back('(');
      Point p = start;
      bool first = true;
      do {
        if (!first) out.push_back(' ');
        out += std::to_string(p);
        done[p] = true;
        p = images_[p];
        first = false;
      } while (p != start);
      out.push_back(')');
    }
    if (out.empty()) out = "()";
    return out;
  }

 private:
  std::vector<Point> images_;
};

inline Permutation Permutation::from_cycles(std::string_view text,
                                            Point degree) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), 0);

  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() &&
           (text[i] == ' ' || text[i] == '\t' || text[i] == ','))
      ++i;
  };
  skip_ws();
  bool any = false;
  while (i < text.size()) {
    if (text[i] != '(')
      throw ParseError("expected '(' in cycle notation", i);
    ++i;
    std::vector<Point> cycle;
    skip_ws();
    while (i < text.size() && text[i] != ')') {
      if (text[i] < '0' || text[i] > '9')
        throw ParseError("expected point index in cycle", i);
      std::uint64_t value = 0;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        value = value * 10 + static_cast<std::uint64_t>(text[i] - '0');
        if (value >= degree)
          throw ParseError("point index exceeds degree", i);
        ++i;
      }
      cycle.push_back(static_cast<Point>(value));
      skip_ws();
    }
    if (i >= text.size()) throw ParseError("unterminated cycle", i);
    ++i;  // ')'
    for (std::size_t k = 0; k + 1 < cycle.size(); ++k) {
      if (std::find(cycle.begin() + static_cast<std::ptrdiff_t>(k) + 1,
                    cycle.end(), cycle[k]) != cycle.end())
        throw ParseError("repeated point within a cycle", i);
    }
    // Apply the cycle after the ones already read.
    if (cycle.size() >= 2) {
      std::vector<Point> next = images;
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        Point from = cycle[k];
        Point to = cycle[(k + 1) % cycle.size()];
        for (Point p = 0; p < degree; ++p)
          if (images[p] == from) next[p] = to;
      }
      images = std::move(next);
    }
    any = true;
    skip_ws();
  }
  if (!any) throw ParseError("empty cycle expression", 0);
  return Permutation(std::move(images));
}

}  // namespace orbgrowth

#endif  // ORBGROWTH_PERM_HPP_
