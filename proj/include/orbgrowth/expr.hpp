#ifndef ORBGROWTH_EXPR_HPP_
#define ORBGROWTH_EXPR_HPP_

#include <cstdint>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "orbgrowth/base.hpp"
#include "orbgrowth/finite_wrapper.hpp"
#include "orbgrowth/lazy_digraph.hpp"
#include "orbgrowth/lobes.hpp"
#include "orbgrowth/perm_group.hpp"
#include "orbgrowth/product.hpp"
#include "orbgrowth/tree_of_lobes.hpp"

namespace orbgrowth {

/// Abstract syntax of the construction-expression language:
///   complete(k) | petersen | permgroup(path, alpha, beta)
///   | lobes(m=.., lobe=..) | wreath(base=.., m=..) | finite(path)
struct ConstructionExpr {
  enum class Kind { complete, petersen, permgroup, lobes, wreath, finite };
  Kind kind = Kind::petersen;
  std::uint32_t k = 0;      // complete
  std::uint32_t m = 0;      // lobes, wreath
  std::string path;         // permgroup, finite
  std::uint32_t alpha = 0;  // permgroup
  std::uint32_t beta = 0;   // permgroup
  std::vector<ConstructionExpr> children;  // lobes: [lobe]; wreath: [base]

  bool is_lobe_kind() const {
    return kind == Kind::complete || kind == Kind::petersen ||
           kind == Kind::permgroup;
  }

  friend bool operator==(ConstructionExpr const&,
                         ConstructionExpr const&) = default;
};

inline constexpr std::uint32_t kMaxExprDepth = 4;

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  ConstructionExpr parse() {
    auto expr = parse_expr(1);
    skip_ws();
    if (pos_ != text_.size())
      throw ParseError("unexpected trailing input", pos_);
    return expr;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n'))
      ++pos_;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  std::string parse_ident() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           ((text_[pos_] >= 'a' && text_[pos_] <= 'z') ||
            (text_[pos_] >= 'A' && text_[pos_] <= 'Z') || text_[pos_] == '_'))
      ++pos_;
    if (pos_ == start) throw ParseError("expected an identifier", pos_);
    return std::string(text_.substr(start, pos_ - start));
  }

  std::uint32_t parse_uint(std::string_view what) {
    skip_ws();
    std::size_t start = pos_;
    std::uint64_t value = 0;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
      value = value * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (value > UINT32_MAX)
        throw ParseError(std::string(what) + " is out of range", start);
      ++pos_;
    }
    if (pos_ == start)
      throw ParseError("expected an integer for " + std::string(what), pos_);
    return static_cast<std::uint32_t>(value);
  }

  std::string parse_path() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '"') {
      ++pos_;
      while (pos_ < text_.size() && text_[pos_] != '"') ++pos_;
      if (pos_ >= text_.size())
        throw ParseError("unterminated quoted path", start);
      ++pos_;
      return std::string(text_.substr(start + 1, pos_ - start - 2));
    }
    while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ')' &&
           text_[pos_] != '(' && text_[pos_] != '=')
      ++pos_;
    std::string path(text_.substr(start, pos_ - start));
    while (!path.empty() && (path.back() == ' ' || path.back() == '\t'))
      path.pop_back();
    if (path.empty()) throw ParseError("expected a file path", start);
    return path;
  }

  ConstructionExpr parse_expr(std::uint32_t depth) {
    if (depth > kMaxExprDepth)
      throw ParseError("expression nesting exceeds depth " +
                           std::to_string(kMaxExprDepth),
                       pos_);
    skip_ws();
    std::size_t start = pos_;
    std::string name = parse_ident();
    ConstructionExpr expr;
    if (name == "petersen") {
      expr.kind = ConstructionExpr::Kind::petersen;
      if (peek_is('(')) {  // optional empty argument list
        expect('(');
        expect(')');
      }
      return expr;
    }
    if (name == "complete") {
      expr.kind = ConstructionExpr::Kind::complete;
      expect('(');
      std::size_t arg_pos = pos_;
      expr.k = parse_uint("k");
      expect(')');
      if (expr.k < 3)
        throw ParseError("complete(k) requires k >= 3", arg_pos);
      return expr;
    }
    if (name == "permgroup") {
      expr.kind = ConstructionExpr::Kind::permgroup;
      expect('(');
      expr.path = parse_path();
      expect(',');
      expr.alpha = parse_uint("alpha");
      expect(',');
      expr.beta = parse_uint("beta");
      expect(')');
      return expr;
    }
    if (name == "finite") {
      expr.kind = ConstructionExpr::Kind::finite;
      expect('(');
      expr.path = parse_path();
      expect(')');
      return expr;
    }
    if (name == "lobes" || name == "wreath") {
      bool is_lobes = name == "lobes";
      expr.kind = is_lobes ? ConstructionExpr::Kind::lobes
                           : ConstructionExpr::Kind::wreath;
      expect('(');
      bool have_m = false, have_child = false;
      std::size_t m_pos = pos_;
      char const* child_name = is_lobes ? "lobe" : "base";
      for (;;) {
        skip_ws();
        std::size_t key_pos = pos_;
        std::string key = parse_ident();
        expect('=');
        if (key == "m") {
          if (have_m) throw ParseError("duplicate argument m", key_pos);
          m_pos = pos_;
          expr.m = parse_uint("m");
          have_m = true;
        } else if (key == child_name) {
          if (have_child)
            throw ParseError("duplicate argument " + key, key_pos);
          expr.children.push_back(parse_expr(depth + 1));
          have_child = true;
        } else {
          throw ParseError("unknown argument '" + key + "' for " + name,
                           key_pos);
        }
        if (peek_is(',')) {
          expect(',');
          continue;
        }
        break;
      }
      expect(')');
      if (!have_m)
        throw ParseError(name + " requires an m argument", start);
      if (!have_child)
        throw ParseError(name + " requires a " + std::string(child_name) +
                             " argument",
                         start);
      if (expr.m < 2)
        throw ParseError(name + " requires m >= 2", m_pos);
      if (is_lobes && !expr.children[0].is_lobe_kind())
        throw ParseError("the lobe argument must be a lobe expression "
                         "(complete, petersen, or permgroup)",
                         start);
      return expr;
    }
    throw ParseError("unknown construction '" + name + "'", start);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline ConstructionExpr parse_expr(std::string_view text) {
  return detail::ExprParser(text).parse();
}

/// Canonical form; parse(print(parse(text))) == parse(text).
inline std::string print_expr(ConstructionExpr const& expr) {
  switch (expr.kind) {
    case ConstructionExpr::Kind::petersen:
      return "petersen";
    case ConstructionExpr::Kind::complete:
      return "complete(" + std::to_string(expr.k) + ")";
    case ConstructionExpr::Kind::permgroup:
      return "permgroup(" + expr.path + ", " + std::to_string(expr.alpha) +
             ", " + std::to_string(expr.beta) + ")";
    case ConstructionExpr::Kind::finite:
      return "finite(" + expr.path + ")";
    case ConstructionExpr::Kind::lobes:
      return "lobes(m=" + std::to_string(expr.m) +
             ", lobe=" + print_expr(expr.children[0]) + ")";
    case ConstructionExpr::Kind::wreath:
      return "wreath(base=" + print_expr(expr.children[0]) +
             ", m=" + std::to_string(expr.m) + ")";
  }
  throw Error("print_expr: unreachable");
}

// -------------------------------------------------------------------------
// Building constructions from expressions
// -------------------------------------------------------------------------

inline std::string read_file(std::string const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) throw ValueError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

/// Arc-list digraph file: one `u v` arc per line, '#' comments; vertex count
/// is one past the largest endpoint.
inline FiniteOrbitalDigraph parse_digraph_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  FiniteOrbitalDigraph digraph;
  Point max_vertex = 0;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::uint64_t u, v;
    if (!(fields >> u)) continue;
    if (!(fields >> v))
      throw ValueError("digraph file line " + std::to_string(lineno) +
                       ": expected 'u v'");
    if (u >= kMaxFiniteDegree || v >= kMaxFiniteDegree)
      throw ValueError("digraph file line " + std::to_string(lineno) +
                       ": vertex index out of range");
    digraph.arcs.emplace_back(static_cast<Point>(u), static_cast<Point>(v));
    max_vertex = std::max({max_vertex, static_cast<Point>(u),
                           static_cast<Point>(v)});
  }
  if (digraph.arcs.empty())
    throw ValueError("digraph file contains no arcs");
  digraph.vertex_count = max_vertex + 1;
  digraph.basepoint = 0;
  Point witness = 0;
  for (auto const& [u, v] : digraph.arcs) {
    if (u == 0) {
      ++digraph.out_valency;
      if (witness == 0) witness = v;
    }
    if (v == 0) ++digraph.in_valency;
  }
  digraph.witness = witness;
  return digraph;
}

/// Loads a lobe from an arc-list file plus an optional automorphism
/// generator file in the group format; without generators the transitivity
/// flags stay false and downstream analysis treats cells as refinements.
inline LobeSpec lobe_from_files(std::string const& arc_path,
                                std::optional<std::string> const& aut_path) {
  auto digraph = parse_digraph_text(read_file(arc_path));
  std::optional<FinitePermGroup> automorphisms;
  if (aut_path) automorphisms = parse_group_text(read_file(*aut_path));
  return make_lobe(arc_path, digraph.vertex_count, std::move(digraph.arcs),
                   std::move(automorphisms));
}

inline LobeSpec build_lobe(ConstructionExpr const& expr) {
  switch (expr.kind) {
    case ConstructionExpr::Kind::complete:
      return complete_lobe(expr.k);
    case ConstructionExpr::Kind::petersen:
      return petersen_lobe();
    case ConstructionExpr::Kind::permgroup: {
      auto group = parse_group_text(read_file(expr.path));
      return lobe_from_group(group, expr.alpha, expr.beta);
    }
    default:
      throw ValueError("expression is not a lobe: " + print_expr(expr));
  }
}

inline std::shared_ptr<LazyRootedDigraph const> build_digraph(
    ConstructionExpr const& expr) {
  switch (expr.kind) {
    case ConstructionExpr::Kind::lobes:
      return tree_of_lobes(expr.m, build_lobe(expr.children[0]));
    case ConstructionExpr::Kind::wreath:
      return product_wreath(build_digraph(expr.children[0]), expr.m);
    case ConstructionExpr::Kind::finite:
      return wrap_finite(parse_digraph_text(read_file(expr.path)),
                         std::nullopt, expr.path);
    case ConstructionExpr::Kind::complete:
    case ConstructionExpr::Kind::petersen:
    case ConstructionExpr::Kind::permgroup:
      // A bare lobe expression analyses the finite lobe itself, carrying
      // its automorphism group for exact suborbits.
      return wrap_lobe(build_lobe(expr));
  }
  throw Error("build_digraph: unreachable");
}

}  // namespace orbgrowth

#endif  // ORBGROWTH_EXPR_HPP_
