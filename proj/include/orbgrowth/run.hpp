#ifndef ORBGROWTH_RUN_HPP_
#define ORBGROWTH_RUN_HPP_

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "orbgrowth/base.hpp"
#include "orbgrowth/bfs.hpp"
#include "orbgrowth/end_profile.hpp"
#include "orbgrowth/expr.hpp"
#include "orbgrowth/growth.hpp"
#include "orbgrowth/suborbits.hpp"

namespace orbgrowth {

/// Process exit codes shared by the CLI and the in-process runner.
enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailure = 1,
  kExitUsageError = 2,
  kExitBudgetExhausted = 3,
};

struct RunOptions {
  std::uint32_t radius = 6;
  Count budget = kDefaultVertexBudget;
  std::string format = "csv";  // csv | json
  std::uint64_t seed = 0;
};

namespace detail {

inline std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6g", value);
  return buffer;
}

inline void emit_csv_header(std::ostream& out, std::string const& command,
                            std::string const& descriptor,
                            RunOptions const& options) {
  out << "# command=" << command << " expr=" << descriptor
      << " radius=" << options.radius << " budget=" << options.budget
      << " seed=" << options.seed << "\n";
}

inline nlohmann::json json_header(std::string const& command,
                                  std::string const& descriptor,
                                  RunOptions const& options) {
  return nlohmann::json{{"command", command},
                        {"expr", descriptor},
                        {"radius", options.radius},
                        {"budget", options.budget},
                        {"seed", options.seed}};
}

inline std::vector<VertexKey> sample_ball(SphereTable const& table,
                                          std::size_t count,
                                          std::mt19937_64& rng) {
  std::vector<VertexKey> out;
  if (table.total_vertices() == 0) return out;
  std::uniform_int_distribution<std::uint32_t> pick_r(0, table.radius());
  std::size_t attempts = 0;
  while (out.size() < count && attempts < count * 8) {
    ++attempts;
    auto r = pick_r(rng);
    if (table.sphere_size(r) == 0) continue;
    std::uniform_int_distribution<std::size_t> pick(0,
                                                    table.sphere(r).size() - 1);
    out.emplace_back(table.sphere(r).key(pick(rng)));
  }
  return out;
}

}  // namespace detail

// -------------------------------------------------------------------------
// spheres
// -------------------------------------------------------------------------

inline void emit_spheres(std::ostream& out, LazyRootedDigraph const& graph,
                         SphereTable const& table, RunOptions const& options) {
  auto sizes = table.sizes();
  auto balls = table.ball_sizes();
  if (options.format == "json") {
    auto doc = detail::json_header("spheres", graph.descriptor(), options);
    auto rows = nlohmann::json::array();
    for (std::uint32_t r = 0; r < sizes.size(); ++r) {
      auto row = nlohmann::json{{"r", r}, {"s_r", sizes[r]}, {"b_r", balls[r]}};
      auto keys = nlohmann::json::array();
      for (std::size_t i = 0; i < table.sphere(r).size(); ++i)
        keys.push_back(to_hex(table.sphere(r).key(i)));
      row["keys"] = std::move(keys);
      rows.push_back(std::move(row));
    }
    doc["spheres"] = std::move(rows);
    out << doc.dump(2) << "\n";
    return;
  }
  detail::emit_csv_header(out, "spheres", graph.descriptor(), options);
  out << "r,s_r,b_r\n";
  for (std::uint32_t r = 0; r < sizes.size(); ++r)
    out << r << "," << sizes[r] << "," << balls[r] << "\n";
}

// -------------------------------------------------------------------------
// subdegrees
// -------------------------------------------------------------------------

inline void emit_subdegrees(std::ostream& out, LazyRootedDigraph const& graph,
                            SphereTable const& table,
                            RunOptions const& options) {
  auto records = suborbit_partition(graph, table);
  bool exact = graph.suborbit_invariant_exact();

  std::vector<Count> n_r(table.radius() + 1, 0);
  for (auto const& rec : records) ++n_r[rec.radius];
  std::vector<Count> big_n(table.radius() + 1, 0);
  for (std::uint32_t r = 1; r <= table.radius(); ++r)
    big_n[r] = big_n[r - 1] + n_r[r];

  std::optional<SubdegreeMultiset> mu;
  if (exact) mu = subdegree_sequences(records, table.radius()).first;

  auto cells_of = [&](std::uint32_t r) {
    std::vector<SuborbitRecord const*> cells;
    for (auto const& rec : records)
      if (rec.radius == r) cells.push_back(&rec);
    return cells;
  };

  if (options.format == "json") {
    auto doc = detail::json_header("subdegrees", graph.descriptor(), options);
    doc["exact"] = exact;
    auto rows = nlohmann::json::array();
    for (std::uint32_t r = 0; r <= table.radius(); ++r) {
      auto row = nlohmann::json{{"r", r}, {"n_r", n_r[r]}, {"N_r", big_n[r]}};
      auto cells = nlohmann::json::array();
      for (auto const* rec : cells_of(r))
        cells.push_back(nlohmann::json{{"size", rec->size},
                                       {"invariant", to_hex(rec->invariant)},
                                       {"exact", rec->exact}});
      row["cells"] = std::move(cells);
      rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);
    if (mu) {
      auto mult = nlohmann::json::array();
      for (auto const& [size, count] : mu->multiplicity)
        mult.push_back(nlohmann::json{
            {"size", size},
            {"count", count},
            {"at_least", mu->recurring.contains(size)}});
      doc["multiset"] = std::move(mult);
      doc["height"] =
          mu->height == SubdegreeMultiset::HeightEvidence::omega_consistent
              ? "omega-consistent"
              : "greater than omega (evidence)";
    }
    out << doc.dump(2) << "\n";
    return;
  }

  detail::emit_csv_header(out, "subdegrees", graph.descriptor(), options);
  out << "# exact=" << (exact ? "true" : "false");
  if (mu)
    out << " height="
        << (mu->height == SubdegreeMultiset::HeightEvidence::omega_consistent
                ? "omega-consistent"
                : "greater-than-omega-evidence");
  out << "\n";
  out << "r,n_r,N_r,cell_sizes\n";
  for (std::uint32_t r = 0; r <= table.radius(); ++r) {
    out << r << "," << n_r[r] << "," << big_n[r] << ",";
    auto cells = cells_of(r);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out << ";";
      out << cells[i]->size;
    }
    out << "\n";
  }
  if (mu) {
    out << "# multiset:";
    for (auto const& [size, count] : mu->multiplicity)
      out << " " << size << (mu->recurring.contains(size) ? ">=" : "=")
          << count;
    out << "\n";
  }
}

// -------------------------------------------------------------------------
// growth
// -------------------------------------------------------------------------

inline GrowthBoundContext bound_context(LazyRootedDigraph const& graph) {
  GrowthBoundContext context;
  if (auto const* tree = dynamic_cast<TreeOfLobesDigraph const*>(&graph)) {
    context.connectivity_one = true;
    context.lobe_multiplicity = tree->lobe_multiplicity();
  }
  return context;
}

inline void emit_growth(std::ostream& out, LazyRootedDigraph const& graph,
                        SphereTable const& table, RunOptions const& options) {
  auto records = suborbit_partition(graph, table);
  auto [mu, view] = subdegree_sequences(records, table.radius());
  if (view.lower.size() < 9)
    throw ValueError(
        "growth: need at least 8 nontrivial subdegrees; increase --radius");
  std::vector<Count> nontrivial(view.lower.begin() + 1, view.lower.end());
  auto report = classify(nontrivial);

  auto context = bound_context(graph);
  bool dt_with_rate_target =
      graph.is_distance_transitive() && context.lobe_multiplicity.has_value();
  auto bounds = verify_growth_bounds(view, table.sphere_size(1),
                                     dt_with_rate_target, context);

  auto doc = detail::json_header("growth", graph.descriptor(), options);
  doc["class"] = to_string(report.growth_class);
  doc["parameters"] = nlohmann::json::object();
  if (report.growth_class == GrowthClass::exponential)
    doc["parameters"]["base"] = report.parameter;
  if (report.growth_class == GrowthClass::polynomial)
    doc["parameters"]["degree"] = report.parameter;
  doc["window"] = {report.window_begin, report.window_end};
  doc["residuals"] = {{"exponential", report.exp_residual},
                      {"polynomial", report.poly_residual},
                      {"bounded_ratio", report.bounded_ratio}};
  if (report.witness_checked) doc["witness"] = report.witness_ok;
  auto bound_rows = nlohmann::json::array();
  for (auto const& check : bounds.checks)
    bound_rows.push_back(nlohmann::json{{"name", check.name},
                                        {"lhs", check.lhs},
                                        {"rhs", check.rhs},
                                        {"pass", check.pass}});
  doc["bounds"] = std::move(bound_rows);
  out << doc.dump(2) << "\n";
}

// -------------------------------------------------------------------------
// ends
// -------------------------------------------------------------------------

inline void emit_ends(std::ostream& out, LazyRootedDigraph const& graph,
                      SphereTable const& table, RunOptions const& options) {
  std::vector<EndProfile> profiles;
  for (std::uint32_t r = 0; r < table.radius(); ++r)
    profiles.push_back(
        end_profile(graph, table, r, std::min(r + 4, table.radius())));

  if (options.format == "json") {
    auto doc = detail::json_header("ends", graph.descriptor(), options);
    auto rows = nlohmann::json::array();
    for (auto const& p : profiles)
      rows.push_back(nlohmann::json{{"r", p.inner_radius},
                                    {"R", p.outer_radius},
                                    {"components", p.component_count},
                                    {"frontier_sizes", p.frontier_sizes}});
    doc["profiles"] = std::move(rows);
    out << doc.dump(2) << "\n";
    return;
  }
  detail::emit_csv_header(out, "ends", graph.descriptor(), options);
  out << "r,R,components,frontier_sizes\n";
  for (auto const& p : profiles) {
    out << p.inner_radius << "," << p.outer_radius << "," << p.component_count
        << ",";
    for (std::size_t i = 0; i < p.frontier_sizes.size(); ++i) {
      if (i > 0) out << ";";
      out << p.frontier_sizes[i];
    }
    out << "\n";
  }
}

// -------------------------------------------------------------------------
// verify
// -------------------------------------------------------------------------

/// Runs the full consistency suite against one construction: the sphere
/// bound, suborbit pairing, Fibonacci recurrences and lower bounds,
/// composition sizes, product convolution, and the growth bounds. Prints
/// one ok/FAIL line per applicable check.
inline bool run_verify(std::ostream& out,
                       std::shared_ptr<LazyRootedDigraph const> const& graph,
                       SphereTable const& table, RunOptions const& options) {
  detail::emit_csv_header(out, "verify", graph->descriptor(), options);
  bool all_pass = true;
  auto line = [&](bool pass, std::string const& name,
                  std::string const& detail) {
    out << (pass ? "ok   " : "FAIL ") << name;
    if (!detail.empty()) out << ": " << detail;
    out << "\n";
    all_pass = all_pass && pass;
  };
  std::mt19937_64 rng(options.seed);

  // Sphere growth bound.
  if (table.radius() >= 1 && table.sphere_size(1) >= 2) {
    auto violation = check_sphere_bound(table);
    line(!violation, "sphere_bound",
         violation ? "violated at r=" + std::to_string(violation->radius)
                   : "s_r <= s_1 (s_1 - 1)^(r-1) up to r=" +
                         std::to_string(table.radius()));
  }

  // Root pairing: in-valency equals out-valency.
  {
    auto out_val = graph->out_neighbors(graph->root()).size();
    auto in_val = graph->in_neighbors(graph->root()).size();
    line(out_val == in_val, "root_valency_pairing",
         "out=" + std::to_string(out_val) + " in=" + std::to_string(in_val));
  }

  // Exact suborbit pairing on finite wrappers with a group.
  if (auto const* wrapper =
          dynamic_cast<FiniteWrapperDigraph const*>(graph.get());
      wrapper != nullptr && wrapper->automorphisms()) {
    auto const& group = *wrapper->automorphisms();
    auto cells = stabilizer_suborbits(group, wrapper->digraph().basepoint);
    bool pass = true;
    for (auto const& cell : cells) {
      auto paired = paired_suborbit(group, wrapper->digraph().basepoint, cell);
      if (paired.cell.size() != cell.size()) pass = false;
    }
    line(pass, "paired_suborbit_sizes",
         std::to_string(cells.size()) + " cells checked");
  }

  // Sampled adjacency symmetry.
  {
    bool pass = true;
    auto samples = detail::sample_ball(table, 1000, rng);
    for (auto const& v : samples) {
      for (auto const& u : graph->out_neighbors(v)) {
        auto back = graph->in_neighbors(u);
        if (std::find(back.begin(), back.end(), v) == back.end()) pass = false;
      }
    }
    line(pass, "adjacency_symmetry",
         std::to_string(samples.size()) + " vertices sampled");
  }

  // Construction-specific checks.
  std::vector<SuborbitRecord> records = suborbit_partition(*graph, table);
  std::vector<Count> n_r(table.radius() + 1, 0);
  for (auto const& rec : records) ++n_r[rec.radius];

  if (auto const* tree =
          dynamic_cast<TreeOfLobesDigraph const*>(graph.get())) {
    auto const& lobe = tree->lobe();
    if (lobe.is_complete()) {
      bool pass = true;
      for (std::uint32_t r = 1; r <= table.radius(); ++r)
        if (n_r[r] != 1) pass = false;
      line(pass, "fibonacci",
           "complete lobe: one suborbit per sphere");
    } else {
      bool lower_ok = true, recurrence_ok = true;
      Count f_prev = 1, f_cur = 1;
      for (std::uint32_t r = 1; r <= table.radius(); ++r) {
        if (r >= 2) {
          Count f_next = f_cur + f_prev;
          f_prev = f_cur;
          f_cur = f_next;
        }
        if (n_r[r] < f_cur) lower_ok = false;
        if (r >= 2 && lobe.distance_set == std::set<std::uint32_t>{1, 2} &&
            tree->suborbit_invariant_exact() &&
            n_r[r] != n_r[r - 1] + n_r[r - 2])
          recurrence_ok = false;
      }
      line(lower_ok && recurrence_ok, "fibonacci",
           lobe.distance_set == std::set<std::uint32_t>{1, 2}
               ? "n_r >= f_r and n_{r+1} = n_r + n_{r-1}"
               : "n_r >= f_r");
    }

    if (lobe.distance_transitive) {
      bool pass = true;
      for (auto const& rec : records) {
        if (rec.radius == 0) continue;
        auto const& sphere = table.sphere(rec.radius);
        for (std::size_t i = 0; i < sphere.size(); ++i) {
          VertexKey v(sphere.key(i));
          if (tree->suborbit_invariant(v) == rec.invariant) {
            if (lobe_composition_size(*tree, v) != rec.size) pass = false;
            break;
          }
        }
      }
      line(pass, "composition_sizes",
           "product over address path equals cell size");
    }
  }

  if (auto const* product =
          dynamic_cast<ProductDigraph const*>(graph.get())) {
    auto base_table =
        expand(product->base(), table.radius(), {.budget = options.budget});
    auto base_sizes = base_table.sizes();
    bool pass = true;
    for (std::uint32_t r = 0; r <= table.radius(); ++r)
      if (table.sphere_size(r) !=
          sphere_convolution(base_sizes, product->arity(), r))
        pass = false;
    line(pass, "sphere_convolution",
         "|S_r| equals the m-fold convolution of base spheres");

    // Sampled distance additivity against the structural oracle.
    bool additive = true;
    std::uint32_t sample_radius = std::min<std::uint32_t>(table.radius(), 3);
    auto small = expand(*graph, sample_radius);
    auto samples = detail::sample_ball(small, 50, rng);
    for (auto const& v : samples) {
      auto structural = graph->distance_from_root(v);
      auto searched = distance(*graph, graph->root(), v, sample_radius + 1);
      if (!structural || !searched || *structural != *searched)
        additive = false;
    }
    line(additive, "distance_additivity",
         std::to_string(samples.size()) + " vertices sampled");
  }

  if (graph->is_finite()) {
    line(true, "growth_bounds",
         "skipped: a finite digraph has no asymptotics");
  } else if (graph->suborbit_invariant_exact()) {
    auto [mu, view] = subdegree_sequences(records, table.radius());
    if (view.lower.size() >= 2 && !view.upper.empty()) {
      auto bounds = verify_growth_bounds(view, table.sphere_size(1),
                                         graph->is_distance_transitive(),
                                         bound_context(*graph));
      for (auto const& check : bounds.checks)
        line(check.pass, check.name,
             detail::format_double(check.lhs) + " vs " +
                 detail::format_double(check.rhs));
    }
  } else {
    line(true, "subdegree_sequences",
         "skipped: invariant refinement only (non-exact cells)");
  }

  // Re-rooting spot check.
  if (graph->supports_reroot()) {
    std::uint32_t check_radius = std::min<std::uint32_t>(table.radius(), 4);
    auto reference = expand(*graph, check_radius);
    bool pass = true;
    auto samples = detail::sample_ball(reference, 3, rng);
    for (auto const& v : samples) {
      auto view2 = reroot(graph, v);
      if (expand(*view2, check_radius).sizes() != reference.sizes())
        pass = false;
    }
    line(pass, "reroot_sphere_symmetry",
         std::to_string(samples.size()) + " roots sampled");
  }

  return all_pass;
}

// -------------------------------------------------------------------------
// Dispatch
// -------------------------------------------------------------------------

inline int run_command(std::string const& command, std::string const& expr_text,
                       RunOptions const& options, std::ostream& out,
                       std::ostream& err) {
  ConstructionExpr expr;
  try {
    expr = parse_expr(expr_text);
  } catch (ParseError const& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsageError;
  }

  std::shared_ptr<LazyRootedDigraph const> graph;
  try {
    graph = build_digraph(expr);
  } catch (Error const& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsageError;
  }

  std::optional<SphereTable> table;
  int exit_code = kExitOk;
  try {
    table.emplace(expand(*graph, options.radius, {.budget = options.budget}));
  } catch (BudgetExceeded const& e) {
    err << "warning: " << e.what() << "; emitting partial results\n";
    table.emplace(std::move(*e.partial()));
    exit_code = kExitBudgetExhausted;
  }

  try {
    if (command == "spheres") {
      emit_spheres(out, *graph, *table, options);
    } else if (command == "subdegrees") {
      emit_subdegrees(out, *graph, *table, options);
    } else if (command == "growth") {
      emit_growth(out, *graph, *table, options);
    } else if (command == "ends") {
      emit_ends(out, *graph, *table, options);
    } else if (command == "verify") {
      bool ok = run_verify(out, graph, *table, options);
      if (!ok && exit_code == kExitOk) exit_code = kExitVerificationFailure;
    } else {
      err << "unknown command: " << command << "\n";
      return kExitUsageError;
    }
  } catch (Error const& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsageError;
  }
  return exit_code;
}

}  // namespace orbgrowth

#endif  // ORBGROWTH_RUN_HPP_
