#ifndef ORBGROWTH_GROWTH_HPP_
#define ORBGROWTH_GROWTH_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbgrowth/base.hpp"
#include "orbgrowth/suborbits.hpp"

namespace orbgrowth {

enum class GrowthClass {
  bounded,
  polynomial,
  subexponential_nonpolynomial,
  exponential,
};

inline std::string to_string(GrowthClass c) {
  switch (c) {
    case GrowthClass::bounded: return "bounded";
    case GrowthClass::polynomial: return "polynomial";
    case GrowthClass::subexponential_nonpolynomial:
      return "subexponential-nonpolynomial";
    case GrowthClass::exponential: return "exponential";
  }
  return "?";
}

/// Finite-horizon growth classification with its fit diagnostics.
struct GrowthReport {
  GrowthClass growth_class = GrowthClass::bounded;
  double parameter = 0.0;  // degree d for polynomial, base a for exponential
  std::size_t window_begin = 0;  // tail window [begin, end) of 1-based indices
  std::size_t window_end = 0;
  double bounded_ratio = 0.0;  // max/min over the window
  double exp_residual = 0.0;   // mean squared log-residual, log t vs r
  double poly_residual = 0.0;  // mean squared log-residual, log t vs log r
  bool witness_checked = false;
  bool witness_ok = false;
  std::size_t horizon = 0;
};

namespace detail {

struct AffineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double mse = 0.0;  // mean squared residual
};

inline AffineFit affine_fit(std::vector<double> const& xs,
                            std::vector<double> const& ys) {
  double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  AffineFit fit;
  double denom = n * sxx - sx * sx;
  fit.slope = denom != 0 ? (n * sxy - sx * sy) / denom : 0.0;
  fit.intercept = (sy - fit.slope * sx) / n;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double res = ys[i] - (fit.intercept + fit.slope * xs[i]);
    fit.mse += res * res;
  }
  fit.mse /= n;
  return fit;
}

/// Staircase witness for subexponential-nonpolynomial growth: the distinct
/// values of the sorted sequence grow geometrically while the index of the
/// last occurrence of each value grows superlinearly in the value rank.
inline bool staircase_witness(std::vector<double> const& seq) {
  std::vector<double> values;
  std::vector<std::size_t> last_index;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (!values.empty() && seq[i] == values.back()) {
      last_index.back() = i + 1;
    } else {
      if (!values.empty() && seq[i] < values.back()) return false;
      values.push_back(seq[i]);
      last_index.push_back(i + 1);
    }
  }
  if (values.size() < 4) return false;

  std::vector<double> ks, log_values, log_ks, log_indices;
  for (std::size_t k = 0; k < values.size(); ++k) {
    ks.push_back(static_cast<double>(k + 1));
    log_values.push_back(std::log(values[k]));
    if (k >= 1) {  // rank 1 is noisy for the position fit
      log_ks.push_back(std::log(static_cast<double>(k + 1)));
      log_indices.push_back(std::log(static_cast<double>(last_index[k])));
    }
  }
  auto geometric = affine_fit(ks, log_values);
  auto positions = affine_fit(log_ks, log_indices);
  return geometric.mse < 0.05 && geometric.slope > 0.0 &&
         positions.slope >= 1.3;
}

}  // namespace detail

inline constexpr double kGrowthResidualTolerance = 0.02;
inline constexpr double kBoundedRatioTolerance = 0.05;

/// Classifies the growth of a positive sequence over its tail window (the
/// last half, at least 4 points):
///   - bounded when the window max/min ratio is within tolerance of 1;
///   - otherwise the semilog (log t vs r) and log-log (log t vs log r)
///     regressions are both fitted, a fit passing when its mean squared
///     residual is below the tolerance, and the better passing fit wins:
///     exponential with base exp(slope), or polynomial of degree slope;
///   - otherwise subexponential-nonpolynomial, provided the staircase
///     witness confirms it (geometric values at superlinear indices);
///     failing the witness, the less bad regression is reported.
inline GrowthReport classify(std::vector<double> const& seq) {
  if (seq.size() < 8)
    throw ValueError("classify: need at least 8 sequence entries");
  for (double t : seq)
    if (!(t > 0.0)) throw ValueError("classify: entries must be positive");

  GrowthReport report;
  report.horizon = seq.size();
  std::size_t window = std::max<std::size_t>(seq.size() / 2, 4);
  report.window_begin = seq.size() - window + 1;  // 1-based
  report.window_end = seq.size() + 1;

  std::vector<double> xs, log_xs, ys;
  double lo = seq[report.window_begin - 1], hi = lo;
  for (std::size_t i = report.window_begin; i <= seq.size(); ++i) {
    double t = seq[i - 1];
    xs.push_back(static_cast<double>(i));
    log_xs.push_back(std::log(static_cast<double>(i)));
    ys.push_back(std::log(t));
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  report.bounded_ratio = hi / lo;
  if (report.bounded_ratio <= 1.0 + kBoundedRatioTolerance) {
    report.growth_class = GrowthClass::bounded;
    report.parameter = 0.0;
    return report;
  }

  auto exp_fit = detail::affine_fit(xs, ys);
  auto poly_fit = detail::affine_fit(log_xs, ys);
  report.exp_residual = exp_fit.mse;
  report.poly_residual = poly_fit.mse;

  bool exp_ok = exp_fit.mse < kGrowthResidualTolerance &&
                std::exp(exp_fit.slope) > 1.001;
  bool poly_ok = poly_fit.mse < kGrowthResidualTolerance;

  if (exp_ok && (!poly_ok || exp_fit.mse <= poly_fit.mse)) {
    report.growth_class = GrowthClass::exponential;
    report.parameter = std::exp(exp_fit.slope);
    return report;
  }
  if (poly_ok) {
    report.growth_class = GrowthClass::polynomial;
    report.parameter = poly_fit.slope;
    return report;
  }

  report.witness_checked = true;
  report.witness_ok = detail::staircase_witness(seq);
  if (report.witness_ok) {
    report.growth_class = GrowthClass::subexponential_nonpolynomial;
    report.parameter = 0.0;
    return report;
  }
  // No regression passed and no witness: report the less bad regression.
  if (exp_fit.mse <= poly_fit.mse) {
    report.growth_class = GrowthClass::exponential;
    report.parameter = std::exp(exp_fit.slope);
  } else {
    report.growth_class = GrowthClass::polynomial;
    report.parameter = poly_fit.slope;
  }
  return report;
}

inline GrowthReport classify(std::vector<Count> const& seq) {
  std::vector<double> values(seq.begin(), seq.end());
  return classify(values);
}

// -------------------------------------------------------------------------
// Growth bounds
// -------------------------------------------------------------------------

struct BoundCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

struct GrowthBoundsReport {
  std::vector<BoundCheck> checks;
  bool all_pass = true;

  void add(std::string name, double lhs, double rhs, bool pass) {
    checks.push_back({std::move(name), lhs, rhs, pass});
    all_pass = all_pass && pass;
  }
};

/// Construction facts the sequences alone cannot supply.
struct GrowthBoundContext {
  bool connectivity_one = false;  // tree-of-lobes constructions
  std::optional<std::uint32_t> lobe_multiplicity;  // m, for the DT rate target
};

/// Checks the universal subdegree-growth bounds against exact sequences:
///   - M_r <= 2 M_1 (2 M_1 - 1)^(r-1) for every upper-sequence index;
///   - distance-transitive: the geometric rate of (m_r) equals
///     ((m-1)/m) m_1 within 5 percent;
///   - otherwise: the running minimum of m_r^(1/r) is at most
///     sqrt(2 m_1 - 1), and for connectivity-one constructions the
///     suborbit counts satisfy n_r >= f_r with running n_r^(1/r) below the
///     golden ratio.
inline GrowthBoundsReport verify_growth_bounds(
    SequenceView const& view, Count s1, bool is_dist_trans,
    GrowthBoundContext const& context = {}) {
  GrowthBoundsReport report;
  if (view.upper.empty() || view.lower.size() < 2)
    throw ValueError("verify_growth_bounds: empty sequences");

  Count m1_big = view.upper.front();
  double m1 = static_cast<double>(m1_big);

  {
    Count bound = 2 * m1_big;
    bool pass = true;
    double worst_lhs = 0, worst_rhs = 0;
    for (std::size_t r = 1; r <= view.upper.size(); ++r) {
      if (r > 1) bound = sat_mul(bound, 2 * m1_big - 1);
      if (static_cast<double>(view.upper[r - 1]) >
          static_cast<double>(bound)) {
        pass = false;
        worst_lhs = static_cast<double>(view.upper[r - 1]);
        worst_rhs = static_cast<double>(bound);
        break;
      }
      worst_lhs = static_cast<double>(view.upper[r - 1]);
      worst_rhs = static_cast<double>(bound);
    }
    report.add("upper_sequence_bound", worst_lhs, worst_rhs, pass);
  }

  if (is_dist_trans) {
    if (!context.lobe_multiplicity)
      throw ValueError(
          "verify_growth_bounds: distance-transitive targets need the lobe "
          "multiplicity m");
    // Distance-transitive: every suborbit is self-paired and the first
    // sphere is a single suborbit, so m_1 equals the valency.
    report.add("dt_first_subdegree", static_cast<double>(view.lower[1]),
               static_cast<double>(s1), view.lower[1] == s1);
    double m = static_cast<double>(*context.lobe_multiplicity);
    double target = (m - 1.0) / m * m1;
    // The geometric rate of an exact DT sequence: slope of log m_r over the
    // tail window.
    std::vector<double> xs, ys;
    std::size_t begin = std::max<std::size_t>(view.lower.size() / 2, 1);
    for (std::size_t r = begin; r < view.lower.size(); ++r) {
      xs.push_back(static_cast<double>(r));
      ys.push_back(std::log(static_cast<double>(view.lower[r])));
    }
    double rate = std::exp(detail::affine_fit(xs, ys).slope);
    report.add("dt_rate_equality", rate, target,
               std::abs(rate - target) <= 0.05 * target);
  } else {
    double bound = std::sqrt(2.0 * m1 - 1.0);
    double running_min = HUGE_VAL;
    for (std::size_t r = 1; r < view.lower.size(); ++r)
      running_min = std::min(
          running_min, std::pow(static_cast<double>(view.lower[r]),
                                1.0 / static_cast<double>(r)));
    report.add("sqrt_2m1_liminf", running_min, bound,
               running_min <= bound + 1e-9);

    if (context.connectivity_one) {
      // Fibonacci lower bound and golden-ratio consistency on n_r.
      double const phi = (1.0 + std::sqrt(5.0)) / 2.0;
      Count f_prev = 1, f_cur = 1;  // f_0 = f_1 = 1
      bool fib_pass = true;
      double worst_n = 0, worst_f = 0;
      for (std::size_t r = 1; r < view.n_r.size(); ++r) {
        if (r >= 2) {
          Count f_next = f_cur + f_prev;
          f_prev = f_cur;
          f_cur = f_next;
        }
        worst_n = static_cast<double>(view.n_r[r]);
        worst_f = static_cast<double>(f_cur);
        if (view.n_r[r] < f_cur) {
          fib_pass = false;
          break;
        }
      }
      report.add("fibonacci_lower_bound", worst_n, worst_f, fib_pass);

      std::size_t last = view.n_r.size() - 1;
      double root = std::pow(static_cast<double>(view.n_r[last]),
                             1.0 / static_cast<double>(last));
      report.add("golden_ratio_consistency", root, phi, root <= phi + 1e-9);
    }
  }
  return report;
}

// -------------------------------------------------------------------------
// Average subdegree sequence
// -------------------------------------------------------------------------

/// The sequence b_r / N_r with its growth estimators: the r-th roots and
/// the successive ratios of consecutive values.
struct AverageSubdegreeSeq {
  std::vector<double> values;
  std::vector<double> roots;   // values[r]^(1/r), r >= 1
  std::vector<double> ratios;  // values[r] / values[r-1], r >= 2
};

/// balls[i] and counts[i] are b_r and N_r for r = i + 1 (both positive).
inline AverageSubdegreeSeq average_subdegree(std::vector<Count> const& balls,
                                             std::vector<Count> const& counts) {
  if (balls.size() != counts.size())
    throw ValueError("average_subdegree: length mismatch");
  AverageSubdegreeSeq seq;
  for (std::size_t i = 0; i < balls.size(); ++i) {
    if (counts[i] == 0)
      throw ValueError("average_subdegree: N_r must be positive");
    double value =
        static_cast<double>(balls[i]) / static_cast<double>(counts[i]);
    seq.values.push_back(value);
    seq.roots.push_back(std::pow(value, 1.0 / static_cast<double>(i + 1)));
    if (i >= 1) seq.ratios.push_back(value / seq.values[i - 1]);
  }
  return seq;
}

}  // namespace orbgrowth

#endif  // ORBGROWTH_GROWTH_HPP_
