#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hiplab {

/// Kendall tau-b. `defined` is false (and tau NaN) when either input is constant.
struct KendallResult {
  double tau = 0.0;
  bool defined = true;
};

/// O(n log n) tau-b (tie-corrected; equals tau-a without ties). Throws MetricError for n < 2.
KendallResult kendall_tau(std::span<const double> y, std::span<const double> y_hat);

enum class OverlapDenominator { kK, kN };

OverlapDenominator parse_overlap_denominator(const std::string& name);
std::string to_string(OverlapDenominator d);

/// Top-K node indices by descending score; ties broken by ascending index.
std::vector<std::size_t> top_k(std::span<const double> scores, std::size_t k);

/// |S ∩ Ŝ| / K (or / n) for K = ceil(f n). Throws MetricError unless 0 < f <= 1.
double top_k_overlap(std::span<const double> y, std::span<const double> y_hat, double f,
                     OverlapDenominator denom = OverlapDenominator::kK);

struct OverlapPoint {
  double f;
  double overlap;
};

inline const std::vector<double>& default_f_grid() {
  static const std::vector<double> grid{0.05, 0.10, 0.15, 0.20, 0.25};
  return grid;
}

std::vector<OverlapPoint> overlap_curve(std::span<const double> y, std::span<const double> y_hat,
                                        std::span<const double> f_grid,
                                        OverlapDenominator denom = OverlapDenominator::kK);

/// Trapezoidal area under the curve divided by its f span. Needs >= 2 points sorted by f.
double auoc(std::span<const OverlapPoint> curve);
inline double auoc_delta(double auoc_method, double auoc_baseline) { return auoc_method - auoc_baseline; }

/// 1 - SSE/SST in log1p space. Throws MetricError when log1p(y) has zero variance.
double log_r2(std::span<const double> y, std::span<const double> y_hat);

/// Mean of (log1p(ŷ) - log1p(y))^2.
double msle(std::span<const double> y, std::span<const double> y_hat);

struct MrleResult {
  double value = 0.0;
  std::size_t excluded = 0;  // terms with y == 0
};

/// Mean of |log1p(ŷ) - log1p(y)| / log1p(y) over y > 0. Throws MetricError if every y is 0.
MrleResult mrle(std::span<const double> y, std::span<const double> y_hat);

struct RankingReport {
  std::size_t n = 0;
  KendallResult tau;
  std::vector<OverlapPoint> overlap;
  OverlapDenominator overlap_denominator = OverlapDenominator::kK;
  double auoc = 0.0;
  std::optional<double> log_r2;  // unset when log1p(y) is constant
  double msle = 0.0;
  MrleResult mrle;
};

RankingReport evaluate(std::span<const double> y, std::span<const double> y_hat,
                       std::span<const double> f_grid = default_f_grid(),
                       OverlapDenominator denom = OverlapDenominator::kK);

std::string report_json(const RankingReport& report, const std::string& config_hash = "");
std::string overlap_curve_csv(std::span<const OverlapPoint> curve);

}  // namespace hiplab
