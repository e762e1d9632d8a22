#include "hiplab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

#include "hiplab/errors.hpp"
#include "hiplab/io.hpp"
#include "json.hpp"

namespace hiplab {

namespace {

void check_pair(std::span<const double> y, std::span<const double> y_hat, std::size_t min_n) {
  if (y.size() != y_hat.size())
    throw MetricError("length mismatch: " + std::to_string(y.size()) + " vs " + std::to_string(y_hat.size()));
  if (y.size() < min_n) throw MetricError("need at least " + std::to_string(min_n) + " values");
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!std::isfinite(y[i]) || !std::isfinite(y_hat[i])) throw MetricError("non-finite value");
}

void check_non_negative(std::span<const double> y, std::span<const double> y_hat) {
  for (std::size_t i = 0; i < y.size(); ++i)
    if (y[i] < 0.0 || y_hat[i] < 0.0) throw MetricError("negative value at index " + std::to_string(i));
}

std::int64_t tied_pairs(std::int64_t run) { return run * (run - 1) / 2; }

}  // namespace

KendallResult kendall_tau(std::span<const double> y, std::span<const double> y_hat) {
  check_pair(y, y_hat, 2);
  const std::size_t n = y.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return y[a] != y[b] ? y[a] < y[b] : y_hat[a] < y_hat[b];
  });

  std::int64_t ties_y = 0;
  std::int64_t ties_joint = 0;
  for (std::size_t i = 0, run_y = 1, run_joint = 1; i < n; ++i) {
    const bool last = i + 1 == n;
    const bool same_y = !last && y[order[i]] == y[order[i + 1]];
    const bool same_joint = same_y && y_hat[order[i]] == y_hat[order[i + 1]];
    if (same_joint) {
      ++run_joint;
    } else {
      ties_joint += tied_pairs(static_cast<std::int64_t>(run_joint));
      run_joint = 1;
    }
    if (same_y) {
      ++run_y;
    } else {
      ties_y += tied_pairs(static_cast<std::int64_t>(run_y));
      run_y = 1;
    }
  }

  // Merge sort by y_hat; each exchange is one strictly discordant pair.
  std::int64_t discordant = 0;
  std::vector<std::size_t> buffer(n);
  for (std::size_t width = 1; width < n; width *= 2) {
    for (std::size_t lo = 0; lo < n; lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, n);
      const std::size_t hi = std::min(lo + 2 * width, n);
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) {
        if (y_hat[order[j]] < y_hat[order[i]]) {
          discordant += static_cast<std::int64_t>(mid - i);
          buffer[k++] = order[j++];
        } else {
          buffer[k++] = order[i++];
        }
      }
      while (i < mid) buffer[k++] = order[i++];
      while (j < hi) buffer[k++] = order[j++];
    }
    order.swap(buffer);
  }

  std::int64_t ties_yhat = 0;
  for (std::size_t i = 0, run = 1; i < n; ++i) {
    if (i + 1 < n && y_hat[order[i]] == y_hat[order[i + 1]]) {
      ++run;
    } else {
      ties_yhat += tied_pairs(static_cast<std::int64_t>(run));
      run = 1;
    }
  }

  const std::int64_t pairs = tied_pairs(static_cast<std::int64_t>(n));
  if (ties_y == pairs || ties_yhat == pairs) return {std::numeric_limits<double>::quiet_NaN(), false};
  const std::int64_t numer = pairs - ties_y - ties_yhat + ties_joint - 2 * discordant;
  const double denom = std::sqrt(static_cast<double>(pairs - ties_y)) * std::sqrt(static_cast<double>(pairs - ties_yhat));
  return {static_cast<double>(numer) / denom, true};
}

OverlapDenominator parse_overlap_denominator(const std::string& name) {
  if (name == "k") return OverlapDenominator::kK;
  if (name == "n") return OverlapDenominator::kN;
  throw ConfigError("unknown overlap denominator '" + name + "' (expected k or n)");
}

std::string to_string(OverlapDenominator d) { return d == OverlapDenominator::kK ? "k" : "n"; }

std::vector<std::size_t> top_k(std::span<const double> scores, std::size_t k) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  k = std::min(k, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    [&](std::size_t a, std::size_t b) { return scores[a] != scores[b] ? scores[a] > scores[b] : a < b; });
  order.resize(k);
  return order;
}

double top_k_overlap(std::span<const double> y, std::span<const double> y_hat, double f, OverlapDenominator denom) {
  check_pair(y, y_hat, 1);
  if (!(f > 0.0 && f <= 1.0)) throw MetricError("overlap fraction must lie in (0, 1]");
  const std::size_t n = y.size();
  // Guard against f*n landing a hair above an integer in floating point.
  const auto k = static_cast<std::size_t>(std::ceil(f * static_cast<double>(n) - 1e-9));
  const std::size_t kk = std::clamp<std::size_t>(k, 1, n);
  auto truth = top_k(y, kk);
  auto pred = top_k(y_hat, kk);
  std::sort(truth.begin(), truth.end());
  std::sort(pred.begin(), pred.end());
  std::vector<std::size_t> common;
  std::set_intersection(truth.begin(), truth.end(), pred.begin(), pred.end(), std::back_inserter(common));
  const double divisor = denom == OverlapDenominator::kK ? static_cast<double>(kk) : static_cast<double>(n);
  return static_cast<double>(common.size()) / divisor;
}

std::vector<OverlapPoint> overlap_curve(std::span<const double> y, std::span<const double> y_hat,
                                        std::span<const double> f_grid, OverlapDenominator denom) {
  std::vector<OverlapPoint> curve;
  curve.reserve(f_grid.size());
  for (double f : f_grid) curve.push_back({f, top_k_overlap(y, y_hat, f, denom)});
  return curve;
}

double auoc(std::span<const OverlapPoint> curve) {
  if (curve.size() < 2) throw MetricError("AUOC needs at least two curve points");
  for (std::size_t i = 1; i < curve.size(); ++i)
    if (!(curve[i].f > curve[i - 1].f)) throw MetricError("AUOC curve must be strictly increasing in f");
  double area = 0.0;
  for (std::size_t i = 1; i < curve.size(); ++i)
    area += 0.5 * (curve[i].overlap + curve[i - 1].overlap) * (curve[i].f - curve[i - 1].f);
  return area / (curve.back().f - curve.front().f);
}

double log_r2(std::span<const double> y, std::span<const double> y_hat) {
  check_pair(y, y_hat, 2);
  check_non_negative(y, y_hat);
  double mean = 0.0;
  for (double v : y) mean += std::log1p(v);
  mean /= static_cast<double>(y.size());
  double sse = 0.0;
  double sst = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double ly = std::log1p(y[i]);
    const double r = ly - std::log1p(y_hat[i]);
    sse += r * r;
    sst += (ly - mean) * (ly - mean);
  }
  if (sst == 0.0) throw MetricError("log1p(y) has zero variance; Log-R2 undefined");
  return 1.0 - sse / sst;
}

double msle(std::span<const double> y, std::span<const double> y_hat) {
  check_pair(y, y_hat, 1);
  check_non_negative(y, y_hat);
  double acc = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double r = std::log1p(y_hat[i]) - std::log1p(y[i]);
    acc += r * r;
  }
  return acc / static_cast<double>(y.size());
}

MrleResult mrle(std::span<const double> y, std::span<const double> y_hat) {
  check_pair(y, y_hat, 1);
  check_non_negative(y, y_hat);
  MrleResult out;
  double acc = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] == 0.0) {
      ++out.excluded;
      continue;
    }
    const double ly = std::log1p(y[i]);
    acc += std::abs(std::log1p(y_hat[i]) - ly) / ly;
    ++used;
  }
  if (used == 0) throw MetricError("MRLE undefined: every y is 0");
  out.value = acc / static_cast<double>(used);
  return out;
}

RankingReport evaluate(std::span<const double> y, std::span<const double> y_hat, std::span<const double> f_grid,
                       OverlapDenominator denom) {
  RankingReport r;
  r.n = y.size();
  r.tau = kendall_tau(y, y_hat);
  r.overlap = overlap_curve(y, y_hat, f_grid, denom);
  r.overlap_denominator = denom;
  r.auoc = auoc(r.overlap);
  try {
    r.log_r2 = log_r2(y, y_hat);
  } catch (const MetricError&) {
    r.log_r2.reset();
  }
  r.msle = msle(y, y_hat);
  r.mrle = mrle(y, y_hat);
  return r;
}

std::string report_json(const RankingReport& report, const std::string& config_hash) {
  nlohmann::ordered_json doc;
  if (!config_hash.empty()) doc["config_hash"] = config_hash;
  doc["n"] = report.n;
  doc["tau"] = report.tau.defined ? nlohmann::ordered_json(report.tau.tau) : nlohmann::ordered_json(nullptr);
  doc["tau_defined"] = report.tau.defined;
  auto curve = nlohmann::ordered_json::array();
  for (const auto& p : report.overlap) curve.push_back({{"f", p.f}, {"O", p.overlap}});
  doc["overlap"] = curve;
  doc["overlap_denominator"] = to_string(report.overlap_denominator);
  doc["auoc"] = report.auoc;
  doc["log_r2"] = report.log_r2 ? nlohmann::ordered_json(*report.log_r2) : nlohmann::ordered_json(nullptr);
  doc["msle"] = report.msle;
  doc["mrle"] = report.mrle.value;
  doc["mrle_excluded_zero_truth"] = report.mrle.excluded;
  return doc.dump(2) + "\n";
}

std::string overlap_curve_csv(std::span<const OverlapPoint> curve) {
  std::string out = "f,O\n";
  for (const auto& p : curve) out += format_double(p.f) + "," + format_double(p.overlap) + "\n";
  return out;
}

}  // namespace hiplab
