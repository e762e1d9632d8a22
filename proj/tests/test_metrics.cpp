#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "hiplab/errors.hpp"
#include "hiplab/metrics.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace hiplab;

TEST(Kendall, MatchesQuadraticOracle) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + gen() % 199;
    // Small value alphabets force plenty of ties on both sides.
    const int alphabet = trial % 3 == 0 ? 4 : 1000;
    std::vector<double> y(n), yh(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = static_cast<double>(gen() % alphabet);
      yh[i] = static_cast<double>(gen() % alphabet);
    }
    const auto r = kendall_tau(y, yh);
    const double expect = oracle::kendall_tau_b(y, yh);
    if (std::isnan(expect)) {
      EXPECT_FALSE(r.defined);
      continue;
    }
    ASSERT_TRUE(r.defined);
    EXPECT_NEAR(r.tau, expect, 1e-12) << "n=" << n;
  }
}

TEST(Kendall, HandCases) {
  const std::vector<double> y{1, 2, 3, 4};
  EXPECT_NEAR(kendall_tau(y, std::vector<double>{1, 3, 2, 4}).tau, 2.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(kendall_tau(y, y).tau, 1.0);
  EXPECT_DOUBLE_EQ(kendall_tau(y, std::vector<double>{4, 3, 2, 1}).tau, -1.0);
}

TEST(Kendall, InvariantUnderMonotoneTransform) {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::vector<double> y(100), yh(100), yh_t(100);
  for (std::size_t i = 0; i < 100; ++i) {
    y[i] = u(gen);
    yh[i] = u(gen);
    yh_t[i] = std::exp(yh[i]) * 3.0 + 1.0;
  }
  EXPECT_DOUBLE_EQ(kendall_tau(y, yh).tau, kendall_tau(y, yh_t).tau);
}

TEST(Kendall, ConstantInputUndefined) {
  const auto r = kendall_tau(std::vector<double>{2, 2, 2}, std::vector<double>{1, 2, 3});
  EXPECT_FALSE(r.defined);
  EXPECT_TRUE(std::isnan(r.tau));
  EXPECT_THROW(kendall_tau(std::vector<double>{1}, std::vector<double>{1}), MetricError);
  EXPECT_THROW(kendall_tau(std::vector<double>{1, 2}, std::vector<double>{1}), MetricError);
}

TEST(Overlap, HandCases) {
  const std::vector<double> y{10, 9, 8, 7, 6, 5, 4, 3, 2, 1};
  const std::vector<double> yh{10, 9, 1, 7, 6, 5, 4, 3, 2, 8};
  // K = 3: true {0,1,2}, predicted {0,1,9}.
  EXPECT_NEAR(top_k_overlap(y, yh, 0.3), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(top_k_overlap(y, yh, 0.3, OverlapDenominator::kN), 0.2, 1e-15);
  EXPECT_DOUBLE_EQ(top_k_overlap(y, y, 0.25), 1.0);
  std::vector<double> rev(y.rbegin(), y.rend());
  EXPECT_DOUBLE_EQ(top_k_overlap(y, rev, 0.2), 0.0);
  EXPECT_DOUBLE_EQ(top_k_overlap(y, rev, 1.0), 1.0);
}

TEST(Overlap, KRoundsUpAndTiesByIndex) {
  EXPECT_EQ(top_k(std::vector<double>{1, 5, 5, 2}, 2), (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(top_k(std::vector<double>{3, 3, 3, 3}, 3), (std::vector<std::size_t>{0, 1, 2}));
  // f n = 0.5 rounds up to one node; 0.1 * 10 stays exactly one.
  const std::vector<double> y{1, 2, 3, 4, 5};
  EXPECT_DOUBLE_EQ(top_k_overlap(y, y, 0.1), 1.0);
  const std::vector<double> y10{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  const std::vector<double> y10b{1, 2, 3, 4, 5, 6, 7, 8, 10, 9};
  EXPECT_DOUBLE_EQ(top_k_overlap(y10, y10b, 0.1), 0.0);
}

TEST(Overlap, RejectsBadFraction) {
  const std::vector<double> y{1, 2};
  EXPECT_THROW(top_k_overlap(y, y, 0.0), MetricError);
  EXPECT_THROW(top_k_overlap(y, y, 1.5), MetricError);
  EXPECT_THROW(parse_overlap_denominator("x"), ConfigError);
}

TEST(Auoc, TrapezoidNormalizedBySpan) {
  const std::vector<OverlapPoint> line{{0.1, 0.4}, {0.2, 0.6}, {0.3, 0.8}};
  EXPECT_NEAR(auoc(line), 0.6, 1e-15);
  const std::vector<OverlapPoint> flat{{0.05, 0.3}, {0.15, 0.3}, {0.25, 0.3}};
  EXPECT_NEAR(auoc(flat), 0.3, 1e-15);
  std::vector<OverlapPoint> grid;
  for (std::size_t i = 0; i < 5; ++i) grid.push_back({default_f_grid()[i], 0.2 * static_cast<double>(i + 1)});
  EXPECT_NEAR(auoc(grid), 0.6, 1e-12);
  const std::vector<OverlapPoint> one{{0.1, 0.4}};
  EXPECT_THROW(auoc(one), MetricError);
  const std::vector<OverlapPoint> unsorted{{0.2, 0.4}, {0.1, 0.5}};
  EXPECT_THROW(auoc(unsorted), MetricError);
  EXPECT_DOUBLE_EQ(auoc_delta(0.7, 0.5), 0.7 - 0.5);
}

TEST(Regression, LogR2) {
  const double em1 = std::exp(1.0) - 1.0;
  EXPECT_NEAR(log_r2(std::vector<double>{0, em1}, std::vector<double>{em1, 0}), -3.0, 1e-12);
  const std::vector<double> y{0, 1, 5, 20};
  EXPECT_DOUBLE_EQ(log_r2(y, y), 1.0);
  // Predicting the log-space mean everywhere scores zero.
  double mean = 0.0;
  for (double v : y) mean += std::log1p(v);
  mean /= 4.0;
  const std::vector<double> at_mean(4, std::expm1(mean));
  EXPECT_NEAR(log_r2(y, at_mean), 0.0, 1e-12);
  EXPECT_THROW(log_r2(std::vector<double>{3, 3}, std::vector<double>{1, 2}), MetricError);
}

TEST(Regression, Msle) {
  EXPECT_NEAR(msle(std::vector<double>{0}, std::vector<double>{1}), std::log(2.0) * std::log(2.0), 1e-15);
  EXPECT_NEAR(msle(std::vector<double>{0}, std::vector<double>{std::exp(1.0) - 1.0}), 1.0, 1e-15);
  EXPECT_NEAR(msle(std::vector<double>{1, 3}, std::vector<double>{3, 1}), std::log(2.0) * std::log(2.0), 1e-15);
  const std::vector<double> a{1, 4, 9}, b{2, 2, 30};
  EXPECT_DOUBLE_EQ(msle(a, b), msle(b, a));
  EXPECT_DOUBLE_EQ(msle(a, a), 0.0);
}

TEST(Regression, Mrle) {
  const double em1 = std::exp(1.0) - 1.0;
  auto r = mrle(std::vector<double>{em1}, std::vector<double>{0});
  EXPECT_NEAR(r.value, 1.0, 1e-15);
  EXPECT_EQ(r.excluded, 0U);
  const double e2m1 = std::exp(2.0) - 1.0;
  r = mrle(std::vector<double>{0, e2m1}, std::vector<double>{5, em1});
  EXPECT_NEAR(r.value, 0.5, 1e-15);
  EXPECT_EQ(r.excluded, 1U);
  r = mrle(std::vector<double>{em1, em1}, std::vector<double>{e2m1, em1});
  EXPECT_NEAR(r.value, 0.5, 1e-15);
  EXPECT_DOUBLE_EQ(mrle(std::vector<double>{3, 4}, std::vector<double>{3, 4}).value, 0.0);
  EXPECT_THROW(mrle(std::vector<double>{0, 0}, std::vector<double>{1, 1}), MetricError);
}

TEST(Regression, RejectsInvalidInput) {
  EXPECT_THROW(msle(std::vector<double>{-1}, std::vector<double>{1}), MetricError);
  EXPECT_THROW(msle(std::vector<double>{1}, std::vector<double>{std::numeric_limits<double>::quiet_NaN()}),
               MetricError);
  EXPECT_THROW(mrle(std::vector<double>{1, 2}, std::vector<double>{1}), MetricError);
  EXPECT_THROW(log_r2(std::vector<double>{1, 2}, std::vector<double>{-2, 1}), MetricError);
}

TEST(Report, JsonShape) {
  const std::vector<double> y{5, 4, 3, 2, 1, 0, 0, 7, 8, 9};
  const auto rep = evaluate(y, y);
  EXPECT_EQ(rep.n, 10U);
  EXPECT_DOUBLE_EQ(rep.tau.tau, 1.0);
  EXPECT_DOUBLE_EQ(rep.auoc, 1.0);
  EXPECT_DOUBLE_EQ(rep.msle, 0.0);
  EXPECT_EQ(rep.mrle.excluded, 2U);
  const auto doc = nlohmann::json::parse(report_json(rep, "abc"));
  EXPECT_EQ(doc["overlap"].size(), 5U);
  EXPECT_EQ(doc["overlap_denominator"], "k");
  EXPECT_EQ(doc["mrle_excluded_zero_truth"], 2);
  EXPECT_TRUE(doc["tau_defined"].get<bool>());

  const auto flat = evaluate(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3});
  EXPECT_FALSE(flat.log_r2.has_value());
  const auto flat_doc = nlohmann::json::parse(report_json(flat));
  EXPECT_TRUE(flat_doc["tau"].is_null());
  EXPECT_TRUE(flat_doc["log_r2"].is_null());
}

TEST(Report, CurveCsv) {
  const std::vector<OverlapPoint> c{{0.05, 1.0}, {0.1, 0.5}};
  EXPECT_EQ(overlap_curve_csv(c), "f,O\n0.05,1\n0.1,0.5\n");
}
