#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "hiplab/diffusion.hpp"
#include "hiplab/errors.hpp"
#include "oracles.hpp"

using namespace hiplab;

namespace {

ICRPConfig make_cfg(double lambda, double p, std::size_t runs = 1000, std::uint64_t seed = 1) {
  ICRPConfig cfg;
  cfg.lambda = lambda;
  cfg.p = p;
  cfg.runs = runs;
  cfg.master_seed = seed;
  return cfg;
}

const Hypergraph kPath3(3, {{0, 1}, {1, 2}});
const Hypergraph kTriangleEdge(3, {{0, 1, 2}});

}  // namespace

TEST(IcrpRun, DeterministicFullSpreadOnPath) {
  Rng rng(1);
  const auto trace = icrp_run(kPath3, 0, make_cfg(0.0, 1.0), rng);
  EXPECT_EQ(trace.final_active_count, 3U);
  ASSERT_EQ(trace.newly_active.size(), 3U);
  EXPECT_EQ(trace.newly_active[0], std::vector<NodeId>{0});
  EXPECT_EQ(trace.newly_active[1], std::vector<NodeId>{1});
  EXPECT_EQ(trace.newly_active[2], std::vector<NodeId>{2});
  EXPECT_EQ(trace.steps_taken, 3U);  // two productive steps, then an empty one
}

TEST(IcrpRun, ThresholdBlocksSpread) {
  for (double p : {0.0, 0.4, 1.0}) {
    Rng rng(2);
    EXPECT_EQ(icrp_run(kTriangleEdge, 0, make_cfg(0.5, p), rng).final_active_count, 1U);
  }
}

TEST(IcrpRun, ZeroProbabilityNeverSpreads) {
  std::mt19937_64 gen(9);
  for (int trial = 0; trial < 10; ++trial) {
    const auto h = oracle::random_hypergraph(gen, 20, 15, 5);
    Rng rng(trial);
    EXPECT_EQ(icrp_run(h, 0, make_cfg(0.0, 0.0), rng).final_active_count, 1U);
  }
}

TEST(IcrpRun, RejectsBadInput) {
  Rng rng(0);
  EXPECT_THROW(icrp_run(kPath3, 3, make_cfg(0.0, 0.5), rng), IndexError);
  EXPECT_THROW(icrp_run(kPath3, 0, make_cfg(1.5, 0.5), rng), ConfigError);
  EXPECT_THROW(icrp_run(kPath3, 0, make_cfg(0.0, -0.1), rng), ConfigError);
  EXPECT_THROW(estimate_influence(kPath3, 0, make_cfg(0.0, 0.5, 0)), ConfigError);
}

TEST(IcrpRun, TraceInvariants) {
  std::mt19937_64 gen(21);
  for (int trial = 0; trial < 60; ++trial) {
    const auto h = oracle::random_hypergraph(gen, 25, 20, 6);
    const double lambda = trial % 2 == 0 ? 0.0 : 0.5;
    const auto cfg = make_cfg(lambda, 0.6);
    Rng rng(static_cast<std::uint64_t>(trial));
    const NodeId seed = static_cast<NodeId>(gen() % h.num_nodes());
    const auto trace = icrp_run(h, seed, cfg, rng);

    ASSERT_FALSE(trace.newly_active.empty());
    EXPECT_EQ(trace.newly_active[0], std::vector<NodeId>{seed});
    std::set<NodeId> active;
    std::size_t total = 0;
    for (std::size_t t = 0; t < trace.newly_active.size(); ++t) {
      const auto& step = trace.newly_active[t];
      EXPECT_FALSE(step.empty());
      if (t > 0) {
        // every newcomer has an activator in the previous step via a hyperedge
        // that was lambda-eligible against the active set at the step start
        for (NodeId u : step) {
          bool justified = false;
          for (NodeId v : trace.newly_active[t - 1])
            for (EdgeId e : h.memberships(v)) {
              const auto members = h.edge(e);
              if (std::find(members.begin(), members.end(), u) == members.end()) continue;
              std::size_t in = 0;
              for (NodeId w : members) in += active.count(w);
              if (static_cast<double>(in) / static_cast<double>(members.size()) >= lambda) justified = true;
            }
          EXPECT_TRUE(justified) << "node " << u << " at step " << t;
        }
      }
      for (NodeId u : step) EXPECT_TRUE(active.insert(u).second) << "node activated twice";
      total += step.size();
    }
    EXPECT_EQ(total, trace.final_active_count);
    EXPECT_LE(trace.final_active_count, h.num_nodes());
  }
}

TEST(IcrpRun, MaxStepsCapsTheCascade) {
  Hypergraph path(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  auto cfg = make_cfg(0.0, 1.0);
  cfg.max_steps = 2;
  Rng rng(0);
  EXPECT_EQ(icrp_run(path, 0, cfg, rng).final_active_count, 3U);
}

TEST(EstimateInfluence, SingleEdgeHalfProbability) {
  const Hypergraph pair(2, {{0, 1}});
  const auto est = estimate_influence(pair, 0, make_cfg(0.0, 0.5, 10000, 3));
  // E[I] = 1 + p; per-run stddev 0.5
  EXPECT_NEAR(est.mean, 1.5, 3.0 * 0.5 / std::sqrt(10000.0));
  EXPECT_NEAR(est.stddev, 0.5, 0.01);
}

TEST(EstimateInfluence, DeterministicFullSpread) {
  const auto est = estimate_influence(kTriangleEdge, 0, make_cfg(0.0, 1.0, 50));
  EXPECT_EQ(est.mean, 3.0);
  EXPECT_EQ(est.stddev, 0.0);
}

TEST(EstimateInfluence, PathHalfProbability) {
  const auto est = estimate_influence(kPath3, 0, make_cfg(0.0, 0.5, 10000, 5));
  // outcomes: 1 w.p. 1/2, 2 w.p. 1/4, 3 w.p. 1/4 -> mean 1.75, variance 0.6875
  EXPECT_NEAR(est.mean, 1.75, 4.0 * std::sqrt(0.6875 / 10000.0));
}

TEST(LabelAll, SmallCases) {
  for (const auto& [lambda, h] : {std::pair{0.0, kTriangleEdge}, std::pair{0.0, kPath3}, std::pair{0.5, kPath3}}) {
    const auto labels = label_all(h, make_cfg(lambda, 1.0, 10), 2);
    for (double m : labels.mean) EXPECT_EQ(m, 3.0);
    for (double s : labels.stddev) EXPECT_EQ(s, 0.0);
  }
}

TEST(LabelAll, IdenticalAcrossWorkerCounts) {
  std::mt19937_64 gen(4);
  const auto h = oracle::random_hypergraph(gen, 60, 50, 5);
  const auto cfg = make_cfg(0.0, 0.3, 200, 99);
  const auto a = label_all(h, cfg, 1);
  const auto b = label_all(h, cfg, 4);
  std::ostringstream sa, sb;
  write_labels_csv(sa, a);
  write_labels_csv(sb, b);
  EXPECT_EQ(sa.str(), sb.str());
  const auto c = label_all(h, make_cfg(0.0, 0.3, 200, 100), 1);
  EXPECT_NE(a.mean, c.mean);
}

TEST(LabelAll, UnitProbabilityEqualsComponentSize) {
  std::mt19937_64 gen(12);
  for (int trial = 0; trial < 10; ++trial) {
    const auto h = oracle::random_hypergraph(gen, 40, 12, 4);
    const auto sizes = oracle::component_sizes(h);
    const auto labels = label_all(h, make_cfg(0.0, 1.0, 2), 1);
    for (NodeId v = 0; v < h.num_nodes(); ++v) EXPECT_EQ(labels.mean[v], static_cast<double>(sizes[v]));
  }
}

TEST(LabelAll, ThresholdIsStatisticallyMonotone) {
  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 3; ++trial) {
    const auto h = oracle::random_hypergraph(gen, 30, 25, 5);
    const std::size_t runs = 2000;
    const auto loose = label_all(h, make_cfg(0.0, 0.4, runs, 1), 1);
    const auto strict = label_all(h, make_cfg(0.5, 0.4, runs, 2), 1);
    for (NodeId v = 0; v < h.num_nodes(); ++v) {
      const double se = std::sqrt((loose.stddev[v] * loose.stddev[v] + strict.stddev[v] * strict.stddev[v]) /
                                  static_cast<double>(runs));
      EXPECT_LE(strict.mean[v], loose.mean[v] + 3.0 * se) << "node " << v;
    }
  }
}

TEST(LabelsCsv, Schema) {
  const auto labels = label_all(kPath3, make_cfg(0.5, 1.0, 4, 17), 1);
  std::ostringstream out;
  write_labels_csv(out, labels);
  EXPECT_EQ(out.str(),
            "node_index,mean_influence,stddev,R,lambda,p,master_seed\n"
            "0,3,0,4,0.5,1,17\n1,3,0,4,0.5,1,17\n2,3,0,4,0.5,1,17\n");
}

TEST(ExactInfluence, HandEnumeratedValues) {
  EXPECT_DOUBLE_EQ(exact_influence(Hypergraph(2, {{0, 1}}), 0, 0.0, 0.5), 1.5);
  EXPECT_DOUBLE_EQ(exact_influence(kPath3, 0, 0.0, 0.5), 1.75);
  EXPECT_DOUBLE_EQ(exact_influence(kPath3, 1, 0.0, 0.0), 1.0);
  // two parallel hyperedges: two attempts per step vs one
  const Hypergraph doubled(2, {{0, 1}, {0, 1}});
  EXPECT_DOUBLE_EQ(exact_influence(doubled, 0, 0.0, 0.5, AttemptMode::kPerAttempt), 1.75);
  EXPECT_DOUBLE_EQ(exact_influence(doubled, 0, 0.0, 0.5, AttemptMode::kPerTarget), 1.5);
}

TEST(ExactInfluence, UnitProbabilityEqualsGatedReach) {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 40; ++trial) {
    const auto h = oracle::random_hypergraph(gen, 6, 4, 4);
    for (double lambda : {0.0, 0.5, 0.7})
      for (NodeId s = 0; s < h.num_nodes(); ++s) {
        double exact = 0.0;
        try {
          exact = exact_influence(h, s, lambda, 1.0, AttemptMode::kPerAttempt, 1000);
        } catch (const OracleLimit&) {
          continue;
        }
        EXPECT_EQ(exact, static_cast<double>(oracle::gated_reach(h, s, lambda)));
      }
  }
}

TEST(ExactInfluence, RefusesLargeInstances) {
  const Hypergraph big(10, {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}});
  EXPECT_THROW(exact_influence(big, 0, 0.0, 0.5), OracleLimit);
  EXPECT_THROW(exact_influence(kPath3, 7, 0.0, 0.5), IndexError);
}

TEST(ExactOracle, DistributionOnPath) {
  const auto pmf = exact_influence_distribution(kPath3, 0, 0.0, 0.5);
  ASSERT_EQ(pmf.size(), 4U);
  EXPECT_DOUBLE_EQ(pmf[0], 0.0);
  EXPECT_DOUBLE_EQ(pmf[1], 0.5);
  EXPECT_DOUBLE_EQ(pmf[2], 0.25);
  EXPECT_DOUBLE_EQ(pmf[3], 0.25);
}

TEST(ExactInfluence, MonteCarloAgreesInBothAttemptModes) {
  std::mt19937_64 gen(77);
  int checked = 0;
  while (checked < 6) {
    const auto h = oracle::random_hypergraph(gen, 5, 3, 3);
    for (auto mode : {AttemptMode::kPerAttempt, AttemptMode::kPerTarget}) {
      double exact = 0.0;
      try {
        exact = exact_influence(h, 0, 0.0, 0.6, mode);
      } catch (const OracleLimit&) {
        continue;
      }
      auto cfg = make_cfg(0.0, 0.6, 10000, static_cast<std::uint64_t>(checked));
      cfg.attempt_mode = mode;
      const auto est = estimate_influence(h, 0, cfg);
      EXPECT_LE(std::abs(est.mean - exact), 4.0 * est.stddev / 100.0 + 1e-12);
    }
    ++checked;
  }
}
