#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hiplab/baselines.hpp"
#include "hiplab/diffusion.hpp"
#include "hiplab/errors.hpp"
#include "hiplab/hypercl.hpp"
#include "hiplab/hypergraph.hpp"
#include "hiplab/metrics.hpp"
#include "json.hpp"

namespace hiplab {

/// Pipeline stages; the value is the process exit code used when the stage fails.
enum class Stage : int {
  kConfig = 3,
  kIngest = 10,
  kStats = 11,
  kSimulate = 12,
  kFeatures = 13,
  kBaselines = 14,
  kGenerate = 15,
  kSplit = 16,
  kEvaluate = 17,
  kCurves = 18,
};

std::string to_string(Stage stage);

class StageError : public Error {
 public:
  StageError(Stage stage, const std::string& what)
      : Error("[" + to_string(stage) + "] " + what), stage_(stage) {}
  Stage stage() const noexcept { return stage_; }
  int exit_code() const noexcept { return static_cast<int>(stage_); }

 private:
  Stage stage_;
};

struct SplitRatios {
  double train = 0.7;
  double val = 0.2;
  double test = 0.1;

  /// Throws ConfigError unless all are non-negative and sum to 1 within 1e-9.
  void validate() const;
};

struct NodeSplit {
  std::vector<NodeId> train;
  std::vector<NodeId> val;
  std::vector<NodeId> test;
};

/// Shuffled partition of [0, n): val and test get floor(r * n), train the rest.
/// Each part is returned in ascending order; deterministic per seed.
NodeSplit split_nodes(std::size_t n, const SplitRatios& ratios, std::uint64_t seed);

struct ExperimentConfig {
  std::optional<std::string> dataset;
  std::optional<HyperCLConfig> generator;
  ICRPConfig icrp;
  bool icrp_p_set = false;
  SplitRatios ratios;
  std::uint64_t split_seed = 0;
  std::vector<double> f_grid = default_f_grid();
  OverlapDenominator overlap_denominator = OverlapDenominator::kK;
  std::size_t hci_radius = 2;
  HciDegree hci_degree = HciDegree::kClique;
  bool standardize = false;
  std::string out_dir = ".";
  std::size_t workers = 0;  // 0: default_workers()

  static ExperimentConfig from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;
  void validate() const;
};

/// FNV-1a over the canonical config JSON (without paths) plus the dataset bytes, as 16 hex digits.
std::string config_hash(const ExperimentConfig& cfg);

/// Loads cfg.dataset, or generates from cfg.generator when no dataset is set.
Hypergraph acquire_hypergraph(const ExperimentConfig& cfg);

/// Node-indexed score column joined from a CSV with a node_index column. The
/// value column is `column` when given, else the second column.
std::vector<double> read_node_scores(const std::string& path, const std::optional<std::string>& column = {});

struct ArtifactBundle {
  std::vector<std::filesystem::path> files;
  std::optional<RankingReport> report;
};

// Individual stages. Each writes into cfg.out_dir and throws StageError on failure.
std::filesystem::path run_ingest(const ExperimentConfig& cfg);
std::filesystem::path run_stats(const ExperimentConfig& cfg);
std::filesystem::path run_simulate(const ExperimentConfig& cfg);
std::vector<std::filesystem::path> run_features(const ExperimentConfig& cfg);
std::vector<std::filesystem::path> run_baselines(const ExperimentConfig& cfg);
std::vector<std::filesystem::path> run_generate(const ExperimentConfig& cfg);
std::filesystem::path run_split(const ExperimentConfig& cfg, std::optional<std::size_t> num_nodes = {});

struct EvaluateRequest {
  std::string predictions;
  std::string truth;
  std::optional<std::string> baseline;  // second method for the AUOC margin
  std::optional<std::string> splits;    // splits.csv to restrict evaluation
  std::optional<std::string> subset;    // train / val / test
};

RankingReport run_evaluate(const ExperimentConfig& cfg, const EvaluateRequest& req);
std::filesystem::path run_curves(const ExperimentConfig& cfg, const EvaluateRequest& req);

/// Every stage in order; evaluation runs only when `predictions` is given.
ArtifactBundle run_pipeline(const ExperimentConfig& cfg, const std::optional<std::string>& predictions = {});

}  // namespace hiplab
