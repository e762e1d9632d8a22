// hiplab: command-line front end for the hypergraph influence toolkit.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hiplab/experiment.hpp"
#include "hiplab/io.hpp"
#include "json.hpp"

namespace {

using hiplab::ExperimentConfig;

struct Overrides {
  std::optional<std::string> config_file;
  std::optional<std::string> dataset;
  std::optional<std::string> out;
  std::optional<double> lambda;
  std::optional<double> p;
  std::optional<std::size_t> runs;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_steps;
  std::optional<std::string> attempt_mode;
  std::optional<double> gamma;
  std::optional<std::size_t> n;
  std::optional<std::size_t> split_n;
  std::optional<std::size_t> m;
  std::optional<std::size_t> size_min;
  std::optional<std::size_t> size_max;
  std::optional<std::size_t> kmin;
  std::vector<double> ratios;
  std::vector<double> f_grid;
  std::optional<std::string> overlap_denominator;
  std::optional<std::size_t> hci_l;
  std::optional<std::string> hci_degree;
  bool standardize = false;
  hiplab::EvaluateRequest eval;
  std::optional<std::string> predictions;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_file, "JSON config file; flags override its fields");
  cmd->add_option("--out", o.out, "Output directory");
}

void add_dataset(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--dataset", o.dataset, "Hyperedge-list file");
}

void add_icrp(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--lambda", o.lambda, "ICRP threshold fraction in [0,1]");
  cmd->add_option("--p", o.p, "Activation probability in [0,1] (required)");
  cmd->add_option("--runs", o.runs, "Monte Carlo runs per node (default 1000)");
  cmd->add_option("--max-steps", o.max_steps, "Step cap per cascade (default N)");
  cmd->add_option("--attempt-mode", o.attempt_mode, "per-attempt | per-target");
}

void add_generator(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--gamma", o.gamma, "Power-law exponent of target hyperdegrees (> 1)");
  cmd->add_option("--n", o.n, "Number of nodes");
  cmd->add_option("--m", o.m, "Number of hyperedges");
  cmd->add_option("--size-min", o.size_min, "Smallest hyperedge size (default 2)");
  cmd->add_option("--size-max", o.size_max, "Largest hyperedge size (default 5)");
  cmd->add_option("--kmin", o.kmin, "Smallest target hyperdegree (default 1)");
}

void add_metrics(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--pred", o.eval.predictions, "Predictions CSV (node_index, score)")->required();
  cmd->add_option("--truth", o.eval.truth, "Ground-truth CSV, e.g. labels.csv")->required();
  cmd->add_option("--baseline", o.eval.baseline, "Second method's CSV; reports the AUOC margin");
  cmd->add_option("--splits", o.eval.splits, "splits.csv restricting the evaluated nodes");
  cmd->add_option("--subset", o.eval.subset, "train | val | test (with --splits)");
  cmd->add_option("--f-grid", o.f_grid, "Top-f fractions, comma separated")->delimiter(',');
  cmd->add_option("--overlap-denominator", o.overlap_denominator, "k | n");
}

ExperimentConfig resolve(const Overrides& o) {
  ExperimentConfig cfg;
  if (o.config_file) {
    std::ifstream in(*o.config_file);
    if (!in) throw hiplab::ConfigError("cannot open config '" + *o.config_file + "'");
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw hiplab::ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    cfg = ExperimentConfig::from_json(doc);
  }
  if (o.dataset) cfg.dataset = *o.dataset;
  if (o.out) cfg.out_dir = *o.out;
  if (o.lambda) cfg.icrp.lambda = *o.lambda;
  if (o.p) {
    cfg.icrp.p = *o.p;
    cfg.icrp_p_set = true;
  }
  if (o.runs) cfg.icrp.runs = *o.runs;
  if (o.max_steps) cfg.icrp.max_steps = *o.max_steps;
  if (o.attempt_mode) cfg.icrp.attempt_mode = hiplab::parse_attempt_mode(*o.attempt_mode);
  if (o.gamma || o.n || o.m || o.size_min || o.size_max || o.kmin) {
    auto gen = cfg.generator.value_or(hiplab::HyperCLConfig{});
    if (o.gamma) gen.gamma = *o.gamma;
    if (o.n) gen.num_nodes = *o.n;
    if (o.m) gen.num_edges = *o.m;
    if (o.size_min) gen.min_edge_size = *o.size_min;
    if (o.size_max) gen.max_edge_size = *o.size_max;
    if (o.kmin) gen.kmin = *o.kmin;
    cfg.generator = gen;
  }
  if (o.seed) {
    cfg.icrp.master_seed = *o.seed;
    cfg.split_seed = *o.seed;
    if (cfg.generator) cfg.generator->seed = *o.seed;
  }
  if (!o.ratios.empty()) {
    if (o.ratios.size() != 3) throw hiplab::ConfigError("--ratios takes three values: train,val,test");
    cfg.ratios = {o.ratios[0], o.ratios[1], o.ratios[2]};
  }
  if (!o.f_grid.empty()) cfg.f_grid = o.f_grid;
  if (o.overlap_denominator) cfg.overlap_denominator = hiplab::parse_overlap_denominator(*o.overlap_denominator);
  if (o.hci_l) cfg.hci_radius = *o.hci_l;
  if (o.hci_degree) cfg.hci_degree = hiplab::parse_hci_degree(*o.hci_degree);
  if (o.standardize) cfg.standardize = true;
  cfg.validate();
  return cfg;
}

void print_report(const hiplab::RankingReport& r) {
  std::cout << "n=" << r.n << " tau=" << (r.tau.defined ? hiplab::format_double(r.tau.tau) : "undefined")
            << " auoc=" << hiplab::format_double(r.auoc)
            << " log_r2=" << (r.log_r2 ? hiplab::format_double(*r.log_r2) : "undefined")
            << " msle=" << hiplab::format_double(r.msle) << " mrle=" << hiplab::format_double(r.mrle.value)
            << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hiplab: hypergraph influence simulation, features, baselines and metrics"};
  app.require_subcommand(1);
  Overrides o;

  auto* ingest = app.add_subcommand("ingest", "Parse a hyperedge list; write id_map.csv and a normalized copy");
  add_common(ingest, o);
  add_dataset(ingest, o);

  auto* stats = app.add_subcommand("stats", "Topology statistics (N, M, <k>, <kH>, <kE>, CV)");
  add_common(stats, o);
  add_dataset(stats, o);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo ICRP-lambda influence labels");
  add_common(simulate, o);
  add_dataset(simulate, o);
  add_icrp(simulate, o);
  simulate->add_option("--seed", o.seed, "Master seed");

  auto* features = app.add_subcommand("features", "Distance-centrality feature matrix (CSV + binary)");
  add_common(features, o);
  add_dataset(features, o);
  features->add_flag("--standardize", o.standardize, "Z-score every column");

  auto* baselines = app.add_subcommand("baselines", "HCI and H-index heuristic scores");
  add_common(baselines, o);
  add_dataset(baselines, o);
  baselines->add_option("--hci-l", o.hci_l, "HCI ball radius (default 2)");
  baselines->add_option("--hci-degree", o.hci_degree, "clique | hyper");

  auto* generate = app.add_subcommand("generate", "HyperCL synthetic hypergraph");
  add_common(generate, o);
  add_generator(generate, o);
  generate->add_option("--seed", o.seed, "Generator seed");

  auto* split = app.add_subcommand("split", "Random train/val/test node partition");
  add_common(split, o);
  add_dataset(split, o);
  split->add_option("--n", o.split_n, "Node count, instead of --dataset");
  split->add_option("--seed", o.seed, "Split seed");
  split->add_option("--ratios", o.ratios, "train,val,test (default 0.7,0.2,0.1)")->delimiter(',');

  auto* evaluate = app.add_subcommand("evaluate", "Ranking report for a predictions CSV");
  add_common(evaluate, o);
  add_metrics(evaluate, o);

  auto* curves = app.add_subcommand("curves", "Top-f overlap curve CSV");
  add_common(curves, o);
  add_metrics(curves, o);

  auto* run = app.add_subcommand("run", "Full pipeline: (generate,) ingest, stats, simulate, features, baselines, split");
  add_common(run, o);
  add_dataset(run, o);
  add_icrp(run, o);
  add_generator(run, o);
  run->add_option("--seed", o.seed, "Seed for simulation, generation and split");
  run->add_option("--hci-l", o.hci_l, "HCI ball radius (default 2)");
  run->add_option("--hci-degree", o.hci_degree, "clique | hyper");
  run->add_option("--ratios", o.ratios, "train,val,test")->delimiter(',');
  run->add_option("--f-grid", o.f_grid, "Top-f fractions")->delimiter(',');
  run->add_option("--overlap-denominator", o.overlap_denominator, "k | n");
  run->add_option("--pred", o.predictions, "Predictions CSV to evaluate against the labels");
  run->add_flag("--standardize", o.standardize, "Z-score feature columns");

  CLI11_PARSE(app, argc, argv);

  ExperimentConfig cfg;
  try {
    cfg = resolve(o);
  } catch (const std::exception& e) {
    std::cerr << "[config] " << e.what() << '\n';
    return static_cast<int>(hiplab::Stage::kConfig);
  }

  try {
    if (ingest->parsed()) {
      std::cout << hiplab::run_ingest(cfg).string() << '\n';
    } else if (stats->parsed()) {
      const auto path = hiplab::run_stats(cfg);
      std::ifstream in(path);
      std::cout << in.rdbuf();
    } else if (simulate->parsed()) {
      std::cout << hiplab::run_simulate(cfg).string() << '\n';
    } else if (features->parsed()) {
      for (const auto& p : hiplab::run_features(cfg)) std::cout << p.string() << '\n';
    } else if (baselines->parsed()) {
      for (const auto& p : hiplab::run_baselines(cfg)) std::cout << p.string() << '\n';
    } else if (generate->parsed()) {
      if (!cfg.generator) {
        cfg.generator = hiplab::HyperCLConfig{};
        if (o.seed) cfg.generator->seed = *o.seed;
      }
      for (const auto& p : hiplab::run_generate(cfg)) std::cout << p.string() << '\n';
    } else if (split->parsed()) {
      const auto n = cfg.dataset ? std::optional<std::size_t>{} : o.split_n;
      if (!cfg.dataset && !n) throw hiplab::StageError(hiplab::Stage::kSplit, "split needs --dataset or --n");
      std::cout << hiplab::run_split(cfg, n).string() << '\n';
    } else if (evaluate->parsed()) {
      print_report(hiplab::run_evaluate(cfg, o.eval));
    } else if (curves->parsed()) {
      std::cout << hiplab::run_curves(cfg, o.eval).string() << '\n';
    } else if (run->parsed()) {
      const auto bundle = hiplab::run_pipeline(cfg, o.predictions);
      for (const auto& p : bundle.files) std::cout << p.string() << '\n';
      if (bundle.report) print_report(*bundle.report);
    }
  } catch (const hiplab::StageError& e) {
    std::cerr << e.what() << '\n';
    return e.exit_code();
  }
  return EXIT_SUCCESS;
}
