#include "hiplab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "hiplab/features.hpp"
#include "hiplab/io.hpp"
#include "hiplab/parallel.hpp"
#include "hiplab/rng.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace hiplab {

std::string to_string(Stage stage) {
  switch (stage) {
    case Stage::kConfig: return "config";
    case Stage::kIngest: return "ingest";
    case Stage::kStats: return "stats";
    case Stage::kSimulate: return "simulate";
    case Stage::kFeatures: return "features";
    case Stage::kBaselines: return "baselines";
    case Stage::kGenerate: return "generate";
    case Stage::kSplit: return "split";
    case Stage::kEvaluate: return "evaluate";
    case Stage::kCurves: return "curves";
  }
  return "unknown";
}

void SplitRatios::validate() const {
  if (train < 0.0 || val < 0.0 || test < 0.0) throw ConfigError("split ratios must be non-negative");
  if (std::abs(train + val + test - 1.0) > 1e-9) throw ConfigError("split ratios must sum to 1");
}

NodeSplit split_nodes(std::size_t n, const SplitRatios& ratios, std::uint64_t seed) {
  ratios.validate();
  std::vector<NodeId> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<NodeId>(i);
  Rng rng(derive_seed({seed, 0x73706c6974ULL}));
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);

  const auto part = [n](double r) {
    return static_cast<std::size_t>(std::floor(r * static_cast<double>(n) + 1e-9));
  };
  const std::size_t n_val = part(ratios.val);
  const std::size_t n_test = part(ratios.test);
  NodeSplit split;
  split.val.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_val));
  split.test.assign(order.begin() + static_cast<std::ptrdiff_t>(n_val),
                    order.begin() + static_cast<std::ptrdiff_t>(n_val + n_test));
  split.train.assign(order.begin() + static_cast<std::ptrdiff_t>(n_val + n_test), order.end());
  for (auto* part_nodes : {&split.train, &split.val, &split.test}) std::sort(part_nodes->begin(), part_nodes->end());
  return split;
}

ExperimentConfig ExperimentConfig::from_json(const json& doc) {
  ExperimentConfig cfg;
  static const std::set<std::string> known{"dataset", "generator", "icrp", "split", "f_grid",
                                           "overlap_denominator", "hci", "standardize", "out"};
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : doc.items())
    if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");
  try {
    if (doc.contains("dataset") && !doc["dataset"].is_null()) cfg.dataset = doc["dataset"].get<std::string>();
    if (doc.contains("generator") && !doc["generator"].is_null()) {
      const auto& g = doc["generator"];
      HyperCLConfig gen;
      gen.num_nodes = g.value("n", gen.num_nodes);
      gen.num_edges = g.value("m", gen.num_edges);
      gen.gamma = g.value("gamma", gen.gamma);
      if (g.contains("size_range")) {
        gen.min_edge_size = g["size_range"].at(0).get<std::size_t>();
        gen.max_edge_size = g["size_range"].at(1).get<std::size_t>();
      }
      gen.kmin = g.value("kmin", gen.kmin);
      gen.seed = g.value("seed", gen.seed);
      cfg.generator = gen;
    }
    if (doc.contains("icrp")) {
      const auto& c = doc["icrp"];
      cfg.icrp.lambda = c.value("lambda", cfg.icrp.lambda);
      if (c.contains("p") && !c["p"].is_null()) {
        cfg.icrp.p = c["p"].get<double>();
        cfg.icrp_p_set = true;
      }
      cfg.icrp.runs = c.value("runs", cfg.icrp.runs);
      cfg.icrp.master_seed = c.value("seed", cfg.icrp.master_seed);
      if (c.contains("max_steps") && !c["max_steps"].is_null()) cfg.icrp.max_steps = c["max_steps"].get<std::size_t>();
      if (c.contains("attempt_mode")) cfg.icrp.attempt_mode = parse_attempt_mode(c["attempt_mode"].get<std::string>());
    }
    if (doc.contains("split")) {
      const auto& s = doc["split"];
      if (s.contains("ratios")) {
        cfg.ratios = {s["ratios"].at(0).get<double>(), s["ratios"].at(1).get<double>(), s["ratios"].at(2).get<double>()};
      }
      cfg.split_seed = s.value("seed", cfg.split_seed);
    }
    if (doc.contains("f_grid")) cfg.f_grid = doc["f_grid"].get<std::vector<double>>();
    if (doc.contains("overlap_denominator"))
      cfg.overlap_denominator = parse_overlap_denominator(doc["overlap_denominator"].get<std::string>());
    if (doc.contains("hci")) {
      cfg.hci_radius = doc["hci"].value("l", cfg.hci_radius);
      if (doc["hci"].contains("degree")) cfg.hci_degree = parse_hci_degree(doc["hci"]["degree"].get<std::string>());
    }
    cfg.standardize = doc.value("standardize", cfg.standardize);
    cfg.out_dir = doc.value("out", cfg.out_dir);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

json ExperimentConfig::to_json() const {
  json doc;
  doc["dataset"] = dataset ? json(*dataset) : json(nullptr);
  if (generator) {
    doc["generator"] = {{"n", generator->num_nodes},
                        {"m", generator->num_edges},
                        {"gamma", generator->gamma},
                        {"size_range", {generator->min_edge_size, generator->max_edge_size}},
                        {"kmin", generator->kmin},
                        {"seed", generator->seed}};
  } else {
    doc["generator"] = nullptr;
  }
  doc["icrp"] = {{"lambda", icrp.lambda},
                 {"p", icrp_p_set ? json(icrp.p) : json(nullptr)},
                 {"runs", icrp.runs},
                 {"seed", icrp.master_seed},
                 {"max_steps", icrp.max_steps ? json(*icrp.max_steps) : json(nullptr)},
                 {"attempt_mode", to_string(icrp.attempt_mode)}};
  doc["split"] = {{"ratios", {ratios.train, ratios.val, ratios.test}}, {"seed", split_seed}};
  doc["f_grid"] = f_grid;
  doc["overlap_denominator"] = to_string(overlap_denominator);
  doc["hci"] = {{"l", hci_radius}, {"degree", to_string(hci_degree)}};
  doc["standardize"] = standardize;
  doc["out"] = out_dir;
  return doc;
}

void ExperimentConfig::validate() const {
  ratios.validate();
  icrp.validate();
  if (generator) generator->validate();
  if (hci_radius < 1) throw ConfigError("hci ball radius must be >= 1");
  for (double f : f_grid)
    if (!(f > 0.0 && f <= 1.0)) throw ConfigError("f grid values must lie in (0, 1]");
}

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path prepare_out(const ExperimentConfig& cfg, const std::string& name) {
  const fs::path dir(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + cfg.out_dir + "': " + ec.message());
  return dir / name;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

std::string hash_line(const std::string& hash) { return "# config_hash=" + hash + "\n"; }

template <typename Fn>
auto stage_guard(Stage stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

json hash_doc(const ExperimentConfig& cfg) {
  // Locations are not part of the identity; dataset bytes are hashed separately.
  auto doc = cfg.to_json();
  doc.erase("out");
  doc.erase("dataset");
  return doc;
}

}  // namespace

std::string config_hash(const ExperimentConfig& cfg) {
  std::uint64_t h = fnv1a64(hash_doc(cfg).dump());
  if (cfg.dataset) h = fnv1a64(slurp(*cfg.dataset), h);
  return hex64(h);
}

Hypergraph acquire_hypergraph(const ExperimentConfig& cfg) {
  if (cfg.dataset) return load_hypergraph_file(*cfg.dataset);
  if (cfg.generator) return hypercl(*cfg.generator).hypergraph;
  throw ConfigError("no --dataset given and no generator configured");
}

std::vector<double> read_node_scores(const std::string& path, const std::optional<std::string>& column) {
  const auto table = read_csv_file(path);
  const std::size_t idx_col = table.column("node_index");
  std::size_t value_col = 1;
  if (column) {
    value_col = table.column(*column);
  } else if (table.header.size() < 2) {
    throw DataError("'" + path + "' has no score column");
  }
  std::map<std::uint64_t, double> by_node;
  for (const auto& row : table.rows) {
    const auto node = parse_uint(row[idx_col]);
    if (!by_node.emplace(node, parse_double(row[value_col])).second)
      throw DataError("'" + path + "' repeats node_index " + row[idx_col]);
  }
  std::vector<double> scores;
  scores.reserve(by_node.size());
  std::uint64_t expected = 0;
  for (const auto& [node, value] : by_node) {
    if (node != expected++) throw DataError("'" + path + "' does not cover node indices 0..n-1 contiguously");
    scores.push_back(value);
  }
  return scores;
}

fs::path run_ingest(const ExperimentConfig& cfg) {
  return stage_guard(Stage::kIngest, [&] {
    const auto h = acquire_hypergraph(cfg);
    const auto hash = config_hash(cfg);
    std::ostringstream ids;
    ids << hash_line(hash);
    write_id_map(ids, h);
    const auto ids_path = prepare_out(cfg, "id_map.csv");
    write_file(ids_path, ids.str());
    std::ostringstream edges;
    write_hypergraph(edges, h);
    write_file(prepare_out(cfg, "hypergraph.txt"), edges.str());
    return ids_path;
  });
}

fs::path run_stats(const ExperimentConfig& cfg) {
  return stage_guard(Stage::kStats, [&] {
    const auto h = acquire_hypergraph(cfg);
    const auto s = stats(h);
    nlohmann::ordered_json doc;
    doc["config_hash"] = config_hash(cfg);
    doc["N"] = s.num_nodes;
    doc["M"] = s.num_edges;
    doc["avg_degree"] = s.avg_degree;
    doc["avg_hyperdegree"] = s.avg_hyperdegree;
    doc["avg_edge_size"] = s.avg_edge_size;
    doc["cv_degree"] = s.cv_degree;
    doc["duplicate_warnings"] = h.duplicate_warnings();
    const auto path = prepare_out(cfg, "stats.json");
    write_file(path, doc.dump(2) + "\n");
    return path;
  });
}

fs::path run_simulate(const ExperimentConfig& cfg) {
  return stage_guard(Stage::kSimulate, [&] {
    if (!cfg.icrp_p_set) throw ConfigError("activation probability --p is required");
    const auto h = acquire_hypergraph(cfg);
    const auto labels = label_all(h, cfg.icrp, cfg.workers == 0 ? default_workers() : cfg.workers);
    std::ostringstream out;
    out << hash_line(config_hash(cfg));
    write_labels_csv(out, labels);
    const auto path = prepare_out(cfg, "labels.csv");
    write_file(path, out.str());
    return path;
  });
}

std::vector<fs::path> run_features(const ExperimentConfig& cfg) {
  return stage_guard(Stage::kFeatures, [&] {
    const auto h = acquire_hypergraph(cfg);
    FeatureOptions opts;
    opts.standardize = cfg.standardize;
    opts.workers = cfg.workers;
    const auto x = build_features(h, opts);
    std::ostringstream csv;
    csv << hash_line(config_hash(cfg));
    write_features_csv(csv, x);
    const auto csv_path = prepare_out(cfg, "features.csv");
    write_file(csv_path, csv.str());
    std::ostringstream bin;
    write_features_binary(bin, x);
    const auto bin_path = prepare_out(cfg, "features.bin");
    write_file(bin_path, bin.str());
    return std::vector<fs::path>{csv_path, bin_path};
  });
}

std::vector<fs::path> run_baselines(const ExperimentConfig& cfg) {
  return stage_guard(Stage::kBaselines, [&] {
    const auto h = acquire_hypergraph(cfg);
    const auto hash = config_hash(cfg);
    std::ostringstream hci_out;
    hci_out << hash_line(hash);
    write_scores_csv(hci_out, hci(h, cfg.hci_radius, cfg.hci_degree).score);
    const auto hci_path = prepare_out(cfg, "hci.csv");
    write_file(hci_path, hci_out.str());
    std::ostringstream hidx_out;
    hidx_out << hash_line(hash);
    write_scores_csv(hidx_out, h_index(h).score);
    const auto hidx_path = prepare_out(cfg, "hindex.csv");
    write_file(hidx_path, hidx_out.str());
    return std::vector<fs::path>{hci_path, hidx_path};
  });
}

std::vector<fs::path> run_generate(const ExperimentConfig& cfg) {
  return stage_guard(Stage::kGenerate, [&] {
    if (!cfg.generator) throw ConfigError("generate needs a generator configuration");
    const auto result = hypercl(*cfg.generator);
    std::ostringstream edges;
    edges << hash_line(config_hash(cfg));
    write_hypergraph(edges, result.hypergraph);
    const auto edges_path = prepare_out(cfg, "hypergraph.txt");
    write_file(edges_path, edges.str());
    const auto json_path = prepare_out(cfg, "hypergraph.json");
    write_file(json_path, hypercl_sidecar_json(*cfg.generator, result));
    return std::vector<fs::path>{edges_path, json_path};
  });
}

fs::path run_split(const ExperimentConfig& cfg, std::optional<std::size_t> num_nodes) {
  return stage_guard(Stage::kSplit, [&] {
    const std::size_t n = num_nodes ? *num_nodes : acquire_hypergraph(cfg).num_nodes();
    const auto split = split_nodes(n, cfg.ratios, cfg.split_seed);
    std::vector<const char*> tag(n, "train");
    for (NodeId v : split.val) tag[v] = "val";
    for (NodeId v : split.test) tag[v] = "test";
    std::ostringstream out;
    out << hash_line(config_hash(cfg)) << "node_index,split\n";
    for (std::size_t i = 0; i < n; ++i) out << i << ',' << tag[i] << '\n';
    const auto path = prepare_out(cfg, "splits.csv");
    write_file(path, out.str());
    return path;
  });
}

namespace {

struct Aligned {
  std::vector<double> truth, pred, baseline;
};

Aligned align(const EvaluateRequest& req) {
  Aligned a;
  a.truth = read_node_scores(req.truth);
  a.pred = read_node_scores(req.predictions);
  if (a.truth.size() != a.pred.size())
    throw DataError("prediction and truth cover different node counts (" + std::to_string(a.pred.size()) + " vs " +
                    std::to_string(a.truth.size()) + ")");
  if (req.baseline) {
    a.baseline = read_node_scores(*req.baseline);
    if (a.baseline.size() != a.truth.size()) throw DataError("baseline and truth cover different node counts");
  }
  if (req.splits || req.subset) {
    if (!req.splits || !req.subset) throw ConfigError("--splits and --subset must be given together");
    const auto table = read_csv_file(*req.splits);
    const auto idx = table.column("node_index");
    const auto part = table.column("split");
    std::vector<std::size_t> keep;
    for (const auto& row : table.rows)
      if (row[part] == *req.subset) keep.push_back(parse_uint(row[idx]));
    std::sort(keep.begin(), keep.end());
    Aligned sub;
    for (std::size_t i : keep) {
      if (i >= a.truth.size()) throw DataError("split references node beyond the truth file");
      sub.truth.push_back(a.truth[i]);
      sub.pred.push_back(a.pred[i]);
      if (!a.baseline.empty()) sub.baseline.push_back(a.baseline[i]);
    }
    return sub;
  }
  return a;
}

std::string evaluation_hash(const ExperimentConfig& cfg, const EvaluateRequest& req) {
  std::uint64_t h = fnv1a64(hash_doc(cfg).dump());
  for (const auto* path : {&req.predictions, &req.truth}) h = fnv1a64(slurp(*path), h);
  if (req.baseline) h = fnv1a64(slurp(*req.baseline), h);
  if (req.splits) h = fnv1a64(slurp(*req.splits), h);
  if (req.subset) h = fnv1a64(*req.subset, h);
  return hex64(h);
}

}  // namespace

RankingReport run_evaluate(const ExperimentConfig& cfg, const EvaluateRequest& req) {
  return stage_guard(Stage::kEvaluate, [&] {
    const auto a = align(req);
    const auto report = evaluate(a.truth, a.pred, cfg.f_grid, cfg.overlap_denominator);
    const auto hash = evaluation_hash(cfg, req);
    auto doc = nlohmann::ordered_json::parse(report_json(report, hash));
    if (!a.baseline.empty()) {
      const auto base_curve = overlap_curve(a.truth, a.baseline, cfg.f_grid, cfg.overlap_denominator);
      const double base_auoc = auoc(base_curve);
      doc["baseline_auoc"] = base_auoc;
      doc["delta"] = auoc_delta(report.auoc, base_auoc);
    }
    write_file(prepare_out(cfg, "report.json"), doc.dump(2) + "\n");
    write_file(prepare_out(cfg, "overlap_curve.csv"), hash_line(hash) + overlap_curve_csv(report.overlap));
    return report;
  });
}

fs::path run_curves(const ExperimentConfig& cfg, const EvaluateRequest& req) {
  return stage_guard(Stage::kCurves, [&] {
    const auto a = align(req);
    const auto curve = overlap_curve(a.truth, a.pred, cfg.f_grid, cfg.overlap_denominator);
    std::string body = hash_line(evaluation_hash(cfg, req));
    if (a.baseline.empty()) {
      body += overlap_curve_csv(curve);
    } else {
      const auto base = overlap_curve(a.truth, a.baseline, cfg.f_grid, cfg.overlap_denominator);
      body += "f,O,O_baseline\n";
      for (std::size_t i = 0; i < curve.size(); ++i)
        body += format_double(curve[i].f) + "," + format_double(curve[i].overlap) + "," +
                format_double(base[i].overlap) + "\n";
    }
    const auto path = prepare_out(cfg, "overlap_curve.csv");
    write_file(path, body);
    return path;
  });
}

ArtifactBundle run_pipeline(const ExperimentConfig& cfg, const std::optional<std::string>& predictions) {
  stage_guard(Stage::kConfig, [&] {
    cfg.validate();
    return 0;
  });
  ArtifactBundle bundle;
  ExperimentConfig effective = cfg;
  if (!cfg.dataset) {
    const auto generated = run_generate(cfg);
    bundle.files.insert(bundle.files.end(), generated.begin(), generated.end());
    effective.dataset = generated.front().string();
  }
  bundle.files.push_back(run_ingest(effective));
  bundle.files.push_back(run_stats(effective));
  const auto labels = run_simulate(effective);
  bundle.files.push_back(labels);
  const auto features = run_features(effective);
  bundle.files.insert(bundle.files.end(), features.begin(), features.end());
  const auto baselines = run_baselines(effective);
  bundle.files.insert(bundle.files.end(), baselines.begin(), baselines.end());
  bundle.files.push_back(run_split(effective));
  if (predictions) {
    EvaluateRequest req{*predictions, labels.string(), {}, {}, {}};
    bundle.report = run_evaluate(effective, req);
    bundle.files.push_back(fs::path(cfg.out_dir) / "report.json");
    bundle.files.push_back(fs::path(cfg.out_dir) / "overlap_curve.csv");
  }
  return bundle;
}

}  // namespace hiplab
