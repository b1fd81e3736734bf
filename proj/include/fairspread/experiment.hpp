#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fairspread/diffusion.hpp"
#include "fairspread/error.hpp"
#include "fairspread/format.hpp"
#include "fairspread/graph.hpp"
#include "fairspread/metrics.hpp"
#include "fairspread/parallel.hpp"
#include "fairspread/report.hpp"
#include "fairspread/s3d.hpp"
#include "fairspread/seeding.hpp"

namespace fairspread {

inline constexpr const char* kVersion = "0.1.0";

inline const std::vector<std::string>& known_algorithms() {
  static const std::vector<std::string> names{"bas_d", "bas_g", "hrt_d", "hrt_g", "s3d_d", "s3d_g"};
  return names;
}

struct SbmSpec {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  double p_in = 0.0;
  double p_out = 0.0;
  std::uint64_t seed = 0;
};

/// One configured algorithm. `label` names output files and summary rows;
/// it equals `algorithm` unless the config used "label=algorithm".
struct AlgorithmSpec {
  std::string label;
  std::string algorithm;
};

struct ExperimentConfig {
  std::string dataset_name = "dataset";
  std::string edges;  // edge-list path, or empty with sbm set
  std::string attrs;
  std::optional<SbmSpec> sbm;
  std::vector<AlgorithmSpec> algorithms = default_algorithms();
  std::size_t k = 0;
  std::vector<double> p{0.1};
  double beta = 0.5;
  std::size_t realizations = 1000;
  std::size_t iterations = 500;
  std::uint64_t seed = 42;
  std::string out = "results";
  std::size_t workers = 1;
  // S3D internals
  std::optional<std::size_t> reach_realizations;  // defaults to `realizations`
  double exploit_to_explore = 1.3;
  double retention_prob = 0.95;
  std::size_t shallow_horizon = 4;
  // sweep_p
  std::vector<double> sweep_grid;        // defaults to 0, 0.05, ..., 1
  std::optional<double> selection_p;     // defaults to p.front()

  static std::vector<AlgorithmSpec> default_algorithms() {
    std::vector<AlgorithmSpec> out;
    for (const auto& name : known_algorithms()) out.push_back({name, name});
    return out;
  }

  bool has_dataset() const { return sbm.has_value() || !edges.empty(); }

  void validate() const {
    if (!has_dataset()) throw ConfigError("config: dataset is required (edges + attrs, or sbm)");
    if (!sbm && attrs.empty()) throw ConfigError("config: dataset.attrs is required with dataset.edges");
    validate_parameters();
  }

  /// Everything except the dataset source, for callers that bring their own graph.
  void validate_parameters() const {
    if (k == 0) throw ConfigError("config: k is required and must be at least 1");
    if (algorithms.empty()) throw ConfigError("config: algorithm list is empty");
    std::vector<std::string> labels;
    for (const auto& a : algorithms) {
      if (std::find(known_algorithms().begin(), known_algorithms().end(), a.algorithm) == known_algorithms().end()) {
        throw ConfigError("config: unknown algorithm '" + a.algorithm + "'");
      }
      if (a.label.empty() || a.label.find_first_of("/\\ ,") != std::string::npos) {
        throw ConfigError("config: invalid algorithm label '" + a.label + "'");
      }
      if (std::find(labels.begin(), labels.end(), a.label) != labels.end()) {
        throw ConfigError("config: duplicate algorithm label '" + a.label + "'");
      }
      labels.push_back(a.label);
    }
    if (p.empty()) throw ConfigError("config: p list is empty");
    auto check_p = [](double v, const char* what) {
      if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(std::string("config: ") + what + " must lie in [0, 1]");
    };
    for (const double v : p) check_p(v, "p");
    for (const double v : sweep_grid) check_p(v, "sweep grid value");
    if (selection_p) check_p(*selection_p, "sweep selection_p");
    if (!(beta >= 0.0 && beta <= 1.0)) throw ConfigError("config: beta must lie in [0, 1]");
    if (realizations == 0) throw ConfigError("config: R must be at least 1");
    if (iterations == 0) throw ConfigError("config: iterations must be at least 1");
    if (reach_realizations && *reach_realizations == 0) throw ConfigError("config: s3d.realizations must be at least 1");
    if (workers == 0) throw ConfigError("config: workers must be at least 1");
    if (!(retention_prob >= 0.0 && retention_prob <= 1.0)) {
      throw ConfigError("config: s3d.retention_prob must lie in [0, 1]");
    }
    if (!(exploit_to_explore >= 0.0)) throw ConfigError("config: s3d.exploit_to_explore must be nonnegative");
    if (sbm) {
      if (sbm->n1 == 0 || sbm->n2 == 0) throw ConfigError("config: sbm group sizes must be positive");
      check_p(sbm->p_in, "sbm.p_in");
      check_p(sbm->p_out, "sbm.p_out");
    }
  }

  S3DParams s3d_params() const {
    S3DParams params;
    params.beta = beta;
    params.iterations = iterations;
    params.realizations = reach_realizations.value_or(realizations);
    params.exploit_to_explore = exploit_to_explore;
    params.retention_prob = retention_prob;
    params.shallow_horizon = shallow_horizon;
    params.evaluation_realizations = realizations;
    params.master_seed = seed;
    return params;
  }

  std::vector<double> grid() const {
    if (!sweep_grid.empty()) return sweep_grid;
    std::vector<double> out;
    for (int i = 0; i <= 20; ++i) out.push_back(i / 20.0);
    return out;
  }
};

/// "name" or "label=name".
inline AlgorithmSpec parse_algorithm_spec(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) return {text, text};
  return {text.substr(0, eq), text.substr(eq + 1)};
}

namespace detail {

template <class T>
T json_get(const nlohmann::json& j, const char* key, const T& fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("config: field '") + key + "' has the wrong type");
  }
}

inline std::string resolve_path(const std::string& path, const std::filesystem::path& base) {
  if (path.empty() || base.empty()) return path;
  const std::filesystem::path p(path);
  return p.is_absolute() ? path : (base / p).lexically_normal().string();
}

inline std::vector<double> json_p_list(const nlohmann::json& j, const char* key, std::vector<double> fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array()) throw ConfigError(std::string("config: field '") + key + "' must be a number or a list");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw ConfigError(std::string("config: field '") + key + "' must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace detail

/// Reads a config document. Relative dataset paths resolve against
/// `base_dir` (the config file's directory) when it is given.
inline ExperimentConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {}) {
  if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");
  ExperimentConfig cfg;
  if (j.contains("dataset")) {
    const auto& d = j.at("dataset");
    if (!d.is_object()) throw ConfigError("config: dataset must be an object");
    cfg.dataset_name = detail::json_get<std::string>(d, "name", cfg.dataset_name);
    cfg.edges = detail::resolve_path(detail::json_get<std::string>(d, "edges", ""), base_dir);
    cfg.attrs = detail::resolve_path(detail::json_get<std::string>(d, "attrs", ""), base_dir);
    if (d.contains("sbm")) {
      const auto& s = d.at("sbm");
      SbmSpec spec;
      spec.n1 = detail::json_get<std::size_t>(s, "n1", 0);
      spec.n2 = detail::json_get<std::size_t>(s, "n2", 0);
      spec.p_in = detail::json_get<double>(s, "p_in", 0.0);
      spec.p_out = detail::json_get<double>(s, "p_out", 0.0);
      spec.seed = detail::json_get<std::uint64_t>(s, "seed", 0);
      cfg.sbm = spec;
    }
  }
  if (j.contains("algorithms")) {
    cfg.algorithms.clear();
    for (const auto& a : j.at("algorithms")) {
      if (!a.is_string()) throw ConfigError("config: algorithms must be strings");
      cfg.algorithms.push_back(parse_algorithm_spec(a.get<std::string>()));
    }
  }
  cfg.k = detail::json_get<std::size_t>(j, "k", 0);
  cfg.p = detail::json_p_list(j, "p", cfg.p);
  cfg.beta = detail::json_get<double>(j, "beta", cfg.beta);
  cfg.realizations = detail::json_get<std::size_t>(j, "R", cfg.realizations);
  cfg.iterations = detail::json_get<std::size_t>(j, "iterations", cfg.iterations);
  cfg.seed = detail::json_get<std::uint64_t>(j, "seed", cfg.seed);
  cfg.out = detail::json_get<std::string>(j, "out", cfg.out);
  cfg.workers = detail::json_get<std::size_t>(j, "workers", cfg.workers);
  if (j.contains("s3d")) {
    const auto& s = j.at("s3d");
    if (s.contains("realizations")) cfg.reach_realizations = detail::json_get<std::size_t>(s, "realizations", 0);
    cfg.exploit_to_explore = detail::json_get<double>(s, "exploit_to_explore", cfg.exploit_to_explore);
    cfg.retention_prob = detail::json_get<double>(s, "retention_prob", cfg.retention_prob);
    cfg.shallow_horizon = detail::json_get<std::size_t>(s, "shallow_horizon", cfg.shallow_horizon);
  }
  if (j.contains("sweep")) {
    const auto& s = j.at("sweep");
    cfg.sweep_grid = detail::json_p_list(s, "grid", {});
    if (s.contains("selection_p")) cfg.selection_p = detail::json_get<double>(s, "selection_p", 0.0);
  }
  return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config: " + std::string(e.what()));
  }
  return config_from_json(j, std::filesystem::path(path).parent_path());
}

inline nlohmann::ordered_json to_json(const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json d;
  d["name"] = cfg.dataset_name;
  if (cfg.sbm) {
    d["sbm"] = {{"n1", cfg.sbm->n1}, {"n2", cfg.sbm->n2}, {"p_in", cfg.sbm->p_in}, {"p_out", cfg.sbm->p_out},
                {"seed", cfg.sbm->seed}};
  } else {
    d["edges"] = cfg.edges;
    d["attrs"] = cfg.attrs;
  }
  j["dataset"] = d;
  auto algos = nlohmann::ordered_json::array();
  for (const auto& a : cfg.algorithms) algos.push_back(a.label == a.algorithm ? a.label : a.label + "=" + a.algorithm);
  j["algorithms"] = algos;
  j["k"] = cfg.k;
  j["p"] = cfg.p;
  j["beta"] = cfg.beta;
  j["R"] = cfg.realizations;
  j["iterations"] = cfg.iterations;
  j["seed"] = cfg.seed;
  j["out"] = cfg.out;
  j["workers"] = cfg.workers;
  j["s3d"] = {{"realizations", cfg.reach_realizations.value_or(cfg.realizations)},
              {"exploit_to_explore", cfg.exploit_to_explore},
              {"retention_prob", cfg.retention_prob},
              {"shallow_horizon", cfg.shallow_horizon}};
  j["sweep"] = {{"grid", cfg.grid()}, {"selection_p", cfg.selection_p.value_or(cfg.p.front())}};
  return j;
}

inline SocialGraph load_dataset(const ExperimentConfig& cfg) {
  if (cfg.sbm) return generate_sbm(cfg.sbm->n1, cfg.sbm->n2, cfg.sbm->p_in, cfg.sbm->p_out, cfg.sbm->seed);
  return load_graph(cfg.edges, cfg.attrs);
}

struct ResultRow {
  std::string dataset;
  std::string algorithm;
  double p = 0.0;
  std::size_t k = 0;
  double beta = 0.0;
  double mutual_fairness = 0.0;
  double mutual_fairness_2sigma = 0.0;
  double beta_fairness = 0.0;
  double efficiency = 0.0;
  double efficiency_2sigma = 0.0;
  double equity_gap = 0.0;
  double equity_score = 0.0;
  double equality_gap = 0.0;
  double maxmin_value = 0.0;
  std::size_t realization_count = 0;
  std::uint64_t master_seed = 0;
};

inline const char* result_header() {
  return "dataset,algorithm,p,k,beta,mutual_fairness,mutual_fairness_2sigma,beta_fairness,efficiency,"
         "efficiency_2sigma,equity_gap,equity_score,equality_gap,maxmin_value,realization_count,master_seed";
}

inline std::string to_csv(const ResultRow& r) {
  std::ostringstream s;
  s << r.dataset << ',' << r.algorithm << ',' << format_double(r.p) << ',' << r.k << ',' << format_double(r.beta)
    << ',' << format_double(r.mutual_fairness) << ',' << format_double(r.mutual_fairness_2sigma) << ','
    << format_double(r.beta_fairness) << ',' << format_double(r.efficiency) << ','
    << format_double(r.efficiency_2sigma) << ',' << format_double(r.equity_gap) << ','
    << format_double(r.equity_score) << ',' << format_double(r.equality_gap) << ','
    << format_double(r.maxmin_value) << ',' << r.realization_count << ',' << r.master_seed;
  return s.str();
}

/// Everything computed for one (algorithm, p) cell.
struct CellResult {
  AlgorithmSpec spec;
  double p = 0.0;
  Seedset seeds;
  OutreachDistribution outreach;
  ResultRow row;
};

/// Seed selection stream for greedy selectors; evaluation uses the master
/// seed itself.
inline std::uint64_t selection_seed(const ExperimentConfig& cfg) { return derive_stream(cfg.seed, 1); }

inline Seedset select_baseline(const SocialGraph& g, const std::string& algorithm, const ExperimentConfig& cfg,
                               double p) {
  if (algorithm == "bas_d") return select_degree(g, cfg.k);
  if (algorithm == "hrt_d") return select_fair_degree(g, cfg.k);
  if (algorithm == "bas_g") return select_greedy(g, cfg.k, p, cfg.realizations, selection_seed(cfg));
  if (algorithm == "hrt_g") return select_fair_greedy(g, cfg.k, p, cfg.realizations, selection_seed(cfg));
  throw ConfigError("unknown baseline algorithm '" + algorithm + "'");
}

inline bool is_s3d(const std::string& algorithm) { return algorithm == "s3d_d" || algorithm == "s3d_g"; }

inline std::string initializer_of(const std::string& algorithm) { return algorithm == "s3d_d" ? "bas_d" : "bas_g"; }

inline ResultRow make_row(const SocialGraph& g, const ExperimentConfig& cfg, const std::string& label, double p,
                          const Seedset& seeds, const OutreachDistribution& dist) {
  ResultRow row;
  row.dataset = cfg.dataset_name;
  row.algorithm = label;
  row.p = p;
  row.k = seeds.size();
  row.beta = cfg.beta;
  const auto mf = mutual_fairness_with_error(dist, dist.realization_count);
  const auto ef = efficiency_with_error(dist, dist.realization_count);
  row.mutual_fairness = mf.mean;
  row.mutual_fairness_2sigma = mf.two_sigma;
  row.beta_fairness = beta_fairness(dist, cfg.beta);
  row.efficiency = ef.mean;
  row.efficiency_2sigma = ef.two_sigma;
  row.equity_gap = equity_gap(dist);
  row.equity_score = 1.0 - row.equity_gap;
  row.equality_gap = equality_gap(g, seeds.view());
  row.maxmin_value = maxmin_value(dist);
  row.realization_count = dist.realization_count;
  row.master_seed = cfg.seed;
  return row;
}

/// Selects and evaluates every (algorithm, p) cell. Baselines are selected
/// first, then S3D cells start from their baseline's seedset. Cells run on
/// up to cfg.workers threads; results do not depend on the worker count.
inline std::vector<CellResult> compute_cells(const SocialGraph& g, const ExperimentConfig& cfg) {
  cfg.validate_parameters();
  g.require_both_groups("experiment");
  if (cfg.k > g.node_count()) {
    throw ConfigError("config: k = " + std::to_string(cfg.k) + " exceeds node count " +
                      std::to_string(g.node_count()));
  }
  std::vector<CellResult> cells;
  for (const double p : cfg.p) {
    for (const auto& spec : cfg.algorithms) cells.push_back(CellResult{spec, p, {}, {}, {}});
  }

  // Baseline seedsets keyed by (algorithm, p), including initializers the
  // config does not list itself.
  std::vector<std::pair<std::string, double>> baseline_keys;
  auto add_key = [&](const std::string& a, double p) {
    const std::pair<std::string, double> key{a, p};
    if (std::find(baseline_keys.begin(), baseline_keys.end(), key) == baseline_keys.end()) {
      baseline_keys.push_back(key);
    }
  };
  for (const auto& c : cells) add_key(is_s3d(c.spec.algorithm) ? initializer_of(c.spec.algorithm) : c.spec.algorithm, c.p);
  std::vector<Seedset> baselines(baseline_keys.size());
  detail::parallel_chunks(baseline_keys.size(), cfg.workers, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      baselines[i] = select_baseline(g, baseline_keys[i].first, cfg, baseline_keys[i].second);
    }
  });
  auto baseline = [&](const std::string& a, double p) -> const Seedset& {
    const auto it = std::find(baseline_keys.begin(), baseline_keys.end(), std::pair<std::string, double>{a, p});
    return baselines[static_cast<std::size_t>(it - baseline_keys.begin())];
  };

  detail::parallel_chunks(cells.size(), cfg.workers, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      CellResult& c = cells[i];
      if (is_s3d(c.spec.algorithm)) {
        S3DSearch search(g, c.p, cfg.s3d_params());
        c.seeds = search.iterate(baseline(initializer_of(c.spec.algorithm), c.p)).best;
      } else {
        c.seeds = baseline(c.spec.algorithm, c.p);
      }
      c.outreach = sample_outreach(g, c.seeds.view(), c.p, cfg.realizations, cfg.seed);
      c.row = make_row(g, cfg, c.spec.label, c.p, c.seeds, c.outreach);
    }
  });
  return cells;
}

inline std::string cell_stem(const std::string& label, double p) { return label + "_" + format_double(p); }

namespace detail {

inline std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write output file: " + path.string());
  return out;
}

inline void prepare_out_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw DataError("cannot create output directory " + dir + ": " + ec.message());
}

}  // namespace detail

/// Metadata shared by every output directory.
inline nlohmann::ordered_json experiment_meta(const SocialGraph& g, const ExperimentConfig& cfg) {
  nlohmann::ordered_json meta;
  meta["tool"] = "fairspread";
  meta["version"] = kVersion;
  meta["json_library"] = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                         std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                         std::to_string(NLOHMANN_JSON_VERSION_PATCH);
  meta["config"] = to_json(cfg);
  meta["graph"] = to_json(census(g));
  meta["error_bars"] =
      "2sigma = 2 * sqrt(s^2 / R), s^2 the unbiased sample variance over the R realizations of "
      "1 - |x1 - x2| (mutual fairness) and (x1 + x2) / 2 (efficiency)";
  meta["histogram_bins"] = 100;
  meta["seed_selection_stream"] = selection_seed(cfg);
  return meta;
}

struct ExperimentResult {
  std::vector<ResultRow> rows;
  std::vector<std::string> files;  // written paths, relative to cfg.out
};

/// Runs every cell and writes summary.csv, per-cell outreach, histogram and
/// seedset files, and meta.json into cfg.out.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const SocialGraph g = load_dataset(cfg);
  const auto cells = compute_cells(g, cfg);
  detail::prepare_out_dir(cfg.out);
  const std::filesystem::path dir(cfg.out);
  ExperimentResult result;
  for (const auto& c : cells) {
    const std::string stem = cell_stem(c.spec.label, c.p);
    {
      auto out = detail::open_output(dir / ("outreach_" + stem + ".csv"));
      write_outreach_csv(out, c.outreach);
    }
    {
      auto out = detail::open_output(dir / ("hist_" + stem + ".csv"));
      write_histogram_csv(out, histogram(c.outreach));
    }
    {
      auto out = detail::open_output(dir / ("seeds_" + stem + ".json"));
      const auto report = make_seedset_report(g, c.spec.label, c.seeds, c.p, cfg.beta, c.row.beta_fairness, cfg.seed);
      out << to_json(report).dump(2) << '\n';
    }
    result.files.push_back("outreach_" + stem + ".csv");
    result.files.push_back("hist_" + stem + ".csv");
    result.files.push_back("seeds_" + stem + ".json");
    result.rows.push_back(c.row);
  }
  {
    auto out = detail::open_output(dir / "summary.csv");
    out << result_header() << '\n';
    for (const auto& row : result.rows) out << to_csv(row) << '\n';
  }
  {
    auto out = detail::open_output(dir / "meta.json");
    out << experiment_meta(g, cfg).dump(2) << '\n';
  }
  result.files.push_back("summary.csv");
  result.files.push_back("meta.json");
  return result;
}

struct SweepRow {
  std::string algorithm;
  double p = 0.0;
  double mutual_fairness = 0.0;
  double equity_score = 0.0;
  double equity_gap = 0.0;
  double efficiency = 0.0;
  double beta_fairness = 0.0;
};

/// Fairness-vs-p table. Seeds are selected once per algorithm at
/// cfg.selection_p (default the first configured p) and then held fixed
/// while p runs over `grid`.
inline std::vector<SweepRow> sweep_p(const SocialGraph& g, const ExperimentConfig& cfg,
                                     const std::vector<double>& grid) {
  for (const double p : grid) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("sweep: grid values must lie in [0, 1]");
  }
  ExperimentConfig selection = cfg;
  selection.p = {cfg.selection_p.value_or(cfg.p.front())};
  const auto cells = compute_cells(g, selection);
  std::vector<SweepRow> rows(cells.size() * grid.size());
  detail::parallel_chunks(rows.size(), cfg.workers, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const CellResult& c = cells[i / grid.size()];
      const double p = grid[i % grid.size()];
      const auto dist = sample_outreach(g, c.seeds.view(), p, cfg.realizations, cfg.seed);
      rows[i] = SweepRow{c.spec.label,       p, mutual_fairness(dist), equity_score(dist), equity_gap(dist),
                         efficiency(dist), beta_fairness(dist, cfg.beta)};
    }
  });
  return rows;
}

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "algorithm,p,mutual_fairness,equity_score,equity_gap,efficiency,beta_fairness\n";
  for (const auto& r : rows) {
    out << r.algorithm << ',' << format_double(r.p) << ',' << format_double(r.mutual_fairness) << ','
        << format_double(r.equity_score) << ',' << format_double(r.equity_gap) << ',' << format_double(r.efficiency)
        << ',' << format_double(r.beta_fairness) << '\n';
  }
}

struct ComparePoint {
  std::string algorithm;
  double p = 0.0;
  double efficiency = 0.0;
  double efficiency_2sigma = 0.0;
  double mutual_fairness = 0.0;
  double mutual_fairness_2sigma = 0.0;
  double beta_fairness = 0.0;
};

/// One (efficiency, mutual fairness) point with 2-sigma bars per
/// configured algorithm and p.
inline std::vector<ComparePoint> compare_algorithms(const SocialGraph& g, const ExperimentConfig& cfg) {
  if (cfg.algorithms.size() < 2) throw ConfigError("compare: at least two algorithms are required");
  std::vector<ComparePoint> out;
  for (const auto& c : compute_cells(g, cfg)) {
    out.push_back(ComparePoint{c.row.algorithm, c.p, c.row.efficiency, c.row.efficiency_2sigma,
                               c.row.mutual_fairness, c.row.mutual_fairness_2sigma, c.row.beta_fairness});
  }
  return out;
}

inline void write_compare_csv(std::ostream& out, const std::vector<ComparePoint>& points) {
  out << "algorithm,p,efficiency,efficiency_2sigma,mutual_fairness,mutual_fairness_2sigma,beta_fairness\n";
  for (const auto& c : points) {
    out << c.algorithm << ',' << format_double(c.p) << ',' << format_double(c.efficiency) << ','
        << format_double(c.efficiency_2sigma) << ',' << format_double(c.mutual_fairness) << ','
        << format_double(c.mutual_fairness_2sigma) << ',' << format_double(c.beta_fairness) << '\n';
  }
}

inline nlohmann::ordered_json to_json(const std::vector<ComparePoint>& points) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : points) {
    arr.push_back({{"algorithm", c.algorithm},
                   {"p", c.p},
                   {"efficiency", c.efficiency},
                   {"efficiency_2sigma", c.efficiency_2sigma},
                   {"mutual_fairness", c.mutual_fairness},
                   {"mutual_fairness_2sigma", c.mutual_fairness_2sigma},
                   {"beta_fairness", c.beta_fairness}});
  }
  return arr;
}

/// sweep_p on the configured dataset, written to cfg.out/sweep.csv.
inline std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  const SocialGraph g = load_dataset(cfg);
  auto rows = sweep_p(g, cfg, cfg.grid());
  detail::prepare_out_dir(cfg.out);
  const std::filesystem::path dir(cfg.out);
  {
    auto out = detail::open_output(dir / "sweep.csv");
    write_sweep_csv(out, rows);
  }
  auto out = detail::open_output(dir / "meta.json");
  out << experiment_meta(g, cfg).dump(2) << '\n';
  return rows;
}

/// compare_algorithms on the configured dataset, written to
/// cfg.out/compare.csv and compare.json.
inline std::vector<ComparePoint> run_compare(const ExperimentConfig& cfg) {
  cfg.validate();
  const SocialGraph g = load_dataset(cfg);
  auto points = compare_algorithms(g, cfg);
  detail::prepare_out_dir(cfg.out);
  const std::filesystem::path dir(cfg.out);
  {
    auto out = detail::open_output(dir / "compare.csv");
    write_compare_csv(out, points);
  }
  {
    auto out = detail::open_output(dir / "compare.json");
    out << to_json(points).dump(2) << '\n';
  }
  auto out = detail::open_output(dir / "meta.json");
  out << experiment_meta(g, cfg).dump(2) << '\n';
  return points;
}

}  // namespace fairspread
