#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fairspread/fairspread.hpp"

namespace fs = fairspread;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> parse_doubles(const std::string& text, const char* what) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw fs::ConfigError(std::string("--") + what + ": not a number: '" + item + "'");
    }
  }
  return out;
}

// Flag values layered over the config file, one field per flag.
struct Overrides {
  std::string config;
  std::string dataset;
  std::string attrs;
  std::string sbm;
  std::string algo;
  std::size_t k = 0;
  std::string p;
  double beta = 0.0;
  std::size_t R = 0;
  std::size_t iters = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::size_t workers = 0;
  std::string grid;
  double selection_p = 0.0;

  CLI::Option* o_beta = nullptr;
  CLI::Option* o_seed = nullptr;
  CLI::Option* o_selection = nullptr;

  void attach(CLI::App& cmd, bool with_sweep) {
    cmd.add_option("--config", config, "JSON config file");
    cmd.add_option("--dataset", dataset, "edge list file");
    cmd.add_option("--attrs", attrs, "node attribute CSV (node,group)");
    cmd.add_option("--sbm", sbm, "synthetic dataset n1,n2,p_in,p_out,seed");
    cmd.add_option("--algo", algo, "comma-separated algorithms, optionally label=algorithm");
    cmd.add_option("--k", k, "seed count");
    cmd.add_option("--p", p, "comma-separated activation probabilities");
    o_beta = cmd.add_option("--beta", beta, "fairness weight in [0, 1]");
    cmd.add_option("--R", R, "Monte-Carlo realizations");
    cmd.add_option("--iters", iters, "S3D iterations");
    o_seed = cmd.add_option("--seed", seed, "master seed");
    cmd.add_option("--out", out, "output directory");
    cmd.add_option("--workers", workers, "worker threads");
    if (with_sweep) {
      cmd.add_option("--grid", grid, "comma-separated p grid");
      o_selection = cmd.add_option("--selection-p", selection_p, "p used to select seeds");
    }
  }

  fs::ExperimentConfig resolve() const {
    fs::ExperimentConfig cfg = config.empty() ? fs::ExperimentConfig{} : fs::load_config(config);
    if (!dataset.empty()) {
      cfg.edges = dataset;
      cfg.sbm.reset();
    }
    if (!attrs.empty()) cfg.attrs = attrs;
    if (!sbm.empty()) {
      const auto v = parse_doubles(sbm, "sbm");
      if (v.size() != 5) throw fs::ConfigError("--sbm: expected n1,n2,p_in,p_out,seed");
      for (const std::size_t i : {0, 1, 4}) {
        if (v[i] < 0 || v[i] != static_cast<double>(static_cast<std::uint64_t>(v[i]))) {
          throw fs::ConfigError("--sbm: n1, n2 and seed must be nonnegative integers");
        }
      }
      cfg.sbm = fs::SbmSpec{static_cast<std::size_t>(v[0]), static_cast<std::size_t>(v[1]), v[2], v[3],
                            static_cast<std::uint64_t>(v[4])};
      cfg.edges.clear();
    }
    if (!algo.empty()) {
      cfg.algorithms.clear();
      for (const auto& a : split_list(algo)) cfg.algorithms.push_back(fs::parse_algorithm_spec(a));
    }
    if (k != 0) cfg.k = k;
    if (!p.empty()) cfg.p = parse_doubles(p, "p");
    if (o_beta->count() > 0) cfg.beta = beta;
    if (R != 0) cfg.realizations = R;
    if (iters != 0) cfg.iterations = iters;
    if (o_seed->count() > 0) cfg.seed = seed;
    if (!out.empty()) cfg.out = out;
    if (workers != 0) cfg.workers = workers;
    if (!grid.empty()) cfg.sweep_grid = parse_doubles(grid, "grid");
    if (o_selection != nullptr && o_selection->count() > 0) cfg.selection_p = selection_p;
    cfg.validate();
    return cfg;
  }
};

fs::SocialGraph load_for_inspection(const Overrides& o) {
  fs::ExperimentConfig cfg = o.config.empty() ? fs::ExperimentConfig{} : fs::load_config(o.config);
  if (!o.dataset.empty()) {
    cfg.edges = o.dataset;
    cfg.sbm.reset();
  }
  if (!o.attrs.empty()) cfg.attrs = o.attrs;
  if (!cfg.has_dataset() || (!cfg.sbm && cfg.attrs.empty())) {
    throw fs::ConfigError("a dataset is required: --dataset and --attrs, or --config");
  }
  return fs::load_dataset(cfg);
}

int run_command(const Overrides& o) {
  const auto cfg = o.resolve();
  const auto result = fs::run_experiment(cfg);
  std::cout << fs::result_header() << '\n';
  for (const auto& row : result.rows) std::cout << fs::to_csv(row) << '\n';
  std::cerr << "wrote " << result.files.size() << " files to " << cfg.out << '\n';
  return 0;
}

int sweep_command(const Overrides& o) {
  const auto cfg = o.resolve();
  const auto rows = fs::run_sweep(cfg);
  fs::write_sweep_csv(std::cout, rows);
  std::cerr << "wrote sweep.csv and meta.json to " << cfg.out << '\n';
  return 0;
}

int compare_command(const Overrides& o) {
  const auto cfg = o.resolve();
  const auto points = fs::run_compare(cfg);
  fs::write_compare_csv(std::cout, points);
  std::cerr << "wrote compare.csv, compare.json and meta.json to " << cfg.out << '\n';
  return 0;
}

int census_command(const Overrides& o) {
  const auto g = load_for_inspection(o);
  std::cout << fs::to_json(fs::census(g)).dump(2) << '\n';
  return 0;
}

struct EvaluateArgs {
  std::string seeds;
  double p = 0.1;
  double beta = 0.5;
  std::size_t R = 1000;
  std::uint64_t seed = 42;
};

int evaluate_command(const Overrides& o, const EvaluateArgs& a) {
  const auto g = load_for_inspection(o);
  std::vector<fs::NodeId> ids;
  for (const auto& label : split_list(a.seeds)) {
    const auto id = g.find(label);
    if (!id) throw fs::ConfigError("--seeds: unknown node '" + label + "'");
    ids.push_back(*id);
  }
  if (ids.empty()) throw fs::ConfigError("--seeds: at least one node is required");
  fs::validate_seedset(g, fs::Seedset{ids});
  if (!(a.p >= 0.0 && a.p <= 1.0)) throw fs::ConfigError("--p must lie in [0, 1]");
  if (!(a.beta >= 0.0 && a.beta <= 1.0)) throw fs::ConfigError("--beta must lie in [0, 1]");
  if (a.R == 0) throw fs::ConfigError("--R must be at least 1");
  const auto dist = fs::sample_outreach(g, ids, a.p, a.R, a.seed);
  auto reports = nlohmann::ordered_json::array();
  auto add = [&](const char* name, double value, std::optional<double> beta = std::nullopt) {
    reports.push_back(fs::to_json(fs::MetricReport{name, value, beta, a.R, a.seed}));
  };
  add("mutual_fairness", fs::mutual_fairness(dist));
  add("beta_fairness", fs::beta_fairness(dist, a.beta), a.beta);
  add("efficiency", fs::efficiency(dist));
  add("equity_score", fs::equity_score(dist));
  add("maxmin_value", fs::maxmin_value(dist));
  add("equality_gap", fs::equality_gap(g, ids));
  std::cout << reports.dump(2) << '\n';
  return 0;
}

struct SbmArgs {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  double p_in = 0.0;
  double p_out = 0.0;
  std::uint64_t seed = 0;
  std::string edges_out;
  std::string attrs_out;
};

int generate_command(const SbmArgs& a) {
  if (a.n1 == 0 || a.n2 == 0) throw fs::ConfigError("--n1 and --n2 must be positive");
  const auto g = fs::generate_sbm(a.n1, a.n2, a.p_in, a.p_out, a.seed);
  fs::save_graph(g, a.edges_out, a.attrs_out);
  std::cout << fs::to_json(fs::census(g)).dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fairness-aware influence maximization experiments"};
  app.set_version_flag("--version", std::string(fs::kVersion));
  app.require_subcommand(1);

  Overrides run_o, sweep_o, compare_o, census_o, eval_o;
  auto* run = app.add_subcommand("run", "select seeds, sample outreach and write per-cell results");
  run_o.attach(*run, false);
  auto* sweep = app.add_subcommand("sweep", "mutual fairness and equity of fixed seeds across p");
  sweep_o.attach(*sweep, true);
  auto* compare = app.add_subcommand("compare", "fairness-efficiency points per algorithm");
  compare_o.attach(*compare, false);

  auto* census = app.add_subcommand("census", "print group sizes, cross edges and diameter");
  census->add_option("--config", census_o.config, "JSON config file");
  census->add_option("--dataset", census_o.dataset, "edge list file");
  census->add_option("--attrs", census_o.attrs, "node attribute CSV");

  EvaluateArgs eval_args;
  auto* evaluate = app.add_subcommand("evaluate", "score a given seedset");
  evaluate->add_option("--config", eval_o.config, "JSON config file");
  evaluate->add_option("--dataset", eval_o.dataset, "edge list file");
  evaluate->add_option("--attrs", eval_o.attrs, "node attribute CSV");
  evaluate->add_option("--seeds", eval_args.seeds, "comma-separated node labels")->required();
  evaluate->add_option("--p", eval_args.p, "activation probability");
  evaluate->add_option("--beta", eval_args.beta, "fairness weight");
  evaluate->add_option("--R", eval_args.R, "Monte-Carlo realizations");
  evaluate->add_option("--seed", eval_args.seed, "master seed");

  SbmArgs sbm_args;
  auto* generate = app.add_subcommand("generate-sbm", "write a two-block stochastic block model graph");
  generate->add_option("--n1", sbm_args.n1, "group 1 size")->required();
  generate->add_option("--n2", sbm_args.n2, "group 2 size")->required();
  generate->add_option("--p-in", sbm_args.p_in, "within-group edge probability")->required();
  generate->add_option("--p-out", sbm_args.p_out, "cross-group edge probability")->required();
  generate->add_option("--seed", sbm_args.seed, "generator seed");
  generate->add_option("--edges-out", sbm_args.edges_out, "edge list output")->required();
  generate->add_option("--attrs-out", sbm_args.attrs_out, "attribute CSV output")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) return run_command(run_o);
    if (*sweep) return sweep_command(sweep_o);
    if (*compare) return compare_command(compare_o);
    if (*census) return census_command(census_o);
    if (*evaluate) return evaluate_command(eval_o, eval_args);
    if (*generate) return generate_command(sbm_args);
  } catch (const fs::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const fs::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitConfig;
}
