#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fairspread/graph.hpp"
#include "fairspread/seeding.hpp"

namespace fairspread {

struct MetricReport {
  std::string metric_name;
  double value = 0.0;
  std::optional<double> beta;
  std::size_t realization_count = 0;
  std::uint64_t rng_seed = 0;
};

inline nlohmann::ordered_json to_json(const MetricReport& r) {
  nlohmann::ordered_json j;
  j["metric_name"] = r.metric_name;
  j["value"] = r.value;
  if (r.beta) j["beta"] = *r.beta;
  j["realization_count"] = r.realization_count;
  j["rng_seed"] = r.rng_seed;
  return j;
}

struct SeedsetReport {
  std::string algorithm;
  std::size_t k = 0;
  double p = 0.0;
  double beta = 0.0;
  std::vector<std::string> seed_ids;  // original node labels
  double score_beta_fairness = 0.0;
  std::uint64_t master_seed = 0;
};

inline SeedsetReport make_seedset_report(const SocialGraph& g, const std::string& algorithm, const Seedset& s,
                                         double p, double beta, double score, std::uint64_t master_seed) {
  SeedsetReport r{algorithm, s.size(), p, beta, {}, score, master_seed};
  for (const NodeId v : s.nodes) r.seed_ids.push_back(g.label(v));
  return r;
}

inline nlohmann::ordered_json to_json(const SeedsetReport& r) {
  nlohmann::ordered_json j;
  j["algorithm"] = r.algorithm;
  j["k"] = r.k;
  j["p"] = r.p;
  j["beta"] = r.beta;
  j["seed_ids"] = r.seed_ids;
  j["score_beta_fairness"] = r.score_beta_fairness;
  j["master_seed"] = r.master_seed;
  return j;
}

inline nlohmann::ordered_json to_json(const GroupCensus& c) {
  nlohmann::ordered_json j;
  j["node_count"] = c.node_count;
  j["edge_count"] = c.edge_count;
  j["size_g1"] = c.size_g1;
  j["size_g2"] = c.size_g2;
  j["cross_edge_fraction"] = c.cross_edge_fraction;
  j["avg_degree"] = c.avg_degree;
  j["diameter"] = c.diameter;
  j["largest_component_diameter"] = c.largest_component_diameter;
  j["component_count"] = c.component_count;
  j["largest_component_size"] = c.largest_component_size;
  return j;
}

}  // namespace fairspread
