#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fairspread/diffusion.hpp"
#include "fairspread/graph.hpp"
#include "fairspread/metrics.hpp"
#include "fairspread/random.hpp"
#include "fairspread/seeding.hpp"

namespace fairspread {

/// Tunables of the stochastic seedset selection descent.
struct S3DParams {
  double beta = 1.0;                  // fairness/efficiency weight of the objective
  std::size_t iterations = 500;       // number of steps
  std::size_t realizations = 1000;    // cascades per reach estimate
  double exploit_to_explore = 1.3;    // multiplier of the energy change in the acceptance exponent
  double retention_prob = 0.95;       // probability of keeping the current set after a rejection
  std::size_t shallow_horizon = 4;    // rounds of the per-seed reach removed from the pool
  std::size_t evaluation_realizations = 1000;
  std::uint64_t master_seed = 0;
  std::size_t workers = 1;

  /// Probability of a uniformly random restart after a rejection.
  double epsilon() const noexcept { return 1.0 - retention_prob; }

  void validate() const {
    check_beta(beta);
    if (iterations == 0) throw std::invalid_argument("S3DParams: iterations must be at least 1");
    if (realizations == 0 || evaluation_realizations == 0) {
      throw std::invalid_argument("S3DParams: realization counts must be at least 1");
    }
    if (!(retention_prob >= 0.0 && retention_prob <= 1.0)) {
      throw std::invalid_argument("S3DParams: retention_prob must lie in [0, 1]");
    }
    if (!(exploit_to_explore >= 0.0) || !std::isfinite(exploit_to_explore)) {
      throw std::invalid_argument("S3DParams: exploit_to_explore must be finite and nonnegative");
    }
  }
};

struct SeedsetScore {
  double beta_fairness = 0.0;
  double mutual_fairness = 0.0;
  double efficiency = 0.0;
};

/// Samples the outreach of `seeds` once and scores the three metrics on
/// that one distribution.
inline SeedsetScore evaluate_seedset(const SocialGraph& g, std::span<const NodeId> seeds, double p, double beta,
                                     std::size_t realizations, std::uint64_t master_seed, std::size_t workers = 1) {
  check_beta(beta);
  const auto dist = sample_outreach(g, seeds, p, realizations, master_seed, workers);
  return {beta_fairness(dist, beta), mutual_fairness(dist), efficiency(dist)};
}

/// evaluate_seedset memoized on the node set, for fixed (p, beta, R, seed).
/// Lookups may run concurrently; inserts are serialized.
class SeedsetEvaluator {
 public:
  SeedsetEvaluator(const SocialGraph& g, double p, double beta, std::size_t realizations, std::uint64_t master_seed,
                   std::size_t workers = 1)
      : graph_(&g), p_(p), beta_(beta), realizations_(realizations), master_seed_(master_seed), workers_(workers) {
    check_beta(beta);
  }

  SeedsetScore score(const Seedset& s) {
    auto key = s.sorted();
    {
      std::shared_lock lock(mutex_);
      if (const auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    const SeedsetScore value = evaluate_seedset(*graph_, key, p_, beta_, realizations_, master_seed_, workers_);
    std::unique_lock lock(mutex_);
    return memo_.emplace(std::move(key), value).first->second;
  }

  std::size_t memo_size() const {
    std::shared_lock lock(mutex_);
    return memo_.size();
  }

  double p() const noexcept { return p_; }
  double beta() const noexcept { return beta_; }
  std::size_t realizations() const noexcept { return realizations_; }
  std::uint64_t master_seed() const noexcept { return master_seed_; }

 private:
  const SocialGraph* graph_;
  double p_;
  double beta_;
  std::size_t realizations_;
  std::uint64_t master_seed_;
  std::size_t workers_;
  mutable std::shared_mutex mutex_;
  std::map<std::vector<NodeId>, SeedsetScore> memo_;
};

enum class StepBranch { accepted, retained, restarted };

/// Everything one step decided, for tracing and testing.
struct S3DStep {
  Seedset current;    // input after dedupe and random refill
  Seedset candidate;  // set built from the reach pool
  double current_energy = 0.0;
  double candidate_energy = 0.0;
  double accept_prob = 0.0;
  StepBranch branch = StepBranch::retained;
  Seedset next;
};

/// min(1, exp(multiplier * (E_current - E_candidate))).
inline double acceptance_probability(double current_energy, double candidate_energy, double multiplier) {
  const double a = std::exp(multiplier * (current_energy - candidate_energy));
  return std::clamp(a, 0.0, 1.0);
}

struct S3DResult {
  Seedset best;
  SeedsetScore best_score;
  SeedsetScore initial_score;
  std::size_t accepted = 0;
  std::size_t retained = 0;
  std::size_t restarted = 0;
  std::size_t distinct_evaluated = 0;
  std::uint64_t cascade_probes = 0;
};

/// Stochastic seedset selection descent on one graph at one p.
///
/// Energies are negative beta-fairness, so descending the energy raises
/// fairness. A step samples a candidate from the nodes the current set
/// reaches, then accepts it Metropolis-style; a rejected candidate leaves
/// the current set in place except for rare uniformly random restarts.
class S3DSearch {
 public:
  S3DSearch(const SocialGraph& g, double p, S3DParams params)
      : graph_(&g),
        p_(p),
        params_(params),
        max_horizon_(static_cast<std::size_t>(diameter(g))),
        evaluator_(g, p, params.beta, params.evaluation_realizations, params.master_seed, params.workers) {
    detail::check_probability(p, "S3DSearch");
    params_.validate();
  }

  std::size_t max_horizon() const noexcept { return max_horizon_; }
  const S3DParams& params() const noexcept { return params_; }
  SeedsetEvaluator& evaluator() noexcept { return evaluator_; }
  std::uint64_t cascade_probes() const noexcept { return probes_; }

  S3DStep step(const Seedset& seeds, SplitMix64& rng) {
    const SocialGraph& g = *graph_;
    const std::size_t k = seeds.size();
    if (k == 0) throw std::invalid_argument("s3d_step: seedset is empty");
    if (k > g.node_count()) throw std::invalid_argument("s3d_step: seedset larger than the graph");
    for (const NodeId v : seeds.nodes) {
      if (!g.contains(v)) throw std::invalid_argument("s3d_step: seed id out of range");
    }

    S3DStep out;
    out.current = fit_to_size(distinct(seeds), k, rng);

    ReachFrequency pool = seedset_reach(g, out.current.view(), p_, max_horizon_, params_.realizations, rng(),
                                        params_.workers, &probes_);
    std::vector<char> chosen(g.node_count(), 0);
    out.candidate.nodes.reserve(k);
    for (std::size_t t = 0; t < k; ++t) {
      if (t > 0) {
        const NodeId last = out.candidate.nodes.back();
        const auto shallow = seedset_reach(g, std::span<const NodeId>(&last, 1), p_, params_.shallow_horizon,
                                           params_.realizations, rng(), params_.workers, &probes_);
        pool.subtract_saturating(shallow);
      }
      for (const NodeId v : out.candidate.nodes) pool.counts[v] = 0;
      const NodeId next = pool.total() > 0 ? sample_weighted(pool, rng) : sample_unchosen(chosen, rng);
      chosen[next] = 1;
      out.candidate.nodes.push_back(next);
    }

    out.current_energy = -evaluator_.score(out.current).beta_fairness;
    out.candidate_energy = -evaluator_.score(out.candidate).beta_fairness;
    out.accept_prob = acceptance_probability(out.current_energy, out.candidate_energy, params_.exploit_to_explore);

    if (rng.uniform() < out.accept_prob) {
      out.branch = StepBranch::accepted;
      out.next = out.candidate;
    } else if (rng.uniform() < params_.retention_prob) {
      out.branch = StepBranch::retained;
      out.next = out.current;
    } else {
      out.branch = StepBranch::restarted;
      out.next = random_seedset(k, rng);
    }
    return out;
  }

  /// Runs params.iterations steps from s0 and returns the visited seedset
  /// with the highest memoized beta-fairness. s0 is a candidate too and
  /// wins ties, so the result never scores below it.
  S3DResult iterate(const Seedset& s0) {
    validate_seedset(*graph_, s0);
    if (s0.size() == 0) throw std::invalid_argument("s3d_iterate: seedset is empty");
    SplitMix64 rng(derive_stream(params_.master_seed, kSearchStream));
    S3DResult result;
    result.best = s0;
    result.initial_score = evaluator_.score(s0);
    result.best_score = result.initial_score;
    Seedset current = s0;
    for (std::size_t it = 0; it < params_.iterations; ++it) {
      S3DStep s = step(current, rng);
      switch (s.branch) {
        case StepBranch::accepted: ++result.accepted; break;
        case StepBranch::retained: ++result.retained; break;
        case StepBranch::restarted: ++result.restarted; break;
      }
      current = std::move(s.next);
      const SeedsetScore score = evaluator_.score(current);
      if (score.beta_fairness > result.best_score.beta_fairness) {
        result.best = current;
        result.best_score = score;
      }
    }
    result.distinct_evaluated = evaluator_.memo_size();
    result.cascade_probes = probes_;
    return result;
  }

 private:
  static constexpr std::uint64_t kSearchStream = 0x533344;

  static Seedset distinct(const Seedset& s) {
    Seedset out;
    for (const NodeId v : s.nodes) {
      if (std::find(out.nodes.begin(), out.nodes.end(), v) == out.nodes.end()) out.nodes.push_back(v);
    }
    return out;
  }

  // Pads with uniformly random nodes not yet in the set.
  Seedset fit_to_size(Seedset s, std::size_t k, SplitMix64& rng) const {
    if (s.size() >= k) return s;
    std::vector<char> in(graph_->node_count(), 0);
    for (const NodeId v : s.nodes) in[v] = 1;
    while (s.size() < k) {
      const auto v = static_cast<NodeId>(rng.below(graph_->node_count()));
      if (!in[v]) {
        in[v] = 1;
        s.nodes.push_back(v);
      }
    }
    return s;
  }

  static NodeId sample_weighted(const ReachFrequency& pool, SplitMix64& rng) {
    std::uint64_t target = rng.below(pool.total());
    for (NodeId v = 0; v < pool.counts.size(); ++v) {
      if (target < pool.counts[v]) return v;
      target -= pool.counts[v];
    }
    throw std::logic_error("sample_weighted: target beyond pool total");
  }

  static NodeId sample_unchosen(const std::vector<char>& chosen, SplitMix64& rng) {
    const auto free = static_cast<std::uint64_t>(std::count(chosen.begin(), chosen.end(), 0));
    std::uint64_t target = rng.below(free);
    for (NodeId v = 0; v < chosen.size(); ++v) {
      if (chosen[v]) continue;
      if (target == 0) return v;
      --target;
    }
    throw std::logic_error("sample_unchosen: no free node");
  }

  // k distinct nodes, uniformly (partial Fisher-Yates).
  Seedset random_seedset(std::size_t k, SplitMix64& rng) const {
    std::vector<NodeId> ids(graph_->node_count());
    std::iota(ids.begin(), ids.end(), NodeId{0});
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + rng.below(ids.size() - i);
      std::swap(ids[i], ids[j]);
    }
    ids.resize(k);
    return Seedset{std::move(ids)};
  }

  const SocialGraph* graph_;
  double p_;
  S3DParams params_;
  std::size_t max_horizon_;
  SeedsetEvaluator evaluator_;
  std::uint64_t probes_ = 0;
};

/// One step from `seeds` with a fresh search context.
inline Seedset s3d_step(const SocialGraph& g, const Seedset& seeds, double p, const S3DParams& params,
                        SplitMix64& rng) {
  S3DSearch search(g, p, params);
  return search.step(seeds, rng).next;
}

inline Seedset s3d_iterate(const SocialGraph& g, const Seedset& s0, double p, const S3DParams& params) {
  S3DSearch search(g, p, params);
  return search.iterate(s0).best;
}

}  // namespace fairspread
