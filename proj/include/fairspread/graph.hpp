#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fairspread/error.hpp"
#include "fairspread/random.hpp"

namespace fairspread {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

enum class Group : std::uint8_t { first = 1, second = 2 };

constexpr std::size_t group_index(Group g) noexcept { return g == Group::first ? 0 : 1; }
constexpr Group other(Group g) noexcept { return g == Group::first ? Group::second : Group::first; }

struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend constexpr bool operator==(const Edge&, const Edge&) = default;
  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

/// Counts of input edges discarded while building a graph.
struct BuildReport {
  std::size_t self_loops = 0;
  std::size_t duplicate_edges = 0;
};

/// Undirected, simple graph with a binary group label per node.
///
/// Immutable after construction. Adjacency is stored in CSR form; every
/// adjacency slot also carries the id of the undirected edge it belongs to,
/// so both directions of an edge share one id (and one diffusion coin).
class SocialGraph {
 public:
  SocialGraph(std::vector<Group> groups, std::span<const Edge> edges,
              std::vector<std::string> labels = {}, BuildReport* report = nullptr)
      : groups_(std::move(groups)), labels_(std::move(labels)) {
    const std::size_t n = groups_.size();
    if (n == 0) throw std::invalid_argument("SocialGraph: node_count must be at least 1");
    if (n > std::numeric_limits<NodeId>::max()) throw std::invalid_argument("SocialGraph: too many nodes");
    if (labels_.empty()) {
      labels_.reserve(n);
      for (std::size_t i = 0; i < n; ++i) labels_.push_back(std::to_string(i));
    } else if (labels_.size() != n) {
      throw std::invalid_argument("SocialGraph: label count does not match node count");
    }
    for (const Group g : groups_) {
      if (g != Group::first && g != Group::second) throw std::invalid_argument("SocialGraph: group must be 1 or 2");
      ++group_sizes_[group_index(g)];
    }

    BuildReport local;
    edges_.reserve(edges.size());
    for (const Edge& e : edges) {
      if (e.u >= n || e.v >= n) throw std::invalid_argument("SocialGraph: edge endpoint out of range");
      if (e.u == e.v) {
        ++local.self_loops;
        continue;
      }
      edges_.push_back(Edge{std::min(e.u, e.v), std::max(e.u, e.v)});
    }
    std::sort(edges_.begin(), edges_.end());
    const auto last = std::unique(edges_.begin(), edges_.end());
    local.duplicate_edges = static_cast<std::size_t>(edges_.end() - last);
    edges_.erase(last, edges_.end());
    if (report != nullptr) *report = local;

    offsets_.assign(n + 1, 0);
    for (const Edge& e : edges_) {
      ++offsets_[e.u + 1];
      ++offsets_[e.v + 1];
    }
    for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
    targets_.resize(offsets_[n]);
    slot_edges_.resize(offsets_[n]);
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (EdgeId id = 0; id < edges_.size(); ++id) {
      const Edge& e = edges_[id];
      targets_[cursor[e.u]] = e.v;
      slot_edges_[cursor[e.u]++] = id;
    }
    for (EdgeId id = 0; id < edges_.size(); ++id) {
      const Edge& e = edges_[id];
      targets_[cursor[e.v]] = e.u;
      slot_edges_[cursor[e.v]++] = id;
    }
    for (std::size_t v = 0; v < n; ++v) {
      // keep every adjacency list sorted by neighbor id
      const auto b = offsets_[v];
      const auto eoff = offsets_[v + 1];
      std::vector<std::pair<NodeId, EdgeId>> slots;
      slots.reserve(eoff - b);
      for (auto s = b; s < eoff; ++s) slots.emplace_back(targets_[s], slot_edges_[s]);
      std::sort(slots.begin(), slots.end());
      for (auto s = b; s < eoff; ++s) {
        targets_[s] = slots[s - b].first;
        slot_edges_[s] = slots[s - b].second;
      }
    }
  }

  std::size_t node_count() const noexcept { return groups_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  /// Edge ids parallel to neighbors(v).
  std::span<const EdgeId> incident_edges(NodeId v) const {
    return {slot_edges_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

  Group group(NodeId v) const { return groups_[v]; }
  std::span<const Group> groups() const noexcept { return groups_; }
  std::size_t group_size(Group g) const noexcept { return group_sizes_[group_index(g)]; }

  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  const std::string& label(NodeId v) const { return labels_[v]; }
  std::span<const std::string> labels() const noexcept { return labels_; }

  std::optional<NodeId> find(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i] == label) return static_cast<NodeId>(i);
    }
    return std::nullopt;
  }

  bool contains(NodeId v) const noexcept { return v < groups_.size(); }

  /// Throws std::invalid_argument unless both groups are nonempty.
  void require_both_groups(std::string_view who) const {
    if (group_sizes_[0] == 0 || group_sizes_[1] == 0) {
      throw std::invalid_argument(std::string(who) + ": both groups must be nonempty");
    }
  }

 private:
  std::vector<Group> groups_;
  std::vector<std::string> labels_;
  std::array<std::size_t, 2> group_sizes_{0, 0};
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
  std::vector<EdgeId> slot_edges_;
};

inline constexpr int kUnreached = -1;

/// Hop distances from `source`; unreachable nodes get kUnreached.
inline std::vector<int> bfs_distances(const SocialGraph& g, NodeId source) {
  std::vector<int> dist(g.node_count(), kUnreached);
  std::vector<NodeId> frontier{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const NodeId u = frontier[head];
    for (const NodeId w : g.neighbors(u)) {
      if (dist[w] == kUnreached) {
        dist[w] = dist[u] + 1;
        frontier.push_back(w);
      }
    }
  }
  return dist;
}

struct Components {
  std::vector<std::uint32_t> label;  // component index per node
  std::vector<std::size_t> sizes;
};

inline Components connected_components(const SocialGraph& g) {
  Components c;
  c.label.assign(g.node_count(), std::numeric_limits<std::uint32_t>::max());
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (c.label[s] != std::numeric_limits<std::uint32_t>::max()) continue;
    const auto id = static_cast<std::uint32_t>(c.sizes.size());
    c.sizes.push_back(0);
    c.label[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      ++c.sizes[id];
      for (const NodeId w : g.neighbors(u)) {
        if (c.label[w] == std::numeric_limits<std::uint32_t>::max()) {
          c.label[w] = id;
          stack.push_back(w);
        }
      }
    }
  }
  return c;
}

/// Per-component diameters by BFS from every node.
inline std::vector<int> component_diameters(const SocialGraph& g, const Components& comps) {
  std::vector<int> diam(comps.sizes.size(), 0);
  for (NodeId s = 0; s < g.node_count(); ++s) {
    const auto dist = bfs_distances(g, s);
    int ecc = 0;
    for (const int d : dist) ecc = std::max(ecc, d);
    auto& slot = diam[comps.label[s]];
    slot = std::max(slot, ecc);
  }
  return diam;
}

/// Max over connected components of the component diameter.
inline int diameter(const SocialGraph& g) {
  const auto comps = connected_components(g);
  const auto diam = component_diameters(g, comps);
  return diam.empty() ? 0 : *std::max_element(diam.begin(), diam.end());
}

struct GroupCensus {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  std::size_t size_g1 = 0;
  std::size_t size_g2 = 0;
  std::size_t cross_edges = 0;
  double cross_edge_fraction = 0.0;  // 0 when the graph has no edges
  double avg_degree = 0.0;
  int diameter = 0;                   // max over all components
  int largest_component_diameter = 0;
  std::size_t component_count = 0;
  std::size_t largest_component_size = 0;
};

inline GroupCensus census(const SocialGraph& g) {
  GroupCensus c;
  c.node_count = g.node_count();
  c.edge_count = g.edge_count();
  c.size_g1 = g.group_size(Group::first);
  c.size_g2 = g.group_size(Group::second);
  for (const Edge& e : g.edges()) {
    if (g.group(e.u) != g.group(e.v)) ++c.cross_edges;
  }
  c.cross_edge_fraction =
      c.edge_count == 0 ? 0.0 : static_cast<double>(c.cross_edges) / static_cast<double>(c.edge_count);
  c.avg_degree = 2.0 * static_cast<double>(c.edge_count) / static_cast<double>(c.node_count);

  const auto comps = connected_components(g);
  const auto diam = component_diameters(g, comps);
  c.component_count = comps.sizes.size();
  std::size_t largest = 0;
  for (std::size_t i = 0; i < comps.sizes.size(); ++i) {
    c.diameter = std::max(c.diameter, diam[i]);
    if (comps.sizes[i] > comps.sizes[largest]) largest = i;
  }
  c.largest_component_size = comps.sizes[largest];
  c.largest_component_diameter = diam[largest];
  return c;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

/// Splits on any run of whitespace and/or commas.
inline std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  for (const char ch : line) {
    if (ch == ',' || ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

inline std::optional<Group> parse_group(std::string_view s) {
  s = trim(s);
  if (s == "1") return Group::first;
  if (s == "2") return Group::second;
  return std::nullopt;
}

}  // namespace detail

/// Reads an edge list ("u v" per line, '#' comments) and a node attribute
/// table ("node,group", optional header). External ids are remapped to
/// dense ids in order of first appearance in the edge file, followed by
/// attribute-only (isolated) nodes in attribute-file order.
inline SocialGraph load_graph(std::istream& edge_in, std::istream& attr_in, BuildReport* report = nullptr) {
  std::unordered_map<std::string, Group> group_of;
  std::vector<std::string> attr_order;
  std::string line;
  std::size_t line_no = 0;
  bool seen_row = false;
  while (std::getline(attr_in, line)) {
    ++line_no;
    const auto body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto fields = detail::split_fields(body);
    if (fields.size() < 2) {
      throw DataError("attribute line " + std::to_string(line_no) + ": expected \"node,group\"");
    }
    const auto grp = detail::parse_group(fields[1]);
    if (!grp) {
      if (!seen_row) {  // header row
        seen_row = true;
        continue;
      }
      throw DataError("attribute line " + std::to_string(line_no) + ": group of node '" + fields[0] +
                      "' must be 1 or 2, got '" + fields[1] + "'");
    }
    seen_row = true;
    const auto [it, inserted] = group_of.emplace(fields[0], *grp);
    if (inserted) {
      attr_order.push_back(fields[0]);
    } else if (it->second != *grp) {
      throw DataError("attribute line " + std::to_string(line_no) + ": conflicting groups for node '" +
                      fields[0] + "'");
    }
  }

  std::unordered_map<std::string, NodeId> id_of;
  std::vector<std::string> labels;
  std::vector<Group> groups;
  auto intern = [&](const std::string& label, std::size_t where) -> NodeId {
    if (const auto it = id_of.find(label); it != id_of.end()) return it->second;
    const auto g = group_of.find(label);
    if (g == group_of.end()) {
      throw DataError("edge line " + std::to_string(where) + ": node '" + label + "' has no attribute row");
    }
    const auto id = static_cast<NodeId>(labels.size());
    id_of.emplace(label, id);
    labels.push_back(label);
    groups.push_back(g->second);
    return id;
  };

  std::vector<Edge> edges;
  line_no = 0;
  while (std::getline(edge_in, line)) {
    ++line_no;
    const auto body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto fields = detail::split_fields(body);
    if (fields.size() < 2) {
      throw DataError("edge line " + std::to_string(line_no) + ": expected two node tokens");
    }
    const NodeId u = intern(fields[0], line_no);
    const NodeId v = intern(fields[1], line_no);
    edges.push_back(Edge{u, v});
  }
  for (const auto& label : attr_order) {
    if (!id_of.contains(label)) intern(label, 0);
  }
  if (labels.empty()) throw DataError("graph has no nodes");
  return SocialGraph(std::move(groups), edges, std::move(labels), report);
}

inline SocialGraph load_graph(const std::string& edge_path, const std::string& attr_path,
                              BuildReport* report = nullptr) {
  std::ifstream edges(edge_path);
  if (!edges) throw DataError("cannot open edge file: " + edge_path);
  std::ifstream attrs(attr_path);
  if (!attrs) throw DataError("cannot open attribute file: " + attr_path);
  return load_graph(edges, attrs, report);
}

inline void save_graph(const SocialGraph& g, std::ostream& edge_out, std::ostream& attr_out) {
  for (const Edge& e : g.edges()) edge_out << g.label(e.u) << ' ' << g.label(e.v) << '\n';
  attr_out << "node,group\n";
  for (NodeId v = 0; v < g.node_count(); ++v) {
    attr_out << g.label(v) << ',' << static_cast<int>(g.group(v)) << '\n';
  }
}

inline void save_graph(const SocialGraph& g, const std::string& edge_path, const std::string& attr_path) {
  std::ofstream edges(edge_path);
  std::ofstream attrs(attr_path);
  if (!edges || !attrs) throw DataError("cannot write graph files: " + edge_path + ", " + attr_path);
  save_graph(g, edges, attrs);
}

/// Two-block stochastic block model. Nodes 0..n1-1 form group 1, the rest
/// group 2. Pairs are visited in lexicographic order with one uniform draw
/// each, so the output is a pure function of the arguments.
inline SocialGraph generate_sbm(std::size_t n1, std::size_t n2, double p_in, double p_out,
                                std::uint64_t rng_seed) {
  if (!(p_in >= 0.0 && p_in <= 1.0) || !(p_out >= 0.0 && p_out <= 1.0)) {
    throw std::invalid_argument("generate_sbm: probabilities must lie in [0, 1]");
  }
  const std::size_t n = n1 + n2;
  std::vector<Group> groups(n, Group::second);
  std::fill_n(groups.begin(), n1, Group::first);
  SplitMix64 rng(rng_seed);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      const double prob = groups[u] == groups[v] ? p_in : p_out;
      if (rng.uniform() < prob) edges.push_back(Edge{u, v});
    }
  }
  return SocialGraph(std::move(groups), edges);
}

/// Subgraph induced on one group; `original[i]` is the parent id of node i.
struct InducedSubgraph {
  SocialGraph graph;
  std::vector<NodeId> original;
};

inline InducedSubgraph induced_subgraph(const SocialGraph& g, Group which) {
  std::vector<NodeId> original;
  std::vector<NodeId> local(g.node_count(), std::numeric_limits<NodeId>::max());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.group(v) == which) {
      local[v] = static_cast<NodeId>(original.size());
      original.push_back(v);
    }
  }
  if (original.empty()) throw std::invalid_argument("induced_subgraph: group is empty");
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (g.group(e.u) == which && g.group(e.v) == which) edges.push_back(Edge{local[e.u], local[e.v]});
  }
  std::vector<std::string> labels;
  labels.reserve(original.size());
  for (const NodeId v : original) labels.push_back(g.label(v));
  std::vector<Group> groups(original.size(), which);
  return InducedSubgraph{SocialGraph(std::move(groups), edges, std::move(labels)), std::move(original)};
}

}  // namespace fairspread
