#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "commscope/graph.hpp"

namespace commscope {

// Static topological measures. An empty optional is the undefined marker:
// the measure's denominator vanishes for this input.

/// m_i / (n_i(n_i-1)/2); undefined for singletons.
std::optional<double> link_density(const CommunityStructure& cs, CommunityIndex i);

/// n_i times the link density; 2 for trees and n_i for cliques.
std::optional<double> scaled_density(const CommunityStructure& cs, CommunityIndex i);

struct DistanceStats {
  /// Mean hop count over reachable unordered pairs of the induced subgraph.
  std::optional<double> mean;
  /// Fraction of unordered pairs that are reachable; undefined for singletons.
  std::optional<double> reachable_fraction;
  std::size_t reachable_pairs = 0;
  std::size_t total_pairs = 0;
};

/// Geodesics are taken inside the subgraph induced by the community.
DistanceStats average_distance(const CommunityStructure& cs, CommunityIndex i);

/// t(u) / (k_int(u)(k_int(u)-1)/2); undefined when k_int(u) < 2.
std::optional<double> local_transitivity(const CommunityStructure& cs, NodeIndex u);

struct TransitivityMean {
  std::optional<double> mean;
  std::size_t defined_nodes = 0;
  std::size_t skipped_nodes = 0;
};

/// Mean local transitivity over the members where it is defined.
TransitivityMean mean_transitivity(const CommunityStructure& cs, CommunityIndex i);

/// 1 - sum(m_i)/m; undefined when the graph has no links.
std::optional<double> inter_community_proportion(const CommunityStructure& cs);

/// max internal degree / (n_i - 1); undefined for singletons.
std::optional<double> hub_dominance(const CommunityStructure& cs, CommunityIndex i);

/// k_int(u) / k(u); undefined for isolated nodes.
std::optional<double> embeddedness(const CommunityStructure& cs, NodeIndex u);

/// Population mean and standard deviation of internal degree in a community.
struct InternalDegreeStats {
  double mean = 0;
  double stddev = 0;
};
InternalDegreeStats internal_degree_stats(const CommunityStructure& cs, CommunityIndex i);

/// z-score of the internal degree within the node's community; 0 when the
/// community's internal degrees are all equal.
double within_community_degree(const CommunityStructure& cs, NodeIndex u);

/// 1 - sum_i (k_i(u)/k(u))^2; 0 for isolated nodes.
double participation_coefficient(const CommunityStructure& cs, NodeIndex u);

struct ModularityResult {
  double total = 0;
  /// q_i = m_i/m - (vol(C_i)/2m)^2, summing to `total`.
  std::vector<double> terms;
};

/// Degree-volume modularity; undefined when the graph has no links.
std::optional<ModularityResult> modularity(const CommunityStructure& cs);

/// Alternate form q_i = m_i/m - (m_{i+}/m)^2 that squares only the halved
/// boundary count. It does not equal the degree-volume form in general and is
/// exposed for comparison only.
std::optional<ModularityResult> boundary_modularity(const CommunityStructure& cs);

struct CommunitySummary {
  CommunityIndex index = 0;
  std::size_t size = 0;
  std::size_t internal_links = 0;
  std::size_t boundary_links = 0;
  std::optional<double> density;
  std::optional<double> scaled_density;
  DistanceStats distance;
  TransitivityMean transitivity;
  std::optional<double> hub_dominance;
  double internal_degree_mean = 0;
  double internal_degree_stddev = 0;
  std::optional<double> modularity_term;
  std::optional<double> conductance;
};

CommunitySummary summarize_community(const CommunityStructure& cs, CommunityIndex i);
std::vector<CommunitySummary> summarize_communities(const CommunityStructure& cs);

struct StructureSummary {
  std::size_t community_count = 0;
  std::size_t node_count = 0;
  std::size_t link_count = 0;
  std::vector<std::size_t> sizes;
  /// size -> number of communities of that size.
  std::map<std::size_t, std::size_t> size_histogram;
  std::optional<double> inter_community_proportion;
  std::optional<double> modularity;
};

StructureSummary structure_summary(const CommunityStructure& cs);

struct NodeMeasures {
  NodeIndex node = 0;
  CommunityIndex community = 0;
  std::size_t degree = 0;
  std::size_t internal_degree = 0;
  std::optional<double> embeddedness;
  double within_degree = 0;
  double participation = 0;
  std::optional<double> transitivity;
};

/// Node-level measures for every node, in node-index order.
std::vector<NodeMeasures> node_measures(const CommunityStructure& cs);

}  // namespace commscope
