#include "commscope/topology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <queue>

#include "commscope/error.hpp"
#include "commscope/ncp.hpp"

namespace commscope {
namespace {

void check_node(const CommunityStructure& cs, NodeIndex u) {
  if (u >= cs.graph().node_count())
    throw Error(Errc::unknown_node, "unknown node index " + std::to_string(u));
}

struct DegreeMoments {
  std::int64_t n = 0;
  std::int64_t sum = 0;
  std::int64_t sum_sq = 0;
  std::int64_t max = 0;
};

DegreeMoments internal_moments(const CommunityStructure& cs, CommunityIndex i) {
  DegreeMoments dm;
  for (NodeIndex u : cs.members(i)) {
    auto k = static_cast<std::int64_t>(internal_degree(cs, u));
    ++dm.n;
    dm.sum += k;
    dm.sum_sq += k * k;
    dm.max = std::max(dm.max, k);
  }
  return dm;
}

// Sum of a set of values independent of the order they were produced in.
double canonical_sum(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  double s = 0;
  for (double x : values) s += x;
  return s;
}

}  // namespace

std::optional<double> link_density(const CommunityStructure& cs, CommunityIndex i) {
  cs.check(i);
  const auto n = static_cast<double>(cs.size(i));
  if (cs.size(i) < 2) return std::nullopt;
  return 2.0 * static_cast<double>(cs.internal_links(i)) / (n * (n - 1));
}

std::optional<double> scaled_density(const CommunityStructure& cs, CommunityIndex i) {
  cs.check(i);
  if (cs.size(i) < 2) return std::nullopt;
  // n * 2m / (n(n-1)) reduced, so trees give exactly 2 and cliques exactly n.
  return 2.0 * static_cast<double>(cs.internal_links(i)) / static_cast<double>(cs.size(i) - 1);
}

DistanceStats average_distance(const CommunityStructure& cs, CommunityIndex i) {
  cs.check(i);
  DistanceStats out;
  auto members = cs.members(i);
  const std::size_t n = members.size();
  if (n < 2) return out;
  out.total_pairs = n * (n - 1) / 2;

  const Graph& g = cs.graph();
  std::vector<std::size_t> offsets{0};
  std::vector<std::uint32_t> targets;
  {
    // Members are sorted by node index, so local ids come from binary search.
    auto local = [&](NodeIndex v) {
      return static_cast<std::uint32_t>(std::lower_bound(members.begin(), members.end(), v) -
                                        members.begin());
    };
    for (NodeIndex u : members) {
      for (NodeIndex v : g.neighbors(u))
        if (cs.community_of(v) == i) targets.push_back(local(v));
      offsets.push_back(targets.size());
    }
  }

  std::uint64_t distance_sum = 0;
  std::vector<std::int32_t> dist(n);
  std::vector<std::uint32_t> frontier;
  frontier.reserve(n);
  for (std::uint32_t s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    frontier.clear();
    frontier.push_back(s);
    for (std::size_t head = 0; head < frontier.size(); ++head) {
      std::uint32_t x = frontier[head];
      for (std::size_t e = offsets[x]; e < offsets[x + 1]; ++e) {
        std::uint32_t y = targets[e];
        if (dist[y] >= 0) continue;
        dist[y] = dist[x] + 1;
        frontier.push_back(y);
        if (y > s) {
          ++out.reachable_pairs;
          distance_sum += static_cast<std::uint64_t>(dist[y]);
        }
      }
    }
  }
  out.reachable_fraction =
      static_cast<double>(out.reachable_pairs) / static_cast<double>(out.total_pairs);
  if (out.reachable_pairs > 0)
    out.mean = static_cast<double>(distance_sum) / static_cast<double>(out.reachable_pairs);
  return out;
}

std::optional<double> local_transitivity(const CommunityStructure& cs, NodeIndex u) {
  check_node(cs, u);
  const auto k = static_cast<double>(internal_degree(cs, u));
  if (k < 2) return std::nullopt;
  return 2.0 * static_cast<double>(internal_triangles(cs, u)) / (k * (k - 1));
}

TransitivityMean mean_transitivity(const CommunityStructure& cs, CommunityIndex i) {
  cs.check(i);
  TransitivityMean out;
  std::vector<double> values;
  for (NodeIndex u : cs.members(i)) {
    if (auto t = local_transitivity(cs, u)) {
      values.push_back(*t);
    } else {
      ++out.skipped_nodes;
    }
  }
  out.defined_nodes = values.size();
  if (!values.empty()) out.mean = canonical_sum(std::move(values)) / static_cast<double>(out.defined_nodes);
  return out;
}

std::optional<double> inter_community_proportion(const CommunityStructure& cs) {
  const std::size_t m = cs.graph().link_count();
  if (m == 0) return std::nullopt;
  std::size_t internal = 0;
  for (CommunityIndex i = 0; i < cs.count(); ++i) internal += cs.internal_links(i);
  return static_cast<double>(m - internal) / static_cast<double>(m);
}

std::optional<double> hub_dominance(const CommunityStructure& cs, CommunityIndex i) {
  cs.check(i);
  if (cs.size(i) < 2) return std::nullopt;
  auto dm = internal_moments(cs, i);
  return static_cast<double>(dm.max) / static_cast<double>(cs.size(i) - 1);
}

std::optional<double> embeddedness(const CommunityStructure& cs, NodeIndex u) {
  check_node(cs, u);
  const std::size_t k = cs.graph().degree(u);
  if (k == 0) return std::nullopt;
  return static_cast<double>(internal_degree(cs, u)) / static_cast<double>(k);
}

InternalDegreeStats internal_degree_stats(const CommunityStructure& cs, CommunityIndex i) {
  cs.check(i);
  auto dm = internal_moments(cs, i);
  const auto n = static_cast<double>(dm.n);
  const auto spread = static_cast<double>(dm.n * dm.sum_sq - dm.sum * dm.sum);
  return {static_cast<double>(dm.sum) / n, std::sqrt(spread) / n};
}

double within_community_degree(const CommunityStructure& cs, NodeIndex u) {
  check_node(cs, u);
  auto dm = internal_moments(cs, cs.community_of(u));
  const std::int64_t spread = dm.n * dm.sum_sq - dm.sum * dm.sum;
  if (spread == 0) return 0.0;
  const auto k = static_cast<std::int64_t>(internal_degree(cs, u));
  // (k - mean) / sigma with both scaled by n to stay in integers until the end.
  return static_cast<double>(dm.n * k - dm.sum) / std::sqrt(static_cast<double>(spread));
}

double participation_coefficient(const CommunityStructure& cs, NodeIndex u) {
  check_node(cs, u);
  const Graph& g = cs.graph();
  const std::size_t k = g.degree(u);
  if (k == 0) return 0.0;
  std::vector<CommunityIndex> seen;
  seen.reserve(k);
  for (NodeIndex v : g.neighbors(u)) seen.push_back(cs.community_of(v));
  std::sort(seen.begin(), seen.end());
  std::uint64_t squares = 0;
  for (std::size_t a = 0; a < seen.size();) {
    std::size_t b = a;
    while (b < seen.size() && seen[b] == seen[a]) ++b;
    squares += static_cast<std::uint64_t>(b - a) * (b - a);
    a = b;
  }
  const auto kk = static_cast<std::uint64_t>(k) * k;
  return static_cast<double>(kk - squares) / static_cast<double>(kk);
}

std::optional<ModularityResult> modularity(const CommunityStructure& cs) {
  const auto m = static_cast<std::int64_t>(cs.graph().link_count());
  if (m == 0) return std::nullopt;
  // Q = sum_i (4 m m_i - vol_i^2) / (4 m^2), accumulated exactly.
  const double denom = 4.0 * static_cast<double>(m) * static_cast<double>(m);
  ModularityResult out;
  out.terms.reserve(cs.count());
  std::int64_t numerator = 0;
  for (CommunityIndex i = 0; i < cs.count(); ++i) {
    const auto vol = static_cast<std::int64_t>(cs.volume(i));
    const std::int64_t term = 4 * m * static_cast<std::int64_t>(cs.internal_links(i)) - vol * vol;
    numerator += term;
    out.terms.push_back(static_cast<double>(term) / denom);
  }
  out.total = static_cast<double>(numerator) / denom;
  return out;
}

std::optional<ModularityResult> boundary_modularity(const CommunityStructure& cs) {
  const auto m = static_cast<std::int64_t>(cs.graph().link_count());
  if (m == 0) return std::nullopt;
  // m_{i+} = b_i / 2, so q_i = (4 m m_i - b_i^2) / (4 m^2).
  const double denom = 4.0 * static_cast<double>(m) * static_cast<double>(m);
  ModularityResult out;
  std::int64_t numerator = 0;
  for (CommunityIndex i = 0; i < cs.count(); ++i) {
    const auto b = static_cast<std::int64_t>(cs.boundary_links(i));
    const std::int64_t term = 4 * m * static_cast<std::int64_t>(cs.internal_links(i)) - b * b;
    numerator += term;
    out.terms.push_back(static_cast<double>(term) / denom);
  }
  out.total = static_cast<double>(numerator) / denom;
  return out;
}

CommunitySummary summarize_community(const CommunityStructure& cs, CommunityIndex i) {
  cs.check(i);
  CommunitySummary s;
  s.index = i;
  s.size = cs.size(i);
  s.internal_links = cs.internal_links(i);
  s.boundary_links = cs.boundary_links(i);
  s.density = link_density(cs, i);
  s.scaled_density = scaled_density(cs, i);
  s.distance = average_distance(cs, i);
  s.transitivity = mean_transitivity(cs, i);
  s.hub_dominance = hub_dominance(cs, i);
  auto stats = internal_degree_stats(cs, i);
  s.internal_degree_mean = stats.mean;
  s.internal_degree_stddev = stats.stddev;
  const auto m = static_cast<std::int64_t>(cs.graph().link_count());
  if (m > 0) {
    const auto vol = static_cast<std::int64_t>(cs.volume(i));
    s.modularity_term =
        static_cast<double>(4 * m * static_cast<std::int64_t>(s.internal_links) - vol * vol) /
        (4.0 * static_cast<double>(m) * static_cast<double>(m));
  }
  s.conductance = community_conductance(cs, i);
  return s;
}

std::vector<CommunitySummary> summarize_communities(const CommunityStructure& cs) {
  std::vector<CommunitySummary> out;
  out.reserve(cs.count());
  for (CommunityIndex i = 0; i < cs.count(); ++i) out.push_back(summarize_community(cs, i));
  return out;
}

StructureSummary structure_summary(const CommunityStructure& cs) {
  StructureSummary s;
  s.community_count = cs.count();
  s.node_count = cs.graph().node_count();
  s.link_count = cs.graph().link_count();
  for (CommunityIndex i = 0; i < cs.count(); ++i) {
    s.sizes.push_back(cs.size(i));
    ++s.size_histogram[cs.size(i)];
  }
  s.inter_community_proportion = inter_community_proportion(cs);
  if (auto q = modularity(cs)) s.modularity = q->total;
  return s;
}

std::vector<NodeMeasures> node_measures(const CommunityStructure& cs) {
  const Graph& g = cs.graph();
  std::vector<DegreeMoments> moments(cs.count());
  for (CommunityIndex i = 0; i < cs.count(); ++i) moments[i] = internal_moments(cs, i);
  std::vector<NodeMeasures> out;
  out.reserve(g.node_count());
  for (NodeIndex u = 0; u < g.node_count(); ++u) {
    NodeMeasures nm;
    nm.node = u;
    nm.community = cs.community_of(u);
    nm.degree = g.degree(u);
    nm.internal_degree = internal_degree(cs, u);
    nm.embeddedness = embeddedness(cs, u);
    const auto& dm = moments[nm.community];
    const std::int64_t spread = dm.n * dm.sum_sq - dm.sum * dm.sum;
    nm.within_degree =
        spread == 0 ? 0.0
                    : static_cast<double>(dm.n * static_cast<std::int64_t>(nm.internal_degree) - dm.sum) /
                          std::sqrt(static_cast<double>(spread));
    nm.participation = participation_coefficient(cs, u);
    nm.transitivity = local_transitivity(cs, u);
    out.push_back(nm);
  }
  return out;
}

}  // namespace commscope
