#include "commscope/ncp.hpp"

#include <algorithm>
#include <map>

#include "commscope/error.hpp"

namespace commscope {
namespace {

std::optional<double> ratio(std::size_t cut, std::size_t vol_in, std::size_t vol_out) {
  if (vol_in == 0 && vol_out == 0) return std::nullopt;
  if (cut == 0) return 0.0;
  return static_cast<double>(cut) / static_cast<double>(std::min(vol_in, vol_out));
}

}  // namespace

std::optional<double> conductance(const Graph& graph, std::span<const NodeIndex> node_set) {
  if (node_set.empty()) throw Error(Errc::empty_set, "conductance of an empty node set");
  std::vector<char> inside(graph.node_count(), 0);
  for (NodeIndex u : node_set) {
    if (u >= graph.node_count())
      throw Error(Errc::unknown_node, "node index " + std::to_string(u) + " outside graph");
    inside[u] = 1;
  }
  std::size_t cut = 0, vol_in = 0;
  for (NodeIndex u = 0; u < graph.node_count(); ++u) {
    if (!inside[u]) continue;
    vol_in += graph.degree(u);
    for (NodeIndex v : graph.neighbors(u))
      if (!inside[v]) ++cut;
  }
  return ratio(cut, vol_in, 2 * graph.link_count() - vol_in);
}

std::optional<double> community_conductance(const CommunityStructure& cs, CommunityIndex i) {
  cs.check(i);
  const std::size_t vol = cs.volume(i);
  return ratio(cs.boundary_links(i), vol, 2 * cs.graph().link_count() - vol);
}

std::vector<NcpPoint> ncp_over_partition(const CommunityStructure& cs, NcpExtremum extremum) {
  std::map<std::size_t, NcpPoint> best;
  for (CommunityIndex i = 0; i < cs.count(); ++i) {
    auto phi = community_conductance(cs, i);
    if (!phi) continue;
    const std::size_t k = cs.size(i);
    auto [it, inserted] = best.try_emplace(k, NcpPoint{k, *phi, i});
    if (inserted) continue;
    const bool better = extremum == NcpExtremum::min ? *phi < it->second.conductance
                                                     : *phi > it->second.conductance;
    if (better) it->second = NcpPoint{k, *phi, i};
  }
  std::vector<NcpPoint> curve;
  curve.reserve(best.size());
  for (const auto& [k, point] : best) curve.push_back(point);
  return curve;
}

}  // namespace commscope
