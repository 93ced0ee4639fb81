#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "commscope/graph.hpp"

namespace commscope {

/// cut(S) / min(vol(S), vol(V\S)). Zero when nothing crosses the cut;
/// undefined when both sides have zero volume. Throws on an empty set or an
/// out-of-range node.
std::optional<double> conductance(const Graph& graph, std::span<const NodeIndex> node_set);

/// Conductance of one detected community, using the cached tallies.
std::optional<double> community_conductance(const CommunityStructure& cs, CommunityIndex i);

enum class NcpExtremum { min, max };

struct NcpPoint {
  std::size_t size = 0;
  double conductance = 0;
  CommunityIndex witness = 0;
};

/// Extremal conductance per community size, over the detected communities only.
/// Sizes strictly increase; ties go to the lowest community index.
std::vector<NcpPoint> ncp_over_partition(const CommunityStructure& cs,
                                         NcpExtremum extremum = NcpExtremum::min);

}  // namespace commscope
