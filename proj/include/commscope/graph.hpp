#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace commscope {

using NodeIndex = std::uint32_t;
using CommunityIndex = std::uint32_t;

/// Immutable simple undirected graph over string-identified nodes.
///
/// Nodes are kept in insertion order; neighbor lists are sorted by node index.
/// Equality compares labeled structure (same identifiers, same links), not
/// insertion order.
class Graph {
 public:
  Graph() = default;

  std::size_t node_count() const noexcept { return ids_.size(); }
  std::size_t link_count() const noexcept { return link_count_; }

  const std::string& id(NodeIndex u) const { return ids_.at(u); }
  const std::vector<std::string>& ids() const noexcept { return ids_; }

  std::optional<NodeIndex> find(std::string_view id) const;
  /// Throws Error(unknown_node) when absent.
  NodeIndex index_of(std::string_view id) const;

  std::span<const NodeIndex> neighbors(NodeIndex u) const {
    return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
  }
  std::size_t degree(NodeIndex u) const { return offsets_[u + 1] - offsets_[u]; }
  bool has_link(NodeIndex u, NodeIndex v) const;

  /// Each link once as (u, v) with u < v, ordered by (u, v).
  std::vector<std::pair<NodeIndex, NodeIndex>> links() const;

  /// Canonical edge-list text: one "u v" line per link, ordered by identifier.
  std::string to_edge_list() const;

  bool operator==(const Graph& other) const;

 private:
  friend class GraphBuilder;

  std::vector<std::string> ids_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeIndex> targets_;
  std::size_t link_count_ = 0;
};

/// Incremental construction of a Graph. Rejects self-loops, collapses repeated
/// links and counts how many were collapsed.
class GraphBuilder {
 public:
  NodeIndex add_node(std::string_view id);
  /// Returns false when the link was already present.
  bool add_link(std::string_view a, std::string_view b);

  std::size_t duplicate_links() const noexcept { return duplicates_; }

  Graph build() &&;

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::vector<std::vector<NodeIndex>> adjacency_;
  std::unordered_set<std::uint64_t> link_keys_;
  std::size_t duplicates_ = 0;
};

/// Partition of a graph's node set into dense communities 0..count()-1 with
/// cached link tallies. Holds a shared reference to its graph.
class CommunityStructure {
 public:
  /// `labels[u]` is the community label of node u. Labels are densified in
  /// first-appearance order over node indices.
  static CommunityStructure from_labels(std::shared_ptr<const Graph> graph,
                                        std::span<const std::string> labels);

  /// `assignment[u]` indexes `community_labels`; every community must be non-empty.
  static CommunityStructure from_assignment(std::shared_ptr<const Graph> graph,
                                            std::vector<CommunityIndex> assignment,
                                            std::vector<std::string> community_labels);

  const Graph& graph() const noexcept { return *graph_; }
  const std::shared_ptr<const Graph>& graph_ptr() const noexcept { return graph_; }

  std::size_t count() const noexcept { return members_.size(); }
  CommunityIndex community_of(NodeIndex u) const { return assignment_.at(u); }
  const std::vector<CommunityIndex>& assignment() const noexcept { return assignment_; }

  /// Throws Error(unknown_community) for an out-of-range index.
  void check(CommunityIndex i) const;

  const std::string& label(CommunityIndex i) const { return labels_.at(i); }
  std::span<const NodeIndex> members(CommunityIndex i) const { return members_.at(i); }
  std::size_t size(CommunityIndex i) const { return members_.at(i).size(); }
  /// m_i: links with both endpoints in community i.
  std::size_t internal_links(CommunityIndex i) const { return internal_.at(i); }
  /// Links with exactly one endpoint in community i.
  std::size_t boundary_links(CommunityIndex i) const { return boundary_.at(i); }
  /// m_{i+}: half of boundary_links(i).
  double boundary_half_count(CommunityIndex i) const { return boundary_.at(i) / 2.0; }
  /// Sum of degrees of the members of community i.
  std::size_t volume(CommunityIndex i) const { return volume_.at(i); }

 private:
  void tally();

  std::shared_ptr<const Graph> graph_;
  std::vector<CommunityIndex> assignment_;
  std::vector<std::string> labels_;
  std::vector<std::vector<NodeIndex>> members_;
  std::vector<std::size_t> internal_;
  std::vector<std::size_t> boundary_;
  std::vector<std::size_t> volume_;
};

struct NodeCommunityProfile {
  NodeIndex node = 0;
  std::size_t degree = 0;
  std::size_t internal_degree = 0;
  /// Neighbors in each community, indexed by community.
  std::vector<std::size_t> community_degrees;
  /// Links among the node's same-community neighbors.
  std::size_t internal_triangles = 0;
};

NodeCommunityProfile node_profile(const CommunityStructure& cs, NodeIndex u);
NodeCommunityProfile node_profile(const CommunityStructure& cs, std::string_view id);

/// Internal degree only; cheaper than a full profile.
std::size_t internal_degree(const CommunityStructure& cs, NodeIndex u);

/// Links among the same-community neighbors of u.
std::size_t internal_triangles(const CommunityStructure& cs, NodeIndex u);

}  // namespace commscope
