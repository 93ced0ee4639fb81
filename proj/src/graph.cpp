#include "commscope/graph.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "commscope/error.hpp"

namespace commscope {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::parse: return "parse";
    case Errc::self_loop: return "self_loop";
    case Errc::unknown_node: return "unknown_node";
    case Errc::duplicate_assignment: return "duplicate_assignment";
    case Errc::incomplete_partition: return "incomplete_partition";
    case Errc::unknown_community: return "unknown_community";
    case Errc::empty_set: return "empty_set";
    case Errc::type_mismatch: return "type_mismatch";
    case Errc::degenerate_table: return "degenerate_table";
    case Errc::insufficient_data: return "insufficient_data";
    case Errc::absent: return "absent";
    case Errc::config: return "config";
    case Errc::io: return "io";
  }
  return "unknown";
}

std::optional<NodeIndex> Graph::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeIndex Graph::index_of(std::string_view id) const {
  if (auto u = find(id)) return *u;
  throw Error(Errc::unknown_node, "unknown node '" + std::string(id) + "'");
}

bool Graph::has_link(NodeIndex u, NodeIndex v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::pair<NodeIndex, NodeIndex>> Graph::links() const {
  std::vector<std::pair<NodeIndex, NodeIndex>> out;
  out.reserve(link_count_);
  for (NodeIndex u = 0; u < node_count(); ++u)
    for (NodeIndex v : neighbors(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

std::string Graph::to_edge_list() const {
  std::vector<std::pair<std::string_view, std::string_view>> named;
  named.reserve(link_count_);
  for (auto [u, v] : links()) {
    std::string_view a = ids_[u], b = ids_[v];
    if (b < a) std::swap(a, b);
    named.emplace_back(a, b);
  }
  std::sort(named.begin(), named.end());
  std::string out;
  for (auto [a, b] : named) {
    out.append(a);
    out.push_back(' ');
    out.append(b);
    out.push_back('\n');
  }
  return out;
}

bool Graph::operator==(const Graph& other) const {
  if (node_count() != other.node_count() || link_count_ != other.link_count_) return false;
  for (NodeIndex u = 0; u < node_count(); ++u) {
    auto w = other.find(ids_[u]);
    if (!w || degree(u) != other.degree(*w)) return false;
    for (NodeIndex v : neighbors(u)) {
      auto x = other.find(ids_[v]);
      if (!x || !other.has_link(*w, *x)) return false;
    }
  }
  return true;
}

NodeIndex GraphBuilder::add_node(std::string_view id) {
  if (id.empty()) throw Error(Errc::parse, "empty node identifier");
  auto [it, inserted] = index_.try_emplace(std::string(id), static_cast<NodeIndex>(ids_.size()));
  if (inserted) {
    ids_.emplace_back(id);
    adjacency_.emplace_back();
  }
  return it->second;
}

bool GraphBuilder::add_link(std::string_view a, std::string_view b) {
  if (a == b) throw Error(Errc::self_loop, "self-loop on node '" + std::string(a) + "'");
  NodeIndex u = add_node(a);
  NodeIndex v = add_node(b);
  const std::uint64_t key = (std::uint64_t{std::min(u, v)} << 32) | std::max(u, v);
  if (!link_keys_.insert(key).second) {
    ++duplicates_;
    return false;
  }
  adjacency_[u].push_back(v);
  adjacency_[v].push_back(u);
  return true;
}

Graph GraphBuilder::build() && {
  Graph g;
  g.ids_ = std::move(ids_);
  g.index_ = std::move(index_);
  g.offsets_.assign(1, 0);
  g.offsets_.reserve(adjacency_.size() + 1);
  std::size_t ends = 0;
  for (auto& nb : adjacency_) {
    std::sort(nb.begin(), nb.end());
    ends += nb.size();
    g.offsets_.push_back(ends);
  }
  g.targets_.reserve(ends);
  for (const auto& nb : adjacency_) g.targets_.insert(g.targets_.end(), nb.begin(), nb.end());
  g.link_count_ = ends / 2;
  adjacency_.clear();
  link_keys_.clear();
  return g;
}

CommunityStructure CommunityStructure::from_labels(std::shared_ptr<const Graph> graph,
                                                   std::span<const std::string> labels) {
  if (labels.size() != graph->node_count())
    throw Error(Errc::incomplete_partition, "partition does not cover every node");
  std::unordered_map<std::string, CommunityIndex> dense;
  std::vector<std::string> names;
  std::vector<CommunityIndex> assignment(labels.size());
  for (std::size_t u = 0; u < labels.size(); ++u) {
    auto [it, inserted] = dense.try_emplace(labels[u], static_cast<CommunityIndex>(names.size()));
    if (inserted) names.push_back(labels[u]);
    assignment[u] = it->second;
  }
  return from_assignment(std::move(graph), std::move(assignment), std::move(names));
}

CommunityStructure CommunityStructure::from_assignment(std::shared_ptr<const Graph> graph,
                                                       std::vector<CommunityIndex> assignment,
                                                       std::vector<std::string> community_labels) {
  if (assignment.size() != graph->node_count())
    throw Error(Errc::incomplete_partition, "partition does not cover every node");
  CommunityStructure cs;
  cs.graph_ = std::move(graph);
  cs.assignment_ = std::move(assignment);
  cs.labels_ = std::move(community_labels);
  cs.members_.assign(cs.labels_.size(), {});
  for (NodeIndex u = 0; u < cs.assignment_.size(); ++u) {
    CommunityIndex c = cs.assignment_[u];
    if (c >= cs.labels_.size())
      throw Error(Errc::unknown_community, "community index out of range for node '" +
                                               cs.graph_->id(u) + "'");
    cs.members_[c].push_back(u);
  }
  for (CommunityIndex c = 0; c < cs.members_.size(); ++c)
    if (cs.members_[c].empty())
      throw Error(Errc::unknown_community, "community '" + cs.labels_[c] + "' has no members");
  cs.tally();
  return cs;
}

void CommunityStructure::tally() {
  internal_.assign(count(), 0);
  boundary_.assign(count(), 0);
  volume_.assign(count(), 0);
  const Graph& g = *graph_;
  for (NodeIndex u = 0; u < g.node_count(); ++u) {
    volume_[assignment_[u]] += g.degree(u);
    for (NodeIndex v : g.neighbors(u)) {
      if (v < u) continue;
      CommunityIndex cu = assignment_[u], cv = assignment_[v];
      if (cu == cv) {
        ++internal_[cu];
      } else {
        ++boundary_[cu];
        ++boundary_[cv];
      }
    }
  }
}

void CommunityStructure::check(CommunityIndex i) const {
  if (i >= count())
    throw Error(Errc::unknown_community, "unknown community index " + std::to_string(i));
}

std::size_t internal_degree(const CommunityStructure& cs, NodeIndex u) {
  const CommunityIndex own = cs.community_of(u);
  std::size_t k = 0;
  for (NodeIndex v : cs.graph().neighbors(u))
    if (cs.community_of(v) == own) ++k;
  return k;
}

std::size_t internal_triangles(const CommunityStructure& cs, NodeIndex u) {
  const Graph& g = cs.graph();
  const CommunityIndex own = cs.community_of(u);
  std::vector<NodeIndex> inner;
  for (NodeIndex v : g.neighbors(u))
    if (cs.community_of(v) == own) inner.push_back(v);
  // `inner` is sorted since neighbor lists are; count v < w pairs that link.
  std::size_t t = 0;
  for (std::size_t a = 0; a < inner.size(); ++a) {
    auto nb = g.neighbors(inner[a]);
    auto it = nb.begin();
    for (std::size_t b = a + 1; b < inner.size(); ++b) {
      it = std::lower_bound(it, nb.end(), inner[b]);
      if (it == nb.end()) break;
      if (*it == inner[b]) ++t;
    }
  }
  return t;
}

NodeCommunityProfile node_profile(const CommunityStructure& cs, NodeIndex u) {
  const Graph& g = cs.graph();
  if (u >= g.node_count())
    throw Error(Errc::unknown_node, "unknown node index " + std::to_string(u));
  NodeCommunityProfile p;
  p.node = u;
  p.degree = g.degree(u);
  p.community_degrees.assign(cs.count(), 0);
  for (NodeIndex v : g.neighbors(u)) ++p.community_degrees[cs.community_of(v)];
  p.internal_degree = p.community_degrees[cs.community_of(u)];
  p.internal_triangles = internal_triangles(cs, u);
  return p;
}

NodeCommunityProfile node_profile(const CommunityStructure& cs, std::string_view id) {
  return node_profile(cs, cs.graph().index_of(id));
}

}  // namespace commscope
