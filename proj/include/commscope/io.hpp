#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <memory>
#include <string>

#include "commscope/attribute_table.hpp"
#include "commscope/dynamic_network.hpp"
#include "commscope/graph.hpp"
#include "commscope/warning.hpp"

namespace commscope {

struct LoadedGraph {
  Graph graph;
  std::size_t duplicate_links = 0;
  /// Lines that carried tokens beyond the two endpoints (weights included).
  std::size_t extra_token_lines = 0;
  Warnings warnings;
};

/// Whitespace-separated edge list; `#` starts a comment line.
LoadedGraph load_graph(std::istream& in);

/// "node<TAB>label" lines. Without a tab the line is split on whitespace.
CommunityStructure load_communities(std::istream& in, std::shared_ptr<const Graph> graph);

using KindOverrides = std::map<std::string, AttributeKind, std::less<>>;

struct LoadedAttributes {
  AttributeTable table;
  std::size_t missing_values = 0;
  Warnings warnings;
};

/// CSV with a header row whose first column is `node`. A column is numeric iff
/// every non-empty value parses as a finite real, unless overridden.
LoadedAttributes load_attributes(std::istream& in, const KindOverrides& overrides = {});

struct ManifestEntry {
  std::int64_t time = 0;
  std::filesystem::path edges;
  std::filesystem::path partition;
};

/// "t<TAB>edges_path<TAB>partition_path" lines; relative paths resolve
/// against `base_dir`.
std::vector<ManifestEntry> parse_manifest(std::istream& in, const std::filesystem::path& base_dir);

struct LoadedDynamicNetwork {
  DynamicNetwork network;
  Warnings warnings;
};

LoadedDynamicNetwork load_dynamic_network(const std::filesystem::path& manifest_path);

}  // namespace commscope
