#include "commscope/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>
#include <unordered_set>

#include "commscope/error.hpp"

namespace commscope {
namespace {

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\v' || c == '\f'; }

std::vector<std::string_view> split_whitespace(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool skippable(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && is_space(line[i])) ++i;
  return i == line.size() || line[i] == '#';
}

std::string at_line(std::size_t line_no) { return " at line " + std::to_string(line_no); }

std::optional<double> parse_real(std::string_view s) {
  double x = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(x)) return std::nullopt;
  return x;
}

std::vector<std::string> split_csv_record(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"' && field.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  if (quoted) throw Error(Errc::parse, "unterminated quoted field" + at_line(line_no));
  fields.push_back(std::move(field));
  return fields;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot read '" + path.string() + "'");
  return in;
}

}  // namespace

LoadedGraph load_graph(std::istream& in) {
  GraphBuilder builder;
  LoadedGraph out;
  std::size_t weighted_lines = 0;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = strip_cr(raw);
    if (skippable(line)) continue;
    auto tokens = split_whitespace(line);
    if (tokens.size() < 2)
      throw Error(Errc::parse, "expected two node identifiers" + at_line(line_no));
    if (tokens[0] == tokens[1])
      throw Error(Errc::self_loop, "self-loop on '" + std::string(tokens[0]) + "'" + at_line(line_no));
    if (tokens.size() > 2) {
      ++out.extra_token_lines;
      if (parse_real(tokens[2])) ++weighted_lines;
    }
    builder.add_link(tokens[0], tokens[1]);
  }
  out.duplicate_links = builder.duplicate_links();
  out.graph = std::move(builder).build();
  if (out.duplicate_links > 0)
    out.warnings.push_back({"duplicate_links", std::to_string(out.duplicate_links) +
                                                   " repeated link(s) collapsed"});
  if (weighted_lines > 0)
    out.warnings.push_back({"weights_ignored", std::to_string(weighted_lines) +
                                                   " line(s) carried an edge weight; weights are ignored"});
  if (out.extra_token_lines > weighted_lines)
    out.warnings.push_back({"extra_tokens_ignored",
                            std::to_string(out.extra_token_lines - weighted_lines) +
                                " line(s) carried extra tokens; ignored"});
  return out;
}

CommunityStructure load_communities(std::istream& in, std::shared_ptr<const Graph> graph) {
  const Graph& g = *graph;
  constexpr CommunityIndex unassigned = ~CommunityIndex{0};
  std::vector<CommunityIndex> assignment(g.node_count(), unassigned);
  std::unordered_map<std::string, CommunityIndex> dense;
  std::vector<std::string> names;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = strip_cr(raw);
    if (skippable(line)) continue;
    std::string_view node, label;
    if (auto tab = line.find('\t'); tab != std::string_view::npos) {
      node = line.substr(0, tab);
      label = line.substr(tab + 1);
    } else {
      auto tokens = split_whitespace(line);
      if (tokens.size() != 2)
        throw Error(Errc::parse, "expected 'node<TAB>label'" + at_line(line_no));
      node = tokens[0];
      label = tokens[1];
    }
    if (node.empty() || label.empty())
      throw Error(Errc::parse, "empty node or label" + at_line(line_no));
    auto u = g.find(node);
    if (!u)
      throw Error(Errc::unknown_node,
                  "partition names unknown node '" + std::string(node) + "'" + at_line(line_no));
    if (assignment[*u] != unassigned)
      throw Error(Errc::duplicate_assignment,
                  "node '" + std::string(node) + "' assigned twice" + at_line(line_no));
    auto [it, inserted] = dense.try_emplace(std::string(label), static_cast<CommunityIndex>(names.size()));
    if (inserted) names.emplace_back(label);
    assignment[*u] = it->second;
  }
  std::vector<std::string> missing;
  for (NodeIndex u = 0; u < g.node_count(); ++u)
    if (assignment[u] == unassigned) missing.push_back(g.id(u));
  if (!missing.empty()) {
    std::string msg = "partition misses " + std::to_string(missing.size()) + " node(s):";
    for (std::size_t i = 0; i < missing.size() && i < 20; ++i) msg += " " + missing[i];
    if (missing.size() > 20) msg += " ...";
    throw Error(Errc::incomplete_partition, msg);
  }
  return CommunityStructure::from_assignment(std::move(graph), std::move(assignment), std::move(names));
}

LoadedAttributes load_attributes(std::istream& in, const KindOverrides& overrides) {
  LoadedAttributes out;
  std::string raw;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = strip_cr(raw);
    if (line.empty()) continue;
    header = split_csv_record(line, line_no);
    break;
  }
  if (header.empty() || header.front() != "node")
    throw Error(Errc::parse, "attribute CSV header must start with 'node'");
  const std::size_t columns = header.size() - 1;
  {
    std::unordered_set<std::string> seen;
    for (std::size_t c = 1; c < header.size(); ++c)
      if (header[c].empty() || !seen.insert(header[c]).second)
        throw Error(Errc::parse, "empty or repeated attribute name '" + header[c] + "'");
  }
  for (const auto& [name, kind] : overrides)
    if (std::find(header.begin() + 1, header.end(), name) == header.end())
      throw Error(Errc::config, "type override names unknown column '" + name + "'");

  std::vector<std::unordered_map<std::string, std::string>> raw_values(columns);
  std::unordered_set<std::string> rows;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = strip_cr(raw);
    if (line.empty()) continue;
    auto fields = split_csv_record(line, line_no);
    if (fields.size() != header.size())
      throw Error(Errc::parse, "expected " + std::to_string(header.size()) + " fields, got " +
                                   std::to_string(fields.size()) + at_line(line_no));
    if (fields[0].empty()) throw Error(Errc::parse, "empty node identifier" + at_line(line_no));
    if (!rows.insert(fields[0]).second)
      throw Error(Errc::parse, "repeated row for node '" + fields[0] + "'" + at_line(line_no));
    for (std::size_t c = 0; c < columns; ++c) {
      if (fields[c + 1].empty()) {
        ++out.missing_values;
        continue;
      }
      raw_values[c].emplace(fields[0], std::move(fields[c + 1]));
    }
  }

  for (std::size_t c = 0; c < columns; ++c) {
    const std::string& name = header[c + 1];
    bool all_numeric = true;
    for (const auto& [node, v] : raw_values[c])
      if (!parse_real(v)) {
        all_numeric = false;
        break;
      }
    AttributeKind kind = all_numeric ? AttributeKind::numeric : AttributeKind::nominal;
    if (auto it = overrides.find(name); it != overrides.end()) kind = it->second;
    if (kind == AttributeKind::numeric) {
      if (!all_numeric)
        throw Error(Errc::type_mismatch, "column '" + name + "' declared numeric but holds non-numeric values");
      std::unordered_map<std::string, double> values;
      for (const auto& [node, v] : raw_values[c]) values.emplace(node, *parse_real(v));
      out.table.add_numeric(name, std::move(values));
    } else {
      out.table.add_nominal(name, std::move(raw_values[c]));
    }
  }
  if (out.missing_values > 0)
    out.warnings.push_back({"missing_attribute_values",
                            std::to_string(out.missing_values) + " empty attribute field(s) treated as missing"});
  return out;
}

std::vector<ManifestEntry> parse_manifest(std::istream& in, const std::filesystem::path& base_dir) {
  std::vector<ManifestEntry> out;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = strip_cr(raw);
    if (skippable(line)) continue;
    std::vector<std::string_view> fields;
    if (line.find('\t') != std::string_view::npos) {
      std::size_t start = 0;
      while (true) {
        auto tab = line.find('\t', start);
        fields.push_back(line.substr(start, tab == std::string_view::npos ? tab : tab - start));
        if (tab == std::string_view::npos) break;
        start = tab + 1;
      }
    } else {
      fields = split_whitespace(line);
    }
    if (fields.size() != 3)
      throw Error(Errc::parse, "expected 't<TAB>edges<TAB>partition'" + at_line(line_no));
    ManifestEntry e;
    auto [ptr, ec] = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), e.time);
    if (ec != std::errc() || ptr != fields[0].data() + fields[0].size())
      throw Error(Errc::parse, "slice time must be an integer" + at_line(line_no));
    if (!out.empty() && e.time <= out.back().time)
      throw Error(Errc::parse, "slice times must be strictly increasing" + at_line(line_no));
    e.edges = std::filesystem::path(std::string(fields[1]));
    e.partition = std::filesystem::path(std::string(fields[2]));
    if (e.edges.is_relative()) e.edges = base_dir / e.edges;
    if (e.partition.is_relative()) e.partition = base_dir / e.partition;
    out.push_back(std::move(e));
  }
  if (out.empty()) throw Error(Errc::parse, "manifest lists no slices");
  return out;
}

LoadedDynamicNetwork load_dynamic_network(const std::filesystem::path& manifest_path) {
  auto manifest = open_input(manifest_path);
  auto entries = parse_manifest(manifest, manifest_path.parent_path());
  std::vector<TimeSlice> slices;
  Warnings warnings;
  for (const auto& e : entries) {
    const std::string where = "slice t=" + std::to_string(e.time) + ": ";
    try {
      auto edges = open_input(e.edges);
      auto loaded = load_graph(edges);
      for (auto& w : loaded.warnings) warnings.push_back({w.code, where + w.message});
      auto graph = std::make_shared<const Graph>(std::move(loaded.graph));
      auto part = open_input(e.partition);
      auto cs = load_communities(part, graph);
      slices.push_back(TimeSlice{e.time, graph, std::move(cs)});
    } catch (const Error& err) {
      throw Error(err.code(), where + err.what());
    }
  }
  return {DynamicNetwork(std::move(slices)), std::move(warnings)};
}

}  // namespace commscope
