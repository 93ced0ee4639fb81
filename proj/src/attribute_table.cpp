#include "commscope/attribute_table.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "commscope/error.hpp"

namespace commscope {

const char* to_string(AttributeKind kind) noexcept {
  return kind == AttributeKind::nominal ? "nominal" : "numeric";
}

void AttributeTable::add_nominal(std::string name,
                                 std::unordered_map<std::string, std::string> values) {
  if (contains(name)) throw Error(Errc::config, "duplicate attribute '" + name + "'");
  Column col{AttributeKind::nominal, std::move(values), {}};
  names_.push_back(name);
  columns_.emplace(std::move(name), std::move(col));
}

void AttributeTable::add_numeric(std::string name,
                                 std::unordered_map<std::string, double> values) {
  if (contains(name)) throw Error(Errc::config, "duplicate attribute '" + name + "'");
  for (const auto& [node, x] : values)
    if (!std::isfinite(x))
      throw Error(Errc::type_mismatch,
                  "non-finite value for node '" + node + "' in attribute '" + name + "'");
  Column col{AttributeKind::numeric, {}, std::move(values)};
  names_.push_back(name);
  columns_.emplace(std::move(name), std::move(col));
}

bool AttributeTable::contains(std::string_view name) const {
  return columns_.find(name) != columns_.end();
}

AttributeKind AttributeTable::kind(std::string_view name) const {
  auto it = columns_.find(name);
  if (it == columns_.end()) throw Error(Errc::config, "unknown attribute '" + std::string(name) + "'");
  return it->second.kind;
}

const AttributeTable::Column& AttributeTable::column(std::string_view name,
                                                     AttributeKind expected) const {
  auto it = columns_.find(name);
  if (it == columns_.end()) throw Error(Errc::config, "unknown attribute '" + std::string(name) + "'");
  if (it->second.kind != expected)
    throw Error(Errc::type_mismatch, "attribute '" + std::string(name) + "' is " +
                                         to_string(it->second.kind) + ", expected " +
                                         to_string(expected));
  return it->second;
}

std::vector<std::optional<std::string>> AttributeTable::nominal_column(std::string_view name,
                                                                       const Graph& graph) const {
  const Column& col = column(name, AttributeKind::nominal);
  std::vector<std::optional<std::string>> out(graph.node_count());
  for (NodeIndex u = 0; u < graph.node_count(); ++u)
    if (auto it = col.nominal.find(graph.id(u)); it != col.nominal.end()) out[u] = it->second;
  return out;
}

std::vector<std::optional<double>> AttributeTable::numeric_column(std::string_view name,
                                                                  const Graph& graph) const {
  const Column& col = column(name, AttributeKind::numeric);
  std::vector<std::optional<double>> out(graph.node_count());
  for (NodeIndex u = 0; u < graph.node_count(); ++u)
    if (auto it = col.numeric.find(graph.id(u)); it != col.numeric.end()) out[u] = it->second;
  return out;
}

std::vector<std::string> AttributeTable::keyed_nodes() const {
  std::set<std::string> keyed;
  for (const auto& [name, col] : columns_) {
    for (const auto& [node, v] : col.nominal) keyed.insert(node);
    for (const auto& [node, v] : col.numeric) keyed.insert(node);
  }
  return {keyed.begin(), keyed.end()};
}

void AttributeTable::validate_against(const Graph& graph) const {
  for (const auto& node : keyed_nodes())
    if (!graph.find(node))
      throw Error(Errc::unknown_node, "attribute table names unknown node '" + node + "'");
}

}  // namespace commscope
