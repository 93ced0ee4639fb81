#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "commscope/graph.hpp"

namespace commscope {

enum class AttributeKind { nominal, numeric };

const char* to_string(AttributeKind kind) noexcept;

/// Per-node attribute values keyed by node identifier. Absent entries are
/// missing values.
class AttributeTable {
 public:
  using Value = std::variant<std::string, double>;

  /// Adds a column. Numeric columns must hold finite values only.
  void add_nominal(std::string name, std::unordered_map<std::string, std::string> values);
  void add_numeric(std::string name, std::unordered_map<std::string, double> values);

  const std::vector<std::string>& names() const noexcept { return names_; }
  bool contains(std::string_view name) const;
  /// Throws Error(config) for an unknown attribute.
  AttributeKind kind(std::string_view name) const;

  /// Per-node values aligned with graph node indices; nodes absent from the
  /// table are missing.
  std::vector<std::optional<std::string>> nominal_column(std::string_view name,
                                                         const Graph& graph) const;
  std::vector<std::optional<double>> numeric_column(std::string_view name,
                                                    const Graph& graph) const;

  /// Every node keyed in any column, in sorted order.
  std::vector<std::string> keyed_nodes() const;

  /// Throws Error(unknown_node) if a keyed node is not in the graph.
  void validate_against(const Graph& graph) const;

 private:
  struct Column {
    AttributeKind kind;
    std::unordered_map<std::string, std::string> nominal;
    std::unordered_map<std::string, double> numeric;
  };

  const Column& column(std::string_view name, AttributeKind expected) const;

  std::vector<std::string> names_;
  std::map<std::string, Column, std::less<>> columns_;
};

}  // namespace commscope
