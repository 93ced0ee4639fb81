#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "commscope/events.hpp"
#include "commscope/io.hpp"
#include "commscope/ncp.hpp"

namespace commscope {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kSchema = "commscope/1";

enum class OutputFormat { json, tsv };

struct RunConfig {
  std::string command = "all";  // topo | attr | dyn | ncp | all
  std::optional<std::filesystem::path> edges;
  std::optional<std::filesystem::path> communities;
  std::optional<std::filesystem::path> attributes;
  std::optional<std::filesystem::path> manifest;
  /// Raw "name=kind,..." text as given on the command line.
  std::string attr_types;
  std::vector<std::string> topics;
  double alpha = 0.01;
  double theta = 0.3;
  double gamma = 0.1;
  StationarityDenominator stationarity = StationarityDenominator::pairs;
  NcpExtremum ncp_extremum = NcpExtremum::min;
  bool node_level = false;
  bool per_slice = false;
  OutputFormat format = OutputFormat::json;
  std::optional<std::filesystem::path> output;
};

/// Parses "name=nominal|numeric,..."; throws Error(config) on bad syntax.
KindOverrides parse_kind_overrides(const std::string& text);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  nlohmann::ordered_json document;
  /// TSV tables by file stem, in name order.
  std::map<std::string, Table> tables;
};

/// Loads the inputs named by `config`, runs the sections its command asks for
/// and assembles the report. Throws Error for input and configuration problems.
Report build_report(const RunConfig& config);

/// JSON goes to `config.output` or `out`; TSV writes one file per table into
/// the `config.output` directory. Throws Error(io) when the destination is not
/// writable.
void emit(const Report& report, const RunConfig& config, std::ostream& out);

/// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace commscope
