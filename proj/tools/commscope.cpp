// commscope: evaluate a community structure from the command line.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "commscope/error.hpp"
#include "commscope/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;

void add_options(CLI::App& sub, commscope::RunConfig& cfg, const std::string& name) {
  using commscope::NcpExtremum;
  using commscope::OutputFormat;
  using commscope::StationarityDenominator;
  const std::map<std::string, StationarityDenominator> denominators{{"pairs", StationarityDenominator::pairs},
                                                                    {"paper", StationarityDenominator::literal}};
  const std::map<std::string, NcpExtremum> extrema{{"min", NcpExtremum::min}, {"max", NcpExtremum::max}};
  const std::map<std::string, OutputFormat> formats{{"json", OutputFormat::json}, {"tsv", OutputFormat::tsv}};

  const bool topo = name == "topo" || name == "ncp" || name == "attr" || name == "all";
  const bool attr = name == "attr" || name == "all" || name == "dyn";
  const bool dyn = name == "dyn" || name == "all";
  if (topo) {
    sub.add_option("--edges", cfg.edges, "edge list, one 'u v' pair per line");
    sub.add_option("--communities", cfg.communities, "node<TAB>community assignment");
    sub.add_flag("--node-level", cfg.node_level, "include the per-node table");
    sub.add_option("--ncp-extremum", cfg.ncp_extremum, "min|max conductance per size")
        ->transform(CLI::CheckedTransformer(extrema, CLI::ignore_case));
  }
  if (attr) {
    sub.add_option("--attributes", cfg.attributes, "CSV of node attributes, first column 'node'");
    sub.add_option("--attr-types", cfg.attr_types, "kind overrides, name=nominal|numeric,...");
    sub.add_option("--topics", cfg.topics, "binary topic columns for the similarity degree")->delimiter(',');
    sub.add_option("--alpha", cfg.alpha, "over-expression significance level")->capture_default_str();
  }
  if (dyn) {
    sub.add_option("--manifest", cfg.manifest, "time<TAB>edges<TAB>partition per slice");
    sub.add_option("--theta", cfg.theta, "Jaccard threshold for matching")->capture_default_str();
    sub.add_option("--gamma", cfg.gamma, "relative size change for growth/contraction")->capture_default_str();
    sub.add_option("--stationarity-denominator", cfg.stationarity, "pairs|paper")
        ->transform(CLI::CheckedTransformer(denominators, CLI::ignore_case));
    sub.add_flag("--per-slice", cfg.per_slice, "repeat static measures on every slice");
  }
  sub.add_option("--format", cfg.format, "json|tsv")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  sub.add_option("--output", cfg.output, "JSON file, or directory for TSV tables");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Community structure evaluation"};
  app.set_version_flag("--version", commscope::kToolVersion);
  app.require_subcommand(1);

  commscope::RunConfig cfg;
  const std::map<std::string, std::string> commands{
      {"topo", "topological measures of each community"},
      {"attr", "attribute association, over-expression, homophily and similarity"},
      {"dyn", "community events and temporal measures over a manifest of slices"},
      {"ncp", "network community profile over the partition"},
      {"all", "every section the inputs allow"}};
  for (const auto& [name, description] : commands) {
    auto* sub = app.add_subcommand(name, description);
    add_options(*sub, cfg, name);
    sub->callback([&cfg, name = name] { cfg.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  commscope::Report report;
  try {
    report = commscope::build_report(cfg);
  } catch (const commscope::Error& e) {
    std::cerr << "commscope: " << commscope::to_string(e.code()) << " error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "commscope: internal error: " << e.what() << "\n";
    return kExitInternal;
  }

  try {
    commscope::emit(report, cfg, std::cout);
  } catch (const commscope::Error& e) {
    std::cerr << "commscope: " << commscope::to_string(e.code()) << " error: " << e.what() << "\n";
    return e.code() == commscope::Errc::config ? kExitInput : kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "commscope: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}
