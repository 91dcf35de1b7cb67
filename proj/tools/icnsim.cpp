// Command-line driver: runs an experiment sweep from a JSON config and writes CSV results.

#include "icnsim/experiment.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace icnsim;

namespace {

std::filesystem::path
longFormatPath(const std::filesystem::path& csv)
{
  auto p = csv;
  p.replace_filename(csv.stem().string() + "_long" + csv.extension().string());
  return p;
}

void
emitTopologies(const ExperimentConfig& cfg, const std::string& path)
{
  auto topologies = buildTopologies(cfg);
  for (std::size_t i = 0; i < topologies.size(); ++i) {
    std::string target = topologies.size() == 1 ? path : path + "." + std::to_string(i + 1);
    std::ofstream out(target);
    out << "# " << topologies[i].label << '\n' << serializeTopology(*topologies[i].graph);
    if (!out) {
      throw Error(ErrorCode::IoError, "cannot write " + target);
    }
  }
}

int
runCommand(const std::string& configPath, const std::string& outPath, std::optional<std::uint64_t> seed,
           unsigned parallel, std::optional<int> realizations, const std::string& emitTopology, bool quiet)
{
  ExperimentConfig cfg = loadConfigFile(configPath);
  if (seed) {
    cfg.baseSeed = *seed;
  }
  if (realizations) {
    cfg.topologyRealizations = *realizations;
  }
  cfg.validate();

  if (!emitTopology.empty()) {
    emitTopologies(cfg, emitTopology);
  }

  RunOptions options;
  options.parallel = parallel;
  if (!quiet) {
    options.onCellDone = [] (const MetricsReport& r) {
      std::cerr << r.cell.topology << ' ' << toString(r.cell.policy) << " cache=" << formatNumber(r.cell.cachePct)
                << "% q=" << formatNumber(r.cell.q) << " alpha=" << formatNumber(r.cell.alpha)
                << "  hit=" << formatNumber(r.hitRatio.mean) << "±" << formatNumber(r.hitRatio.halfWidth)
                << "  hops=" << formatNumber(r.hopCount.mean) << "±" << formatNumber(r.hopCount.halfWidth) << '\n';
    };
  }

  SweepResult result = expandAndRun(cfg, options);

  if (!result.reports.empty()) {
    writeCsvFile(result.reports, outPath);
    std::ofstream longOut(longFormatPath(outPath), std::ios::binary);
    writeLongCsv(result.reports, longOut);
    if (!longOut) {
      throw Error(ErrorCode::IoError, "cannot write " + longFormatPath(outPath).string());
    }
  }

  for (const auto& f : result.failures) {
    std::cerr << "FAILED " << f.cell.topology << ' ' << toString(f.cell.policy) << " cache="
              << formatNumber(f.cell.cachePct) << "% q=" << formatNumber(f.cell.q) << " alpha="
              << formatNumber(f.cell.alpha) << " replication " << f.replication << ": " << f.message << '\n';
  }
  return result.failures.empty() ? 0 : 1;
}

} // namespace

int
main(int argc, char** argv)
{
  CLI::App app{"Discrete-event NDN cache replacement simulator"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run the sweep described by a JSON config");
  std::string configPath;
  std::string outPath = "results.csv";
  std::optional<std::uint64_t> seed;
  unsigned parallel = 1;
  std::optional<int> realizations;
  std::string emitTopology;
  bool quiet = false;

  run->add_option("config", configPath, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", outPath, "CSV output path; a _long variant is written alongside");
  run->add_option("--seed", seed, "override base_seed");
  run->add_option("--parallel", parallel, "worker threads")->check(CLI::PositiveNumber);
  run->add_option("--topology-realizations", realizations, "run k independent WS realizations");
  run->add_option("--emit-topology", emitTopology, "dump the topology in the .topo format");
  run->add_flag("--quiet", quiet, "no per-cell progress");

  CLI11_PARSE(app, argc, argv);

  try {
    return runCommand(configPath, outPath, seed, parallel, realizations, emitTopology, quiet);
  }
  catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
