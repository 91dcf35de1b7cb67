#ifndef ICNSIM_EXPERIMENT_HPP
#define ICNSIM_EXPERIMENT_HPP

#include "icnsim/metrics.hpp"
#include "icnsim/simulation.hpp"

#include <filesystem>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace icnsim {

struct WsTopology
{
  NodeId n = 100;
  int k = 2;
  double p = 0.1;
};

struct FileTopology
{
  std::string path;
};

using TopologySpec = std::variant<WsTopology, FileTopology>;

struct MZipfSet
{
  double q = 0.7;
  double alpha = 0.7;
};

/// Declarative description of a sweep. Times are in seconds.
struct ExperimentConfig
{
  TopologySpec topology = WsTopology{};
  std::vector<PolicyKind> policies{PolicyKind::Fifo, PolicyKind::Lru, PolicyKind::Uc};
  UcWeights ucWeights;
  std::int64_t catalogSize = 1000;
  std::vector<double> cachePctSweep{1, 2, 5, 10, 20, 40, 60, 80, 100};
  std::vector<MZipfSet> mzipfSets{{0.7, 0.7}, {5.0, 0.65}, {55.0, 0.6}};
  double aggregateRate = 1000.0;
  double duration = 200.0;
  double warmup = 20.0;
  std::size_t replications = 10;
  std::uint64_t baseSeed = 1;
  double pitLifetime = 2.0;
  double linkDelay = 0.010;
  ArrivalProcess arrivals = ArrivalProcess::Poisson;
  ProducerPlacement placement = ProducerPlacement::Random;
  NodeId singleProducer = 0;
  /// 0: every cell shares one topology realization. k > 0: k WS realizations, each its own cell.
  int topologyRealizations = 0;

  void
  validate() const;
};

/**
 * Parses a JSON experiment description. Missing keys take defaults; unknown keys and
 * type mismatches raise ParseError naming the key path; out-of-range values raise
 * Error(ValidationError).
 */
ExperimentConfig
parseConfig(std::string_view text);

ExperimentConfig
loadConfigFile(const std::filesystem::path& path);

/// Per-router store size for a cache percentage: round(pct/100 * N), at least 1.
std::size_t
cacheCapacity(double cachePct, std::int64_t catalogSize);

std::string
topologyLabel(const TopologySpec& spec);

struct TopologyRealization
{
  std::string label;
  std::shared_ptr<const Graph> graph;
};

/// The topologies a config runs on: one shared realization, or one per WS seed.
std::vector<TopologyRealization>
buildTopologies(const ExperimentConfig& cfg);

struct CellFailure
{
  CellKey cell;
  std::size_t replication;
  std::string message;
};

struct SweepResult
{
  std::vector<MetricsReport> reports; ///< completed cells in key order
  std::vector<CellFailure> failures;
};

struct RunOptions
{
  unsigned parallel = 1;
  std::function<void(const MetricsReport&)> onCellDone;
};

/**
 * Runs policy x cache% x MZipf set (x topology realization) with `replications` paired
 * seeds per cell: replication i uses seed baseSeed + i for every policy, so policies in one
 * replication see the same requests and producer placement.
 */
SweepResult
expandAndRun(const ExperimentConfig& cfg, const RunOptions& options = {});

/// Builds the simulation for one replication of one cell.
SimulationConfig
makeSimulationConfig(const ExperimentConfig& cfg, std::shared_ptr<const Graph> graph,
                     std::shared_ptr<const MZipf> popularity, PolicyKind policy, double cachePct,
                     std::size_t replication);

} // namespace icnsim

#endif // ICNSIM_EXPERIMENT_HPP
