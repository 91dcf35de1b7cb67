#ifndef ICNSIM_METRICS_HPP
#define ICNSIM_METRICS_HPP

#include "icnsim/cache-policy.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace icnsim {

struct NodeCounters
{
  std::uint64_t interestsReceived = 0;
  std::uint64_t cacheHits = 0;
  std::uint64_t uniqueNamesRequested = 0;
};

/// Counters of one simulation run. Only requests issued inside the measurement window count.
struct RunCounters
{
  std::vector<NodeCounters> nodes;
  std::uint64_t requestsIssued = 0;
  std::uint64_t completions = 0;
  std::uint64_t timeouts = 0;
  std::uint64_t inFlightAtCutoff = 0;
  std::uint64_t producerServes = 0;
  std::uint64_t sumHopCounts = 0;
  std::uint64_t unsolicitedData = 0;   ///< whole run, not windowed
  std::uint64_t aggregatedInterests = 0;

  std::uint64_t
  totalCacheHits() const;
};

/// Network-wide cache hits divided by requests issued in the window.
double
aggregateHitRatio(const RunCounters& c);

/// Mean over routers that saw at least one name of cacheHits / uniqueNamesRequested.
double
perRouterNormalizedHits(const RunCounters& c);

double
avgHopCount(const RunCounters& c);

struct RunReport
{
  RunCounters counters;
  double hitRatio = 0.0;
  double perRouterHits = 0.0;
  double avgHops = 0.0;
};

RunReport
makeRunReport(RunCounters counters);

struct ConfidenceInterval
{
  double mean = 0.0;
  double halfWidth = 0.0;
};

/// Student-t interval mean +- t_{(1+level)/2, n-1} * s / sqrt(n).
ConfidenceInterval
confidenceInterval(std::span<const double> samples, double level = 0.95);

/// Identifies one sweep cell; replications of a cell differ only by seed.
struct CellKey
{
  std::string topology;
  PolicyKind policy = PolicyKind::Fifo;
  double cachePct = 0.0;
  double alpha = 0.0;
  double q = 0.0;
  std::int64_t catalogSize = 0;

  friend auto operator<=>(const CellKey&, const CellKey&) = default;
};

struct MetricsReport
{
  CellKey cell;
  std::uint64_t seed = 0;
  std::size_t replications = 0;
  ConfidenceInterval hitRatio;
  ConfidenceInterval perRouterHits;
  ConfidenceInterval hopCount;
  double timeoutsMean = 0.0;
  std::vector<RunReport> runs;
};

/// Summarizes the replications of one cell. A single replication gets zero-width intervals.
MetricsReport
summarize(const CellKey& cell, std::uint64_t baseSeed, std::vector<RunReport> runs);

/**
 * Writes one row per cell in key order. Reports sharing a cell (for example separate seeds)
 * are merged by pooling their replications.
 */
void
writeCsv(std::span<const MetricsReport> reports, std::ostream& out);

void
writeCsvFile(std::span<const MetricsReport> reports, const std::string& path);

/// Long format for plotting: one row per (cell, metric).
void
writeLongCsv(std::span<const MetricsReport> reports, std::ostream& out);

extern const std::vector<std::string> kCsvColumns;

struct CsvRow
{
  CellKey cell;
  std::size_t replications = 0;
  double hitRatioMean = 0.0;
  double hitRatioCi = 0.0;
  double perRouterHitMean = 0.0;
  double perRouterHitCi = 0.0;
  double hopMean = 0.0;
  double hopCi = 0.0;
  double timeoutsMean = 0.0;
};

std::vector<CsvRow>
readCsv(std::istream& in);

/// The exact decimal text used for numeric CSV fields (6 significant digits).
std::string
formatNumber(double value);

} // namespace icnsim

#endif // ICNSIM_METRICS_HPP
