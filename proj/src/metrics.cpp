#include "icnsim/metrics.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

namespace icnsim {

std::uint64_t
RunCounters::totalCacheHits() const
{
  std::uint64_t total = 0;
  for (const auto& n : nodes) {
    total += n.cacheHits;
  }
  return total;
}

double
aggregateHitRatio(const RunCounters& c)
{
  if (c.completions == 0 || c.requestsIssued == 0) {
    throw Error(ErrorCode::NoCompletedRequests, "hit ratio needs completed requests");
  }
  return static_cast<double>(c.totalCacheHits()) / static_cast<double>(c.requestsIssued);
}

double
perRouterNormalizedHits(const RunCounters& c)
{
  if (c.completions == 0) {
    throw Error(ErrorCode::NoCompletedRequests, "hit ratio needs completed requests");
  }
  double sum = 0.0;
  std::size_t routers = 0;
  for (const auto& n : c.nodes) {
    if (n.uniqueNamesRequested > 0) {
      sum += static_cast<double>(n.cacheHits) / static_cast<double>(n.uniqueNamesRequested);
      ++routers;
    }
  }
  return routers == 0 ? 0.0 : sum / static_cast<double>(routers);
}

double
avgHopCount(const RunCounters& c)
{
  if (c.completions == 0) {
    throw Error(ErrorCode::NoCompletedRequests, "hop count needs completed requests");
  }
  return static_cast<double>(c.sumHopCounts) / static_cast<double>(c.completions);
}

RunReport
makeRunReport(RunCounters counters)
{
  RunReport r;
  r.hitRatio = aggregateHitRatio(counters);
  r.perRouterHits = perRouterNormalizedHits(counters);
  r.avgHops = avgHopCount(counters);
  r.counters = std::move(counters);
  return r;
}

ConfidenceInterval
confidenceInterval(std::span<const double> samples, double level)
{
  if (samples.size() < 2) {
    throw Error(ErrorCode::InsufficientSamples, "confidence interval needs at least 2 samples");
  }
  if (!(level > 0.0 && level < 1.0)) {
    throw Error(ErrorCode::InvalidParameter, "confidence level must be in (0,1)");
  }
  const double n = static_cast<double>(samples.size());
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : samples) {
    ss += (x - mean) * (x - mean);
  }
  const double sd = std::sqrt(ss / (n - 1.0));
  boost::math::students_t dist(n - 1.0);
  const double t = boost::math::quantile(dist, 0.5 + level / 2.0);
  return {mean, t * sd / std::sqrt(n)};
}

static ConfidenceInterval
intervalOf(const std::vector<double>& xs)
{
  if (xs.size() == 1) {
    return {xs.front(), 0.0};
  }
  return confidenceInterval(xs);
}

MetricsReport
summarize(const CellKey& cell, std::uint64_t baseSeed, std::vector<RunReport> runs)
{
  if (runs.empty()) {
    throw Error(ErrorCode::InsufficientSamples, "cell has no replications");
  }
  std::vector<double> hit;
  std::vector<double> perRouter;
  std::vector<double> hops;
  double timeouts = 0.0;
  for (const auto& r : runs) {
    hit.push_back(r.hitRatio);
    perRouter.push_back(r.perRouterHits);
    hops.push_back(r.avgHops);
    timeouts += static_cast<double>(r.counters.timeouts);
  }

  MetricsReport m;
  m.cell = cell;
  m.seed = baseSeed;
  m.replications = runs.size();
  m.hitRatio = intervalOf(hit);
  m.perRouterHits = intervalOf(perRouter);
  m.hopCount = intervalOf(hops);
  m.timeoutsMean = timeouts / static_cast<double>(runs.size());
  m.runs = std::move(runs);
  return m;
}

const std::vector<std::string> kCsvColumns = {
  "topology", "policy", "cache_pct", "alpha", "q", "catalog_size", "replications",
  "hit_ratio_mean", "hit_ratio_ci", "per_router_hit_mean", "per_router_hit_ci",
  "hop_mean", "hop_ci", "timeouts_mean",
};

std::string
formatNumber(double value)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

static std::vector<MetricsReport>
mergeByCell(std::span<const MetricsReport> reports)
{
  if (reports.empty()) {
    throw Error(ErrorCode::InvalidParameter, "no reports to write");
  }
  std::map<CellKey, std::vector<const MetricsReport*>> cells;
  for (const auto& r : reports) {
    cells[r.cell].push_back(&r);
  }

  std::vector<MetricsReport> merged;
  for (const auto& [key, group] : cells) {
    if (group.size() == 1) {
      merged.push_back(*group.front());
      continue;
    }
    std::vector<RunReport> runs;
    for (const auto* r : group) {
      runs.insert(runs.end(), r->runs.begin(), r->runs.end());
    }
    merged.push_back(summarize(key, group.front()->seed, std::move(runs)));
  }
  return merged;
}

void
writeCsv(std::span<const MetricsReport> reports, std::ostream& out)
{
  auto rows = mergeByCell(reports);
  for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
    out << (i ? "," : "") << kCsvColumns[i];
  }
  out << '\n';
  for (const auto& r : rows) {
    out << r.cell.topology << ',' << toString(r.cell.policy) << ',' << formatNumber(r.cell.cachePct) << ','
        << formatNumber(r.cell.alpha) << ',' << formatNumber(r.cell.q) << ',' << r.cell.catalogSize << ','
        << r.replications << ',' << formatNumber(r.hitRatio.mean) << ',' << formatNumber(r.hitRatio.halfWidth)
        << ',' << formatNumber(r.perRouterHits.mean) << ',' << formatNumber(r.perRouterHits.halfWidth) << ','
        << formatNumber(r.hopCount.mean) << ',' << formatNumber(r.hopCount.halfWidth) << ','
        << formatNumber(r.timeoutsMean) << '\n';
  }
}

void
writeCsvFile(std::span<const MetricsReport> reports, const std::string& path)
{
  std::ostringstream buf;
  writeCsv(reports, buf);
  std::ofstream out(path, std::ios::binary);
  out << buf.str();
  out.flush();
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot write " + path);
  }
}

void
writeLongCsv(std::span<const MetricsReport> reports, std::ostream& out)
{
  auto rows = mergeByCell(reports);
  out << "topology,policy,cache_pct,alpha,q,catalog_size,metric,mean,ci\n";
  for (const auto& r : rows) {
    const std::pair<const char*, ConfidenceInterval> metrics[] = {
      {"hit_ratio", r.hitRatio},
      {"per_router_hit", r.perRouterHits},
      {"hop_count", r.hopCount},
    };
    for (const auto& [name, ci] : metrics) {
      out << r.cell.topology << ',' << toString(r.cell.policy) << ',' << formatNumber(r.cell.cachePct) << ','
          << formatNumber(r.cell.alpha) << ',' << formatNumber(r.cell.q) << ',' << r.cell.catalogSize << ','
          << name << ',' << formatNumber(ci.mean) << ',' << formatNumber(ci.halfWidth) << '\n';
    }
  }
}

static double
parseNumber(const std::string& field, std::size_t line)
{
  try {
    std::size_t used = 0;
    double v = std::stod(field, &used);
    if (used != field.size()) {
      throw std::invalid_argument(field);
    }
    return v;
  }
  catch (const std::exception&) {
    throw ParseError(line, "bad numeric field '" + field + "'");
  }
}

std::vector<CsvRow>
readCsv(std::istream& in)
{
  std::vector<CsvRow> rows;
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    std::vector<std::string> fields;
    std::istringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) {
      fields.push_back(f);
    }
    if (fields.size() != kCsvColumns.size()) {
      throw ParseError(lineNo, "expected " + std::to_string(kCsvColumns.size()) + " fields");
    }
    if (lineNo == 1) {
      if (fields != kCsvColumns) {
        throw ParseError(lineNo, "unexpected header");
      }
      continue;
    }
    CsvRow r;
    r.cell.topology = fields[0];
    r.cell.policy = parsePolicyKind(fields[1]);
    r.cell.cachePct = parseNumber(fields[2], lineNo);
    r.cell.alpha = parseNumber(fields[3], lineNo);
    r.cell.q = parseNumber(fields[4], lineNo);
    r.cell.catalogSize = static_cast<std::int64_t>(parseNumber(fields[5], lineNo));
    r.replications = static_cast<std::size_t>(parseNumber(fields[6], lineNo));
    r.hitRatioMean = parseNumber(fields[7], lineNo);
    r.hitRatioCi = parseNumber(fields[8], lineNo);
    r.perRouterHitMean = parseNumber(fields[9], lineNo);
    r.perRouterHitCi = parseNumber(fields[10], lineNo);
    r.hopMean = parseNumber(fields[11], lineNo);
    r.hopCi = parseNumber(fields[12], lineNo);
    r.timeoutsMean = parseNumber(fields[13], lineNo);
    rows.push_back(r);
  }
  return rows;
}

} // namespace icnsim
