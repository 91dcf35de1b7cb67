#include "icnsim/metrics.hpp"

#include "test-helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace icnsim;
using icnsim::tests::errorOf;

namespace {

RunCounters
counters(std::uint64_t issued, std::uint64_t completions, std::vector<NodeCounters> nodes,
         std::uint64_t hops = 0)
{
  RunCounters c;
  c.requestsIssued = issued;
  c.completions = completions;
  c.nodes = std::move(nodes);
  c.sumHopCounts = hops;
  return c;
}

RunReport
run(double hit, double perRouter, double hops, std::uint64_t timeouts = 0)
{
  RunReport r;
  r.hitRatio = hit;
  r.perRouterHits = perRouter;
  r.avgHops = hops;
  r.counters.timeouts = timeouts;
  return r;
}

CellKey
cell(PolicyKind policy = PolicyKind::Uc, double pct = 10)
{
  return CellKey{"ws_n100_k2_p0.1", policy, pct, 0.7, 0.7, 1000};
}

} // namespace

TEST_SUITE("metrics") {

TEST_CASE("aggregate hit ratio")
{
  RunCounters c = counters(100, 100, {{60, 25, 10}, {50, 15, 10}});
  CHECK(aggregateHitRatio(c) == doctest::Approx(0.40));
  CHECK(c.totalCacheHits() == 40);
  CHECK(aggregateHitRatio(counters(100, 100, {{100, 0, 5}})) == 0.0);
  CHECK(errorOf([] { aggregateHitRatio(counters(5, 0, {})); }) == ErrorCode::NoCompletedRequests);
}

TEST_CASE("per-router normalization skips routers that saw no names")
{
  RunCounters c = counters(10, 10, {{8, 4, 8}, {0, 0, 0}, {4, 1, 2}});
  CHECK(perRouterNormalizedHits(c) == doctest::Approx((0.5 + 0.5) / 2));
}

TEST_CASE("average hop count")
{
  CHECK(avgHopCount(counters(4, 4, {}, 0)) == 0.0);
  CHECK(avgHopCount(counters(1, 1, {}, 2)) == 2.0);
  CHECK(avgHopCount(counters(2, 2, {}, 2)) == 1.0);
  CHECK(errorOf([] { avgHopCount(counters(2, 0, {})); }) == ErrorCode::NoCompletedRequests);
}

TEST_CASE("Student-t confidence interval")
{
  std::vector<double> xs{1, 2, 3, 4, 5};
  ConfidenceInterval ci = confidenceInterval(xs);
  CHECK(ci.mean == 3.0);
  // t(0.975, 4) = 2.776445, s = sqrt(2.5)
  CHECK(ci.halfWidth == doctest::Approx(2.776445 * std::sqrt(2.5) / std::sqrt(5.0)).epsilon(1e-6));
  CHECK(ci.halfWidth == doctest::Approx(1.963).epsilon(1e-3));

  std::vector<double> same{0.25, 0.25, 0.25};
  CHECK(confidenceInterval(same).halfWidth == 0.0);

  // t(0.995, 9) = 3.249836
  std::vector<double> ten{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  CHECK(confidenceInterval(ten, 0.99).halfWidth ==
        doctest::Approx(3.249836 * std::sqrt(55.0 / 6.0) / std::sqrt(10.0)).epsilon(1e-6));

  std::vector<double> one{1.0};
  CHECK(errorOf([&] { confidenceInterval(one); }) == ErrorCode::InsufficientSamples);
}

TEST_CASE("summary of replications")
{
  MetricsReport m = summarize(cell(), 1, {run(0.4, 0.6, 3.0, 2), run(0.6, 0.8, 2.0, 0)});
  CHECK(m.replications == 2);
  CHECK(m.hitRatio.mean == doctest::Approx(0.5));
  CHECK(m.hitRatio.halfWidth > 0);
  CHECK(m.hopCount.mean == doctest::Approx(2.5));
  CHECK(m.timeoutsMean == 1.0);

  MetricsReport single = summarize(cell(), 1, {run(0.4, 0.6, 3.0)});
  CHECK(single.hitRatio.halfWidth == 0.0);
}

TEST_CASE("one report gives a header and one row")
{
  std::vector<MetricsReport> reports{summarize(cell(), 1, {run(0.4, 0.6, 3.0), run(0.5, 0.7, 2.5)})};
  std::ostringstream out;
  writeCsv(reports, out);
  std::string text = out.str();
  CHECK(text.substr(0, text.find('\n')) ==
        "topology,policy,cache_pct,alpha,q,catalog_size,replications,hit_ratio_mean,hit_ratio_ci,"
        "per_router_hit_mean,per_router_hit_ci,hop_mean,hop_ci,timeouts_mean");
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
  CHECK(text.find("ws_n100_k2_p0.1,UC,10,0.7,0.7,1000,2,0.45,") != std::string::npos);
  CHECK(text.find('\r') == std::string::npos);
}

TEST_CASE("reports of the same cell collapse into one row")
{
  std::vector<MetricsReport> reports{summarize(cell(), 1, {run(0.4, 0.6, 3.0)}),
                                     summarize(cell(), 2, {run(0.6, 0.8, 2.0)}),
                                     summarize(cell(PolicyKind::Lru), 1, {run(0.3, 0.5, 3.5)})};
  std::ostringstream out;
  writeCsv(reports, out);
  std::istringstream in(out.str());
  auto rows = readCsv(in);
  REQUIRE(rows.size() == 2);
  // cells are written in key order: LRU before UC
  CHECK(toString(rows[0].cell.policy) == "LRU");
  CHECK(rows[1].replications == 2);
  CHECK(rows[1].hitRatioMean == doctest::Approx(0.5));
  CHECK(rows[1].hitRatioCi > 0);
}

TEST_CASE("empty report list is an error")
{
  std::ostringstream out;
  CHECK(errorOf([&] { writeCsv({}, out); }) == ErrorCode::InvalidParameter);
  CHECK(errorOf([] {
          std::vector<MetricsReport> r{summarize(cell(), 1, {run(0.1, 0.1, 1)})};
          writeCsvFile(r, "/nonexistent-dir/out.csv");
        }) == ErrorCode::IoError);
}

TEST_CASE("reading the CSV back recovers every printed number")
{
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<MetricsReport> reports;
  for (double pct : {1.0, 2.5, 10.0, 100.0}) {
    std::vector<RunReport> runs;
    for (int i = 0; i < 5; ++i) {
      runs.push_back(run(u(rng), u(rng), 20 * u(rng), rng() % 7));
    }
    reports.push_back(summarize(cell(PolicyKind::Fifo, pct), 1, runs));
  }
  std::ostringstream out;
  writeCsv(reports, out);
  std::istringstream in(out.str());
  auto rows = readCsv(in);
  REQUIRE(rows.size() == reports.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& m = reports[i];
    const auto& r = rows[i];
    CHECK(r.cell == m.cell);
    CHECK(r.hitRatioMean == std::stod(formatNumber(m.hitRatio.mean)));
    CHECK(r.hitRatioCi == std::stod(formatNumber(m.hitRatio.halfWidth)));
    CHECK(r.perRouterHitMean == std::stod(formatNumber(m.perRouterHits.mean)));
    CHECK(r.hopMean == std::stod(formatNumber(m.hopCount.mean)));
    CHECK(r.hopCi == std::stod(formatNumber(m.hopCount.halfWidth)));
    CHECK(r.timeoutsMean == std::stod(formatNumber(m.timeoutsMean)));
    CHECK(std::abs(r.hitRatioMean - m.hitRatio.mean) <= 5e-6 * std::abs(m.hitRatio.mean));
  }
}

TEST_CASE("malformed CSV")
{
  std::istringstream badHeader("a,b\n");
  CHECK(errorOf([&] { readCsv(badHeader); }) == ErrorCode::ParseError);

  std::ostringstream out;
  std::vector<MetricsReport> r{summarize(cell(), 1, {run(0.1, 0.1, 1)})};
  writeCsv(r, out);
  std::istringstream badNumber(out.str() + "t,UC,x,0.7,0.7,1000,1,0,0,0,0,0,0,0\n");
  try {
    readCsv(badNumber);
    FAIL("expected parse error");
  }
  catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("long format has one row per cell and metric")
{
  std::vector<MetricsReport> reports{summarize(cell(), 1, {run(0.4, 0.6, 3.0)})};
  std::ostringstream out;
  writeLongCsv(reports, out);
  std::string text = out.str();
  CHECK(text.rfind("topology,policy,cache_pct,alpha,q,catalog_size,metric,mean,ci\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}

} // TEST_SUITE
