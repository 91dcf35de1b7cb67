#include "icnsim/topology.hpp"

#include "test-helpers.hpp"

#include <doctest.h>

#include <numeric>

using namespace icnsim;
using icnsim::tests::errorOf;
using icnsim::tests::floydWarshall;
using icnsim::tests::pathGraph;
using icnsim::tests::randomConnectedGraph;

TEST_SUITE("topology") {

TEST_CASE("ring lattice survives p = 0")
{
  Graph g = generateWattsStrogatz(6, 2, 0.0, 12345);
  std::vector<Edge> expected{{0, 1}, {0, 5}, {1, 2}, {2, 3}, {3, 4}, {4, 5}};
  CHECK(g.nodeCount() == 6);
  CHECK(g.edges() == expected);
}

TEST_CASE("k = n - 1 lattice is complete")
{
  Graph g = generateWattsStrogatz(5, 4, 0.0, 7);
  CHECK(g.edges().size() == 10);
  for (NodeId v = 0; v < 5; ++v) {
    CHECK(g.degree(v) == 4);
  }
}

TEST_CASE("WS(100, 2, 0.1) is connected and keeps the lattice edge count")
{
  Graph g = generateWattsStrogatz(100, 2, 0.1, 1);
  CHECK(g.nodeCount() == 100);
  CHECK(g.edges().size() == 100);
  CHECK(g.isConnected());
}

TEST_CASE("unrewired lattice has n*k/2 edges and uniform degree k")
{
  for (NodeId n : {7, 10, 31}) {
    for (int k : {2, 4, 6}) {
      CAPTURE(n);
      CAPTURE(k);
      Graph g = generateWattsStrogatz(n, k, 0.0, 3);
      CHECK(g.edges().size() == static_cast<std::size_t>(n * k / 2));
      for (NodeId v = 0; v < n; ++v) {
        CHECK(g.degree(v) == static_cast<std::size_t>(k));
      }
    }
  }
}

TEST_CASE("odd k uses floor(k/2) neighbors per side")
{
  CHECK(generateWattsStrogatz(9, 5, 0.0, 1).edges() == generateWattsStrogatz(9, 4, 0.0, 1).edges());
}

TEST_CASE("rewiring preserves edge count and is reproducible")
{
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Graph a = generateWattsStrogatz(40, 4, 0.3, seed);
    Graph b = generateWattsStrogatz(40, 4, 0.3, seed);
    CHECK(a == b);
    CHECK(a.edges().size() == 80);
    CHECK(a.isConnected());
  }
  CHECK(generateWattsStrogatz(40, 4, 0.3, 1) != generateWattsStrogatz(40, 4, 0.3, 2));
}

TEST_CASE("p = 1 rewires every edge without self-loops or duplicates")
{
  // Graph's constructor rejects both, so a successful build is the check
  Graph g = generateWattsStrogatz(30, 4, 1.0, 5);
  CHECK(g.edges().size() == 60);
}

TEST_CASE("invalid WS parameters")
{
  CHECK(errorOf([] { generateWattsStrogatz(2, 1, 0.0, 1); }) == ErrorCode::InvalidParameter);
  CHECK(errorOf([] { generateWattsStrogatz(10, 0, 0.0, 1); }) == ErrorCode::InvalidParameter);
  CHECK(errorOf([] { generateWattsStrogatz(10, 10, 0.0, 1); }) == ErrorCode::InvalidParameter);
  CHECK(errorOf([] { generateWattsStrogatz(10, 2, 1.5, 1); }) == ErrorCode::InvalidParameter);
  CHECK(errorOf([] { generateWattsStrogatz(10, 2, -0.1, 1); }) == ErrorCode::InvalidParameter);
}

TEST_CASE("generation fails loudly when no retry is connected")
{
  // k = 1 yields an empty lattice
  CHECK(errorOf([] { generateWattsStrogatz(10, 1, 0.5, 1); }) == ErrorCode::GenerationFailure);
}

TEST_CASE("load smallest topology")
{
  Graph g = loadTopology("nodes 2\nlink 0 1\n");
  CHECK(g.nodeCount() == 2);
  CHECK(g.edges() == std::vector<Edge>{{0, 1}});
  CHECK(g.linkDelay() == std::chrono::milliseconds(10));
}

TEST_CASE("comments, blank lines and link order are ignored")
{
  Graph g = loadTopology("# header\n\nnodes 3\n  # indented comment\nlink 2 1\nlink 0 1\n");
  CHECK(g.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
}

TEST_CASE("topology file errors")
{
  CHECK(errorOf([] { loadTopology("nodes 4\nlink 3 3\n"); }) == ErrorCode::SelfLoop);
  CHECK(errorOf([] { loadTopology("nodes 3\nlink 0 1\nlink 1 0\nlink 1 2\n"); }) == ErrorCode::DuplicateEdge);
  CHECK(errorOf([] { loadTopology("nodes 4\nlink 0 1\nlink 2 3\n"); }) == ErrorCode::DisconnectedGraph);
  CHECK(errorOf([] { loadTopology("link 0 1\n"); }) == ErrorCode::ParseError);
  CHECK(errorOf([] { loadTopology("nodes 2\nlink 0 2\n"); }) == ErrorCode::ParseError);
  CHECK(errorOf([] { loadTopology(""); }) == ErrorCode::ParseError);

  try {
    loadTopology("# c\nnodes 3\nlink 0 1\nlnk 1 2\n");
    FAIL("expected parse error");
  }
  catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
}

TEST_CASE("bundled POP topology")
{
  Graph g = loadTopologyFile(std::string(ICNSIM_SOURCE_DIR) + "/data/sprint_pop.topo");
  CHECK(g.nodeCount() == 52);
  CHECK(g.isConnected());
}

TEST_CASE("load(serialize(g)) preserves the edge set")
{
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    Graph g = randomConnectedGraph(static_cast<NodeId>(2 + seed * 2), static_cast<int>(seed * 3), seed);
    CHECK(loadTopology(serializeTopology(g)) == g);
  }
}

TEST_CASE("routing on a path")
{
  Graph g = pathGraph(3);
  std::vector<NodeId> producers{2};
  RoutingTables rt = computeRouting(g, producers);
  CHECK(rt.nextHop(0, 2) == 1);
  CHECK(rt.distance(0, 2) == 2);
  CHECK(rt.diameter() == 2);
}

TEST_CASE("routing ties break toward the smaller neighbor id")
{
  Graph g = generateWattsStrogatz(6, 2, 0.0, 1);
  std::vector<NodeId> producers{3};
  RoutingTables rt = computeRouting(g, producers);
  CHECK(rt.distance(0, 3) == 3);
  CHECK(rt.nextHop(0, 3) == 1);
  CHECK(rt.nextHop(4, 3) == 3);
  CHECK(rt.nextHop(3, 3) == -1);
}

TEST_CASE("routing on a complete graph")
{
  Graph g = generateWattsStrogatz(5, 4, 0.0, 1);
  std::vector<NodeId> producers{4};
  RoutingTables rt = computeRouting(g, producers);
  for (NodeId v = 0; v < 4; ++v) {
    CHECK(rt.distance(v, 4) == 1);
    CHECK(rt.nextHop(v, 4) == 4);
  }
  CHECK(rt.diameter() == 1);
}

TEST_CASE("routing errors")
{
  Graph g = pathGraph(3);
  CHECK(errorOf([&] { computeRouting(g, {}); }) == ErrorCode::EmptyProducerSet);

  std::vector<NodeId> producers{2};
  RoutingTables rt = computeRouting(g, producers);
  CHECK(errorOf([&] { rt.nextHop(0, 1); }) == ErrorCode::NoRoute);
}

TEST_CASE("routing matches Floyd-Warshall on random graphs")
{
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    std::mt19937_64 rng(seed);
    NodeId n = std::uniform_int_distribution<NodeId>(2, 64)(rng);
    Graph g = randomConnectedGraph(n, static_cast<int>(rng() % 64), seed);
    auto oracle = floydWarshall(g);

    std::vector<NodeId> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    RoutingTables rt = computeRouting(g, all);

    int diameter = 0;
    for (NodeId v = 0; v < n; ++v) {
      for (NodeId t = 0; t < n; ++t) {
        int d = oracle[static_cast<std::size_t>(v)][static_cast<std::size_t>(t)];
        diameter = std::max(diameter, d);
        REQUIRE(rt.distance(v, t) == d);
        if (v == t) {
          continue;
        }
        NodeId hop = rt.nextHop(v, t);
        REQUIRE(g.hasEdge(v, hop));
        REQUIRE(rt.distance(v, t) == 1 + rt.distance(hop, t));
        for (NodeId u : g.neighbors(v)) {
          if (u < hop) {
            REQUIRE(oracle[static_cast<std::size_t>(u)][static_cast<std::size_t>(t)] != d - 1);
          }
        }
      }
    }
    CHECK(rt.diameter() == diameter);
  }
}

} // TEST_SUITE
