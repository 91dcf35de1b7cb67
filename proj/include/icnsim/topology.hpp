#ifndef ICNSIM_TOPOLOGY_HPP
#define ICNSIM_TOPOLOGY_HPP

#include "icnsim/common.hpp"

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace icnsim {

using Edge = std::pair<NodeId, NodeId>;

inline constexpr SimTime kDefaultLinkDelay = std::chrono::milliseconds(10);

/**
 * Immutable undirected router-level topology.
 *
 * Edges are stored normalized (first < second) and sorted; adjacency lists are
 * sorted by neighbor id. Construction rejects self-loops, duplicate edges and
 * out-of-range endpoints. Connectivity is checked separately (see isConnected)
 * because generators need to inspect disconnected candidates.
 */
class Graph
{
public:
  Graph(NodeId nodeCount, std::vector<Edge> edges, SimTime linkDelay = kDefaultLinkDelay);

  NodeId
  nodeCount() const noexcept
  {
    return m_nodeCount;
  }

  const std::vector<Edge>&
  edges() const noexcept
  {
    return m_edges;
  }

  std::span<const NodeId>
  neighbors(NodeId v) const
  {
    return m_adjacency.at(static_cast<std::size_t>(v));
  }

  std::size_t
  degree(NodeId v) const
  {
    return neighbors(v).size();
  }

  std::size_t
  maxDegree() const noexcept;

  bool
  hasEdge(NodeId a, NodeId b) const;

  SimTime
  linkDelay() const noexcept
  {
    return m_linkDelay;
  }

  bool
  isConnected() const;

  /// Throws Error(DisconnectedGraph) unless the graph is connected.
  void
  requireConnected() const;

  friend bool
  operator==(const Graph& a, const Graph& b)
  {
    return a.m_nodeCount == b.m_nodeCount && a.m_edges == b.m_edges && a.m_linkDelay == b.m_linkDelay;
  }

private:
  NodeId m_nodeCount;
  std::vector<Edge> m_edges;
  std::vector<std::vector<NodeId>> m_adjacency;
  SimTime m_linkDelay;
};

/**
 * Watts-Strogatz small-world graph WS(n, k, p).
 *
 * Starts from the ring lattice where each node links to its floor(k/2) nearest
 * neighbors on each side. Each lattice edge (i, j), visited in ascending order,
 * is rewired with probability p to (i, m), m drawn uniformly from nodes that are
 * neither i nor a current neighbor of i. Disconnected results are retried with
 * seed+1, up to 16 retries.
 */
Graph
generateWattsStrogatz(NodeId n, int k, double p, std::uint64_t seed);

/// Parses the line-oriented "nodes N / link a b" format. The result is validated as connected.
Graph
loadTopology(std::string_view text, SimTime linkDelay = kDefaultLinkDelay);

Graph
loadTopologyFile(const std::string& path, SimTime linkDelay = kDefaultLinkDelay);

std::string
serializeTopology(const Graph& g);

/**
 * Shortest-path forwarding state toward a set of producer routers.
 *
 * next_hop(v, t) is the smallest-id neighbor of v on some minimum-hop path to t.
 */
class RoutingTables
{
public:
  NodeId
  nextHop(NodeId from, NodeId producer) const;

  int
  distance(NodeId from, NodeId to) const;

  int
  diameter() const noexcept
  {
    return m_diameter;
  }

  bool
  isProducer(NodeId t) const;

  NodeId
  nodeCount() const noexcept
  {
    return m_n;
  }

private:
  friend RoutingTables
  computeRouting(const Graph& g, std::span<const NodeId> producers);

  std::size_t
  index(NodeId a, NodeId b) const
  {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(m_n) + static_cast<std::size_t>(b);
  }

  NodeId m_n = 0;
  std::vector<int> m_distance;   // all pairs, row-major
  std::vector<NodeId> m_nextHop; // row = from, column = producer; -1 when column is not a producer
  std::vector<bool> m_producer;
  int m_diameter = 0;
};

RoutingTables
computeRouting(const Graph& g, std::span<const NodeId> producers);

/// Plain BFS hop distances from one source; unreachable nodes get -1.
std::vector<int>
bfsDistances(const Graph& g, NodeId source);

} // namespace icnsim

#endif // ICNSIM_TOPOLOGY_HPP
