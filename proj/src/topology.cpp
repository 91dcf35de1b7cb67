#include "icnsim/topology.hpp"
#include "icnsim/random.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>

namespace icnsim {

static Edge
normalized(NodeId a, NodeId b)
{
  return a < b ? Edge{a, b} : Edge{b, a};
}

Graph::Graph(NodeId nodeCount, std::vector<Edge> edges, SimTime linkDelay)
  : m_nodeCount(nodeCount)
  , m_linkDelay(linkDelay)
{
  if (nodeCount <= 0) {
    throw Error(ErrorCode::InvalidParameter, "node count must be positive");
  }
  if (linkDelay < SimTime::zero()) {
    throw Error(ErrorCode::InvalidParameter, "link delay must be non-negative");
  }

  for (auto& e : edges) {
    if (e.first < 0 || e.second < 0 || e.first >= nodeCount || e.second >= nodeCount) {
      throw Error(ErrorCode::InvalidParameter,
                  "edge (" + std::to_string(e.first) + "," + std::to_string(e.second) + ") out of range");
    }
    if (e.first == e.second) {
      throw Error(ErrorCode::SelfLoop, "node " + std::to_string(e.first));
    }
    e = normalized(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end()) {
    throw Error(ErrorCode::DuplicateEdge,
                "(" + std::to_string(dup->first) + "," + std::to_string(dup->second) + ")");
  }
  m_edges = std::move(edges);

  m_adjacency.resize(static_cast<std::size_t>(nodeCount));
  for (const auto& [a, b] : m_edges) {
    m_adjacency[static_cast<std::size_t>(a)].push_back(b);
    m_adjacency[static_cast<std::size_t>(b)].push_back(a);
  }
  for (auto& adj : m_adjacency) {
    std::sort(adj.begin(), adj.end());
  }
}

std::size_t
Graph::maxDegree() const noexcept
{
  std::size_t best = 0;
  for (const auto& adj : m_adjacency) {
    best = std::max(best, adj.size());
  }
  return best;
}

bool
Graph::hasEdge(NodeId a, NodeId b) const
{
  if (a < 0 || a >= m_nodeCount) {
    return false;
  }
  auto adj = neighbors(a);
  return std::binary_search(adj.begin(), adj.end(), b);
}

bool
Graph::isConnected() const
{
  auto dist = bfsDistances(*this, 0);
  return std::none_of(dist.begin(), dist.end(), [] (int d) { return d < 0; });
}

void
Graph::requireConnected() const
{
  if (!isConnected()) {
    throw Error(ErrorCode::DisconnectedGraph,
                "graph with " + std::to_string(m_nodeCount) + " nodes is not connected");
  }
}

std::vector<int>
bfsDistances(const Graph& g, NodeId source)
{
  std::vector<int> dist(static_cast<std::size_t>(g.nodeCount()), -1);
  std::queue<NodeId> frontier;
  dist[static_cast<std::size_t>(source)] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    NodeId v = frontier.front();
    frontier.pop();
    for (NodeId u : g.neighbors(v)) {
      if (dist[static_cast<std::size_t>(u)] < 0) {
        dist[static_cast<std::size_t>(u)] = dist[static_cast<std::size_t>(v)] + 1;
        frontier.push(u);
      }
    }
  }
  return dist;
}

// ---- Watts-Strogatz ----

static std::vector<Edge>
wattsStrogatzEdges(NodeId n, int k, double p, std::uint64_t seed)
{
  const int half = k / 2;
  std::set<Edge> lattice;
  for (NodeId i = 0; i < n; ++i) {
    for (int d = 1; d <= half; ++d) {
      lattice.insert(normalized(i, (i + d) % n));
    }
  }

  std::vector<std::set<NodeId>> adj(static_cast<std::size_t>(n));
  for (const auto& [a, b] : lattice) {
    adj[static_cast<std::size_t>(a)].insert(b);
    adj[static_cast<std::size_t>(b)].insert(a);
  }

  Rng rng = makeRng(seed, Stream::Topology);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<NodeId> anyNode(0, n - 1);

  for (const auto& [i, j] : lattice) {
    if (coin(rng) >= p) {
      continue;
    }
    auto& adjI = adj[static_cast<std::size_t>(i)];
    if (adjI.size() >= static_cast<std::size_t>(n - 1)) {
      continue; // i is already adjacent to every node
    }
    NodeId m;
    do {
      m = anyNode(rng);
    } while (m == i || adjI.count(m) > 0);

    adjI.erase(j);
    adj[static_cast<std::size_t>(j)].erase(i);
    adjI.insert(m);
    adj[static_cast<std::size_t>(m)].insert(i);
  }

  std::vector<Edge> edges;
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b : adj[static_cast<std::size_t>(a)]) {
      if (a < b) {
        edges.emplace_back(a, b);
      }
    }
  }
  return edges;
}

Graph
generateWattsStrogatz(NodeId n, int k, double p, std::uint64_t seed)
{
  if (n < 3) {
    throw Error(ErrorCode::InvalidParameter, "WS requires n >= 3");
  }
  if (k < 1 || k >= n) {
    throw Error(ErrorCode::InvalidParameter, "WS requires 1 <= k < n");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::InvalidParameter, "WS requires 0 <= p <= 1");
  }

  constexpr int maxRetries = 16;
  for (int attempt = 0; attempt <= maxRetries; ++attempt) {
    Graph g(n, wattsStrogatzEdges(n, k, p, seed + static_cast<std::uint64_t>(attempt)));
    if (g.isConnected()) {
      return g;
    }
  }
  std::ostringstream os;
  os << "WS(" << n << "," << k << "," << p << ") seed " << seed << " disconnected after "
     << maxRetries << " retries";
  throw Error(ErrorCode::GenerationFailure, os.str());
}

// ---- topology file format ----

Graph
loadTopology(std::string_view text, SimTime linkDelay)
{
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineNo = 0;
  long long nodeCount = -1;
  std::vector<Edge> edges;
  std::set<Edge> seen;

  while (std::getline(in, line)) {
    ++lineNo;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') {
      continue;
    }

    std::istringstream fields(line);
    std::string keyword;
    fields >> keyword;
    if (nodeCount < 0) {
      if (keyword != "nodes" || !(fields >> nodeCount) || nodeCount <= 0) {
        throw ParseError(lineNo, "expected 'nodes <N>' with N > 0");
      }
    }
    else if (keyword == "link") {
      long long a = 0;
      long long b = 0;
      if (!(fields >> a >> b)) {
        throw ParseError(lineNo, "expected 'link <a> <b>'");
      }
      if (a < 0 || b < 0 || a >= nodeCount || b >= nodeCount) {
        throw ParseError(lineNo, "link endpoint out of range [0," + std::to_string(nodeCount) + ")");
      }
      if (a == b) {
        throw Error(ErrorCode::SelfLoop, "line " + std::to_string(lineNo) + ": link " +
                    std::to_string(a) + " " + std::to_string(b));
      }
      Edge e = normalized(static_cast<NodeId>(a), static_cast<NodeId>(b));
      if (!seen.insert(e).second) {
        throw Error(ErrorCode::DuplicateEdge, "line " + std::to_string(lineNo) + ": link " +
                    std::to_string(a) + " " + std::to_string(b));
      }
      edges.push_back(e);
    }
    else {
      throw ParseError(lineNo, "unknown directive '" + keyword + "'");
    }

    std::string trailing;
    if (fields >> trailing) {
      throw ParseError(lineNo, "unexpected trailing token '" + trailing + "'");
    }
  }

  if (nodeCount < 0) {
    throw ParseError(lineNo, "missing 'nodes <N>' line");
  }

  Graph g(static_cast<NodeId>(nodeCount), std::move(edges), linkDelay);
  g.requireConnected();
  return g;
}

Graph
loadTopologyFile(const std::string& path, SimTime linkDelay)
{
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open topology file " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return loadTopology(buf.str(), linkDelay);
}

std::string
serializeTopology(const Graph& g)
{
  std::ostringstream os;
  os << "nodes " << g.nodeCount() << '\n';
  for (const auto& [a, b] : g.edges()) {
    os << "link " << a << ' ' << b << '\n';
  }
  return os.str();
}

// ---- routing ----

NodeId
RoutingTables::nextHop(NodeId from, NodeId producer) const
{
  if (from < 0 || from >= m_n || !isProducer(producer)) {
    throw Error(ErrorCode::NoRoute, "no FIB entry from " + std::to_string(from) +
                " toward " + std::to_string(producer));
  }
  NodeId hop = m_nextHop[index(from, producer)];
  if (hop < 0 && from != producer) {
    throw Error(ErrorCode::NoRoute, "producer " + std::to_string(producer) +
                " unreachable from " + std::to_string(from));
  }
  return hop;
}

int
RoutingTables::distance(NodeId from, NodeId to) const
{
  return m_distance.at(index(from, to));
}

bool
RoutingTables::isProducer(NodeId t) const
{
  return t >= 0 && t < m_n && m_producer[static_cast<std::size_t>(t)];
}

RoutingTables
computeRouting(const Graph& g, std::span<const NodeId> producers)
{
  if (producers.empty()) {
    throw Error(ErrorCode::EmptyProducerSet, "routing needs at least one producer");
  }

  RoutingTables rt;
  const NodeId n = g.nodeCount();
  rt.m_n = n;
  rt.m_distance.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1);
  rt.m_nextHop.assign(rt.m_distance.size(), -1);
  rt.m_producer.assign(static_cast<std::size_t>(n), false);

  for (NodeId s = 0; s < n; ++s) {
    auto dist = bfsDistances(g, s);
    for (NodeId v = 0; v < n; ++v) {
      int d = dist[static_cast<std::size_t>(v)];
      rt.m_distance[rt.index(s, v)] = d;
      rt.m_diameter = std::max(rt.m_diameter, d);
    }
  }

  for (NodeId t : producers) {
    if (t < 0 || t >= n) {
      throw Error(ErrorCode::InvalidParameter, "producer " + std::to_string(t) + " out of range");
    }
    rt.m_producer[static_cast<std::size_t>(t)] = true;
    for (NodeId v = 0; v < n; ++v) {
      int dv = rt.m_distance[rt.index(v, t)];
      if (v == t || dv < 0) {
        continue;
      }
      // neighbors are sorted, so the first match is the smallest id
      for (NodeId u : g.neighbors(v)) {
        if (rt.m_distance[rt.index(u, t)] == dv - 1) {
          rt.m_nextHop[rt.index(v, t)] = u;
          break;
        }
      }
    }
  }
  return rt;
}

} // namespace icnsim
