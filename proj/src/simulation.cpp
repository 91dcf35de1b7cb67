#include "icnsim/simulation.hpp"

#include <algorithm>
#include <set>

namespace icnsim {

SimTime
arrivalTime(const Graph& g, NodeId from, FaceId to, SimTime now)
{
  if (to == kLocalFace) {
    return now;
  }
  if (!g.hasEdge(from, to)) {
    throw Error(ErrorCode::NoSuchLink, "no link " + std::to_string(from) + " -> " + std::to_string(to));
  }
  return now + g.linkDelay();
}

static std::vector<NodeId>
placeProducers(const SimulationConfig& cfg, Rng& rng)
{
  const auto n = cfg.graph->nodeCount();
  const auto catalog = cfg.popularity->params().catalogSize;

  if (!cfg.producerOf.empty()) {
    if (cfg.producerOf.size() != static_cast<std::size_t>(catalog) + 1) {
      throw Error(ErrorCode::InvalidParameter, "producer map must have catalog_size + 1 slots");
    }
    for (std::size_t name = 1; name < cfg.producerOf.size(); ++name) {
      if (cfg.producerOf[name] < 0 || cfg.producerOf[name] >= n) {
        throw Error(ErrorCode::InvalidParameter, "producer of name " + std::to_string(name) + " out of range");
      }
    }
    return cfg.producerOf;
  }

  std::vector<NodeId> producerOf(static_cast<std::size_t>(catalog) + 1, 0);
  if (cfg.placement == ProducerPlacement::Single) {
    if (cfg.singleProducer < 0 || cfg.singleProducer >= n) {
      throw Error(ErrorCode::InvalidParameter, "single producer out of range");
    }
    std::fill(producerOf.begin() + 1, producerOf.end(), cfg.singleProducer);
    return producerOf;
  }

  std::uniform_int_distribution<NodeId> anyNode(0, n - 1);
  for (std::size_t name = 1; name < producerOf.size(); ++name) {
    producerOf[name] = anyNode(rng);
  }
  return producerOf;
}

Simulation::Simulation(SimulationConfig config)
  : m_config(std::move(config))
  , m_rng(makeRng(m_config.seed, Stream::Workload))
  , m_queue(m_config.maxQueuedEvents)
{
  if (!m_config.graph || !m_config.popularity) {
    throw Error(ErrorCode::InvalidParameter, "simulation needs a graph and a popularity model");
  }
  if (!(m_config.duration > m_config.warmup && m_config.warmup >= SimTime::zero())) {
    throw Error(ErrorCode::InvalidParameter, "require duration > warmup >= 0");
  }
  if (m_config.pitLifetime <= SimTime::zero() || m_config.pitSweepInterval <= SimTime::zero()) {
    throw Error(ErrorCode::InvalidParameter, "PIT lifetime and sweep interval must be positive");
  }
  const Graph& g = *m_config.graph;
  g.requireConnected();

  auto producerOf = placeProducers(m_config, m_rng);
  std::set<NodeId> producerSet(producerOf.begin() + 1, producerOf.end());
  std::vector<NodeId> producers(producerSet.begin(), producerSet.end());

  m_fwd = std::make_shared<ForwardingContext>();
  m_fwd->graph = m_config.graph;
  m_fwd->routes = std::make_shared<const RoutingTables>(computeRouting(g, producers));
  m_fwd->producerOf = std::move(producerOf);

  NodeContext ctx;
  ctx.maxDegree = std::max<std::size_t>(1, g.maxDegree());
  ctx.diameter = std::max(1, m_fwd->routes->diameter());
  m_nodes.reserve(static_cast<std::size_t>(g.nodeCount()));
  for (NodeId v = 0; v < g.nodeCount(); ++v) {
    ctx.degree = g.degree(v);
    ContentStore cs(m_config.csCapacity, makePolicy(m_config.policy, m_config.csCapacity, m_config.ucWeights), ctx);
    m_nodes.emplace_back(v, m_fwd, std::move(cs), m_config.pitLifetime);
  }

  if (m_config.scriptedRequests.empty()) {
    m_stream.emplace(m_config.popularity, g.nodeCount(), m_config.aggregateRate, m_config.arrivals);
  }
  else {
    auto& script = m_config.scriptedRequests;
    std::stable_sort(script.begin(), script.end(),
                     [] (const Request& a, const Request& b) { return a.time < b.time; });
    for (const auto& r : script) {
      if (r.consumer < 0 || r.consumer >= g.nodeCount() || r.name < 1 ||
          r.name > m_config.popularity->params().catalogSize) {
        throw Error(ErrorCode::InvalidParameter, "scripted request out of range");
      }
    }
  }

  m_counters.nodes.resize(static_cast<std::size_t>(g.nodeCount()));
  m_seenNames.assign(static_cast<std::size_t>(g.nodeCount()),
                     std::vector<bool>(static_cast<std::size_t>(m_config.popularity->params().catalogSize) + 1));
}

void
Simulation::schedule(SimTime at, Payload payload)
{
  m_queue.push(at, std::move(payload));
}

void
Simulation::transmitInterest(NodeId from, FaceId to, Interest interest)
{
  SimTime at = arrivalTime(*m_config.graph, from, to, m_clock);
  ++interest.hopsTraveled;
  schedule(at, InterestArrival{to, from, interest});
}

void
Simulation::transmitData(NodeId from, FaceId to, Data data)
{
  SimTime at = arrivalTime(*m_config.graph, from, to, m_clock);
  ++data.hopsFromSource;
  schedule(at, DataArrival{to, from, data});
}

void
Simulation::scheduleNextRequest()
{
  if (!m_stream) {
    if (m_scriptPos < m_config.scriptedRequests.size()) {
      const Request& r = m_config.scriptedRequests[m_scriptPos++];
      schedule(r.time, RequestGeneration{r});
    }
    return;
  }
  Request r = m_stream->next(m_rng, m_clock);
  if (r.time <= m_config.duration) {
    schedule(r.time, RequestGeneration{r});
  }
}

void
Simulation::handle(const RequestGeneration& ev)
{
  const Request& r = ev.request;
  Interest interest;
  interest.name = r.name;
  interest.nonce = m_rng();
  interest.originConsumer = r.consumer;
  interest.issueTime = m_clock;
  interest.request = m_nextRequest++;

  m_open.emplace(interest.request, OpenRequest{r.consumer, r.name, m_clock});
  if (inWindow(m_clock)) {
    ++m_counters.requestsIssued;
  }
  // the consumer application hands the Interest to its router over a local face
  schedule(m_clock, InterestArrival{r.consumer, kLocalFace, interest});
  scheduleNextRequest();
}

void
Simulation::handle(const InterestArrival& ev)
{
  Node& node = m_nodes[static_cast<std::size_t>(ev.node)];
  const bool counted = inWindow(ev.interest.issueTime);
  auto& nc = m_counters.nodes[static_cast<std::size_t>(ev.node)];
  if (counted) {
    ++nc.interestsReceived;
    std::vector<bool>::reference seen = m_seenNames[static_cast<std::size_t>(ev.node)][static_cast<std::size_t>(ev.interest.name)];
    if (!seen) {
      seen = true;
      ++nc.uniqueNamesRequested;
    }
  }

  ForwardingActions actions = node.onInterest(ev.interest, ev.ingress, m_clock);
  if (counted) {
    switch (actions.outcome) {
      case InterestOutcome::CacheHit: ++nc.cacheHits; break;
      case InterestOutcome::ProducerServe: ++m_counters.producerServes; break;
      case InterestOutcome::Aggregated: ++m_counters.aggregatedInterests; break;
      case InterestOutcome::Forwarded: break;
    }
  }
  apply(ev.node, actions);
}

void
Simulation::handle(const DataArrival& ev)
{
  ForwardingActions actions = m_nodes[static_cast<std::size_t>(ev.node)].onData(ev.data, ev.ingress, m_clock);
  if (actions.unsolicited) {
    ++m_counters.unsolicitedData;
  }
  apply(ev.node, actions);
}

void
Simulation::handle(const PitSweep&)
{
  for (auto& node : m_nodes) {
    for (const auto& req : node.expirePit(m_clock).timedOut) {
      auto it = m_open.find(req.id);
      if (it == m_open.end()) {
        continue;
      }
      if (inWindow(it->second.issueTime)) {
        ++m_counters.timeouts;
      }
      m_open.erase(it);
    }
  }
  SimTime next = m_clock + m_config.pitSweepInterval;
  if (next <= m_config.duration) {
    schedule(next, PitSweep{});
  }
}

void
Simulation::apply(NodeId at, const ForwardingActions& actions)
{
  for (const auto& [face, interest] : actions.interests) {
    transmitInterest(at, face, interest);
  }
  for (const auto& [face, data] : actions.data) {
    transmitData(at, face, data);
  }
  for (const auto& c : actions.completions) {
    auto it = m_open.find(c.request);
    if (it == m_open.end()) {
      continue;
    }
    if (inWindow(it->second.issueTime)) {
      ++m_counters.completions;
      m_counters.sumHopCounts += static_cast<std::uint64_t>(c.hops);
    }
    if (m_config.onCompletion) {
      m_config.onCompletion(CompletionRecord{c.request, it->second.consumer, it->second.name,
                                             it->second.issueTime, m_clock, c.hops});
    }
    m_open.erase(it);
  }
}

RunReport
Simulation::run()
{
  if (m_ran) {
    throw Error(ErrorCode::InvalidParameter, "a simulation instance runs once");
  }
  m_ran = true;

  scheduleNextRequest();
  if (m_config.pitSweepInterval <= m_config.duration) {
    schedule(m_config.pitSweepInterval, PitSweep{});
  }

  while (!m_queue.empty() && m_queue.top().time <= m_config.duration) {
    auto ev = m_queue.pop();
    m_clock = ev.time;
    std::visit([this] (const auto& payload) { handle(payload); }, ev.payload);
  }

  for (const auto& [id, req] : m_open) {
    if (inWindow(req.issueTime)) {
      ++m_counters.inFlightAtCutoff;
    }
  }
  return makeRunReport(m_counters);
}

} // namespace icnsim
