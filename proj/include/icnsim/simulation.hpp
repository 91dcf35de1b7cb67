#ifndef ICNSIM_SIMULATION_HPP
#define ICNSIM_SIMULATION_HPP

#include "icnsim/metrics.hpp"
#include "icnsim/ndn-node.hpp"
#include "icnsim/random.hpp"
#include "icnsim/workload.hpp"

#include <functional>
#include <optional>
#include <queue>
#include <variant>

namespace icnsim {

enum class ProducerPlacement {
  Random, ///< each name on a uniformly drawn router
  Single, ///< every name on `singleProducer`
};

/**
 * Time-ordered event queue. Events at the same instant pop in push order, which keeps
 * per-link FIFO delivery. Pushing beyond `capacity` pending events throws
 * Error(EventQueueOverflow).
 */
template<typename Payload>
class EventQueue
{
public:
  struct Event
  {
    SimTime time;
    std::uint64_t sequence;
    Payload payload;
  };

  explicit EventQueue(std::size_t capacity = std::size_t(1) << 24)
    : m_capacity(capacity)
  {
  }

  std::uint64_t
  push(SimTime time, Payload payload)
  {
    if (m_heap.size() >= m_capacity) {
      throw Error(ErrorCode::EventQueueOverflow,
                  "more than " + std::to_string(m_capacity) + " pending events");
    }
    const std::uint64_t seq = m_nextSequence++;
    m_heap.push(Event{time, seq, std::move(payload)});
    return seq;
  }

  bool
  empty() const noexcept
  {
    return m_heap.empty();
  }

  std::size_t
  size() const noexcept
  {
    return m_heap.size();
  }

  const Event&
  top() const
  {
    return m_heap.top();
  }

  Event
  pop()
  {
    Event ev = m_heap.top();
    m_heap.pop();
    return ev;
  }

private:
  struct Later
  {
    bool
    operator()(const Event& a, const Event& b) const
    {
      return a.time != b.time ? a.time > b.time : a.sequence > b.sequence;
    }
  };

  std::size_t m_capacity;
  std::uint64_t m_nextSequence = 0;
  std::priority_queue<Event, std::vector<Event>, Later> m_heap;
};

/// Arrival time of a packet sent now from `from` over face `to`; local faces take no time.
SimTime
arrivalTime(const Graph& g, NodeId from, FaceId to, SimTime now);

struct CompletionRecord
{
  RequestId request;
  NodeId consumer;
  ContentId name;
  SimTime issueTime;
  SimTime completionTime;
  int hops;
};

struct SimulationConfig
{
  std::shared_ptr<const Graph> graph;
  std::shared_ptr<const MZipf> popularity;
  PolicyKind policy = PolicyKind::Lru;
  UcWeights ucWeights;
  std::size_t csCapacity = 0;
  double aggregateRate = 1000.0;
  ArrivalProcess arrivals = ArrivalProcess::Poisson;
  SimTime duration = std::chrono::seconds(200);
  SimTime warmup = std::chrono::seconds(20);
  SimTime pitLifetime = std::chrono::seconds(2);
  SimTime pitSweepInterval = std::chrono::seconds(1);
  ProducerPlacement placement = ProducerPlacement::Random;
  NodeId singleProducer = 0;
  std::uint64_t seed = 1;
  std::size_t maxQueuedEvents = std::size_t(1) << 24;

  /// Test hooks. A non-empty script replaces the random request stream; a non-empty
  /// producer map (indexed by name, slot 0 unused) replaces placement.
  std::vector<Request> scriptedRequests;
  std::vector<NodeId> producerOf;
  std::function<void(const CompletionRecord&)> onCompletion;
};

/**
 * One deterministic simulation instance.
 *
 * Events are totally ordered by (time, sequence). All randomness comes from a single
 * generator seeded from `seed`: producer placement first, then per request the
 * inter-arrival gap, consumer, name and nonce. Nothing random depends on the cache policy,
 * so runs that differ only in policy see the same requests.
 */
class Simulation
{
public:
  explicit Simulation(SimulationConfig config);

  RunReport
  run();

  /// Raw counters of the last run, available even when no request completed.
  const RunCounters&
  counters() const noexcept
  {
    return m_counters;
  }

  const Node&
  node(NodeId id) const
  {
    return m_nodes.at(static_cast<std::size_t>(id));
  }

  const ForwardingContext&
  forwarding() const noexcept
  {
    return *m_fwd;
  }

  SimTime
  now() const noexcept
  {
    return m_clock;
  }

private:
  struct RequestGeneration
  {
    Request request;
  };
  struct InterestArrival
  {
    NodeId node;
    FaceId ingress;
    Interest interest;
  };
  struct DataArrival
  {
    NodeId node;
    FaceId ingress;
    Data data;
  };
  struct PitSweep
  {
  };
  using Payload = std::variant<RequestGeneration, InterestArrival, DataArrival, PitSweep>;

  struct OpenRequest
  {
    NodeId consumer;
    ContentId name;
    SimTime issueTime;
  };

  void
  schedule(SimTime at, Payload payload);

  void
  transmitInterest(NodeId from, FaceId to, Interest interest);

  void
  transmitData(NodeId from, FaceId to, Data data);

  bool
  inWindow(SimTime issueTime) const
  {
    return issueTime >= m_config.warmup && issueTime <= m_config.duration;
  }

  void
  scheduleNextRequest();

  void
  handle(const RequestGeneration& ev);

  void
  handle(const InterestArrival& ev);

  void
  handle(const DataArrival& ev);

  void
  handle(const PitSweep& ev);

  void
  apply(NodeId at, const ForwardingActions& actions);

  SimulationConfig m_config;
  Rng m_rng;
  std::shared_ptr<ForwardingContext> m_fwd;
  std::optional<RequestStream> m_stream;
  std::vector<Node> m_nodes;
  EventQueue<Payload> m_queue;
  SimTime m_clock{0};
  std::size_t m_scriptPos = 0;
  RequestId m_nextRequest = 1;
  std::unordered_map<RequestId, OpenRequest> m_open;
  std::vector<std::vector<bool>> m_seenNames; // per node, windowed
  RunCounters m_counters;
  bool m_ran = false;
};

} // namespace icnsim

#endif // ICNSIM_SIMULATION_HPP
