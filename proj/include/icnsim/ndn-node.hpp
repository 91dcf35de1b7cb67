#ifndef ICNSIM_NDN_NODE_HPP
#define ICNSIM_NDN_NODE_HPP

#include "icnsim/cache-policy.hpp"
#include "icnsim/topology.hpp"

#include <memory>
#include <unordered_map>
#include <vector>

namespace icnsim {

/// An interface of a router: a neighbor router id, or kLocalFace for attached applications.
using FaceId = NodeId;
inline constexpr FaceId kLocalFace = -1;

using RequestId = std::uint64_t;

struct Interest
{
  ContentId name = 0;
  std::uint64_t nonce = 0;
  int hopsTraveled = 0;
  NodeId originConsumer = 0;
  SimTime issueTime{0};
  RequestId request = 0;
};

struct Data
{
  ContentId name = 0;
  std::size_t chunkSize = kChunkSizeBytes;
  int hopsFromSource = 0; ///< links crossed since the serving node
};

struct PendingRequest
{
  RequestId id;
  SimTime issueTime;
};

struct PitEntry
{
  ContentId name = 0;
  std::vector<FaceId> ingress; ///< insertion order, no duplicates
  std::vector<PendingRequest> localRequests;
  SimTime createdAt{0};
  SimTime expiresAt{0};
};

/// Shared, immutable forwarding knowledge: routes and which router produces each name.
struct ForwardingContext
{
  std::shared_ptr<const Graph> graph;
  std::shared_ptr<const RoutingTables> routes;
  std::vector<NodeId> producerOf; ///< indexed by ContentId; slot 0 unused

  NodeId
  producer(ContentId name) const;
};

enum class InterestOutcome {
  CacheHit,
  ProducerServe,
  Aggregated,
  Forwarded,
};

struct Completion
{
  RequestId request;
  SimTime issueTime;
  int hops;
};

/// What a router wants done after processing one packet.
struct ForwardingActions
{
  InterestOutcome outcome = InterestOutcome::Forwarded;
  std::vector<std::pair<FaceId, Interest>> interests;
  std::vector<std::pair<FaceId, Data>> data;
  std::vector<Completion> completions;
  bool unsolicited = false;
};

struct PitExpiry
{
  std::size_t removed = 0;
  std::vector<PendingRequest> timedOut;
};

/**
 * One NDN router: Content Store, PIT and FIB view.
 *
 * Interest pipeline: CS lookup, then PIT aggregation, then local producer, then FIB
 * forwarding. Data pipeline: satisfy the PIT entry on every recorded face, then offer the
 * Data to the Content Store. Producer serves bypass the local Content Store.
 */
class Node
{
public:
  Node(NodeId id, std::shared_ptr<const ForwardingContext> fwd, ContentStore cs, SimTime pitLifetime);

  NodeId
  id() const noexcept
  {
    return m_id;
  }

  ForwardingActions
  onInterest(const Interest& interest, FaceId ingress, SimTime now);

  ForwardingActions
  onData(const Data& data, FaceId ingress, SimTime now);

  /// Removes entries with expiresAt <= now.
  PitExpiry
  expirePit(SimTime now);

  const ContentStore&
  contentStore() const noexcept
  {
    return m_cs;
  }

  ContentStore&
  contentStore() noexcept
  {
    return m_cs;
  }

  const PitEntry*
  findPit(ContentId name) const;

  std::size_t
  pitSize() const noexcept
  {
    return m_pit.size();
  }

private:
  NodeId m_id;
  std::shared_ptr<const ForwardingContext> m_fwd;
  ContentStore m_cs;
  SimTime m_pitLifetime;
  std::unordered_map<ContentId, PitEntry> m_pit;
};

} // namespace icnsim

#endif // ICNSIM_NDN_NODE_HPP
