#include "icnsim/ndn-node.hpp"

#include <algorithm>

namespace icnsim {

NodeId
ForwardingContext::producer(ContentId name) const
{
  if (name < 1 || static_cast<std::size_t>(name) >= producerOf.size()) {
    throw Error(ErrorCode::NoRoute, "no producer known for name " + std::to_string(name));
  }
  return producerOf[static_cast<std::size_t>(name)];
}

Node::Node(NodeId id, std::shared_ptr<const ForwardingContext> fwd, ContentStore cs, SimTime pitLifetime)
  : m_id(id)
  , m_fwd(std::move(fwd))
  , m_cs(std::move(cs))
  , m_pitLifetime(pitLifetime)
{
}

const PitEntry*
Node::findPit(ContentId name) const
{
  auto it = m_pit.find(name);
  return it == m_pit.end() ? nullptr : &it->second;
}

static void
serve(ForwardingActions& actions, const Interest& interest, FaceId ingress)
{
  Data data{interest.name, kChunkSizeBytes, 0};
  if (ingress == kLocalFace) {
    actions.completions.push_back({interest.request, interest.issueTime, 0});
  }
  else {
    actions.data.emplace_back(ingress, data);
  }
}

ForwardingActions
Node::onInterest(const Interest& interest, FaceId ingress, SimTime now)
{
  ForwardingActions actions;
  m_cs.access(interest.name);

  if (m_cs.contains(interest.name)) {
    actions.outcome = InterestOutcome::CacheHit;
    serve(actions, interest, ingress);
    return actions;
  }

  auto pit = m_pit.find(interest.name);
  if (pit != m_pit.end()) {
    actions.outcome = InterestOutcome::Aggregated;
    auto& faces = pit->second.ingress;
    if (std::find(faces.begin(), faces.end(), ingress) == faces.end()) {
      faces.push_back(ingress);
    }
    if (ingress == kLocalFace) {
      pit->second.localRequests.push_back({interest.request, interest.issueTime});
    }
    return actions;
  }

  const NodeId producer = m_fwd->producer(interest.name);
  if (producer == m_id) {
    actions.outcome = InterestOutcome::ProducerServe;
    serve(actions, interest, ingress);
    return actions;
  }

  NodeId upstream = m_fwd->routes->nextHop(m_id, producer);

  PitEntry entry;
  entry.name = interest.name;
  entry.ingress.push_back(ingress);
  if (ingress == kLocalFace) {
    entry.localRequests.push_back({interest.request, interest.issueTime});
  }
  entry.createdAt = now;
  entry.expiresAt = now + m_pitLifetime;
  m_pit.emplace(interest.name, std::move(entry));

  actions.outcome = InterestOutcome::Forwarded;
  actions.interests.emplace_back(upstream, interest);
  return actions;
}

ForwardingActions
Node::onData(const Data& data, FaceId /*ingress*/, SimTime /*now*/)
{
  ForwardingActions actions;
  auto pit = m_pit.find(data.name);
  if (pit == m_pit.end()) {
    actions.unsolicited = true;
    return actions;
  }

  PitEntry entry = std::move(pit->second);
  m_pit.erase(pit);

  for (FaceId face : entry.ingress) {
    if (face != kLocalFace) {
      actions.data.emplace_back(face, data);
    }
  }
  for (const auto& req : entry.localRequests) {
    actions.completions.push_back({req.id, req.issueTime, data.hopsFromSource});
  }

  m_cs.offer(data.name, data.hopsFromSource);
  return actions;
}

PitExpiry
Node::expirePit(SimTime now)
{
  PitExpiry result;
  for (auto it = m_pit.begin(); it != m_pit.end();) {
    if (it->second.expiresAt <= now) {
      ++result.removed;
      result.timedOut.insert(result.timedOut.end(), it->second.localRequests.begin(),
                             it->second.localRequests.end());
      it = m_pit.erase(it);
    }
    else {
      ++it;
    }
  }
  std::sort(result.timedOut.begin(), result.timedOut.end(),
            [] (const PendingRequest& a, const PendingRequest& b) { return a.id < b.id; });
  return result;
}

} // namespace icnsim
