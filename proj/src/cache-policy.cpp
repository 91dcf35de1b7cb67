#include "icnsim/cache-policy.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace icnsim {

std::string
toString(PolicyKind kind)
{
  switch (kind) {
    case PolicyKind::Fifo: return "FIFO";
    case PolicyKind::Lru: return "LRU";
    case PolicyKind::Uc: return "UC";
  }
  return "?";
}

PolicyKind
parsePolicyKind(const std::string& text)
{
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [] (unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (upper == "FIFO") {
    return PolicyKind::Fifo;
  }
  if (upper == "LRU") {
    return PolicyKind::Lru;
  }
  if (upper == "UC") {
    return PolicyKind::Uc;
  }
  throw Error(ErrorCode::InvalidParameter, "unknown cache policy '" + text + "'");
}

void
UcWeights::validate() const
{
  for (double w : {frequency, distance, reachability}) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::InvalidParameter, "UC weights must be non-negative");
    }
  }
  if (std::abs(frequency + distance + reachability - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvalidParameter, "UC weights must sum to 1");
  }
}

double
contentMetric(std::uint64_t freq, std::uint64_t maxFreqInStore, int hopsFromSource, int diameter,
              std::size_t nodeDegree, std::size_t maxDegree, const UcWeights& w)
{
  if (maxFreqInStore == 0 || diameter <= 0 || maxDegree == 0) {
    throw Error(ErrorCode::InvalidParameter, "content metric denominators must be positive");
  }
  double f = std::min(static_cast<double>(freq) / static_cast<double>(maxFreqInStore), 1.0);
  double d = std::min(static_cast<double>(hopsFromSource) / static_cast<double>(diameter), 1.0);
  double r = static_cast<double>(nodeDegree) / static_cast<double>(maxDegree);
  return w.frequency * f + w.distance * d + w.reachability * r;
}

AdmissionDecision
CachePolicy::admit(const CacheEntry& candidate, const ContentStore& store, const NodeContext& node)
{
  if (store.capacity() == 0) {
    return {false, std::nullopt};
  }
  if (!store.full()) {
    return {true, std::nullopt};
  }
  return decideWhenFull(candidate, store, node);
}

// ---- FIFO ----

void
FifoPolicy::afterInsert(CacheEntry& entry)
{
  m_position[entry.name] = m_queue.insert(m_queue.end(), entry.name);
}

void
FifoPolicy::beforeErase(const CacheEntry& entry)
{
  auto it = m_position.find(entry.name);
  m_queue.erase(it->second);
  m_position.erase(it);
}

AdmissionDecision
FifoPolicy::decideWhenFull(const CacheEntry&, const ContentStore&, const NodeContext&)
{
  return {true, m_queue.front()};
}

std::vector<ContentId>
FifoPolicy::evictionOrder(const ContentStore&, const NodeContext&) const
{
  return {m_queue.begin(), m_queue.end()};
}

// ---- LRU ----

void
LruPolicy::onAccess(ContentId, CacheEntry* stored, std::uint64_t seq)
{
  if (stored == nullptr) {
    return;
  }
  stored->lastUsedAt = seq;
  m_recency.splice(m_recency.end(), m_recency, m_position.at(stored->name));
}

void
LruPolicy::afterInsert(CacheEntry& entry)
{
  m_position[entry.name] = m_recency.insert(m_recency.end(), entry.name);
}

void
LruPolicy::beforeErase(const CacheEntry& entry)
{
  auto it = m_position.find(entry.name);
  m_recency.erase(it->second);
  m_position.erase(it);
}

AdmissionDecision
LruPolicy::decideWhenFull(const CacheEntry&, const ContentStore&, const NodeContext&)
{
  return {true, m_recency.front()};
}

std::vector<ContentId>
LruPolicy::evictionOrder(const ContentStore&, const NodeContext&) const
{
  return {m_recency.begin(), m_recency.end()};
}

// ---- frequency table ----

FrequencyTable::FrequencyTable(std::size_t capacity)
  : m_capacity(capacity)
{
}

std::uint64_t
FrequencyTable::increment(ContentId name, std::uint64_t seq)
{
  if (m_capacity == 0) {
    return 0;
  }
  auto it = m_counts.find(name);
  if (it != m_counts.end()) {
    m_byUpdate.erase(it->second.updatedAt);
    it->second.updatedAt = seq;
    m_byUpdate.emplace(seq, name);
    return ++it->second.count;
  }

  if (m_counts.size() >= m_capacity) {
    auto oldest = m_byUpdate.begin();
    m_counts.erase(oldest->second);
    m_byUpdate.erase(oldest);
  }
  m_counts.emplace(name, Counter{1, seq});
  m_byUpdate.emplace(seq, name);
  return 1;
}

std::uint64_t
FrequencyTable::count(ContentId name) const
{
  auto it = m_counts.find(name);
  return it == m_counts.end() ? 0 : it->second.count;
}

// ---- Universal Caching ----

UcPolicy::UcPolicy(std::size_t storeCapacity, UcWeights weights)
  : m_weights(weights)
  , m_frequencies(4 * storeCapacity)
{
  m_weights.validate();
}

void
UcPolicy::index(const CacheEntry& e)
{
  m_groups[e.hopsFromSource].emplace(e.frequency, e.lastUsedAt, e.name);
  ++m_storedFrequencies[e.frequency];
}

void
UcPolicy::unindex(const CacheEntry& e)
{
  auto group = m_groups.find(e.hopsFromSource);
  group->second.erase(GroupKey{e.frequency, e.lastUsedAt, e.name});
  if (group->second.empty()) {
    m_groups.erase(group);
  }
  auto f = m_storedFrequencies.find(e.frequency);
  if (--f->second == 0) {
    m_storedFrequencies.erase(f);
  }
}

std::uint64_t
UcPolicy::maxStoredFrequency() const
{
  return m_storedFrequencies.empty() ? 0 : m_storedFrequencies.rbegin()->first;
}

void
UcPolicy::onAccess(ContentId name, CacheEntry* stored, std::uint64_t seq)
{
  m_frequencies.increment(name, seq);
  if (stored == nullptr) {
    return;
  }
  // lastUsedAt only feeds the metric tie-break
  unindex(*stored);
  ++stored->frequency;
  stored->lastUsedAt = seq;
  index(*stored);
}

void
UcPolicy::afterInsert(CacheEntry& entry)
{
  entry.frequency = std::max<std::uint64_t>(1, m_frequencies.count(entry.name));
  index(entry);
}

void
UcPolicy::beforeErase(const CacheEntry& entry)
{
  unindex(entry);
}

AdmissionDecision
UcPolicy::decideWhenFull(const CacheEntry& candidate, const ContentStore&, const NodeContext& node)
{
  const std::uint64_t candidateFreq = std::max<std::uint64_t>(1, m_frequencies.count(candidate.name));
  const std::uint64_t maxFreq = std::max(candidateFreq, maxStoredFrequency());

  auto metric = [&] (std::uint64_t freq, int hops) {
    return contentMetric(freq, maxFreq, hops, node.diameter, node.degree, node.maxDegree, m_weights);
  };

  bool found = false;
  double bestMetric = 0.0;
  GroupKey best{};
  for (const auto& [hops, group] : m_groups) {
    const GroupKey& head = *group.begin();
    double cm = metric(std::get<0>(head), hops);
    bool better = !found || cm < bestMetric ||
                  (cm == bestMetric && std::tie(std::get<1>(head), std::get<2>(head)) <
                                         std::tie(std::get<1>(best), std::get<2>(best)));
    if (better) {
      found = true;
      bestMetric = cm;
      best = head;
    }
  }

  if (metric(candidateFreq, candidate.hopsFromSource) <= bestMetric) {
    return {false, std::nullopt};
  }
  return {true, std::get<2>(best)};
}

std::vector<ContentId>
UcPolicy::evictionOrder(const ContentStore& store, const NodeContext& node) const
{
  const std::uint64_t maxFreq = std::max<std::uint64_t>(1, maxStoredFrequency());
  std::vector<std::tuple<double, std::uint64_t, ContentId>> ranked;
  for (const auto& [name, e] : store.entries()) {
    ranked.emplace_back(contentMetric(e.frequency, maxFreq, e.hopsFromSource, node.diameter,
                                      node.degree, node.maxDegree, m_weights),
                        e.lastUsedAt, name);
  }
  std::sort(ranked.begin(), ranked.end());
  std::vector<ContentId> order;
  for (const auto& r : ranked) {
    order.push_back(std::get<2>(r));
  }
  return order;
}

std::unique_ptr<CachePolicy>
makePolicy(PolicyKind kind, std::size_t storeCapacity, const UcWeights& weights)
{
  switch (kind) {
    case PolicyKind::Fifo: return std::make_unique<FifoPolicy>();
    case PolicyKind::Lru: return std::make_unique<LruPolicy>();
    case PolicyKind::Uc: return std::make_unique<UcPolicy>(storeCapacity, weights);
  }
  throw Error(ErrorCode::InvalidParameter, "unknown policy kind");
}

// ---- Content Store ----

ContentStore::ContentStore(std::size_t capacity, std::unique_ptr<CachePolicy> policy, NodeContext node)
  : m_capacity(capacity)
  , m_policy(std::move(policy))
  , m_node(node)
{
  if (!m_policy) {
    throw Error(ErrorCode::InvalidParameter, "content store needs a policy");
  }
}

const CacheEntry*
ContentStore::find(ContentId name) const
{
  auto it = m_entries.find(name);
  return it == m_entries.end() ? nullptr : &it->second;
}

void
ContentStore::access(ContentId name)
{
  auto it = m_entries.find(name);
  m_policy->onAccess(name, it == m_entries.end() ? nullptr : &it->second, ++m_seq);
}

bool
ContentStore::offer(ContentId name, int hopsFromSource)
{
  if (contains(name)) {
    return true;
  }
  const std::uint64_t seq = ++m_seq;
  CacheEntry candidate{name, seq, seq, hopsFromSource, 0};

  AdmissionDecision decision = m_policy->admit(candidate, *this, m_node);
  if (!decision.admit) {
    return false;
  }
  if (decision.victim) {
    auto victim = m_entries.find(*decision.victim);
    m_policy->beforeErase(victim->second);
    m_entries.erase(victim);
  }
  auto [it, inserted] = m_entries.emplace(name, candidate);
  m_policy->afterInsert(it->second);
  return true;
}

} // namespace icnsim
