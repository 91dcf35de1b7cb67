#ifndef ICNSIM_CACHE_POLICY_HPP
#define ICNSIM_CACHE_POLICY_HPP

#include "icnsim/common.hpp"

#include <list>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace icnsim {

enum class PolicyKind {
  Fifo,
  Lru,
  Uc,
};

std::string
toString(PolicyKind kind);

/// Accepts "FIFO", "LRU", "UC" (case-insensitive).
PolicyKind
parsePolicyKind(const std::string& text);

struct CacheEntry
{
  ContentId name = 0;
  std::uint64_t insertedAt = 0;
  std::uint64_t lastUsedAt = 0;
  int hopsFromSource = 0;
  std::uint64_t frequency = 0; ///< UC only: accesses seen at this router
};

/// Universal Caching weights for frequency, distance and reachability.
struct UcWeights
{
  double frequency = 1.0 / 3.0;
  double distance = 1.0 / 3.0;
  double reachability = 1.0 / 3.0;

  void
  validate() const;
};

/// Static facts about the router a Content Store lives on.
struct NodeContext
{
  std::size_t degree = 1;
  std::size_t maxDegree = 1;
  int diameter = 1;
};

struct AdmissionDecision
{
  bool admit = false;
  std::optional<ContentId> victim;

  friend bool
  operator==(const AdmissionDecision&, const AdmissionDecision&) = default;
};

/**
 * Universal Caching Content Metric:
 *   w_f * min(freq / maxFreq, 1) + w_d * min(hops / diameter, 1) + w_r * degree / maxDegree
 *
 * Throws Error(InvalidParameter) on a zero denominator.
 */
double
contentMetric(std::uint64_t freq, std::uint64_t maxFreqInStore, int hopsFromSource, int diameter,
              std::size_t nodeDegree, std::size_t maxDegree, const UcWeights& w);

class ContentStore;

/**
 * Replacement strategy for one Content Store.
 *
 * The store calls onAccess for every Interest seen at the router, admit before every
 * insertion of a name it does not hold, and afterInsert/beforeErase to keep the policy's
 * indexes in sync with the store's entries.
 */
class CachePolicy
{
public:
  virtual ~CachePolicy() = default;

  virtual PolicyKind
  kind() const noexcept = 0;

  virtual void
  onAccess(ContentId name, CacheEntry* stored, std::uint64_t seq) = 0;

  /// Admits freely while the store has room; otherwise defers to decideWhenFull.
  AdmissionDecision
  admit(const CacheEntry& candidate, const ContentStore& store, const NodeContext& node);

  virtual void
  afterInsert(CacheEntry& entry) = 0;

  virtual void
  beforeErase(const CacheEntry& entry) = 0;

  /// Names in the order they would be evicted, for diagnostics and tests.
  virtual std::vector<ContentId>
  evictionOrder(const ContentStore& store, const NodeContext& node) const = 0;

protected:
  virtual AdmissionDecision
  decideWhenFull(const CacheEntry& candidate, const ContentStore& store, const NodeContext& node) = 0;
};

class FifoPolicy final : public CachePolicy
{
public:
  PolicyKind
  kind() const noexcept final
  {
    return PolicyKind::Fifo;
  }

  void
  onAccess(ContentId, CacheEntry*, std::uint64_t) final
  {
  }

  void
  afterInsert(CacheEntry& entry) final;

  void
  beforeErase(const CacheEntry& entry) final;

  std::vector<ContentId>
  evictionOrder(const ContentStore& store, const NodeContext& node) const final;

protected:
  AdmissionDecision
  decideWhenFull(const CacheEntry& candidate, const ContentStore& store, const NodeContext& node) final;

private:
  std::list<ContentId> m_queue; // oldest insertion first
  std::unordered_map<ContentId, std::list<ContentId>::iterator> m_position;
};

class LruPolicy final : public CachePolicy
{
public:
  PolicyKind
  kind() const noexcept final
  {
    return PolicyKind::Lru;
  }

  void
  onAccess(ContentId name, CacheEntry* stored, std::uint64_t seq) final;

  void
  afterInsert(CacheEntry& entry) final;

  void
  beforeErase(const CacheEntry& entry) final;

  std::vector<ContentId>
  evictionOrder(const ContentStore& store, const NodeContext& node) const final;

protected:
  AdmissionDecision
  decideWhenFull(const CacheEntry& candidate, const ContentStore& store, const NodeContext& node) final;

private:
  std::list<ContentId> m_recency; // least recently used first
  std::unordered_map<ContentId, std::list<ContentId>::iterator> m_position;
};

/**
 * Bounded per-router access counters. When full, the counter updated least recently is
 * dropped to make room.
 */
class FrequencyTable
{
public:
  explicit FrequencyTable(std::size_t capacity);

  /// Returns the new count.
  std::uint64_t
  increment(ContentId name, std::uint64_t seq);

  /// 0 when the name has no counter.
  std::uint64_t
  count(ContentId name) const;

  std::size_t
  size() const noexcept
  {
    return m_counts.size();
  }

  std::size_t
  capacity() const noexcept
  {
    return m_capacity;
  }

private:
  struct Counter
  {
    std::uint64_t count;
    std::uint64_t updatedAt;
  };

  std::size_t m_capacity;
  std::unordered_map<ContentId, Counter> m_counts;
  std::map<std::uint64_t, ContentId> m_byUpdate;
};

/**
 * Universal Caching: every entry carries a Content Metric built from its access frequency,
 * its distance from the serving node and the router's degree. A full store only admits a
 * candidate whose metric beats the lowest stored metric, and that lowest entry is evicted.
 * Metric ties go to the smaller lastUsedAt, then the smaller name.
 */
class UcPolicy final : public CachePolicy
{
public:
  UcPolicy(std::size_t storeCapacity, UcWeights weights = {});

  PolicyKind
  kind() const noexcept final
  {
    return PolicyKind::Uc;
  }

  void
  onAccess(ContentId name, CacheEntry* stored, std::uint64_t seq) final;

  void
  afterInsert(CacheEntry& entry) final;

  void
  beforeErase(const CacheEntry& entry) final;

  std::vector<ContentId>
  evictionOrder(const ContentStore& store, const NodeContext& node) const final;

  const FrequencyTable&
  frequencies() const noexcept
  {
    return m_frequencies;
  }

  const UcWeights&
  weights() const noexcept
  {
    return m_weights;
  }

protected:
  AdmissionDecision
  decideWhenFull(const CacheEntry& candidate, const ContentStore& store, const NodeContext& node) final;

private:
  using GroupKey = std::tuple<std::uint64_t, std::uint64_t, ContentId>; // freq, lastUsedAt, name

  void
  index(const CacheEntry& entry);

  void
  unindex(const CacheEntry& entry);

  std::uint64_t
  maxStoredFrequency() const;

  UcWeights m_weights;
  FrequencyTable m_frequencies;
  // Within one hop-distance group the metric is ordered by frequency alone, so the
  // minimum-metric entry is the first element of one of these sets.
  std::map<int, std::set<GroupKey>> m_groups;
  std::map<std::uint64_t, std::size_t> m_storedFrequencies; // freq -> number of entries
};

std::unique_ptr<CachePolicy>
makePolicy(PolicyKind kind, std::size_t storeCapacity, const UcWeights& weights = {});

/**
 * Capacity-bounded Content Store of one router; replacement is delegated to a CachePolicy.
 */
class ContentStore
{
public:
  ContentStore(std::size_t capacity, std::unique_ptr<CachePolicy> policy, NodeContext node = {});

  std::size_t
  capacity() const noexcept
  {
    return m_capacity;
  }

  std::size_t
  size() const noexcept
  {
    return m_entries.size();
  }

  bool
  full() const noexcept
  {
    return m_entries.size() >= m_capacity;
  }

  bool
  contains(ContentId name) const
  {
    return m_entries.count(name) > 0;
  }

  const CacheEntry*
  find(ContentId name) const;

  /// Records an Interest for `name` at this router, hit or miss.
  void
  access(ContentId name);

  /// Offers returning Data for caching. Returns true when the name ends up stored.
  bool
  offer(ContentId name, int hopsFromSource);

  const CachePolicy&
  policy() const noexcept
  {
    return *m_policy;
  }

  const NodeContext&
  node() const noexcept
  {
    return m_node;
  }

  const std::unordered_map<ContentId, CacheEntry>&
  entries() const noexcept
  {
    return m_entries;
  }

  std::vector<ContentId>
  evictionOrder() const
  {
    return m_policy->evictionOrder(*this, m_node);
  }

private:
  std::size_t m_capacity;
  std::unique_ptr<CachePolicy> m_policy;
  NodeContext m_node;
  std::unordered_map<ContentId, CacheEntry> m_entries;
  std::uint64_t m_seq = 0;
};

} // namespace icnsim

#endif // ICNSIM_CACHE_POLICY_HPP
