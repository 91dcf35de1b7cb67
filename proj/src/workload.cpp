#include "icnsim/workload.hpp"

#include <algorithm>
#include <cmath>

namespace icnsim {

void
MZipfParams::validate() const
{
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::InvalidParameter, "MZipf alpha must be > 0");
  }
  if (!(q >= 0.0) || !std::isfinite(q)) {
    throw Error(ErrorCode::InvalidParameter, "MZipf q must be >= 0");
  }
  if (catalogSize < 1) {
    throw Error(ErrorCode::InvalidParameter, "catalog size must be >= 1");
  }
}

MZipf::MZipf(const MZipfParams& params)
  : m_params(params)
{
  params.validate();
  const auto n = static_cast<std::size_t>(params.catalogSize);

  std::vector<long double> weight(n);
  long double total = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    weight[i] = std::pow(static_cast<long double>(i + 1) + params.q, -static_cast<long double>(params.alpha));
    total += weight[i];
  }

  m_pmf.resize(n);
  m_cdf.resize(n);
  long double running = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    m_pmf[i] = static_cast<double>(weight[i] / total);
    running += weight[i];
    m_cdf[i] = static_cast<double>(running / total);
  }
  m_cdf.back() = 1.0;
}

double
MZipf::pmf(ContentId rank) const
{
  if (rank < 1 || rank > m_params.catalogSize) {
    throw Error(ErrorCode::RankOutOfRange, "rank " + std::to_string(rank) + " outside 1.." +
                std::to_string(m_params.catalogSize));
  }
  return m_pmf[static_cast<std::size_t>(rank - 1)];
}

double
MZipf::cdf(ContentId rank) const
{
  if (rank < 1 || rank > m_params.catalogSize) {
    throw Error(ErrorCode::RankOutOfRange, "rank " + std::to_string(rank) + " outside 1.." +
                std::to_string(m_params.catalogSize));
  }
  return m_cdf[static_cast<std::size_t>(rank - 1)];
}

ContentId
MZipf::sample(Rng& rng) const
{
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  double u = uniform(rng);
  auto it = std::upper_bound(m_cdf.begin(), m_cdf.end(), u);
  if (it == m_cdf.end()) {
    --it;
  }
  return static_cast<ContentId>(it - m_cdf.begin()) + 1;
}

RequestStream::RequestStream(std::shared_ptr<const MZipf> popularity, NodeId consumerCount,
                             double rate, ArrivalProcess process)
  : m_popularity(std::move(popularity))
  , m_consumerCount(consumerCount)
  , m_rate(rate)
  , m_process(process)
{
  if (!m_popularity) {
    throw Error(ErrorCode::InvalidParameter, "request stream needs a popularity model");
  }
  if (consumerCount < 1) {
    throw Error(ErrorCode::InvalidParameter, "request stream needs at least one consumer");
  }
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw Error(ErrorCode::InvalidParameter, "aggregate rate must be > 0");
  }
}

Request
RequestStream::next(Rng& rng, SimTime now) const
{
  double gapSeconds = 1.0 / m_rate;
  if (m_process == ArrivalProcess::Poisson) {
    std::exponential_distribution<double> gap(m_rate);
    gapSeconds = gap(rng);
  }
  // inter-arrival times must stay strictly positive after rounding to the clock tick
  SimTime gap = std::max(fromSeconds(gapSeconds), SimTime(1));

  std::uniform_int_distribution<NodeId> consumer(0, m_consumerCount - 1);
  NodeId who = consumer(rng);
  ContentId name = m_popularity->sample(rng);
  return Request{now + gap, who, name};
}

} // namespace icnsim
