#ifndef ICNSIM_WORKLOAD_HPP
#define ICNSIM_WORKLOAD_HPP

#include "icnsim/common.hpp"
#include "icnsim/random.hpp"

#include <memory>
#include <vector>

namespace icnsim {

struct MZipfParams
{
  double alpha = 0.7; ///< skewness, > 0
  double q = 0.7;     ///< plateau factor, >= 0
  std::int64_t catalogSize = 1000;

  void
  validate() const;
};

/**
 * Mandelbrot-Zipf popularity over ranks 1..N: p(r) = C / (r + q)^alpha, where C is the
 * reciprocal of sum_{c=1..N} (c + q)^-alpha.
 *
 * Tables are precomputed once and immutable, so one instance can be shared by concurrent
 * simulations.
 */
class MZipf
{
public:
  explicit MZipf(const MZipfParams& params);

  const MZipfParams&
  params() const noexcept
  {
    return m_params;
  }

  double
  pmf(ContentId rank) const;

  /// P(rank <= r)
  double
  cdf(ContentId rank) const;

  /// Inverse-CDF draw; consumes exactly one uniform variate.
  ContentId
  sample(Rng& rng) const;

private:
  MZipfParams m_params;
  std::vector<double> m_pmf;
  std::vector<double> m_cdf;
};

enum class ArrivalProcess {
  Poisson,
  Periodic, ///< fixed spacing of 1/rate
};

struct Request
{
  SimTime time;
  NodeId consumer;
  ContentId name;
};

/**
 * Aggregate request process: arrivals at `rate` requests per second, consumer router
 * drawn uniformly, content rank drawn from MZipf. Random draws happen in the order
 * inter-arrival, consumer, rank.
 */
class RequestStream
{
public:
  RequestStream(std::shared_ptr<const MZipf> popularity, NodeId consumerCount, double rate,
                ArrivalProcess process = ArrivalProcess::Poisson);

  Request
  next(Rng& rng, SimTime now) const;

  double
  rate() const noexcept
  {
    return m_rate;
  }

  const MZipf&
  popularity() const noexcept
  {
    return *m_popularity;
  }

private:
  std::shared_ptr<const MZipf> m_popularity;
  NodeId m_consumerCount;
  double m_rate;
  ArrivalProcess m_process;
};

} // namespace icnsim

#endif // ICNSIM_WORKLOAD_HPP
