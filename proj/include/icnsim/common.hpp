#ifndef ICNSIM_COMMON_HPP
#define ICNSIM_COMMON_HPP

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace icnsim {

using NodeId = std::int32_t;

/// Content name: a flat catalog rank in 1..N.
using ContentId = std::int64_t;

/// Simulation clock. Integer nanoseconds keep event ordering exact.
using SimTime = std::chrono::nanoseconds;

inline constexpr std::size_t kChunkSizeBytes = 1024;

inline double
toSeconds(SimTime t)
{
  return std::chrono::duration<double>(t).count();
}

inline SimTime
fromSeconds(double seconds)
{
  return std::chrono::duration_cast<SimTime>(std::chrono::duration<double>(seconds));
}

enum class ErrorCode {
  InvalidParameter,
  GenerationFailure,
  ParseError,
  DuplicateEdge,
  SelfLoop,
  DisconnectedGraph,
  EmptyProducerSet,
  NoRoute,
  RankOutOfRange,
  NoSuchLink,
  EventQueueOverflow,
  NoCompletedRequests,
  InsufficientSamples,
  ValidationError,
  IoError,
};

const char*
toString(ErrorCode code);

class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(toString(code)) + ": " + what)
    , m_code(code)
  {
  }

  ErrorCode
  code() const noexcept
  {
    return m_code;
  }

private:
  ErrorCode m_code;
};

/// Parse failure that remembers where it happened (line number or key path).
class ParseError : public Error
{
public:
  ParseError(std::size_t line, const std::string& what)
    : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what)
    , m_line(line)
  {
  }

  ParseError(const std::string& keyPath, const std::string& what)
    : Error(ErrorCode::ParseError, keyPath + ": " + what)
    , m_keyPath(keyPath)
  {
  }

  std::size_t
  line() const noexcept
  {
    return m_line;
  }

  const std::string&
  keyPath() const noexcept
  {
    return m_keyPath;
  }

private:
  std::size_t m_line = 0;
  std::string m_keyPath;
};

} // namespace icnsim

#endif // ICNSIM_COMMON_HPP
