#include "icnsim/common.hpp"

namespace icnsim {

const char*
toString(ErrorCode code)
{
  switch (code) {
    case ErrorCode::InvalidParameter: return "invalid-parameter";
    case ErrorCode::GenerationFailure: return "generation-failure";
    case ErrorCode::ParseError: return "parse-error";
    case ErrorCode::DuplicateEdge: return "duplicate-edge";
    case ErrorCode::SelfLoop: return "self-loop";
    case ErrorCode::DisconnectedGraph: return "disconnected-graph";
    case ErrorCode::EmptyProducerSet: return "empty-producer-set";
    case ErrorCode::NoRoute: return "no-route";
    case ErrorCode::RankOutOfRange: return "rank-out-of-range";
    case ErrorCode::NoSuchLink: return "no-such-link";
    case ErrorCode::EventQueueOverflow: return "event-queue-overflow";
    case ErrorCode::NoCompletedRequests: return "no-completed-requests";
    case ErrorCode::InsufficientSamples: return "insufficient-samples";
    case ErrorCode::ValidationError: return "validation-error";
    case ErrorCode::IoError: return "io-error";
  }
  return "unknown-error";
}

} // namespace icnsim
