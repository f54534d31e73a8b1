#include "snx/error.hpp"

namespace snx {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidQuery: return "invalid-query";
    case ErrorKind::UndefinedProbability: return "undefined-probability";
    case ErrorKind::UndefinedSimilarity: return "undefined-similarity";
    case ErrorKind::MalformedUrl: return "malformed-url";
    case ErrorKind::DuplicateId: return "duplicate-id";
    case ErrorKind::DuplicateActor: return "duplicate-actor";
    case ErrorKind::UnknownActor: return "unknown-actor";
    case ErrorKind::SelfLoop: return "self-loop";
    case ErrorKind::MissingKeyword: return "missing-keyword";
    case ErrorKind::UnknownReference: return "unknown-reference";
    case ErrorKind::InvalidDegree: return "invalid-degree";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

}  // namespace snx
