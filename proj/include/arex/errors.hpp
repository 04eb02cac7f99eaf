#ifndef AREX_ERRORS_HPP
#define AREX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace arex {

// Base class for all errors raised by the library. The CLI maps each
// concrete class to a fixed exit code.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Configuration file missing/unparsable, unknown override key, bad value.
struct ConfigError : Error {
  using Error::Error;
};

// Filesystem failure reading or writing an artifact.
struct IoError : Error {
  using Error::Error;
};

// The search backend cannot answer: network/IO failure for the live
// backend, missing snapshot file for the file backend.
struct ProviderUnavailable : Error {
  using Error::Error;
};

// A snapshot file failed schema validation.
struct MalformedSnapshot : Error {
  using Error::Error;
};

// An instance query was requested for a pair with an empty entity.
struct EmptyEntity : Error {
  using Error::Error;
};

// Entity spans passed to occurrence construction overlap.
struct SpanOverlap : Error {
  using Error::Error;
};

// An extracted pair has no judgment in the gold set.
struct MissingJudgment : Error {
  using Error::Error;
};

// Confidence requested for a pattern with zero judged instances.
struct NoEvidence : Error {
  using Error::Error;
};

}  // namespace arex

#endif  // AREX_ERRORS_HPP
