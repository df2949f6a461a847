#pragma once

#include <stdexcept>
#include <string>

namespace mprover {

enum class Errc {
  InvalidArgument,
  InvalidState,
  InvalidConfig,
  OracleLimitExceeded,
  DegenerateEvidence,
  MissingUtility,
  Dominance,
  InvalidLookahead,
  ParseError,
  MalformedFile,
  VersionMismatch,
};

const char* to_string(Errc code) noexcept;

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace mprover
