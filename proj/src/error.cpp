#include "mprover/error.hpp"

namespace mprover {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "invalid-argument";
    case Errc::InvalidState: return "invalid-state";
    case Errc::InvalidConfig: return "invalid-config";
    case Errc::OracleLimitExceeded: return "oracle-limit-exceeded";
    case Errc::DegenerateEvidence: return "degenerate-evidence";
    case Errc::MissingUtility: return "missing-utility";
    case Errc::Dominance: return "dominance-error";
    case Errc::InvalidLookahead: return "invalid-lookahead";
    case Errc::ParseError: return "parse-error";
    case Errc::MalformedFile: return "malformed-file";
    case Errc::VersionMismatch: return "version-mismatch";
  }
  return "unknown";
}

}  // namespace mprover
