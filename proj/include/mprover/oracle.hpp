#pragma once

#include <cstdint>

#include "mprover/matrix.hpp"

namespace mprover {

inline constexpr std::uint32_t kDefaultOracleLimit = 20;

// Truth-table satisfiability over all 2^k assignments. Throws
// Error(OracleLimitExceeded) when the alphabet exceeds `limit` symbols.
bool brute_force_sat(const Matrix& matrix,
                     std::uint32_t limit = kDefaultOracleLimit);

}  // namespace mprover
