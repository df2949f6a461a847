#include "mprover/oracle.hpp"

#include <string>
#include <vector>

#include "mprover/error.hpp"

namespace mprover {

bool brute_force_sat(const Matrix& matrix, std::uint32_t limit) {
  const std::uint32_t k = matrix.alphabet_size();
  if (k > limit || k > 63) {
    throw Error(Errc::OracleLimitExceeded,
                "truth-table oracle limited to " + std::to_string(limit) +
                    " symbols, matrix has " + std::to_string(k));
  }
  // Clause i is satisfied by assignment a iff (a & pos[i]) | (~a & neg[i]) != 0.
  std::vector<std::uint64_t> pos, neg;
  pos.reserve(matrix.size());
  neg.reserve(matrix.size());
  for (const Clause& c : matrix.clauses()) {
    std::uint64_t p = 0, n = 0;
    for (const Literal& lit : c) (lit.negated ? n : p) |= std::uint64_t{1} << lit.symbol;
    pos.push_back(p);
    neg.push_back(n);
  }
  const std::uint64_t assignments = std::uint64_t{1} << k;
  for (std::uint64_t a = 0; a < assignments; ++a) {
    bool all = true;
    for (std::size_t i = 0; i < pos.size() && all; ++i) {
      all = ((a & pos[i]) | (~a & neg[i])) != 0;
    }
    if (all) return true;
  }
  return false;
}

}  // namespace mprover
