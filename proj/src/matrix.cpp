#include "mprover/matrix.hpp"

#include <string>

#include "mprover/error.hpp"

namespace mprover {

Matrix::Matrix(std::vector<Clause> clauses, std::uint32_t alphabet_size)
    : clauses_(std::move(clauses)), alphabet_size_(alphabet_size) {
  for (std::size_t i = 0; i < clauses_.size(); ++i) {
    for (const Literal& lit : clauses_[i]) {
      if (lit.symbol >= alphabet_size_) {
        throw Error(Errc::InvalidArgument,
                    "clause " + std::to_string(i + 1) + " uses symbol " +
                        std::to_string(lit.symbol) + " outside alphabet of size " +
                        std::to_string(alphabet_size_));
      }
    }
  }
}

PathCount total_paths(const Matrix& matrix) {
  PathCount total = 1;
  for (const Clause& c : matrix.clauses()) total *= c.size();
  return total;
}

std::vector<PathCount> suffix_path_counts(const Matrix& matrix) {
  const std::size_t n = matrix.size();
  std::vector<PathCount> suffix(n + 1);
  suffix[n] = 1;
  for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] * matrix.clause(i).size();
  return suffix;
}

}  // namespace mprover
