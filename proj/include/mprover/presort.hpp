#pragma once

#include <string>

#include "mprover/matrix.hpp"

namespace mprover {

enum class HeuristicFlag { None, Presort };

const char* to_string(HeuristicFlag flag) noexcept;
// "none" or "presort"; throws Error(InvalidArgument) otherwise.
HeuristicFlag parse_heuristic(const std::string& name);

// Within each clause, stably orders literals by how often their complement
// occurs in the preceding clauses, highest first. Clause order and each
// clause's literal multiset are preserved.
Matrix presort(const Matrix& matrix);

inline Matrix apply(HeuristicFlag flag, const Matrix& matrix) {
  return flag == HeuristicFlag::Presort ? presort(matrix) : matrix;
}

}  // namespace mprover
