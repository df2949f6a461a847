#include "mprover/presort.hpp"

#include <algorithm>
#include <vector>

#include "mprover/error.hpp"

namespace mprover {

const char* to_string(HeuristicFlag flag) noexcept {
  return flag == HeuristicFlag::Presort ? "presort" : "none";
}

HeuristicFlag parse_heuristic(const std::string& name) {
  if (name == "none") return HeuristicFlag::None;
  if (name == "presort") return HeuristicFlag::Presort;
  throw Error(Errc::InvalidArgument, "unknown heuristic '" + name + "'");
}

Matrix presort(const Matrix& matrix) {
  // seen[2*symbol + negated]: occurrences in clauses before the current one
  std::vector<std::uint32_t> seen(2 * std::size_t{matrix.alphabet_size()}, 0);
  auto slot = [](const Literal& l) { return 2 * std::size_t{l.symbol} + (l.negated ? 1 : 0); };

  std::vector<Clause> out;
  out.reserve(matrix.size());
  for (const Clause& clause : matrix.clauses()) {
    Clause sorted = clause;
    std::stable_sort(sorted.begin(), sorted.end(), [&](const Literal& a, const Literal& b) {
      return seen[slot(a.complement())] > seen[slot(b.complement())];
    });
    for (const Literal& lit : clause) ++seen[slot(lit)];
    out.push_back(std::move(sorted));
  }
  return Matrix(std::move(out), matrix.alphabet_size());
}

}  // namespace mprover
