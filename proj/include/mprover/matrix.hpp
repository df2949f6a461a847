#pragma once

#include <cstdint>
#include <vector>

#include "mprover/numeric.hpp"

namespace mprover {

struct Literal {
  std::uint32_t symbol = 0;
  bool negated = false;

  Literal complement() const noexcept { return {symbol, !negated}; }
  friend bool operator==(const Literal&, const Literal&) = default;
};

using Clause = std::vector<Literal>;

// An ordered conjunction of clauses over symbols 0..alphabet_size-1.
// Duplicate literals and tautological clauses are allowed; literal order
// inside a clause only affects the order in which paths are searched.
class Matrix {
 public:
  Matrix() = default;
  // Throws Error(InvalidArgument) if a literal lies outside the alphabet.
  Matrix(std::vector<Clause> clauses, std::uint32_t alphabet_size);

  const std::vector<Clause>& clauses() const noexcept { return clauses_; }
  const Clause& clause(std::size_t i) const { return clauses_[i]; }
  std::size_t size() const noexcept { return clauses_.size(); }
  bool empty() const noexcept { return clauses_.empty(); }
  std::uint32_t alphabet_size() const noexcept { return alphabet_size_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::vector<Clause> clauses_;
  std::uint32_t alphabet_size_ = 0;
};

// Product of clause lengths: 1 for the empty matrix, 0 if any clause is empty.
PathCount total_paths(const Matrix& matrix);

// suffix[i] = product of lengths of clauses i..n-1; suffix[n] = 1.
std::vector<PathCount> suffix_path_counts(const Matrix& matrix);

}  // namespace mprover
