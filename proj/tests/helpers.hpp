#pragma once

#include <cstdlib>
#include <initializer_list>
#include <vector>

#include "mprover/matrix.hpp"

// Builds a matrix from DIMACS-style signed integers: {{1, 2}, {-1, 2}}.
inline mprover::Matrix mat(std::initializer_list<std::initializer_list<int>> clauses,
                           std::uint32_t alphabet = 0) {
  std::vector<mprover::Clause> cs;
  std::uint32_t k = alphabet;
  for (const auto& c : clauses) {
    mprover::Clause clause;
    for (int v : c) {
      auto sym = static_cast<std::uint32_t>(std::abs(v) - 1);
      if (sym + 1 > k && alphabet == 0) k = sym + 1;
      clause.push_back({sym, v < 0});
    }
    cs.push_back(std::move(clause));
  }
  return mprover::Matrix(std::move(cs), k == 0 ? 1 : k);
}
