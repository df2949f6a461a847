#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "mprover/matrix.hpp"

namespace mprover {

// DIMACS CNF: "p cnf <symbols> <clauses>" header, zero-terminated clauses,
// 'c' comment lines. Variable i maps to symbol i-1. Throws Error(ParseError).
Matrix parse_dimacs(std::string_view text);
Matrix read_dimacs(const std::filesystem::path& path);

void write_dimacs(std::ostream& out, const Matrix& matrix);
std::string to_dimacs(const Matrix& matrix);

// Signed DIMACS encoding of one literal.
inline long dimacs_literal(const Literal& lit) {
  long v = static_cast<long>(lit.symbol) + 1;
  return lit.negated ? -v : v;
}

}  // namespace mprover
