#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mprover/matrix.hpp"

namespace mprover {

struct GeneratorConfig {
  std::uint32_t n_clauses = 20;
  std::uint32_t lits_per_clause = 3;
  std::uint32_t alphabet_size = 4;
  std::uint64_t seed = 0;

  friend bool operator==(const GeneratorConfig&, const GeneratorConfig&) = default;
};

// Throws Error(InvalidConfig) unless all sizes are positive and
// lits_per_clause <= alphabet_size.
void validate(const GeneratorConfig& config);

// Random matrix: each clause draws lits_per_clause distinct symbols
// uniformly (redrawing symbols already in the clause) and negates each with
// probability 1/2.
//
// The stream is std::mt19937_64 seeded with config.seed. Bounded draws use
// rejection on the raw 64-bit output (no std::*_distribution), and the
// negation coin is the top bit of one raw draw, so output is identical on
// every platform.
Matrix generate(const GeneratorConfig& config);

// Seed of corpus instance `index`: splitmix64(seed ^ splitmix64(index)).
std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t index);

std::vector<Matrix> generate_corpus(const GeneratorConfig& config, std::size_t count);

// Writes <dir>/<prefix>_<index>.cnf for index 0..count-1; returns the paths.
std::vector<std::filesystem::path> write_corpus(const GeneratorConfig& config,
                                                std::size_t count,
                                                const std::filesystem::path& dir,
                                                const std::string& prefix);

}  // namespace mprover
