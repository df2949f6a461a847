#include "mprover/generator.hpp"

#include <fstream>
#include <random>

#include "mprover/dimacs.hpp"
#include "mprover/error.hpp"

namespace mprover {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform in [0, bound) by rejection from the largest multiple of bound.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    std::uint64_t r = rng();
    if (r < limit) return r % bound;
  }
}

}  // namespace

void validate(const GeneratorConfig& config) {
  if (config.n_clauses == 0 || config.lits_per_clause == 0 || config.alphabet_size == 0) {
    throw Error(Errc::InvalidConfig, "generator sizes must be positive");
  }
  if (config.lits_per_clause > config.alphabet_size) {
    throw Error(Errc::InvalidConfig,
                "literals per clause (" + std::to_string(config.lits_per_clause) +
                    ") exceed alphabet size (" + std::to_string(config.alphabet_size) + ")");
  }
}

Matrix generate(const GeneratorConfig& config) {
  validate(config);
  std::mt19937_64 rng(config.seed);
  std::vector<Clause> clauses(config.n_clauses);
  std::vector<bool> used(config.alphabet_size);
  for (Clause& clause : clauses) {
    clause.reserve(config.lits_per_clause);
    std::fill(used.begin(), used.end(), false);
    while (clause.size() < config.lits_per_clause) {
      auto symbol = static_cast<std::uint32_t>(draw_below(rng, config.alphabet_size));
      if (used[symbol]) continue;
      used[symbol] = true;
      bool negated = (rng() >> 63) != 0;
      clause.push_back(Literal{symbol, negated});
    }
  }
  return Matrix(std::move(clauses), config.alphabet_size);
}

std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index));
}

std::vector<Matrix> generate_corpus(const GeneratorConfig& config, std::size_t count) {
  validate(config);
  std::vector<Matrix> corpus;
  corpus.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    GeneratorConfig c = config;
    c.seed = instance_seed(config.seed, i);
    corpus.push_back(generate(c));
  }
  return corpus;
}

std::vector<std::filesystem::path> write_corpus(const GeneratorConfig& config,
                                                std::size_t count,
                                                const std::filesystem::path& dir,
                                                const std::string& prefix) {
  auto corpus = generate_corpus(config, count);
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> paths;
  paths.reserve(count);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    auto path = dir / (prefix + "_" + std::to_string(i) + ".cnf");
    std::ofstream out(path, std::ios::binary);
    out << "c generated n_clauses=" << config.n_clauses
        << " lits_per_clause=" << config.lits_per_clause
        << " alphabet_size=" << config.alphabet_size << " seed=" << config.seed
        << " index=" << i << '\n';
    write_dimacs(out, corpus[i]);
    if (!out) throw Error(Errc::InvalidArgument, "cannot write " + path.string());
    paths.push_back(std::move(path));
  }
  return paths;
}

}  // namespace mprover
