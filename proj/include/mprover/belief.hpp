#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mprover/generator.hpp"
#include "mprover/numeric.hpp"
#include "mprover/presort.hpp"

namespace mprover {

// Bayes' rule for the claim w given evidence with likelihoods
// p(E|w) = lik_true and p(E|~w) = lik_false. Throws
// Error(DegenerateEvidence) when the evidence has zero probability.
double posterior_general(double p_w, double lik_true, double lik_false);

// Posterior of w after a fruitless partial search. The search can only stop
// early when w is false, so p(E|w) = 1 and p(E|~w) is the survival value.
double posterior(double p_w, double survival);
Rational posterior(const Rational& p_w, const Rational& survival);

// Probability that `searched` uniformly ordered paths out of `total` miss all
// `open` open paths: C(total - searched, open) / C(total, open). Evaluated as
// an `open`-term product. Zero once searched > total - open.
Rational survival_analytic(const PathCount& total, const PathCount& open,
                           const PathCount& searched);

// The same quantity as the literal product over searched paths,
// prod_{i<searched} (1 - open / (total - i)). O(searched); for checking.
Rational survival_analytic_product(const PathCount& total, const PathCount& open,
                                   const PathCount& searched);

// Finite distribution over the number of open paths (each >= 1).
class OpenPathDistribution {
 public:
  using Entry = std::pair<PathCount, Rational>;

  OpenPathDistribution() = default;
  // Throws Error(InvalidArgument) unless counts are >= 1 and masses are
  // nonnegative and sum to exactly 1.
  explicit OpenPathDistribution(std::vector<Entry> entries);
  static OpenPathDistribution point(const PathCount& open) {
    return OpenPathDistribution({{open, Rational(1)}});
  }

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  PathCount max_open() const;

  friend bool operator==(const OpenPathDistribution&, const OpenPathDistribution&) = default;

 private:
  std::vector<Entry> entries_;
};

Rational survival_mixture(const PathCount& total, const OpenPathDistribution& open,
                          const PathCount& searched);

// Probability that the j-th of the remaining `remaining` paths is the first
// open one when `open` open paths are placed uniformly among them:
// prod_{i=0}^{j-2} (1 - open/(remaining-i)) * open/(remaining-(j-1)).
// Returns 0 for j beyond the support (j > remaining - open + 1); throws
// Error(InvalidArgument) for open outside [1, remaining] or j < 1.
Rational first_open_pmf(const PathCount& remaining, const PathCount& open,
                        const PathCount& j);
bool first_open_in_support(const PathCount& remaining, const PathCount& open,
                           const PathCount& j);

// p(halt on the j-th additional path) = first_open_pmf * p(~w | S).
Rational halting_prob(const Rational& posterior_not_w, const PathCount& remaining,
                      const PathCount& open, const PathCount& j);

// Empirical survival p(S >= s | ~w): the fraction of satisfiable instances
// whose open path had not been found by the time fraction s was closed.
// Evaluated as #{f > s} / #satisfiable for s > 0 and 1 at s = 0.
class SurvivalCurve {
 public:
  struct Point {
    Rational s;
    Rational survival;
    friend bool operator==(const Point&, const Point&) = default;
  };

  SurvivalCurve() = default;
  // Throws Error(InvalidArgument) for fractions outside [0, 1).
  explicit SurvivalCurve(std::vector<Rational> discovery_fractions);

  Rational at(const Rational& s) const;
  double at(double s) const { return to_double(at(Rational(s))); }

  std::size_t sample_size() const noexcept { return fractions_.size(); }
  bool empty() const noexcept { return fractions_.empty(); }
  const std::vector<Rational>& fractions() const noexcept { return fractions_; }

  // Step representation: (0, 1) followed by (f, survival just after f) for
  // every distinct discovery fraction f, ascending.
  std::vector<Point> points() const;

  // Number of sorted fractions strictly greater than s.
  std::size_t count_above(const Rational& s) const;

 private:
  std::vector<Rational> fractions_;  // sorted ascending
};

// Checks a step representation: starts at (0, 1), s nondecreasing within
// [0, 1], survival nonincreasing within [0, 1].
bool valid_curve_points(const std::vector<SurvivalCurve::Point>& points);

// Background information the belief is conditioned on.
struct ContextTag {
  GeneratorConfig generator;
  std::uint64_t count = 0;
  HeuristicFlag heuristic = HeuristicFlag::None;
  std::string source = "generator";

  friend bool operator==(const ContextTag&, const ContextTag&) = default;
};

// Human-readable reasons why an instance of the given shape, searched with
// `heuristic`, does not belong to `context`. Empty when it matches.
std::vector<std::string> context_mismatches(const ContextTag& context,
                                            std::size_t n_clauses,
                                            std::size_t lits_per_clause,
                                            std::uint32_t alphabet_size,
                                            HeuristicFlag heuristic);

// Distribution of the first halting point of the remaining search, given
// ~w. Floating point; used by the value-of-computation calculations, where
// path counts are taken as doubles.
class HaltingModel {
 public:
  // Open-path model: `prior_open` is conditioned on the `searched` paths
  // already closed, then the open paths sit uniformly in the rest.
  static HaltingModel analytic(const OpenPathDistribution& prior_open,
                               const PathCount& total, const PathCount& searched);
  // Empirical curve, rescaled to the remaining search from fraction
  // searched/total.
  static HaltingModel empirical(const SurvivalCurve& curve, const PathCount& total,
                                const PathCount& searched);

  double remaining() const noexcept { return remaining_; }
  // P(no open path among the next x paths | ~w), x in [0, remaining].
  double survival(double x) const;
  // sum_{j=0}^{x-1} survival(j).
  double survival_sum(double x) const;

 private:
  struct Analytic {
    std::vector<std::pair<double, double>> weights;  // (open count, mass)
  };
  struct Empirical {
    std::vector<double> thresholds;  // survival(x) counts thresholds > x; sorted
  };

  HaltingModel() = default;

  double remaining_ = 0;
  std::variant<Analytic, Empirical> model_;
};

// C(l - x, o) / C(l, o) in floating point.
double hypergeometric_miss(double remaining, double open, double x);

}  // namespace mprover
