#include "mprover/belief.hpp"

#include <algorithm>
#include <cmath>

#include "mprover/error.hpp"

namespace mprover {

namespace {

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(Errc::InvalidArgument, std::string(what) + " must lie in [0, 1]");
  }
}

void check_probability(const Rational& p, const char* what) {
  if (p < 0 || p > 1) {
    throw Error(Errc::InvalidArgument, std::string(what) + " must lie in [0, 1]");
  }
}

// prod_{i<terms} (top - i) / (bottom - i), exact.
Rational falling_ratio(const PathCount& top, const PathCount& bottom, const PathCount& terms) {
  PathCount num = 1, den = 1;
  for (PathCount i = 0; i < terms; ++i) {
    num *= top - i;
    den *= bottom - i;
  }
  return Rational(num, den);
}

Rational ceil_div(const Rational& r) {
  PathCount q = numerator(r) / denominator(r);
  if (q * denominator(r) < numerator(r)) ++q;
  return Rational(q);
}

constexpr double kDirectSumLimit = 65536;

}  // namespace

double posterior_general(double p_w, double lik_true, double lik_false) {
  check_probability(p_w, "prior");
  check_probability(lik_true, "p(E|w)");
  check_probability(lik_false, "p(E|~w)");
  const double num = lik_true * p_w;
  const double den = num + lik_false * (1.0 - p_w);
  if (den <= 0.0) throw Error(Errc::DegenerateEvidence, "evidence has zero probability");
  return num / den;
}

double posterior(double p_w, double survival) {
  check_probability(p_w, "prior");
  check_probability(survival, "survival");
  const double den = p_w + survival * (1.0 - p_w);
  if (den <= 0.0) {
    throw Error(Errc::DegenerateEvidence, "prior 0 with survival 0 has no posterior");
  }
  return p_w / den;
}

Rational posterior(const Rational& p_w, const Rational& survival) {
  check_probability(p_w, "prior");
  check_probability(survival, "survival");
  const Rational den = p_w + survival * (1 - p_w);
  if (den == 0) {
    throw Error(Errc::DegenerateEvidence, "prior 0 with survival 0 has no posterior");
  }
  return p_w / den;
}

Rational survival_analytic(const PathCount& total, const PathCount& open,
                           const PathCount& searched) {
  if (open < 1) throw Error(Errc::InvalidArgument, "open path count must be >= 1");
  if (open > total) throw Error(Errc::InvalidArgument, "more open paths than paths");
  if (searched < 0 || searched > total) {
    throw Error(Errc::InvalidArgument, "searched paths outside [0, total]");
  }
  if (searched == 0) return 1;
  if (searched > total - open) return 0;
  // C(M-s, O)/C(M, O) = C(M-O, s)/C(M, s); take the shorter product.
  if (open <= searched) return falling_ratio(total - searched, total, open);
  return falling_ratio(total - open, total, searched);
}

Rational survival_analytic_product(const PathCount& total, const PathCount& open,
                                   const PathCount& searched) {
  if (open < 1) throw Error(Errc::InvalidArgument, "open path count must be >= 1");
  if (open > total) throw Error(Errc::InvalidArgument, "more open paths than paths");
  if (searched < 0 || searched > total) {
    throw Error(Errc::InvalidArgument, "searched paths outside [0, total]");
  }
  Rational p = 1;
  for (PathCount i = 0; i < searched; ++i) {
    p *= 1 - Rational(open, total - i);
  }
  return p;
}

OpenPathDistribution::OpenPathDistribution(std::vector<Entry> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty()) throw Error(Errc::InvalidArgument, "empty open-path distribution");
  Rational sum = 0;
  for (const auto& [open, mass] : entries_) {
    if (open < 1) throw Error(Errc::InvalidArgument, "open path counts must be >= 1");
    if (mass < 0) throw Error(Errc::InvalidArgument, "negative probability mass");
    sum += mass;
  }
  if (sum != 1) {
    throw Error(Errc::InvalidArgument, "open-path distribution sums to " + to_string(sum));
  }
}

PathCount OpenPathDistribution::max_open() const {
  PathCount m = 0;
  for (const auto& e : entries_) m = std::max(m, e.first);
  return m;
}

Rational survival_mixture(const PathCount& total, const OpenPathDistribution& open,
                          const PathCount& searched) {
  Rational s = 0;
  for (const auto& [count, mass] : open.entries()) {
    if (mass == 0) continue;
    s += mass * survival_analytic(total, count, searched);
  }
  return s;
}

bool first_open_in_support(const PathCount& remaining, const PathCount& open,
                           const PathCount& j) {
  return open >= 1 && open <= remaining && j >= 1 && j <= remaining - open + 1;
}

Rational first_open_pmf(const PathCount& remaining, const PathCount& open,
                        const PathCount& j) {
  if (open < 1 || open > remaining) {
    throw Error(Errc::InvalidArgument, "open path count must lie in [1, remaining]");
  }
  if (j < 1) throw Error(Errc::InvalidArgument, "path index j must be >= 1");
  if (j > remaining - open + 1) return 0;
  return survival_analytic(remaining, open, j - 1) * Rational(open, remaining - (j - 1));
}

Rational halting_prob(const Rational& posterior_not_w, const PathCount& remaining,
                      const PathCount& open, const PathCount& j) {
  check_probability(posterior_not_w, "p(~w|S)");
  return first_open_pmf(remaining, open, j) * posterior_not_w;
}

SurvivalCurve::SurvivalCurve(std::vector<Rational> discovery_fractions)
    : fractions_(std::move(discovery_fractions)) {
  for (const Rational& f : fractions_) {
    if (f < 0 || f >= 1) {
      throw Error(Errc::InvalidArgument, "discovery fraction " + to_string(f) + " outside [0, 1)");
    }
  }
  std::sort(fractions_.begin(), fractions_.end());
}

std::size_t SurvivalCurve::count_above(const Rational& s) const {
  return static_cast<std::size_t>(
      fractions_.end() - std::upper_bound(fractions_.begin(), fractions_.end(), s));
}

Rational SurvivalCurve::at(const Rational& s) const {
  if (s <= 0) return 1;
  if (fractions_.empty()) return 0;
  return Rational(count_above(s), fractions_.size());
}

std::vector<SurvivalCurve::Point> SurvivalCurve::points() const {
  std::vector<Point> pts{{Rational(0), Rational(1)}};
  for (std::size_t i = 0; i < fractions_.size(); ++i) {
    if (i + 1 < fractions_.size() && fractions_[i + 1] == fractions_[i]) continue;
    pts.push_back({fractions_[i], Rational(fractions_.size() - i - 1, fractions_.size())});
  }
  return pts;
}

bool valid_curve_points(const std::vector<SurvivalCurve::Point>& points) {
  if (points.empty() || points.front().s != 0 || points.front().survival != 1) return false;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (p.s < 0 || p.s > 1 || p.survival < 0 || p.survival > 1) return false;
    if (i > 0 && (p.s < points[i - 1].s || p.survival > points[i - 1].survival)) return false;
  }
  return true;
}

std::vector<std::string> context_mismatches(const ContextTag& context,
                                            std::size_t n_clauses,
                                            std::size_t lits_per_clause,
                                            std::uint32_t alphabet_size,
                                            HeuristicFlag heuristic) {
  std::vector<std::string> out;
  const auto& g = context.generator;
  if (n_clauses != g.n_clauses) {
    out.push_back("clause count " + std::to_string(n_clauses) + " vs profile " +
                  std::to_string(g.n_clauses));
  }
  if (lits_per_clause != g.lits_per_clause) {
    out.push_back("clause length " + std::to_string(lits_per_clause) + " vs profile " +
                  std::to_string(g.lits_per_clause));
  }
  if (alphabet_size != g.alphabet_size) {
    out.push_back("alphabet size " + std::to_string(alphabet_size) + " vs profile " +
                  std::to_string(g.alphabet_size));
  }
  if (heuristic != context.heuristic) {
    out.push_back(std::string("heuristic ") + to_string(heuristic) + " vs profile " +
                  to_string(context.heuristic));
  }
  return out;
}

double hypergeometric_miss(double remaining, double open, double x) {
  if (x <= 0) return 1.0;
  if (x > remaining - open) return 0.0;
  const double terms = std::min(open, x);
  const double top = open <= x ? remaining - x : remaining - open;
  if (terms <= 4096) {
    double p = 1.0;
    for (double i = 0; i < terms; ++i) p *= (top - i) / (remaining - i);
    return p;
  }
  return std::exp(std::lgamma(remaining - x + 1) - std::lgamma(remaining - x - open + 1) -
                  std::lgamma(remaining + 1) + std::lgamma(remaining - open + 1));
}

HaltingModel HaltingModel::analytic(const OpenPathDistribution& prior_open,
                                    const PathCount& total, const PathCount& searched) {
  HaltingModel m;
  const double M = to_double(total);
  const double s = to_double(searched);
  m.remaining_ = to_double(PathCount(total - searched));
  Analytic a;
  double sum = 0;
  for (const auto& [open, mass] : prior_open.entries()) {
    const double o = to_double(open);
    const double w = to_double(mass) * (o <= M ? hypergeometric_miss(M, o, s) : 0.0);
    a.weights.emplace_back(o, w);
    sum += w;
  }
  if (sum > 0) {
    for (auto& e : a.weights) e.second /= sum;
  } else {
    // ~w is already impossible; no weight can matter
    for (auto& e : a.weights) e.second = 0;
  }
  m.model_ = std::move(a);
  return m;
}

HaltingModel HaltingModel::empirical(const SurvivalCurve& curve, const PathCount& total,
                                     const PathCount& searched) {
  HaltingModel m;
  m.remaining_ = to_double(PathCount(total - searched));
  Empirical e;
  const Rational s(searched, total);
  for (const Rational& f : curve.fractions()) {
    if (searched != 0 && f <= s) continue;
    // survival(x) counts f > s + x/total, i.e. f*total - searched > x
    Rational y = ceil_div(f * total - searched);
    e.thresholds.push_back(std::max(1.0, to_double(y)));
  }
  std::sort(e.thresholds.begin(), e.thresholds.end());
  m.model_ = std::move(e);
  return m;
}

double HaltingModel::survival(double x) const {
  if (x <= 0) return 1.0;
  if (const auto* a = std::get_if<Analytic>(&model_)) {
    double s = 0;
    bool any = false;
    for (const auto& [open, w] : a->weights) {
      if (w == 0) continue;
      any = true;
      s += w * hypergeometric_miss(remaining_, open, x);
    }
    return any ? s : 1.0;
  }
  const auto& e = std::get<Empirical>(model_);
  if (e.thresholds.empty()) return 1.0;
  const auto above = e.thresholds.end() -
                     std::upper_bound(e.thresholds.begin(), e.thresholds.end(), x);
  return static_cast<double>(above) / static_cast<double>(e.thresholds.size());
}

double HaltingModel::survival_sum(double x) const {
  if (x <= 0) return 0.0;
  if (const auto* a = std::get_if<Analytic>(&model_)) {
    double total = 0;
    bool any = false;
    for (const auto& [open, w] : a->weights) {
      if (w == 0) continue;
      any = true;
      double sum = 0;
      if (x <= kDirectSumLimit) {
        double g = 1.0;
        for (double j = 0; j < x && g > 0; ++j) {
          sum += g;
          g = (remaining_ - j - open) > 0 ? g * (remaining_ - j - open) / (remaining_ - j) : 0.0;
        }
      } else {
        // hockey stick: sum_{j<x} C(l-j, O) = C(l+1, O+1) - C(l-x+1, O+1)
        sum = ((remaining_ + 1) - (remaining_ - x + 1) * hypergeometric_miss(remaining_, open, x)) /
              (open + 1);
      }
      total += w * sum;
    }
    return any ? total : x;
  }
  const auto& e = std::get<Empirical>(model_);
  if (e.thresholds.empty()) return x;
  double sum = 0;
  for (double c : e.thresholds) sum += std::min(x, c);
  return sum / static_cast<double>(e.thresholds.size());
}

}  // namespace mprover
