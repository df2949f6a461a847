// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>

#include "mprover/controller.hpp"
#include "mprover/generator.hpp"
#include "mprover/oracle.hpp"
#include "mprover/presort.hpp"
#include "mprover/profile.hpp"
#include "mprover/search.hpp"
#include "oracles.hpp"

using namespace mprover;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("%s %d: %s (%s)\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  std::fflush(stdout);
  failures += !ok;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// 500 instances over 3..12 symbols, 1..3 literals per clause, 2..24 clauses.
// Small enough for exhaustive path search, with a good share of
// unsatisfiable ones.
GeneratorConfig mixed_config(int i, std::uint64_t seed_base) {
  const std::uint32_t a = 3 + i % 10;
  const std::uint32_t m = 1 + (i / 10) % std::min<std::uint32_t>(a, 3);
  const std::uint32_t n = 2 + (i * 37) % 23;
  return {n, m, a, seed_base + static_cast<std::uint64_t>(i)};
}

struct SolvedInstance {
  bool unsat;
  PathCount total;
  PathCount pruned_sum;
  PathCount closed;
};

std::vector<SolvedInstance> solved;

void criterion_1() {
  const auto t0 = Clock::now();
  int agree = 0;
  for (int i = 0; i < 500; ++i) {
    Matrix m = generate(mixed_config(i, 1000));
    SearchState s(m);
    PathCount pruned = 0;
    if (s.status() == SearchStatus::Running) {
      s.step(s.total(), [&](const ClosureEvent& e) { pruned += e.pruned; });
    }
    const bool sat = brute_force_sat(m, 12);
    agree += (s.status() == SearchStatus::OpenFound) == sat;
    solved.push_back({!sat, s.total(), pruned, s.closed()});
  }
  const double el = seconds_since(t0);
  report(1, agree == 500 && el < 60, "matrix search agrees with truth tables on 500 mixed instances",
         std::to_string(agree) + "/500 agree, " + fmt("%.2f s", el));
}

void criterion_4() {
  int unsat = 0, conserved = 0;
  for (const auto& s : solved) {
    if (!s.unsat) continue;
    ++unsat;
    conserved += s.pruned_sum == s.total && s.closed == s.total;
  }
  report(4, unsat > 0 && conserved == unsat, "pruned paths sum to the path count on unsatisfiable instances",
         std::to_string(conserved) + "/" + std::to_string(unsat) + " unsatisfiable instances");
}

void criterion_2() {
  const double a = posterior(0.3, 0.2), b = posterior(0.3, 0.08);
  const bool ok = std::abs(a - 0.681818) <= 1e-4 && std::abs(b - 0.842697) <= 1e-4;
  report(2, ok, "worked posteriors", fmt("%.6f", a) + ", " + fmt("%.6f", b));
}

void criterion_3() {
  int checked = 0, bad = 0;
  for (int M = 1; M <= 30; ++M) {
    for (int O = 1; O <= M; ++O) {
      const PathCount denom = oracle::choose(M, O);
      for (int k = 0; k <= M - O; ++k) {
        const Rational want(oracle::choose(M - k, O), denom);
        ++checked;
        bad += survival_analytic_product(M, O, k) != want || survival_analytic(M, O, k) != want;
      }
    }
  }
  int sums = 0, bad_sums = 0;
  for (int l = 1; l <= 20; ++l) {
    for (int O = 1; O <= l; ++O) {
      Rational total = 0;
      for (int j = 1; j <= l; ++j) total += first_open_pmf(l, O, j);
      ++sums;
      bad_sums += total != 1;
    }
  }
  report(3, bad == 0 && bad_sums == 0, "survival product equals the binomial ratio; pmf sums to 1",
         std::to_string(checked - bad) + "/" + std::to_string(checked) + " identities, " +
             std::to_string(sums - bad_sums) + "/" + std::to_string(sums) + " pmf sums");
}

Profile corpus_profile;

void criterion_5() {
  const GeneratorConfig cfg{20, 3, 4, 1};
  const auto t0 = Clock::now();
  corpus_profile = collect(generate_corpus(cfg, 300), HeuristicFlag::None, {cfg, 300, HeuristicFlag::None, "generator"});
  const double el = seconds_since(t0);
  const double prior = to_double(corpus_profile.prior());
  const auto& curve = corpus_profile.curve();
  const auto pts = curve.points();
  bool monotone = valid_curve_points(pts) && curve.at(Rational(0)) == 1 && curve.at(Rational(1)) == 0;
  Rational prev = 2;
  for (int k = 0; k <= 1000; ++k) {
    const Rational v = curve.at(Rational(k, 1000));
    monotone = monotone && v <= prev;
    prev = v;
  }
  const bool ok = prior >= 0.20 && prior <= 0.45 && monotone && el < 600;
  report(5, ok, "profile of 300 20x3 instances over 4 symbols",
         "prior " + to_string(corpus_profile.prior()) + fmt(" = %.4f", prior) +
             (monotone ? ", curve nonincreasing 1 to 0, " : ", curve NOT monotone, ") + fmt("%.2f s", el));
}

UtilityModel random_model(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-100, 100);
  UtilityModel m{{"A1", "A2"}, {0, 0}, {0, 0}};
  do {
    m.if_true = {u(rng), u(rng)};
    m.if_false = {u(rng), u(rng)};
    if (m.if_true[0] < m.if_true[1]) std::swap(m.if_true[0], m.if_true[1]);
    if (m.if_false[1] < m.if_false[0]) std::swap(m.if_false[0], m.if_false[1]);
  } while (!(m.if_true[0] > m.if_true[1] && m.if_false[1] > m.if_false[0]));
  return m;
}

void criterion_6() {
  std::mt19937_64 rng(606);
  int agree = 0, total = 0;
  for (int i = 0; i < 1000; ++i) {
    const UtilityModel u = i == 0 ? UtilityModel{{"A1", "A2"}, {1, 0}, {0, 1}} : random_model(rng);
    const double ps = threshold(u);
    for (int k = 0; k <= 20; ++k) {
      const double p = k / 20.0;
      const std::size_t by_threshold = p >= ps ? 0 : 1;
      ++total;
      agree += best_action(p, u).action == by_threshold;
    }
  }
  report(6, agree == total, "argmax agrees with the threshold rule",
         std::to_string(agree) + "/" + std::to_string(total) + " model-posterior pairs");
}

// Search-all-then-act value minus act-now value, by enumerating every
// placement of the open paths. Zero time cost.
double enumerated_full_search(double p, int l, int open, const UtilityModel& u) {
  auto all = oracle::placements(l, open);
  const double each = (1 - p) / static_cast<double>(all.size());
  double value = 0;
  for (std::size_t k = 0; k < all.size(); ++k) {
    value += each * *std::max_element(u.if_false.begin(), u.if_false.end());
  }
  // every placement halts inside a full search; only w remains at the end
  value += p * *std::max_element(u.if_true.begin(), u.if_true.end());
  double now = -1e300;
  for (std::size_t a = 0; a < u.size(); ++a) now = std::max(now, p * u.if_true[a] + (1 - p) * u.if_false[a]);
  return value - now;
}

void criterion_7() {
  std::mt19937_64 rng(707);
  std::vector<UtilityModel> models;
  for (int i = 0; i < 20; ++i) models.push_back(random_model(rng));
  int grid = 0, nonneg = 0;
  double worst = 0;
  for (const auto& u : models) {
    for (int pi = 1; pi <= 9; ++pi) {
      for (int l = 2; l <= 10; ++l) {
        for (int o = 1; o <= l; ++o) {
          SearchBelief b{pi / 10.0, HaltingModel::analytic(OpenPathDistribution::point(o), l, 0), 0};
          const double v = nevc_one(b, u, TimeCost::zero());
          ++grid;
          nonneg += v >= -1e-12;
          worst = std::min(worst, v);
        }
      }
    }
  }
  int cases = 0, match = 0;
  double max_err = 0;
  for (const auto& u : models) {
    for (int pi = 1; pi <= 9; ++pi) {
      for (int l = 1; l <= 5; ++l) {
        for (int o = 1; o <= l; ++o) {
          const double p = pi / 10.0;
          SearchBelief b{p, HaltingModel::analytic(OpenPathDistribution::point(o), l, 0), 0};
          const double err = std::abs(nevc_multi(b, u, TimeCost::zero(), l) - enumerated_full_search(p, l, o, u));
          ++cases;
          match += err <= 1e-9;
          max_err = std::max(max_err, err);
        }
      }
    }
  }
  report(7, nonneg == grid && match == cases, "value of information is nonnegative and matches enumeration",
         std::to_string(nonneg) + "/" + std::to_string(grid) + fmt(" grid points (min %.3g), ", worst) +
             std::to_string(match) + "/" + std::to_string(cases) + fmt(" enumerations (max err %.3g)", max_err));
}

ControllerConfig profile_config(const std::string& cost) {
  ControllerConfig c;
  c.chunk = 70000;
  c.policy = Policy::MultiStep;
  c.lookaheads = {70000, 0};
  c.belief = EmpiricalBelief::from(corpus_profile);
  c.utility = parse_utility_spec("actions=A1,A2; u(A1,w)=1; u(A1,~w)=0; u(A2,w)=0; u(A2,~w)=1; cost=" +
                                 cost + "; tau=0.0000000003");
  return c;
}

void criterion_8() {
  const Matrix m = generate({20, 3, 4, 5});
  std::string detail;
  bool monotone = true;
  Rational prev = 2;
  for (const char* rate : {"0", "0.01", "0.1", "1.0"}) {
    const DecisionTrace tr = run_controller(m, profile_config(std::string("linear:") + rate));
    const Rational f(tr.final_closed, tr.final_total);
    monotone = monotone && f <= prev;
    prev = f;
    detail += std::string(rate) + "->" + fmt("%.5f", to_double(f)) + " ";
  }
  const DecisionTrace dl = run_controller(m, profile_config("deadline:0:-10"));
  const bool one_step = dl.steps.size() == 1 && dl.stop_reason == StopReason::DeadlineForced;
  report(8, monotone && one_step, "stopping fraction nonincreasing in cost rate; deadline 0 acts at once",
         detail + "; deadline 0: " + std::to_string(dl.steps.size()) + " step");
}

void criterion_9() {
  int same = 0, idem = 0;
  for (int i = 0; i < 500; ++i) {
    const Matrix m = generate(mixed_config(i, 9000));
    const Matrix p = presort(m);
    SearchState a(m), b(p);
    a.run_to_end();
    b.run_to_end();
    same += a.status() == b.status();
    idem += presort(p) == p;
  }
  report(9, same == 500 && idem == 500, "presort keeps the verdict and is idempotent",
         std::to_string(same) + "/500 same verdict, " + std::to_string(idem) + "/500 idempotent");
}

void criterion_10() {
  const auto path = std::filesystem::temp_directory_path() / "mprover_acceptance_profile.json";
  save_profile(corpus_profile, path);
  const bool profile_ok = load_profile(path) == corpus_profile;
  std::filesystem::remove(path);

  const char* costs[] = {"zero", "linear:0.01", "linear:0.1", "linear:1", "deadline:0.5:-10"};
  int clean = 0, steps = 0;
  for (int i = 0; i < 20; ++i) {
    ControllerConfig cfg = profile_config(costs[i % 5]);
    if (i % 2) {
      cfg.policy = Policy::Myopic;
      cfg.lookaheads.clear();
    }
    if (i >= 10) {
      cfg.belief = AnalyticBelief{Rational(3, 10), OpenPathDistribution({{1, Rational(1, 2)}, {8, Rational(1, 2)}})};
    }
    const DecisionTrace tr = trace_from_jsonl(trace_to_jsonl(run_controller(generate({20, 3, 4, 100u + i}), cfg)));
    steps += static_cast<int>(tr.steps.size());
    clean += replay(tr, cfg.belief, cfg.utility).ok;
  }
  report(10, profile_ok && clean == 20, "profile save/load identity; fresh traces replay cleanly",
         std::string(profile_ok ? "profile identical" : "profile DIFFERS") + ", " + std::to_string(clean) +
             "/20 traces clean over " + std::to_string(steps) + " steps");
}

}  // namespace

int main() {
  std::vector<std::function<void()>> criteria = {criterion_1, criterion_2, criterion_3, criterion_4,
                                                 criterion_5, criterion_6, criterion_7, criterion_8,
                                                 criterion_9, criterion_10};
  for (auto& c : criteria) {
    try {
      c();
    } catch (const std::exception& e) {
      std::printf("FAIL: criterion threw: %s\n", e.what());
      ++failures;
    }
  }
  return failures;
}
