#include <doctest.h>

#include "mprover/controller.hpp"
#include "mprover/error.hpp"
#include "mprover/generator.hpp"
#include "helpers.hpp"

using namespace mprover;

namespace {

const char* kZeroOne = "actions=A1,A2; u(A1,w)=1; u(A1,~w)=0; u(A2,w)=0; u(A2,~w)=1";

ControllerConfig analytic_config(const std::string& cost, Policy policy = Policy::Myopic) {
  ControllerConfig c;
  c.chunk = 1;
  c.policy = policy;
  c.belief = AnalyticBelief{Rational(3, 10), OpenPathDistribution::point(1)};
  c.utility = parse_utility_spec(std::string(kZeroOne) + "; cost=" + cost);
  return c;
}

Profile small_profile() {
  GeneratorConfig cfg{20, 3, 4, 31};
  return collect(generate_corpus(cfg, 60), HeuristicFlag::None,
                 {cfg, 60, HeuristicFlag::None, "generator"});
}

// Looks one chunk ahead and all the way to the end; a full search of a
// 20x3 matrix costs about one time unit.
ControllerConfig profile_config(const Profile& profile, const std::string& cost) {
  auto cfg = analytic_config(cost + "; tau=0.0000000003", Policy::MultiStep);
  cfg.chunk = 70000;
  cfg.lookaheads = {70000, 0};
  cfg.belief = EmpiricalBelief::from(profile);
  return cfg;
}

}  // namespace

TEST_CASE("deadline zero acts immediately at the prior") {
  auto m = generate({20, 3, 4, 1});
  auto tr = run_controller(m, analytic_config("deadline:0:-10"));
  REQUIRE(tr.steps.size() == 1);
  CHECK(tr.stop_reason == StopReason::DeadlineForced);
  CHECK(tr.final_closed == 0);
  CHECK(tr.final_posterior == doctest::Approx(0.3));
  CHECK(tr.action_name == "A2");
}

TEST_CASE("prohibitive cost acts immediately") {
  auto m = generate({20, 3, 4, 1});
  auto tr = run_controller(m, analytic_config("linear:1000"));
  REQUIRE(tr.steps.size() == 1);
  CHECK(tr.stop_reason == StopReason::NonpositiveEVC);
  CHECK(tr.steps[0].nevc.at(0) < 0);
}

TEST_CASE("zero cost on an unsatisfiable matrix runs to a proof") {
  auto tr = run_controller(mat({{1}, {-1}}), analytic_config("zero"));
  CHECK(tr.stop_reason == StopReason::ProofOfW);
  CHECK(tr.final_posterior == 1.0);
  CHECK(tr.action_name == "A1");
  CHECK(tr.eu == 1.0);
  CHECK(tr.final_closed == tr.final_total);
}

TEST_CASE("an open path ends with proof of not-w") {
  auto cfg = analytic_config("zero");
  cfg.belief = AnalyticBelief{Rational(1, 2), OpenPathDistribution::point(1)};
  auto tr = run_controller(mat({{1, 2}, {-1, 2}}), cfg);
  CHECK(tr.stop_reason == StopReason::ProofOfNotW);
  CHECK(tr.final_posterior == 0.0);
  CHECK(tr.action_name == "A2");
}

TEST_CASE("multi-step analytic controller at zero cost terminates by proof") {
  auto cfg = analytic_config("zero", Policy::MultiStep);
  cfg.lookaheads = {1, 4, 0};
  cfg.chunk = 3;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto tr = run_controller(generate({8, 3, 4, seed}), cfg);
    CHECK((tr.stop_reason == StopReason::ProofOfW || tr.stop_reason == StopReason::ProofOfNotW));
    for (const auto& s : tr.steps) CHECK(s.nevc.size() == 3);
  }
}

TEST_CASE("config validation") {
  auto cfg = analytic_config("zero");
  cfg.chunk = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = analytic_config("zero", Policy::MultiStep);
  cfg.lookaheads = {4, -1};
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.lookaheads.clear();
  cfg.validate();  // falls back to one chunk
  CHECK(effective_lookaheads(cfg, 10) == std::vector<PathCount>{1});
}

TEST_CASE("stopping point does not grow with cost rate") {
  auto profile = small_profile();
  for (std::uint64_t seed : {5u, 4242u}) {
    auto m = generate({20, 3, 4, seed});
    Rational prev = 2;
    for (const char* cost : {"linear:0", "linear:0.01", "linear:0.1", "linear:1"}) {
      auto tr = run_controller(m, profile_config(profile, cost));
      const Rational f(tr.final_closed, tr.final_total);
      CHECK(f <= prev);
      prev = f;
    }
  }
}

TEST_CASE("traces replay cleanly and detect tampering") {
  auto profile = small_profile();
  auto cfg = profile_config(profile, "linear:0.01");
  auto m = generate({20, 3, 4, 5});
  auto tr = run_controller(m, cfg);
  REQUIRE(tr.steps.size() >= 3);

  auto rep = replay(tr, cfg.belief, cfg.utility);
  CHECK(rep.ok);
  CHECK_FALSE(rep.first_divergent_step);

  auto bad = tr;
  bad.steps[2].posterior += 1e-3;
  rep = replay(bad, cfg.belief, cfg.utility);
  CHECK_FALSE(rep.ok);
  CHECK_FALSE(rep.parameter_mismatch);
  CHECK(rep.first_divergent_step == 2u);

  auto other = parse_utility_spec(std::string(kZeroOne) + "; cost=linear:0.5");
  rep = replay(tr, cfg.belief, other);
  CHECK_FALSE(rep.ok);
  CHECK(rep.parameter_mismatch);
}

TEST_CASE("trace JSON lines round trip") {
  auto cfg = analytic_config("linear:0.001", Policy::MultiStep);
  cfg.lookaheads = {1, 0};
  cfg.belief = AnalyticBelief{Rational(3, 10), OpenPathDistribution({{1, Rational(1, 2)}, {2, Rational(1, 2)}})};
  auto tr = run_controller(generate({10, 3, 4, 3}), cfg);
  auto back = trace_from_jsonl(trace_to_jsonl(tr));
  CHECK(back.steps.size() == tr.steps.size());
  CHECK(back.stop_reason == tr.stop_reason);
  CHECK(back.utility == tr.utility);
  CHECK(back.belief == tr.belief);
  CHECK(replay(back, cfg.belief, cfg.utility).ok);
  CHECK(trace_to_jsonl(back) == trace_to_jsonl(tr));

  CHECK_THROWS_AS(trace_from_jsonl("{\"type\":\"step\"}"), Error);
  CHECK_THROWS_AS(trace_from_jsonl("garbage"), Error);
}
