#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mprover/belief.hpp"

namespace mprover {

// Base utilities of each action when w holds and when it does not.
struct UtilityModel {
  std::vector<std::string> actions;
  std::vector<double> if_true;
  std::vector<double> if_false;

  std::size_t size() const noexcept { return actions.size(); }
  // Throws Error(InvalidArgument) unless there are >= 2 actions with finite
  // utilities for both outcomes.
  void validate() const;
  // Throws Error(MissingUtility) for an unknown name.
  std::size_t index_of(const std::string& name) const;

  friend bool operator==(const UtilityModel&, const UtilityModel&) = default;
};

// Penalty for acting after delay t. Utility is additive-separable,
// u(A, o, t) = base - cost(t), except under a deadline, where every
// utility collapses to `penalty` once t > deadline.
struct TimeCost {
  enum class Kind { Zero, Linear, Deadline, Table };

  Kind kind = Kind::Zero;
  double rate = 0;      // Linear: cost per time unit
  double deadline = 0;  // Deadline
  double penalty = 0;   // Deadline: utility of any outcome after the deadline
  // Table: (t, cost) steps; cost(t) is the cost of the last step with
  // step.t <= t, or 0 before the first step.
  std::vector<std::pair<double, double>> table;
  double tau = 1;  // time per searched path

  static TimeCost zero(double tau = 1) { return {Kind::Zero, 0, 0, 0, {}, tau}; }
  static TimeCost linear(double rate, double tau = 1) { return {Kind::Linear, rate, 0, 0, {}, tau}; }
  static TimeCost hard_deadline(double d, double penalty, double tau = 1) {
    return {Kind::Deadline, 0, d, penalty, {}, tau};
  }

  void validate() const;
  double time_for(double paths) const noexcept { return paths * tau; }
  double cost(double t) const;
  bool expired(double t) const noexcept { return kind == Kind::Deadline && t > deadline; }
  double utility(double base, double t) const {
    return expired(t) ? penalty : base - cost(t);
  }

  friend bool operator==(const TimeCost&, const TimeCost&) = default;
};

// τ from a measured search rate.
double calibrate_tau(double paths, double seconds);

struct UtilitySpec {
  UtilityModel utilities;
  TimeCost cost;

  friend bool operator==(const UtilitySpec&, const UtilitySpec&) = default;
};

// Parses `actions=A1,A2; u(A1,w)=1; u(A1,~w)=0; ...; cost=linear:0.01; tau=1`.
// cost is one of zero | linear:RATE | deadline:D:PENALTY | table:T:C,T:C...
// Throws Error(ParseError) or Error(MissingUtility).
UtilitySpec parse_utility_spec(const std::string& text);
std::string to_string(const UtilitySpec& spec);

// Mutually exclusive hypotheses w_j with probabilities summing to one.
struct HypothesisBelief {
  std::vector<std::pair<std::string, double>> hypotheses;
  void validate() const;
};

// sum_j p_j * u(action, w_j, t); `utilities` maps each w_j to the action's
// base utility. Throws Error(MissingUtility) for an unlisted hypothesis.
double expected_utility(const std::map<std::string, double>& utilities,
                        const HypothesisBelief& beliefs, const TimeCost& cost, double t);

// Binary case: p_w * u(A, w, t) + (1 - p_w) * u(A, ~w, t).
double expected_utility(const UtilityModel& utilities, std::size_t action, double p_w,
                        const TimeCost& cost = {}, double t = 0);

struct Choice {
  std::size_t action = 0;
  double eu = 0;
};

// argmax of expected utility. Actions within 1e-12 (relative) of the best
// count as tied and the lowest index wins.
Choice best_action(double p_w, const UtilityModel& utilities, const TimeCost& cost = {},
                   double t = 0);

// Posterior at which the two actions have equal expected utility. Requires
// A1 to be right when w holds and A2 when it does not; throws
// Error(Dominance) when one action weakly dominates.
double threshold(const UtilityModel& utilities);

// Where the value-of-computation calculations start from.
struct SearchBelief {
  double p_w = 0;          // current posterior p(w | S)
  HaltingModel halting;    // first-open-path distribution of the rest, given ~w
  double elapsed = 0;      // time already spent
};

// U(S, j): value of acting with the best action after j more fruitless
// paths, with the posterior supplied.
double u_best(double p_w_after, const UtilityModel& utilities, const TimeCost& cost,
              double j, double elapsed = 0);

// Net expected value of searching x more paths before acting (halting early
// if an open path turns up) versus acting now. Throws
// Error(InvalidLookahead) unless 1 <= x <= remaining.
double nevc_multi(const SearchBelief& belief, const UtilityModel& utilities,
                  const TimeCost& cost, double x);
double nevc_one(const SearchBelief& belief, const UtilityModel& utilities,
                const TimeCost& cost);

// Posterior after x more fruitless paths.
double posterior_after(const SearchBelief& belief, double x);

}  // namespace mprover
