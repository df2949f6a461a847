#include "mprover/controller.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "mprover/error.hpp"
#include "mprover/search.hpp"

namespace mprover {

namespace {

bool close_enough(double a, double b, double tol = 1e-9) {
  if (std::isnan(a) || std::isnan(b)) return std::isnan(a) && std::isnan(b);
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

struct Evaluation {
  double posterior = 0;
  std::vector<double> nevc;
  double t = 0;
};

Evaluation evaluate(const ControllerConfig& config, const PathCount& closed, const PathCount& total) {
  Evaluation e;
  const auto& cost = config.utility.cost;
  e.posterior = to_double(source_posterior(config.belief, closed, total));
  e.t = cost.time_for(to_double(closed));
  const PathCount remaining = total - closed;
  if (remaining < 1) return e;
  SearchBelief belief{e.posterior, source_halting(config.belief, closed, total), e.t};
  for (const PathCount& x : effective_lookaheads(config, remaining)) {
    e.nevc.push_back(nevc_multi(belief, config.utility.utilities, cost, to_double(x)));
  }
  return e;
}

bool deadline_forces(const TimeCost& cost, double t, const PathCount& chunk,
                     const PathCount& remaining) {
  if (cost.kind != TimeCost::Kind::Deadline) return false;
  const PathCount next = std::min(chunk, remaining);
  return t + cost.time_for(to_double(next)) > cost.deadline;
}

double max_or_neg_inf(const std::vector<double>& v) {
  return v.empty() ? -INFINITY : *std::max_element(v.begin(), v.end());
}

}  // namespace

Rational source_posterior(const BeliefSource& source, const PathCount& closed,
                          const PathCount& total) {
  if (const auto* e = std::get_if<EmpiricalBelief>(&source)) {
    return posterior(e->prior, e->curve.at(total == 0 ? Rational(1) : Rational(closed, total)));
  }
  const auto& a = std::get<AnalyticBelief>(source);
  return posterior(a.prior, survival_mixture(total, a.open_paths, closed));
}

HaltingModel source_halting(const BeliefSource& source, const PathCount& closed,
                            const PathCount& total) {
  if (const auto* e = std::get_if<EmpiricalBelief>(&source)) {
    return HaltingModel::empirical(e->curve, total, closed);
  }
  return HaltingModel::analytic(std::get<AnalyticBelief>(source).open_paths, total, closed);
}

void ControllerConfig::validate() const {
  if (chunk < 1) throw Error(Errc::InvalidConfig, "chunk must be >= 1 path");
  for (const auto& x : lookaheads) {
    if (x < 0) throw Error(Errc::InvalidConfig, "lookaheads must be >= 1 (or 0 for all)");
  }
  if (const auto* e = std::get_if<EmpiricalBelief>(&belief)) {
    if (e->prior < 0 || e->prior > 1) throw Error(Errc::InvalidConfig, "prior outside [0,1]");
  } else {
    const auto& a = std::get<AnalyticBelief>(belief);
    if (a.prior < 0 || a.prior > 1) throw Error(Errc::InvalidConfig, "prior outside [0,1]");
    if (a.open_paths.entries().empty()) throw Error(Errc::InvalidConfig, "empty open-path model");
  }
  utility.utilities.validate();
  utility.cost.validate();
}

const char* to_string(StopReason reason) noexcept {
  switch (reason) {
    case StopReason::NonpositiveEVC: return "NonpositiveEVC";
    case StopReason::ProofOfNotW: return "ProofOfNotW";
    case StopReason::ProofOfW: return "ProofOfW";
    case StopReason::DeadlineForced: return "DeadlineForced";
  }
  return "?";
}

StopReason parse_stop_reason(const std::string& name) {
  for (auto r : {StopReason::NonpositiveEVC, StopReason::ProofOfNotW, StopReason::ProofOfW,
                 StopReason::DeadlineForced}) {
    if (name == to_string(r)) return r;
  }
  throw Error(Errc::MalformedFile, "unknown stop reason '" + name + "'");
}

std::vector<PathCount> effective_lookaheads(const ControllerConfig& config,
                                            const PathCount& remaining) {
  std::vector<PathCount> xs;
  if (config.policy == Policy::Myopic || config.lookaheads.empty()) {
    xs.push_back(std::min(config.chunk, remaining));
  } else {
    for (const PathCount& x : config.lookaheads) {
      xs.push_back(x == 0 ? remaining : std::min(x, remaining));
    }
  }
  return xs;
}

DecisionTrace run_controller(const Matrix& matrix, const ControllerConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto& utilities = config.utility.utilities;
  const auto& cost = config.utility.cost;

  DecisionTrace trace;
  trace.policy = config.policy;
  trace.chunk = config.chunk;
  trace.lookaheads = config.lookaheads;
  trace.utility = to_string(config.utility);
  trace.belief = config.belief;

  SearchState search(matrix);
  auto finish = [&](StopReason reason, double p) {
    trace.stop_reason = reason;
    trace.final_closed = search.closed();
    trace.final_total = search.total();
    trace.final_posterior = p;
    trace.final_t = cost.time_for(to_double(search.closed()));
    Choice c = best_action(p, utilities, cost, trace.final_t);
    trace.action = c.action;
    trace.action_name = utilities.actions[c.action];
    trace.eu = c.eu;
    return trace;
  };

  for (;;) {
    if (search.status() == SearchStatus::OpenFound) return finish(StopReason::ProofOfNotW, 0.0);
    if (search.status() == SearchStatus::Exhausted) return finish(StopReason::ProofOfW, 1.0);

    Evaluation e = evaluate(config, search.closed(), search.total());
    TraceStep step;
    step.index = trace.steps.size();
    step.closed = search.closed();
    step.total = search.total();
    step.posterior = e.posterior;
    step.nevc = e.nevc;
    step.t = e.t;
    step.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    trace.steps.push_back(std::move(step));

    if (deadline_forces(cost, e.t, config.chunk, search.remaining())) {
      return finish(StopReason::DeadlineForced, e.posterior);
    }
    if (max_or_neg_inf(e.nevc) <= 0) return finish(StopReason::NonpositiveEVC, e.posterior);
    search.step(config.chunk, SearchState::EventSink{});
  }
}

ReplayReport replay(const DecisionTrace& trace, const BeliefSource& belief,
                    const UtilitySpec& utility) {
  ReplayReport report;
  auto fail = [&](std::optional<std::size_t> step, std::string msg) {
    report.ok = false;
    report.first_divergent_step = step;
    report.message = std::move(msg);
    return report;
  };

  if (to_string(utility) != trace.utility) {
    report.parameter_mismatch = true;
    return fail(std::nullopt, "utility parameters differ from the trace's (" + trace.utility + ")");
  }
  if (!(belief == trace.belief)) {
    report.parameter_mismatch = true;
    return fail(std::nullopt, "belief source differs from the one the trace was produced with");
  }

  ControllerConfig config{trace.chunk, trace.policy, trace.lookaheads, belief, utility};
  try {
    config.validate();
  } catch (const Error& e) {
    report.parameter_mismatch = true;
    return fail(std::nullopt, std::string("trace configuration invalid: ") + e.what());
  }
  const auto& cost = utility.cost;

  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const TraceStep& s = trace.steps[i];
    const auto where = "step " + std::to_string(i) + ": ";
    if (s.index != i) return fail(i, where + "step index out of sequence");
    if (s.total < 1 || s.closed < 0 || s.closed >= s.total) {
      return fail(i, where + "fraction outside [0, 1)");
    }
    if (i > 0) {
      const TraceStep& prev = trace.steps[i - 1];
      if (s.total != prev.total || s.closed <= prev.closed) {
        return fail(i, where + "fraction did not increase");
      }
      if (max_or_neg_inf(prev.nevc) <= 0 ||
          deadline_forces(cost, prev.t, trace.chunk, prev.total - prev.closed)) {
        return fail(i, where + "search continued past a stopping point");
      }
    }
    Evaluation e = evaluate(config, s.closed, s.total);
    if (!close_enough(s.posterior, e.posterior)) {
      return fail(i, where + "posterior " + std::to_string(s.posterior) + " vs recomputed " +
                         std::to_string(e.posterior));
    }
    if (!close_enough(s.t, e.t)) return fail(i, where + "elapsed time mismatch");
    if (s.nevc.size() != e.nevc.size()) return fail(i, where + "lookahead count mismatch");
    for (std::size_t k = 0; k < e.nevc.size(); ++k) {
      if (!close_enough(s.nevc[k], e.nevc[k])) {
        return fail(i, where + "NEVC[" + std::to_string(k) + "] " + std::to_string(s.nevc[k]) +
                           " vs recomputed " + std::to_string(e.nevc[k]));
      }
    }
  }

  const std::size_t fin = trace.steps.size();
  const auto where = std::string("final record: ");
  double expected_p = 0;
  switch (trace.stop_reason) {
    case StopReason::ProofOfW:
      if (trace.final_closed != trace.final_total) return fail(fin, where + "proof of w without exhaustion");
      expected_p = 1;
      break;
    case StopReason::ProofOfNotW:
      expected_p = 0;
      break;
    case StopReason::NonpositiveEVC:
    case StopReason::DeadlineForced: {
      if (trace.steps.empty()) return fail(fin, where + "no deliberation step recorded");
      const TraceStep& last = trace.steps.back();
      if (trace.final_closed != last.closed) return fail(fin, where + "search advanced after stopping");
      const bool forced = deadline_forces(cost, last.t, trace.chunk, last.total - last.closed);
      if (trace.stop_reason == StopReason::DeadlineForced && !forced) {
        return fail(fin, where + "deadline did not force action");
      }
      if (trace.stop_reason == StopReason::NonpositiveEVC &&
          (forced || max_or_neg_inf(last.nevc) > 0)) {
        return fail(fin, where + "stopped although NEVC was positive");
      }
      expected_p = last.posterior;
      break;
    }
  }
  if (!close_enough(trace.final_posterior, expected_p)) return fail(fin, where + "posterior mismatch");
  const double t = cost.time_for(to_double(trace.final_closed));
  if (!close_enough(trace.final_t, t)) return fail(fin, where + "elapsed time mismatch");
  const Choice c = best_action(trace.final_posterior, utility.utilities, cost, t);
  if (c.action != trace.action || utility.utilities.actions[c.action] != trace.action_name) {
    return fail(fin, where + "action is not the best action at the final posterior");
  }
  if (!close_enough(trace.eu, c.eu)) return fail(fin, where + "expected utility mismatch");
  report.message = "verified " + std::to_string(trace.steps.size()) + " steps";
  return report;
}

}  // namespace mprover
