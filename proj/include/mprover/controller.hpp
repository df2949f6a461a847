#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mprover/belief.hpp"
#include "mprover/decision.hpp"
#include "mprover/matrix.hpp"
#include "mprover/profile.hpp"

namespace mprover {

// Belief from a measured profile: prior plus empirical survival curve.
struct EmpiricalBelief {
  Rational prior;
  SurvivalCurve curve;
  ContextTag context;

  static EmpiricalBelief from(const Profile& profile) {
    return {profile.prior(), profile.curve(), profile.context()};
  }
  friend bool operator==(const EmpiricalBelief& a, const EmpiricalBelief& b) {
    return a.prior == b.prior && a.curve.fractions() == b.curve.fractions() &&
           a.context == b.context;
  }
};

// Belief from the open-path model: prior plus a distribution over the
// number of open paths when w is false.
struct AnalyticBelief {
  Rational prior;
  OpenPathDistribution open_paths;

  friend bool operator==(const AnalyticBelief&, const AnalyticBelief&) = default;
};

using BeliefSource = std::variant<EmpiricalBelief, AnalyticBelief>;

// p(w | closed of total paths closed without an open path), exact.
Rational source_posterior(const BeliefSource& source, const PathCount& closed,
                          const PathCount& total);
HaltingModel source_halting(const BeliefSource& source, const PathCount& closed,
                            const PathCount& total);

enum class Policy { Myopic, MultiStep };

struct ControllerConfig {
  PathCount chunk = 1;  // paths per deliberation step
  Policy policy = Policy::Myopic;
  // MultiStep candidates; 0 stands for "all remaining paths".
  std::vector<PathCount> lookaheads;
  BeliefSource belief;
  UtilitySpec utility;

  void validate() const;
};

enum class StopReason { NonpositiveEVC, ProofOfNotW, ProofOfW, DeadlineForced };

const char* to_string(StopReason reason) noexcept;
StopReason parse_stop_reason(const std::string& name);

struct TraceStep {
  std::size_t index = 0;
  PathCount closed;  // fraction explored is closed / total
  PathCount total;
  double posterior = 0;
  std::vector<double> nevc;  // one per evaluated lookahead
  double t = 0;              // model time closed * tau
  double wall_seconds = 0;   // advisory

  Rational fraction() const { return Rational(closed, total); }
};

struct DecisionTrace {
  // configuration the trace was produced under
  Policy policy = Policy::Myopic;
  PathCount chunk = 1;
  std::vector<PathCount> lookaheads;
  std::string utility;  // canonical utility spec string
  BeliefSource belief;

  std::vector<TraceStep> steps;
  StopReason stop_reason = StopReason::NonpositiveEVC;
  std::size_t action = 0;
  std::string action_name;
  double eu = 0;
  PathCount final_closed;
  PathCount final_total;
  double final_posterior = 0;
  double final_t = 0;
};

// Lookaheads evaluated at a state with `remaining` unexplored paths, each
// truncated to the remaining space.
std::vector<PathCount> effective_lookaheads(const ControllerConfig& config,
                                            const PathCount& remaining);

// Alternates NEVC evaluation with budgeted search chunks until a proof, a
// nonpositive NEVC, or a deadline that the next chunk would miss. The matrix
// is searched as given (apply any heuristic beforehand).
DecisionTrace run_controller(const Matrix& matrix, const ControllerConfig& config);

struct ReplayReport {
  bool ok = true;
  bool parameter_mismatch = false;
  std::optional<std::size_t> first_divergent_step;  // steps.size() = final record
  std::string message;
};

// Recomputes posterior, NEVC, time and the final choice of every step from
// the recorded fractions.
ReplayReport replay(const DecisionTrace& trace, const BeliefSource& belief,
                    const UtilitySpec& utility);

// JSON lines: one header record, one record per step, one final record.
void write_trace(std::ostream& out, const DecisionTrace& trace);
std::string trace_to_jsonl(const DecisionTrace& trace);
// Throws Error(MalformedFile).
DecisionTrace trace_from_jsonl(const std::string& text);

}  // namespace mprover
