#include <ostream>
#include <sstream>

#include "json_util.hpp"
#include "mprover/controller.hpp"
#include "mprover/error.hpp"

namespace mprover {

using detail::json;

namespace {

constexpr int kTraceFormatVersion = 1;

json belief_to_json(const BeliefSource& source) {
  if (const auto* e = std::get_if<EmpiricalBelief>(&source)) {
    json fractions = json::array();
    for (const auto& f : e->curve.fractions()) fractions.push_back(detail::rational_to_json(f));
    return json{{"kind", "empirical"},
                {"prior", detail::rational_to_json(e->prior)},
                {"context", detail::context_to_json(e->context)},
                {"fractions", std::move(fractions)}};
  }
  const auto& a = std::get<AnalyticBelief>(source);
  json dist = json::array();
  for (const auto& [open, mass] : a.open_paths.entries()) {
    dist.push_back(json{{"open", detail::count_to_json(open)}, {"p", detail::rational_to_json(mass)}});
  }
  return json{{"kind", "analytic"},
              {"prior", detail::rational_to_json(a.prior)},
              {"open_paths", std::move(dist)}};
}

BeliefSource belief_from_json(const json& j) {
  const auto kind = j.at("kind").get<std::string>();
  const Rational prior = detail::rational_from_json(j.at("prior"));
  if (kind == "empirical") {
    std::vector<Rational> fractions;
    for (const auto& f : j.at("fractions")) fractions.push_back(detail::rational_from_json(f));
    return EmpiricalBelief{prior, SurvivalCurve(std::move(fractions)),
                           detail::context_from_json(j.at("context"))};
  }
  if (kind == "analytic") {
    std::vector<OpenPathDistribution::Entry> entries;
    for (const auto& e : j.at("open_paths")) {
      entries.emplace_back(detail::count_from_json(e.at("open")), detail::rational_from_json(e.at("p")));
    }
    return AnalyticBelief{prior, OpenPathDistribution(std::move(entries))};
  }
  throw Error(Errc::MalformedFile, "unknown belief kind '" + kind + "'");
}

}  // namespace

void write_trace(std::ostream& out, const DecisionTrace& trace) {
  json lookaheads = json::array();
  for (const auto& x : trace.lookaheads) lookaheads.push_back(detail::count_to_json(x));
  out << json{{"type", "header"},
              {"format_version", kTraceFormatVersion},
              {"policy", trace.policy == Policy::Myopic ? "myopic" : "multistep"},
              {"chunk", detail::count_to_json(trace.chunk)},
              {"lookaheads", std::move(lookaheads)},
              {"utility", trace.utility},
              {"belief", belief_to_json(trace.belief)}}
             .dump()
      << '\n';
  for (const auto& s : trace.steps) {
    out << json{{"type", "step"},
                {"step", s.index},
                {"fraction", detail::rational_to_json(s.closed, s.total)},
                {"posterior", s.posterior},
                {"nevc", s.nevc},
                {"t", s.t},
                {"wall", s.wall_seconds}}
               .dump()
        << '\n';
  }
  out << json{{"type", "final"},
              {"stop_reason", to_string(trace.stop_reason)},
              {"action", trace.action_name},
              {"action_index", trace.action},
              {"eu", trace.eu},
              {"fraction", detail::rational_to_json(trace.final_closed, trace.final_total)},
              {"posterior", trace.final_posterior},
              {"t", trace.final_t}}
             .dump()
      << '\n';
}

std::string trace_to_jsonl(const DecisionTrace& trace) {
  std::ostringstream out;
  write_trace(out, trace);
  return out.str();
}

DecisionTrace trace_from_jsonl(const std::string& text) {
  DecisionTrace trace;
  bool have_header = false, have_final = false;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  try {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      if (have_final) throw Error(Errc::MalformedFile, "records after the final record");
      const json j = json::parse(line);
      const auto type = j.at("type").get<std::string>();
      if (type == "header") {
        if (have_header) throw Error(Errc::MalformedFile, "duplicate header");
        if (j.at("format_version").get<int>() != kTraceFormatVersion) {
          throw Error(Errc::VersionMismatch, "unsupported trace format " + j.at("format_version").dump());
        }
        const auto policy = j.at("policy").get<std::string>();
        if (policy != "myopic" && policy != "multistep") {
          throw Error(Errc::MalformedFile, "unknown policy '" + policy + "'");
        }
        trace.policy = policy == "myopic" ? Policy::Myopic : Policy::MultiStep;
        trace.chunk = detail::count_from_json(j.at("chunk"));
        for (const auto& x : j.at("lookaheads")) trace.lookaheads.push_back(detail::count_from_json(x));
        trace.utility = j.at("utility").get<std::string>();
        trace.belief = belief_from_json(j.at("belief"));
        have_header = true;
      } else if (!have_header) {
        throw Error(Errc::MalformedFile, "trace must start with a header record");
      } else if (type == "step") {
        TraceStep s;
        s.index = j.at("step").get<std::size_t>();
        s.closed = detail::count_from_json(j.at("fraction").at("num"));
        s.total = detail::count_from_json(j.at("fraction").at("den"));
        s.posterior = j.at("posterior").get<double>();
        s.nevc = j.at("nevc").get<std::vector<double>>();
        s.t = j.at("t").get<double>();
        s.wall_seconds = j.value("wall", 0.0);
        trace.steps.push_back(std::move(s));
      } else if (type == "final") {
        trace.stop_reason = parse_stop_reason(j.at("stop_reason").get<std::string>());
        trace.action_name = j.at("action").get<std::string>();
        trace.action = j.at("action_index").get<std::size_t>();
        trace.eu = j.at("eu").get<double>();
        trace.final_closed = detail::count_from_json(j.at("fraction").at("num"));
        trace.final_total = detail::count_from_json(j.at("fraction").at("den"));
        trace.final_posterior = j.at("posterior").get<double>();
        trace.final_t = j.at("t").get<double>();
        have_final = true;
      } else {
        throw Error(Errc::MalformedFile, "unknown record type '" + type + "'");
      }
    }
  } catch (const json::exception& e) {
    throw Error(Errc::MalformedFile, "trace line " + std::to_string(line_no) + ": " + e.what());
  } catch (const Error& e) {
    if (e.code() == Errc::MalformedFile || e.code() == Errc::VersionMismatch) throw;
    throw Error(Errc::MalformedFile, "trace line " + std::to_string(line_no) + ": " + e.what());
  }
  if (!have_header || !have_final) throw Error(Errc::MalformedFile, "trace lacks header or final record");
  return trace;
}

}  // namespace mprover
