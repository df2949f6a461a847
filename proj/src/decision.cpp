#include "mprover/decision.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mprover/error.hpp"

namespace mprover {

namespace {

std::string trim(std::string s) {
  auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), issp));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), issp).base(), s.end());
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& s, const std::string& ctx) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(Errc::ParseError, "bad number '" + s + "' in " + ctx);
  }
}

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

// Sum over the first halting point J in [1, x] of P(J = j | ~w) times the
// value of acting under certainty of ~w at elapsed + j*tau.
double halting_value(const HaltingModel& h, double best_if_false, const TimeCost& cost,
                     double elapsed, double x) {
  const double gx = h.survival(x);
  switch (cost.kind) {
    case TimeCost::Kind::Zero:
      return best_if_false * (1.0 - gx);
    case TimeCost::Kind::Linear:
      // sum_{j<=x} P(J=j) j = sum_{j<x} G(j) - x G(x)
      return (best_if_false - cost.rate * elapsed) * (1.0 - gx) -
             cost.rate * cost.tau * (h.survival_sum(x) - x * gx);
    case TimeCost::Kind::Deadline: {
      double last_in_time = std::floor((cost.deadline - elapsed) / cost.tau);
      last_in_time = std::clamp(last_in_time, 0.0, x);
      const double g_d = h.survival(last_in_time);
      return best_if_false * (1.0 - g_d) + cost.penalty * (g_d - gx);
    }
    case TimeCost::Kind::Table: {
      // piecewise-constant cost: segments [start, next start) in path index
      std::vector<std::pair<double, double>> segments{{1.0, cost.cost(elapsed + cost.tau)}};
      for (const auto& [t, c] : cost.table) {
        double start = std::ceil((t - elapsed) / cost.tau);
        if (start <= 1.0 || start > x) continue;
        segments.emplace_back(start, c);
      }
      std::stable_sort(segments.begin(), segments.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
      double value = 0;
      for (std::size_t i = 0; i < segments.size(); ++i) {
        const double a = segments[i].first;
        const double b = i + 1 < segments.size() ? segments[i + 1].first - 1 : x;
        if (b < a) continue;
        const double c = cost.cost(elapsed + a * cost.tau);
        value += (h.survival(a - 1) - h.survival(b)) * (best_if_false - c);
      }
      return value;
    }
  }
  return 0;
}

}  // namespace

void UtilityModel::validate() const {
  if (actions.size() < 2) throw Error(Errc::InvalidArgument, "at least two actions are required");
  if (if_true.size() != actions.size() || if_false.size() != actions.size()) {
    throw Error(Errc::MissingUtility, "every action needs u(A,w) and u(A,~w)");
  }
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (!std::isfinite(if_true[i]) || !std::isfinite(if_false[i])) {
      throw Error(Errc::InvalidArgument, "utilities of " + actions[i] + " must be finite");
    }
  }
}

std::size_t UtilityModel::index_of(const std::string& name) const {
  auto it = std::find(actions.begin(), actions.end(), name);
  if (it == actions.end()) throw Error(Errc::MissingUtility, "unknown action '" + name + "'");
  return static_cast<std::size_t>(it - actions.begin());
}

void TimeCost::validate() const {
  if (!(tau > 0) || !std::isfinite(tau)) throw Error(Errc::InvalidArgument, "tau must be > 0");
  switch (kind) {
    case Kind::Zero: break;
    case Kind::Linear:
      if (!(rate >= 0) || !std::isfinite(rate)) {
        throw Error(Errc::InvalidArgument, "linear cost rate must be >= 0");
      }
      break;
    case Kind::Deadline:
      if (!(deadline >= 0) || !std::isfinite(penalty)) {
        throw Error(Errc::InvalidArgument, "deadline must be >= 0 with a finite penalty");
      }
      break;
    case Kind::Table: {
      double prev_t = 0, prev_c = 0;
      for (const auto& [t, c] : table) {
        if (!(t >= prev_t) || !(c >= prev_c) || !std::isfinite(c)) {
          throw Error(Errc::InvalidArgument, "cost table must be nondecreasing and start at >= 0");
        }
        prev_t = t;
        prev_c = c;
      }
      break;
    }
  }
}

double TimeCost::cost(double t) const {
  switch (kind) {
    case Kind::Zero:
    case Kind::Deadline:
      return 0;
    case Kind::Linear:
      return rate * t;
    case Kind::Table: {
      double c = 0;
      for (const auto& step : table) {
        if (step.first <= t) c = step.second;
      }
      return c;
    }
  }
  return 0;
}

double calibrate_tau(double paths, double seconds) {
  if (!(paths > 0) || !(seconds > 0)) {
    throw Error(Errc::InvalidArgument, "calibration needs positive paths and seconds");
  }
  return seconds / paths;
}

UtilitySpec parse_utility_spec(const std::string& text) {
  UtilitySpec spec;
  std::map<std::string, double> u_true, u_false;
  bool have_actions = false;
  for (const std::string& item : split(text, ';')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(Errc::ParseError, "expected key=value, got '" + item + "'");
    const std::string key = trim(item.substr(0, eq));
    const std::string value = trim(item.substr(eq + 1));
    if (key == "actions") {
      spec.utilities.actions = split(value, ',');
      for (const auto& a : spec.utilities.actions) {
        if (a.empty()) throw Error(Errc::ParseError, "empty action name");
      }
      have_actions = true;
    } else if (key == "tau") {
      spec.cost.tau = parse_double(value, "tau");
    } else if (key == "cost") {
      auto parts = split(value, ':');
      if (parts[0] == "zero" && parts.size() == 1) {
        spec.cost.kind = TimeCost::Kind::Zero;
      } else if (parts[0] == "linear" && parts.size() == 2) {
        spec.cost.kind = TimeCost::Kind::Linear;
        spec.cost.rate = parse_double(parts[1], "linear cost");
      } else if (parts[0] == "deadline" && parts.size() == 3) {
        spec.cost.kind = TimeCost::Kind::Deadline;
        spec.cost.deadline = parse_double(parts[1], "deadline");
        spec.cost.penalty = parse_double(parts[2], "deadline penalty");
      } else if (parts[0] == "table" && parts.size() >= 2) {
        spec.cost.kind = TimeCost::Kind::Table;
        auto rest = value.substr(value.find(':') + 1);
        for (const auto& step : split(rest, ',')) {
          auto tc = split(step, ':');
          if (tc.size() != 2) throw Error(Errc::ParseError, "table steps are T:C, got '" + step + "'");
          spec.cost.table.emplace_back(parse_double(tc[0], "table"), parse_double(tc[1], "table"));
        }
      } else {
        throw Error(Errc::ParseError, "unknown cost '" + value + "'");
      }
    } else if (key.size() > 4 && key.rfind("u(", 0) == 0 && key.back() == ')') {
      auto args = split(key.substr(2, key.size() - 3), ',');
      if (args.size() != 2) throw Error(Errc::ParseError, "expected u(ACTION,w|~w), got '" + key + "'");
      double v = parse_double(value, key);
      if (args[1] == "w") {
        u_true[args[0]] = v;
      } else if (args[1] == "~w" || args[1] == "!w" || args[1] == "-w") {
        u_false[args[0]] = v;
      } else {
        throw Error(Errc::ParseError, "outcome must be w or ~w in '" + key + "'");
      }
    } else {
      throw Error(Errc::ParseError, "unknown key '" + key + "'");
    }
  }
  if (!have_actions) throw Error(Errc::ParseError, "utility spec needs actions=...");
  auto& m = spec.utilities;
  for (const auto& a : m.actions) {
    auto t = u_true.find(a);
    auto f = u_false.find(a);
    if (t == u_true.end() || f == u_false.end()) {
      throw Error(Errc::MissingUtility, "missing u(" + a + ",w) or u(" + a + ",~w)");
    }
    m.if_true.push_back(t->second);
    m.if_false.push_back(f->second);
  }
  for (const auto& [name, v] : u_true) m.index_of(name);
  for (const auto& [name, v] : u_false) m.index_of(name);
  m.validate();
  spec.cost.validate();
  return spec;
}

std::string to_string(const UtilitySpec& spec) {
  std::ostringstream out;
  const auto& m = spec.utilities;
  out << "actions=";
  for (std::size_t i = 0; i < m.size(); ++i) out << (i ? "," : "") << m.actions[i];
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << "; u(" << m.actions[i] << ",w)=" << format_double(m.if_true[i]) << "; u("
        << m.actions[i] << ",~w)=" << format_double(m.if_false[i]);
  }
  const auto& c = spec.cost;
  out << "; cost=";
  switch (c.kind) {
    case TimeCost::Kind::Zero: out << "zero"; break;
    case TimeCost::Kind::Linear: out << "linear:" << format_double(c.rate); break;
    case TimeCost::Kind::Deadline:
      out << "deadline:" << format_double(c.deadline) << ':' << format_double(c.penalty);
      break;
    case TimeCost::Kind::Table:
      out << "table:";
      for (std::size_t i = 0; i < c.table.size(); ++i) {
        out << (i ? "," : "") << format_double(c.table[i].first) << ':'
            << format_double(c.table[i].second);
      }
      break;
  }
  out << "; tau=" << format_double(c.tau);
  return out.str();
}

void HypothesisBelief::validate() const {
  double sum = 0;
  for (const auto& [id, p] : hypotheses) {
    if (!(p >= 0 && p <= 1)) throw Error(Errc::InvalidArgument, "probability of " + id + " outside [0,1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw Error(Errc::InvalidArgument, "hypothesis probabilities must sum to 1");
}

double expected_utility(const std::map<std::string, double>& utilities,
                        const HypothesisBelief& beliefs, const TimeCost& cost, double t) {
  beliefs.validate();
  double eu = 0;
  for (const auto& [id, p] : beliefs.hypotheses) {
    auto it = utilities.find(id);
    if (it == utilities.end()) throw Error(Errc::MissingUtility, "no utility for hypothesis " + id);
    eu += p * cost.utility(it->second, t);
  }
  return eu;
}

double expected_utility(const UtilityModel& utilities, std::size_t action, double p_w,
                        const TimeCost& cost, double t) {
  const double ut = cost.utility(utilities.if_true.at(action), t);
  const double uf = cost.utility(utilities.if_false.at(action), t);
  return p_w * (ut - uf) + uf;
}

Choice best_action(double p_w, const UtilityModel& utilities, const TimeCost& cost, double t) {
  Choice best{0, expected_utility(utilities, 0, p_w, cost, t)};
  for (std::size_t i = 1; i < utilities.size(); ++i) {
    const double eu = expected_utility(utilities, i, p_w, cost, t);
    if (eu > best.eu + 1e-12 * std::max(1.0, std::abs(best.eu))) best = {i, eu};
  }
  return best;
}

double threshold(const UtilityModel& utilities) {
  if (utilities.size() != 2) {
    throw Error(Errc::InvalidArgument, "a threshold needs exactly two actions");
  }
  const double gain_if_true = utilities.if_true[0] - utilities.if_true[1];
  const double gain_if_false = utilities.if_false[1] - utilities.if_false[0];
  if (gain_if_true < 0 && gain_if_false < 0) {
    throw Error(Errc::InvalidArgument, "actions are reversed: A1 must be the action for w");
  }
  if (!(gain_if_true > 0) || !(gain_if_false > 0)) {
    throw Error(Errc::Dominance, "one action dominates; no threshold exists");
  }
  return gain_if_false / (gain_if_false + gain_if_true);
}

double u_best(double p_w_after, const UtilityModel& utilities, const TimeCost& cost, double j,
              double elapsed) {
  return best_action(p_w_after, utilities, cost, elapsed + cost.time_for(j)).eu;
}

double posterior_after(const SearchBelief& belief, double x) {
  const double p = belief.p_w;
  const double no_halt = p + (1.0 - p) * belief.halting.survival(x);
  return no_halt > 0 ? p / no_halt : p;
}

double nevc_multi(const SearchBelief& belief, const UtilityModel& utilities,
                  const TimeCost& cost, double x) {
  const double remaining = belief.halting.remaining();
  if (!(x >= 1) || x > remaining || x != std::floor(x)) {
    throw Error(Errc::InvalidLookahead, "lookahead must be an integer in [1, remaining paths]");
  }
  const double p = belief.p_w;
  const double gx = belief.halting.survival(x);
  const double no_halt = p + (1.0 - p) * gx;
  const double p_x = no_halt > 0 ? p / no_halt : p;
  const double best_if_false =
      *std::max_element(utilities.if_false.begin(), utilities.if_false.end());

  const double halt = (1.0 - p) * halting_value(belief.halting, best_if_false, cost, belief.elapsed, x);
  const double act_later = no_halt * u_best(p_x, utilities, cost, x, belief.elapsed);
  const double act_now = u_best(p, utilities, cost, 0, belief.elapsed);
  return halt + act_later - act_now;
}

double nevc_one(const SearchBelief& belief, const UtilityModel& utilities, const TimeCost& cost) {
  return nevc_multi(belief, utilities, cost, 1);
}

}  // namespace mprover
