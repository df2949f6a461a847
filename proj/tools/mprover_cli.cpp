#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mprover/controller.hpp"
#include "mprover/dimacs.hpp"
#include "mprover/error.hpp"
#include "mprover/generator.hpp"
#include "mprover/presort.hpp"
#include "mprover/profile.hpp"
#include "mprover/search.hpp"

namespace fs = std::filesystem;
using namespace mprover;

namespace {

constexpr int kOk = 0;
constexpr int kInconsistent = 1;
constexpr int kBadInput = 2;
constexpr int kBudgetExhausted = 3;
constexpr int kContextMismatch = 4;

const char* kDefaultUtility =
    "actions=A1,A2; u(A1,w)=1; u(A1,~w)=0; u(A2,w)=0; u(A2,~w)=1";

struct Shape {
  std::uint32_t clauses = 20;
  std::uint32_t lits = 3;
  std::uint32_t alphabet = 4;
  std::uint64_t seed = 0;
  std::size_t count = 300;
};

void add_shape(CLI::App* cmd, Shape& s, bool with_count) {
  cmd->add_option("--clauses", s.clauses, "clauses per matrix")->capture_default_str();
  cmd->add_option("--lits", s.lits, "literals per clause")->capture_default_str();
  cmd->add_option("--alphabet", s.alphabet, "number of propositional symbols")->capture_default_str();
  cmd->add_option("--seed", s.seed, "corpus seed")->capture_default_str();
  if (with_count) cmd->add_option("--count", s.count, "number of instances")->capture_default_str();
}

GeneratorConfig config_of(const Shape& s) { return {s.clauses, s.lits, s.alphabet, s.seed}; }

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::InvalidArgument, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw Error(Errc::InvalidArgument, "cannot write " + out);
  f << text;
}

std::string literal_name(const Literal& l) {
  return (l.negated ? "-" : "") + std::to_string(l.symbol + 1);
}

// ---- gen

struct GenArgs {
  Shape shape;
  std::string out = ".";
  std::string prefix = "inst";
};

int cmd_gen(const GenArgs& a) {
  auto files = write_corpus(config_of(a.shape), a.shape.count, a.out, a.prefix);
  std::cout << "wrote " << files.size() << " files to " << a.out << "\n";
  return kOk;
}

// ---- prove

struct ProveArgs {
  std::string file;
  std::string budget;
  bool presort = false;
};

int cmd_prove(const ProveArgs& a) {
  Matrix m = read_dimacs(a.file);
  if (a.presort) m = presort(m);
  SearchState s(m);
  std::uint64_t closures = 0;
  auto count = [&](const ClosureEvent&) { ++closures; };
  if (s.status() == SearchStatus::Running) {
    if (a.budget.empty()) {
      while (s.status() == SearchStatus::Running) s.step(s.remaining(), count);
    } else {
      PathCount budget(a.budget);
      if (budget < 1) throw Error(Errc::InvalidArgument, "--budget must be >= 1");
      s.step(budget, count);
    }
  }
  std::cout << "status: " << to_string(s.status()) << "\n";
  std::cout << "fraction: " << to_string(s.closed()) << "/" << to_string(s.total());
  if (s.total() > 0) std::printf(" (%.6f)", to_double(Rational(s.closed(), s.total())));
  std::cout << "\nclosures: " << closures << "\n";
  if (s.status() == SearchStatus::OpenFound) {
    std::cout << "witness:";
    for (const auto& l : s.witness_literals()) std::cout << " " << literal_name(l);
    std::cout << "\n";
  }
  return s.status() == SearchStatus::Running ? kBudgetExhausted : kOk;
}

// ---- profile / curve / compare-heuristic

struct ProfileArgs {
  Shape shape;
  std::string corpus;  // directory of .cnf files instead of generating
  std::string out = "profile.json";
  bool presort = false;
  unsigned jobs = 1;
  std::uint64_t step_cap = 0;
};

std::vector<Matrix> load_corpus(const std::string& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".cnf") files.push_back(e.path());
  }
  if (files.empty()) throw Error(Errc::InvalidArgument, "no .cnf files in " + dir);
  // numeric order of the trailing index, so inst_10 follows inst_9
  auto index_of = [](const fs::path& p) {
    const std::string stem = p.stem().string();
    const auto pos = stem.find_last_not_of("0123456789");
    const std::string digits = stem.substr(pos == std::string::npos ? 0 : pos + 1);
    return std::make_pair(digits.empty() ? 0ull : std::stoull(digits), p.string());
  };
  std::sort(files.begin(), files.end(),
            [&](const fs::path& a, const fs::path& b) { return index_of(a) < index_of(b); });
  std::vector<Matrix> out;
  for (const auto& f : files) out.push_back(read_dimacs(f));
  return out;
}

std::pair<std::vector<Matrix>, ContextTag> corpus_of(const ProfileArgs& a) {
  if (a.corpus.empty()) {
    auto cfg = config_of(a.shape);
    return {generate_corpus(cfg, a.shape.count), ContextTag{cfg, a.shape.count, HeuristicFlag::None, "generator"}};
  }
  auto corpus = load_corpus(a.corpus);
  const Matrix& first = corpus.front();
  GeneratorConfig cfg{static_cast<std::uint32_t>(first.size()),
                      static_cast<std::uint32_t>(first.size() ? first.clause(0).size() : 0),
                      first.alphabet_size(), a.shape.seed};
  return {std::move(corpus), ContextTag{cfg, 0, HeuristicFlag::None, "dimacs:" + a.corpus}};
}

Profile build_profile(const std::vector<Matrix>& corpus, ContextTag ctx, HeuristicFlag h,
                      const ProfileArgs& a) {
  ctx.count = corpus.size();
  Profile p = collect(corpus, h, ctx, {a.step_cap, a.jobs});
  if (p.incomplete() > 0) {
    std::cerr << "warning: " << p.incomplete() << " instances hit the step cap and were dropped\n";
  }
  return p;
}

int cmd_profile(const ProfileArgs& a) {
  auto [corpus, ctx] = corpus_of(a);
  Profile p = build_profile(corpus, ctx, a.presort ? HeuristicFlag::Presort : HeuristicFlag::None, a);
  save_profile(p, a.out);
  std::cout << "instances: " << p.records().size() << "\nprior: " << to_string(p.prior());
  std::printf(" (%.6f)\n", to_double(p.prior()));
  std::cout << "satisfiable: " << p.satisfiable_count() << "\nwrote " << a.out << "\n";
  return kOk;
}

struct CurveArgs {
  std::string profile;
  std::string out;
  std::string prior;
};

int cmd_curve(const CurveArgs& a) {
  Profile p = load_profile(a.profile);
  std::optional<Rational> prior;
  if (!a.prior.empty()) prior = parse_rational(a.prior);
  write_text(a.out, export_curve_csv(p, prior));
  return kOk;
}

int cmd_compare(const ProfileArgs& a, const std::string& save_prefix) {
  auto [corpus, ctx] = corpus_of(a);
  Profile plain = build_profile(corpus, ctx, HeuristicFlag::None, a);
  Profile sorted = build_profile(corpus, ctx, HeuristicFlag::Presort, a);
  if (!save_prefix.empty()) {
    save_profile(plain, save_prefix + "_none.json");
    save_profile(sorted, save_prefix + "_presort.json");
  }
  write_text(a.out, export_comparison_csv(plain, sorted));
  return kOk;
}

// ---- decide

struct DecideArgs {
  std::string posterior;
  std::string prior;
  std::string survival;
  std::string profile;
  std::string fraction;
  std::string utility = kDefaultUtility;
  double t = 0;
};

int cmd_decide(const DecideArgs& a) {
  Rational post;
  if (!a.posterior.empty()) {
    post = parse_rational(a.posterior);
  } else if (!a.profile.empty()) {
    if (a.fraction.empty()) throw Error(Errc::InvalidArgument, "--profile needs --fraction");
    Profile p = load_profile(a.profile);
    std::optional<Rational> prior;
    if (!a.prior.empty()) prior = parse_rational(a.prior);
    post = p.posterior_at(parse_rational(a.fraction), prior);
  } else if (!a.prior.empty() && !a.survival.empty()) {
    post = posterior(parse_rational(a.prior), parse_rational(a.survival));
  } else {
    throw Error(Errc::InvalidArgument,
                "give --posterior, --prior with --survival, or --profile with --fraction");
  }
  if (post < 0 || post > 1) throw Error(Errc::InvalidArgument, "posterior outside [0,1]");

  UtilitySpec spec = parse_utility_spec(a.utility);
  const double p = to_double(post);
  Choice c = best_action(p, spec.utilities, spec.cost, a.t);
  std::printf("posterior: %.6f\n", p);
  if (spec.utilities.size() == 2) {
    try {
      std::printf("threshold: %.6f\n", threshold(spec.utilities));
    } catch (const Error& e) {
      std::printf("threshold: none (%s)\n", e.what());
    }
  }
  std::printf("action: %s\neu: %.6f\n", spec.utilities.actions[c.action].c_str(), c.eu);
  return kOk;
}

// ---- run / replay

struct RunArgs {
  std::string file;
  std::string profile;
  std::string analytic_prior;
  std::vector<std::string> open_paths;  // "O:mass"
  std::string utility = kDefaultUtility;
  std::string chunk = "1";
  std::string policy = "myopic";
  std::vector<std::string> lookaheads;
  bool presort = false;
  bool strict = false;
  std::string out;
};

BeliefSource belief_of(const RunArgs& a) {
  if (!a.profile.empty()) return EmpiricalBelief::from(load_profile(a.profile));
  if (a.analytic_prior.empty()) {
    throw Error(Errc::InvalidArgument, "give --profile or --analytic-prior");
  }
  std::vector<OpenPathDistribution::Entry> entries;
  for (const auto& s : a.open_paths) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) {
      entries.emplace_back(PathCount(s), Rational(1));
    } else {
      entries.emplace_back(PathCount(s.substr(0, colon)), parse_rational(s.substr(colon + 1)));
    }
  }
  if (entries.empty()) entries.emplace_back(1, 1);
  return AnalyticBelief{parse_rational(a.analytic_prior), OpenPathDistribution(std::move(entries))};
}

int cmd_run(const RunArgs& a) {
  Matrix m = read_dimacs(a.file);
  const HeuristicFlag h = a.presort ? HeuristicFlag::Presort : HeuristicFlag::None;
  ControllerConfig cfg;
  cfg.belief = belief_of(a);
  if (const auto* e = std::get_if<EmpiricalBelief>(&cfg.belief)) {
    const std::size_t lits = m.size() ? m.clause(0).size() : 0;
    auto why = context_mismatches(e->context, m.size(), lits, m.alphabet_size(), h);
    for (const auto& w : why) std::cerr << "warning: context mismatch: " << w << "\n";
    if (!why.empty() && a.strict) return kContextMismatch;
  }
  cfg.chunk = PathCount(a.chunk);
  if (a.policy == "myopic") {
    cfg.policy = Policy::Myopic;
  } else if (a.policy == "multistep") {
    cfg.policy = Policy::MultiStep;
  } else {
    throw Error(Errc::InvalidArgument, "unknown policy " + a.policy);
  }
  for (const auto& x : a.lookaheads) cfg.lookaheads.push_back(x == "all" ? PathCount(0) : PathCount(x));
  cfg.utility = parse_utility_spec(a.utility);
  cfg.validate();

  DecisionTrace tr = run_controller(apply(h, m), cfg);
  write_text(a.out, trace_to_jsonl(tr));
  std::cerr << "stop: " << to_string(tr.stop_reason) << ", action: " << tr.action_name
            << ", steps: " << tr.steps.size() << "\n";
  return kOk;
}

struct ReplayArgs {
  std::string trace;
  std::string profile;
  std::string utility;
};

int cmd_replay(const ReplayArgs& a) {
  DecisionTrace tr = trace_from_jsonl(read_file(a.trace));
  BeliefSource belief = a.profile.empty() ? tr.belief : EmpiricalBelief::from(load_profile(a.profile));
  UtilitySpec spec = parse_utility_spec(a.utility.empty() ? tr.utility : a.utility);
  ReplayReport r = replay(tr, belief, spec);
  if (r.ok) {
    std::cout << "ok: " << tr.steps.size() << " steps verified\n";
    return kOk;
  }
  std::cout << (r.parameter_mismatch ? "parameter mismatch" : "inconsistent");
  if (r.first_divergent_step) std::cout << " at step " << *r.first_divergent_step;
  std::cout << ": " << r.message << "\n";
  return kInconsistent;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matrix-method prover with bounded search and decision control"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "write a random corpus as DIMACS files");
  gen.shape.count = 1;
  add_shape(g, gen.shape, true);
  g->add_option("--out", gen.out, "output directory")->capture_default_str();
  g->add_option("--prefix", gen.prefix, "file name prefix")->capture_default_str();

  ProveArgs prove;
  auto* pr = app.add_subcommand("prove", "search a DIMACS file");
  pr->add_option("file", prove.file)->required();
  pr->add_option("--budget", prove.budget, "stop after this many paths");
  pr->add_flag("--presort", prove.presort);

  ProfileArgs prof;
  auto* pf = app.add_subcommand("profile", "measure prior and survival curve of a corpus");
  add_shape(pf, prof.shape, true);
  pf->add_option("--corpus", prof.corpus, "directory of .cnf files instead of generating");
  pf->add_option("--out", prof.out)->capture_default_str();
  pf->add_flag("--presort", prof.presort);
  pf->add_option("--jobs", prof.jobs)->capture_default_str();
  pf->add_option("--step-cap", prof.step_cap, "max closures per instance, 0 = none");

  CurveArgs curve;
  auto* cv = app.add_subcommand("curve", "write the survival/posterior CSV of a profile");
  cv->add_option("profile", curve.profile)->required();
  cv->add_option("--out", curve.out, "CSV file (stdout by default)");
  cv->add_option("--prior", curve.prior, "override the profile's prior");

  DecideArgs dec;
  auto* dc = app.add_subcommand("decide", "best action at a posterior");
  dc->add_option("--posterior", dec.posterior);
  dc->add_option("--prior", dec.prior);
  dc->add_option("--survival", dec.survival);
  dc->add_option("--profile", dec.profile);
  dc->add_option("--fraction", dec.fraction);
  dc->add_option("--utility", dec.utility, "utility spec")->capture_default_str();
  dc->add_option("--time", dec.t, "delay before acting");

  RunArgs run;
  auto* rn = app.add_subcommand("run", "run the decision controller on a DIMACS file");
  rn->add_option("file", run.file)->required();
  rn->add_option("--profile", run.profile);
  rn->add_option("--analytic-prior", run.analytic_prior);
  rn->add_option("--open", run.open_paths, "open-path count, optionally COUNT:MASS");
  rn->add_option("--utility", run.utility)->capture_default_str();
  rn->add_option("--cost", "shorthand appended to the utility spec");
  rn->add_option("--chunk", run.chunk)->capture_default_str();
  rn->add_option("--policy", run.policy)->check(CLI::IsMember({"myopic", "multistep"}))->capture_default_str();
  rn->add_option("--lookahead", run.lookaheads, "multistep lookaheads in paths, or 'all'");
  rn->add_flag("--presort", run.presort);
  rn->add_flag("--strict", run.strict, "exit 4 on a context mismatch");
  rn->add_option("--out", run.out, "trace file (stdout by default)");

  ReplayArgs rp;
  auto* ry = app.add_subcommand("replay", "verify a trace");
  ry->add_option("trace", rp.trace)->required();
  ry->add_option("--profile", rp.profile);
  ry->add_option("--utility", rp.utility);

  ProfileArgs cmp;
  std::string cmp_save;
  auto* ch = app.add_subcommand("compare-heuristic", "curves without and with presort");
  add_shape(ch, cmp.shape, true);
  ch->add_option("--corpus", cmp.corpus);
  ch->add_option("--out", cmp.out, "CSV file (stdout by default)");
  cmp.out.clear();
  ch->add_option("--jobs", cmp.jobs);
  ch->add_option("--step-cap", cmp.step_cap);
  ch->add_option("--save-profiles", cmp_save, "write PREFIX_none.json and PREFIX_presort.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    if (*g) return cmd_gen(gen);
    if (*pr) return cmd_prove(prove);
    if (*pf) return cmd_profile(prof);
    if (*cv) return cmd_curve(curve);
    if (*dc) return cmd_decide(dec);
    if (*rn) {
      if (auto* c = rn->get_option("--cost"); c->count() > 0) run.utility += "; cost=" + c->as<std::string>();
      return cmd_run(run);
    }
    if (*ry) return cmd_replay(rp);
    if (*ch) return cmd_compare(cmp, cmp_save);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}
