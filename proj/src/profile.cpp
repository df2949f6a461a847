#include "mprover/profile.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "json_util.hpp"
#include "mprover/error.hpp"
#include "mprover/presort.hpp"
#include "mprover/search.hpp"

namespace mprover {

using detail::json;

Profile::Profile(ContextTag context, std::vector<InstanceRecord> records, std::uint64_t incomplete)
    : context_(std::move(context)), records_(std::move(records)), incomplete_(incomplete) {
  if (records_.empty()) throw Error(Errc::InvalidArgument, "a profile needs at least one record");
  std::vector<Rational> discoveries;
  std::size_t unsat = 0;
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& r = records_[i];
    if (i > 0 && r.id <= records_[i - 1].id) {
      throw Error(Errc::InvalidArgument, "records must be ordered by strictly increasing id");
    }
    if (r.satisfiable) {
      if (r.discovery_fraction < 0 || r.discovery_fraction >= 1) {
        throw Error(Errc::InvalidArgument,
                    "satisfiable record " + std::to_string(r.id) + " has fraction outside [0,1)");
      }
      discoveries.push_back(r.discovery_fraction);
    } else {
      if (r.discovery_fraction != 1) {
        throw Error(Errc::InvalidArgument,
                    "unsatisfiable record " + std::to_string(r.id) + " must end at fraction 1");
      }
      ++unsat;
    }
  }
  prior_ = Rational(unsat, records_.size());
  curve_ = SurvivalCurve(std::move(discoveries));
}

Rational Profile::posterior_at(const Rational& s, std::optional<Rational> prior) const {
  return posterior(prior.value_or(prior_), curve_.at(s));
}

std::optional<InstanceRecord> run_instance(const Matrix& matrix, std::uint64_t id,
                                           std::uint64_t step_cap) {
  const auto start = std::chrono::steady_clock::now();
  SearchState search(matrix);
  if (step_cap == 0) {
    search.run_to_end();
  } else {
    // one closure at a time so the cap is exact
    while (!search.terminal() && search.closure_count() < step_cap) {
      search.step(PathCount(1), SearchState::EventSink{});
    }
    if (!search.terminal()) return std::nullopt;
  }
  InstanceRecord rec;
  rec.id = id;
  rec.satisfiable = search.status() == SearchStatus::OpenFound;
  rec.discovery_fraction = search.total() == 0 ? Rational(1) : search.fraction_explored();
  rec.closures = search.closure_count();
  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

Profile collect(const std::vector<Matrix>& corpus, HeuristicFlag heuristic, ContextTag context,
                const CollectOptions& options) {
  if (corpus.empty()) throw Error(Errc::InvalidArgument, "cannot profile an empty corpus");
  context.heuristic = heuristic;

  std::vector<std::optional<InstanceRecord>> results(corpus.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < corpus.size(); i = next++) {
      results[i] = run_instance(apply(heuristic, corpus[i]), i, options.step_cap);
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, corpus.size()));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }

  std::vector<InstanceRecord> records;
  std::uint64_t incomplete = 0;
  for (auto& r : results) {
    if (r) {
      records.push_back(std::move(*r));
    } else {
      ++incomplete;
    }
  }
  if (records.empty()) {
    throw Error(Errc::InvalidArgument, "every instance exceeded the step cap");
  }
  return Profile(std::move(context), std::move(records), incomplete);
}

namespace detail {

json context_to_json(const ContextTag& c) {
  return json{{"n_clauses", c.generator.n_clauses},
              {"lits_per_clause", c.generator.lits_per_clause},
              {"alphabet_size", c.generator.alphabet_size},
              {"seed", c.generator.seed},
              {"count", c.count},
              {"heuristic", to_string(c.heuristic)},
              {"source", c.source}};
}

ContextTag context_from_json(const json& j) {
  ContextTag c;
  c.generator.n_clauses = j.at("n_clauses").get<std::uint32_t>();
  c.generator.lits_per_clause = j.at("lits_per_clause").get<std::uint32_t>();
  c.generator.alphabet_size = j.at("alphabet_size").get<std::uint32_t>();
  c.generator.seed = j.at("seed").get<std::uint64_t>();
  c.count = j.at("count").get<std::uint64_t>();
  c.heuristic = parse_heuristic(j.at("heuristic").get<std::string>());
  if (j.contains("source")) c.source = j.at("source").get<std::string>();
  return c;
}

}  // namespace detail

std::string profile_to_json(const Profile& profile) {
  json records = json::array();
  for (const auto& r : profile.records()) {
    records.push_back(json{{"id", r.id},
                           {"sat", r.satisfiable},
                           {"frac", detail::rational_to_json(r.discovery_fraction)},
                           {"closures", r.closures},
                           {"wall", r.wall_seconds}});
  }
  json curve = json::array();
  for (const auto& p : profile.curve().points()) {
    curve.push_back(json{{"s", detail::rational_to_json(p.s)},
                         {"survival", detail::rational_to_json(p.survival)}});
  }
  json doc{{"format_version", kProfileFormatVersion},
           {"context", detail::context_to_json(profile.context())},
           {"prior", detail::rational_to_json(profile.prior())},
           {"incomplete", profile.incomplete()},
           {"records", std::move(records)},
           {"curve", std::move(curve)}};
  return doc.dump(1) + "\n";
}

Profile profile_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::MalformedFile, std::string("profile is not valid JSON: ") + e.what());
  }
  try {
    if (!doc.is_object() || !doc.contains("format_version")) {
      throw Error(Errc::MalformedFile, "profile lacks format_version");
    }
    if (doc.at("format_version").get<int>() != kProfileFormatVersion) {
      throw Error(Errc::VersionMismatch,
                  "profile format " + doc.at("format_version").dump() + ", expected " +
                      std::to_string(kProfileFormatVersion));
    }
    const Rational prior = detail::rational_from_json(doc.at("prior"));
    if (prior < 0 || prior > 1) {
      throw Error(Errc::MalformedFile, "prior " + to_string(prior) + " outside [0,1]");
    }
    std::vector<InstanceRecord> records;
    for (const auto& r : doc.at("records")) {
      InstanceRecord rec;
      rec.id = r.at("id").get<std::uint64_t>();
      rec.satisfiable = r.at("sat").get<bool>();
      rec.discovery_fraction = detail::rational_from_json(r.at("frac"));
      rec.closures = r.at("closures").get<std::uint64_t>();
      if (r.contains("wall")) rec.wall_seconds = r.at("wall").get<double>();
      records.push_back(std::move(rec));
    }
    std::uint64_t incomplete = doc.value("incomplete", std::uint64_t{0});
    Profile profile(detail::context_from_json(doc.at("context")), std::move(records), incomplete);
    if (profile.prior() != prior) {
      throw Error(Errc::MalformedFile, "stored prior " + to_string(prior) +
                                           " disagrees with records (" +
                                           to_string(profile.prior()) + ")");
    }
    if (doc.contains("curve")) {
      std::vector<SurvivalCurve::Point> points;
      for (const auto& p : doc.at("curve")) {
        points.push_back({detail::rational_from_json(p.at("s")),
                          detail::rational_from_json(p.at("survival"))});
      }
      if (!valid_curve_points(points)) {
        throw Error(Errc::MalformedFile, "stored survival curve is not a nonincreasing step function from 1");
      }
      if (points != profile.curve().points()) {
        throw Error(Errc::MalformedFile, "stored survival curve disagrees with records");
      }
    }
    return profile;
  } catch (const json::exception& e) {
    throw Error(Errc::MalformedFile, std::string("malformed profile: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == Errc::VersionMismatch || e.code() == Errc::MalformedFile) throw;
    throw Error(Errc::MalformedFile, std::string("malformed profile: ") + e.what());
  }
}

void save_profile(const Profile& profile, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  out << profile_to_json(profile);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + path.string());
}

Profile load_profile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::MalformedFile, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return profile_from_json(buf.str());
}

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// survival and posterior at s, formatted; posterior "nan" if undefined
std::pair<std::string, std::string> curve_row(const Profile& profile, const Rational& s,
                                              const std::optional<Rational>& prior) {
  const Rational survival = profile.curve().at(s);
  std::string post = "nan";
  try {
    post = fixed6(to_double(posterior(prior.value_or(profile.prior()), survival)));
  } catch (const Error&) {
  }
  return {fixed6(to_double(survival)), post};
}

}  // namespace

std::string export_curve_csv(const Profile& profile, std::optional<Rational> prior_override) {
  if (prior_override && (*prior_override < 0 || *prior_override > 1)) {
    throw Error(Errc::InvalidArgument, "prior override outside [0,1]");
  }
  std::string out = "s,survival,posterior\n";
  for (int k = 0; k <= 100; ++k) {
    const Rational s(k, 100);
    auto [surv, post] = curve_row(profile, s, prior_override);
    out += fixed6(k / 100.0) + "," + surv + "," + post + "\n";
  }
  return out;
}

std::string export_comparison_csv(const Profile& plain, const Profile& sorted) {
  std::string out = "s,survival_none,posterior_none,survival_presort,posterior_presort\n";
  for (int k = 0; k <= 100; ++k) {
    const Rational s(k, 100);
    auto [s1, p1] = curve_row(plain, s, std::nullopt);
    auto [s2, p2] = curve_row(sorted, s, std::nullopt);
    out += fixed6(k / 100.0) + "," + s1 + "," + p1 + "," + s2 + "," + p2 + "\n";
  }
  return out;
}

}  // namespace mprover
