#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mprover/belief.hpp"
#include "mprover/matrix.hpp"

namespace mprover {

inline constexpr int kProfileFormatVersion = 1;

struct InstanceRecord {
  std::uint64_t id = 0;
  bool satisfiable = false;
  // Fraction closed when the open path was found; 1 for unsatisfiable ones.
  Rational discovery_fraction;
  std::uint64_t closures = 0;
  double wall_seconds = 0;  // advisory, excluded from equality

  friend bool operator==(const InstanceRecord& a, const InstanceRecord& b) {
    return a.id == b.id && a.satisfiable == b.satisfiable &&
           a.discovery_fraction == b.discovery_fraction && a.closures == b.closures;
  }
};

// Prior of w and the empirical survival curve for one instance context.
class Profile {
 public:
  Profile() = default;
  // Derives the prior from `records` (ordered by id). Throws
  // Error(InvalidArgument) if records are inconsistent or empty.
  Profile(ContextTag context, std::vector<InstanceRecord> records, std::uint64_t incomplete = 0);

  const ContextTag& context() const noexcept { return context_; }
  const Rational& prior() const noexcept { return prior_; }
  const std::vector<InstanceRecord>& records() const noexcept { return records_; }
  const SurvivalCurve& curve() const noexcept { return curve_; }
  std::uint64_t incomplete() const noexcept { return incomplete_; }
  std::size_t satisfiable_count() const noexcept { return curve_.sample_size(); }

  // Posterior of w at fraction s, optionally under another prior.
  Rational posterior_at(const Rational& s, std::optional<Rational> prior = {}) const;

  friend bool operator==(const Profile& a, const Profile& b) {
    return a.context_ == b.context_ && a.prior_ == b.prior_ && a.records_ == b.records_ &&
           a.incomplete_ == b.incomplete_;
  }

 private:
  ContextTag context_;
  std::vector<InstanceRecord> records_;
  Rational prior_;
  SurvivalCurve curve_;
  std::uint64_t incomplete_ = 0;
};

struct CollectOptions {
  std::uint64_t step_cap = 0;  // max closures per instance; 0 = unlimited
  unsigned jobs = 1;
};

// Runs one instance to termination. nullopt when the step cap is hit.
std::optional<InstanceRecord> run_instance(const Matrix& matrix, std::uint64_t id,
                                           std::uint64_t step_cap = 0);

// Runs every instance (after applying `heuristic`) and builds the profile.
// The context's heuristic is overwritten with `heuristic`. Output does not
// depend on `options.jobs`.
Profile collect(const std::vector<Matrix>& corpus, HeuristicFlag heuristic, ContextTag context,
                const CollectOptions& options = {});

// JSON persistence. Loading throws Error(MalformedFile) on structural or
// invariant violations and Error(VersionMismatch) on other format versions.
std::string profile_to_json(const Profile& profile);
Profile profile_from_json(const std::string& text);
void save_profile(const Profile& profile, const std::filesystem::path& path);
Profile load_profile(const std::filesystem::path& path);

// 101 rows at s = 0.00, 0.01, ..., 1.00: "s,survival,posterior".
std::string export_curve_csv(const Profile& profile,
                             std::optional<Rational> prior_override = {});
// Side-by-side curves of the same corpus without and with the heuristic.
std::string export_comparison_csv(const Profile& plain, const Profile& sorted);

}  // namespace mprover
