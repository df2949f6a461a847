#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "mprover/matrix.hpp"

namespace mprover {

// A subpath was closed by the literal chosen from clause `clause_index`
// (1-based), discarding every complete path through it.
struct ClosureEvent {
  std::size_t clause_index = 0;
  PathCount pruned;
  PathCount cumulative_closed;

  friend bool operator==(const ClosureEvent&, const ClosureEvent&) = default;
};

enum class SearchStatus {
  Running,
  OpenFound,  // an open path exists: the clause set is satisfiable, w is false
  Exhausted,  // every path is closed: the clause set is unsatisfiable, w is true
};

const char* to_string(SearchStatus status) noexcept;

// Resumable depth-first search for an open path through a matrix. The
// children of a node at depth d are the literals of clause d+1, tried in
// clause order. A node closes as soon as its literal's complement already
// lies on the subpath.
class SearchState {
 public:
  using EventSink = std::function<void(const ClosureEvent&)>;

  // The state keeps a reference to `matrix`, which must outlive it.
  explicit SearchState(const Matrix& matrix);

  // Resumes the search until at least `budget` complete paths have been
  // pruned during this call (the last closure may overshoot), an open path
  // is found, or every path is closed. Throws Error(InvalidState) on a
  // terminal state and Error(InvalidArgument) when budget < 1.
  std::vector<ClosureEvent> step(const PathCount& budget);

  // Same, but streams events to `sink` (may be empty) instead of collecting
  // them. Returns the number of closures seen during this call.
  std::uint64_t step(const PathCount& budget, const EventSink& sink);

  // Runs to termination without recording events.
  void run_to_end();

  const Matrix& matrix() const noexcept { return *matrix_; }
  SearchStatus status() const noexcept { return status_; }
  bool terminal() const noexcept { return status_ != SearchStatus::Running; }
  const PathCount& closed() const noexcept { return closed_; }
  const PathCount& total() const noexcept { return total_; }
  PathCount remaining() const { return total_ - closed_; }
  std::uint64_t closure_count() const noexcept { return closures_; }
  std::uint64_t nodes_expanded() const noexcept { return nodes_; }

  // closed / total. Throws Error(InvalidState) when total = 0.
  Rational fraction_explored() const;

  // One literal index per clause; set only when status() == OpenFound.
  const std::optional<std::vector<std::size_t>>& witness() const noexcept {
    return witness_;
  }
  std::vector<Literal> witness_literals() const;

 private:
  bool complement_on_path(const Literal& lit) const noexcept;
  void push(const Literal& lit) noexcept;
  void pop(const Literal& lit) noexcept;

  const Matrix* matrix_;
  std::vector<PathCount> suffix_;
  // cursor_[d]: literal of clause d currently on the subpath (d < depth_),
  // or the next one to try (d == depth_).
  std::vector<std::size_t> cursor_;
  std::size_t depth_ = 0;
  // Occurrences of each symbol on the subpath, split by polarity.
  std::vector<std::uint32_t> positive_;
  std::vector<std::uint32_t> negative_;
  PathCount closed_;
  PathCount total_;
  SearchStatus status_ = SearchStatus::Running;
  std::optional<std::vector<std::size_t>> witness_;
  std::uint64_t closures_ = 0;
  std::uint64_t nodes_ = 0;
};

}  // namespace mprover
