#include "mprover/search.hpp"

#include <cassert>

#include "mprover/error.hpp"

namespace mprover {

const char* to_string(SearchStatus status) noexcept {
  switch (status) {
    case SearchStatus::Running: return "RUNNING";
    case SearchStatus::OpenFound: return "W_FALSE";
    case SearchStatus::Exhausted: return "W_TRUE";
  }
  return "?";
}

SearchState::SearchState(const Matrix& matrix)
    : matrix_(&matrix),
      suffix_(suffix_path_counts(matrix)),
      cursor_(matrix.size() + 1, 0),
      positive_(matrix.alphabet_size(), 0),
      negative_(matrix.alphabet_size(), 0),
      closed_(0),
      total_(suffix_.front()) {
  if (total_ == 0) {
    // An empty clause: no paths at all, the matrix is unsatisfiable.
    status_ = SearchStatus::Exhausted;
  } else if (matrix.empty()) {
    status_ = SearchStatus::OpenFound;
    witness_.emplace();
  }
}

bool SearchState::complement_on_path(const Literal& lit) const noexcept {
  return lit.negated ? positive_[lit.symbol] != 0 : negative_[lit.symbol] != 0;
}

void SearchState::push(const Literal& lit) noexcept {
  ++(lit.negated ? negative_ : positive_)[lit.symbol];
}

void SearchState::pop(const Literal& lit) noexcept {
  --(lit.negated ? negative_ : positive_)[lit.symbol];
}

std::vector<ClosureEvent> SearchState::step(const PathCount& budget) {
  std::vector<ClosureEvent> events;
  step(budget, [&events](const ClosureEvent& e) { events.push_back(e); });
  return events;
}

std::uint64_t SearchState::step(const PathCount& budget, const EventSink& sink) {
  if (terminal()) {
    throw Error(Errc::InvalidState,
                std::string("step on terminal search (") + to_string(status_) + ")");
  }
  if (budget < 1) throw Error(Errc::InvalidArgument, "search budget must be >= 1");

  const std::size_t n = matrix_->size();
  const std::uint64_t closures_before = closures_;
  PathCount spent = 0;

  for (;;) {
    if (depth_ == n) {
      status_ = SearchStatus::OpenFound;
      witness_.emplace(cursor_.begin(), cursor_.begin() + static_cast<std::ptrdiff_t>(n));
      break;
    }
    const Clause& clause = matrix_->clause(depth_);
    std::size_t& k = cursor_[depth_];
    if (k == clause.size()) {
      // every child of this node is closed; closed_ == total_ would have
      // stopped us before unwinding past the root
      assert(depth_ > 0);
      --depth_;
      pop(matrix_->clause(depth_)[cursor_[depth_]]);
      ++cursor_[depth_];
      continue;
    }
    const Literal lit = clause[k];
    ++nodes_;
    if (complement_on_path(lit)) {
      const PathCount& pruned = suffix_[depth_ + 1];
      closed_ += pruned;
      spent += pruned;
      ++closures_;
      ++k;
      if (sink) sink(ClosureEvent{depth_ + 1, pruned, closed_});
      if (closed_ == total_) {
        status_ = SearchStatus::Exhausted;
        break;
      }
      if (spent >= budget) break;
    } else {
      push(lit);
      ++depth_;
      cursor_[depth_] = 0;
    }
  }
  return closures_ - closures_before;
}

void SearchState::run_to_end() {
  // total_ + 1 can never be spent before termination
  const PathCount budget = total_ + 1;
  while (!terminal()) step(budget, EventSink{});
}

Rational SearchState::fraction_explored() const {
  if (total_ == 0) throw Error(Errc::InvalidState, "fraction of an empty path space");
  return Rational(closed_, total_);
}

std::vector<Literal> SearchState::witness_literals() const {
  std::vector<Literal> out;
  if (!witness_) return out;
  out.reserve(witness_->size());
  for (std::size_t i = 0; i < witness_->size(); ++i) {
    out.push_back(matrix_->clause(i)[(*witness_)[i]]);
  }
  return out;
}

}  // namespace mprover
