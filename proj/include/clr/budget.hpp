#pragma once

#include <chrono>
#include <cstddef>

namespace clr {

// Limits for the iterative solvers. Zero means "no limit".
struct Budget {
  double total_seconds = 0.0;
  // Stop when the incumbent has not improved for this long.
  double no_improve_seconds = 0.0;
  // Node cap for branch-and-bound searches.
  std::size_t max_nodes = 0;
};

class Stopwatch {
 public:
  Stopwatch() : start_(clock::now()), last_improve_(start_) {}

  double elapsed() const { return seconds_since(start_); }
  void mark_improvement() { last_improve_ = clock::now(); }

  bool expired(const Budget& b) const {
    if (b.total_seconds > 0 && elapsed() >= b.total_seconds) {
      return true;
    }
    return b.no_improve_seconds > 0 &&
           seconds_since(last_improve_) >= b.no_improve_seconds;
  }

 private:
  using clock = std::chrono::steady_clock;
  static double seconds_since(clock::time_point t) {
    return std::chrono::duration<double>(clock::now() - t).count();
  }
  clock::time_point start_;
  clock::time_point last_improve_;
};

}  // namespace clr
