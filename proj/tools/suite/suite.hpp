#pragma once

// The acceptance battery. Each criterion is a self-contained check that
// reports pass/fail, a one-line detail and machine-readable data.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "rtcomb/groups.hpp"
#include "rtcomb/rt_machine.hpp"

namespace rtcomb::suite {

constexpr int kCriteria = 12;
constexpr std::uint64_t kDefaultSeed = 20260915;

struct Options {
  bool quick = false;
  std::size_t jobs = 1;
  std::uint64_t seed = kDefaultSeed;
  std::size_t ball_cap = kDefaultBallCap;
};

struct Result {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  nlohmann::json data;  // deterministic for fixed options
  double seconds = 0;
};

// Real-time statistics gathered by the recognizer sweeps.
struct TraceStats {
  std::size_t runs = 0;
  std::size_t steps = 0;
  int max_moves_per_tape = 0;
  std::size_t min_tapes = SIZE_MAX, max_tapes = 0;

  void add(const TraceSummary& s);
  void merge(const TraceStats& other);
};

class Battery {
 public:
  explicit Battery(Options options) : options_(options) {}

  Result run(int id);
  std::vector<Result> run_all();

  static std::string title(int id);

 private:
  Result membership_sweep();         // 2
  Result positive_sweep();           // 3
  Result real_time_contract();       // 4
  Result reductions();               // 5
  Result lemma_suite();              // 6
  Result almost_linearity();         // 7
  Result heisenberg_constant();      // 8
  Result heisenberg_length();        // 9
  Result unipotent_cubic();          // 10
  Result fibonacci_ceiling();        // 11
  Result soundness();                // 12
  Result figure_one();               // 1

  Options options_;
  std::optional<TraceStats> membership_trace_, positive_trace_;
};

std::string format_line(const Result& r);
nlohmann::json to_json(const std::vector<Result>& results, const Options& options);

}  // namespace rtcomb::suite
