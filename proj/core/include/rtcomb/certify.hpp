#pragma once

// Empirical certification of combings: fellow-traveller certificates by
// dynamic programming, combing constants over balls, length functions and
// their degree fits.
//
// Fellow travelling is discretized: a certificate is a monotone lattice path
// from (0, 0) to (l(v), l(w)) using the steps (1,1), (1,0) and (0,1), every
// node (i, j) of which has d(v(i), w(j)) <= K, and in which no run of
// consecutive (1,0) steps or of consecutive (0,1) steps is longer than M.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rtcomb/builders.hpp"
#include "rtcomb/groups.hpp"
#include "rtcomb/integer.hpp"
#include "rtcomb/words.hpp"

namespace rtcomb {

class BallTooSmall : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TravelCertificate {
  std::size_t K = 0;
  std::size_t M = 1;
  std::vector<std::pair<std::size_t, std::size_t>> path;  // (i, j) nodes, both ends included
};

// d(v(i), w(j)) = |v(i)^-1 w(j)|, computed on demand and cached. Distances
// beyond the ball radius are reported as nullopt.
class PrefixDistances {
 public:
  PrefixDistances(LetterSpan v, LetterSpan w, const GroupModel& model, const Ball& ball);

  std::size_t rows() const noexcept { return v_inverse_.size(); }  // l(v) + 1
  std::size_t cols() const noexcept { return w_prefix_.size(); }   // l(w) + 1
  std::optional<std::uint32_t> at(std::size_t i, std::size_t j);
  std::size_t evaluations() const noexcept { return evaluations_; }

 private:
  const GroupModel& model_;
  const Ball& ball_;
  std::vector<Element> v_inverse_;
  std::vector<Element> w_prefix_;
  std::vector<std::int32_t> cache_;  // -2 unknown, -1 beyond the ball
  std::size_t evaluations_ = 0;
};

// A certificate for (K, M) or nullopt. `ball` must have radius >= K,
// otherwise BallTooSmall is thrown.
std::optional<TravelCertificate> check_fellow_travel(const Word& v, const Word& w, const GroupModel& model,
                                                     std::size_t K, std::size_t M, const Ball& ball);
std::optional<TravelCertificate> check_fellow_travel(const Word& v, const Word& w, const GroupModel& model,
                                                     std::size_t K, std::size_t M);

// Independent re-check of a certificate: walks the path and recomputes every
// distance from scratch. On failure `why` says what is wrong.
bool verify_certificate(const TravelCertificate& certificate, const Word& v, const Word& w, const GroupModel& model,
                        const Ball& ball, std::string* why = nullptr);

struct MinimalK {
  std::optional<std::size_t> K;  // nullopt: diverged (no certificate with K <= K_cap)
  std::size_t K_cap = 0;
  std::optional<TravelCertificate> certificate;
};

// Least K admitting a certificate at slope bound M; K_cap is the radius of
// `ball`.
MinimalK minimal_K(const Word& v, const Word& w, const GroupModel& model, std::size_t M, const Ball& ball);

struct ConstantOptions {
  std::size_t K_cap = 12;
  std::size_t jobs = 1;
  std::size_t ball_cap = kDefaultBallCap;
  bool verify = true;  // re-check every certificate with verify_certificate
};

struct PairWitness {
  Element g;
  Letter x;
  std::optional<std::size_t> K;  // nullopt: diverged
  std::size_t v_length = 0;
  std::size_t w_length = 0;
};

struct CombingConstant {
  std::optional<std::size_t> K;  // nullopt: some pair diverged
  std::size_t radius = 0;
  std::size_t M = 1;
  std::size_t K_cap = 0;
  std::size_t pairs = 0;
  std::size_t diverged_pairs = 0;
  std::optional<PairWitness> worst;  // first pair (in ball order) attaining K, or the first diverged pair
  // Largest (l(w) + 1) / (l(v) + 1) over the pairs, in both orders.
  Rational length_ratio{1};
  std::size_t identity_length = 0;
};

// Max over g in ball(radius) and generators x (and inverses) of
// minimal_K(word(g), word(g x), M).
CombingConstant combing_constant(const Combing& c, std::size_t radius, std::size_t M,
                                 const ConstantOptions& options = {});

struct LengthRow {
  std::size_t n = 0;
  std::size_t f = 0;
  Element witness;
  bool exact_geodesic = true;  // n is the geodesic length of the witness
};

struct LengthTable {
  std::vector<LengthRow> rows;
  bool lower_bound = false;  // rows come from a probe family
  std::string source;

  std::string to_csv() const;
};

// f(n) = max |word(g)| over |g| <= n, for n = 0..n_max, from ball(n_max).
LengthTable length_function(const Combing& c, std::size_t n_max, std::size_t ball_cap = kDefaultBallCap);

struct Probe {
  Element g;
  Word witness;  // a word for g; its length bounds the geodesic length of g
};

struct ProbeFamily {
  std::string name;
  std::vector<Probe> probes;
};

// Lower-bound table from probes: each probe contributes f(n) >= |word(g)|
// with n its geodesic length when BFS finds it within confirm_radius, and
// the witness length otherwise. Rows are cumulative maxima.
LengthTable length_function(const Combing& c, const ProbeFamily& probes, std::size_t confirm_radius,
                            std::size_t ball_cap = kDefaultBallCap);

// Exact table, falling back to the probe family when the ball is too big.
LengthTable length_function(const Combing& c, std::size_t n_max, const ProbeFamily& fallback,
                            std::size_t confirm_radius, std::size_t ball_cap = kDefaultBallCap);

// Powers of the corner generator E_1n of the U_n preset, witnessed by nested
// commutators [..[[e12^a, e23^a], e34^a].., e_{n-1,n}^b] of length <= max_length.
ProbeFamily unipotent_corner_probes(const Combing& preset, std::size_t n, std::size_t max_length);
// y^(x^m) = x^-m y x^m for m = 0..max_m in the Fibonacci preset.
ProbeFamily fibonacci_probes(const Combing& preset, std::size_t max_m);

class DegenerateFit : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Least-squares slope of log f(n) against log n over the last
// ceil(tail_fraction * usable rows) rows with n >= 1 and f >= 1. Needs at
// least 4 such rows.
double fit_degree(const LengthTable& table, double tail_fraction);

struct CeilingCheck {
  bool holds = true;
  std::optional<std::size_t> first_violation;  // n of the first failing row
};

// f(n) <= (c + 1) M'^n on every row, compared exactly.
CeilingCheck exponential_ceiling(const LengthTable& table, std::size_t identity_length, const Rational& ratio);

}  // namespace rtcomb
