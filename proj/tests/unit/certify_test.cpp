#include "rtcomb/certify.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <tuple>

#include "oracles.hpp"
#include "rtcomb/zn_comb.hpp"

namespace rtcomb {
namespace {

using testing::Rng;

// Z^2 over {a1, a2}: d(p, q) is the L1 distance, with no ball involved.
struct Plane {
  CombingPtr c = comb_abelian(2);
  std::vector<std::array<long, 2>> walk(const Word& w) const {
    std::vector<std::array<long, 2>> out{{0, 0}};
    for (Letter l : w.letters()) {
      auto p = out.back();
      p[l.symbol] += l.sign;
      out.push_back(p);
    }
    return out;
  }
  static long dist(const std::array<long, 2>& p, const std::array<long, 2>& q) {
    return std::labs(p[0] - q[0]) + std::labs(p[1] - q[1]);
  }
};

// Backward memoized recursion: can (i, j), entered with the given run, reach
// the far corner?
bool feasible_oracle(const std::vector<std::array<long, 2>>& v, const std::vector<std::array<long, 2>>& w, long K,
                     std::size_t M) {
  const std::size_t I = v.size() - 1, J = w.size() - 1;
  std::map<std::tuple<std::size_t, std::size_t, int, std::size_t>, bool> memo;
  std::function<bool(std::size_t, std::size_t, int, std::size_t)> go = [&](std::size_t i, std::size_t j, int dir,
                                                                           std::size_t run) -> bool {
    if (Plane::dist(v[i], w[j]) > K) return false;
    if (i == I && j == J) return true;
    const auto key = std::make_tuple(i, j, dir, run);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    bool ok = false;
    if (i < I && j < J) ok = go(i + 1, j + 1, 0, 0);
    if (!ok && i < I && (dir != 1 || run < M)) ok = go(i + 1, j, 1, dir == 1 ? run + 1 : 1);
    if (!ok && j < J && (dir != 2 || run < M)) ok = go(i, j + 1, 2, dir == 2 ? run + 1 : 1);
    memo[key] = ok;
    return ok;
  };
  return go(0, 0, 0, 0);
}

// -1 when no K up to the cap works.
long minimal_K_oracle(const Word& v, const Word& w, std::size_t M, long cap = 16) {
  const Plane plane;
  const auto pv = plane.walk(v), pw = plane.walk(w);
  for (long K = 0; K <= cap; ++K) {
    if (feasible_oracle(pv, pw, K, M)) return K;
  }
  return -1;
}

// Every monotone path, enumerated explicitly.
long minimal_K_by_paths(const Word& v, const Word& w, std::size_t M) {
  const Plane plane;
  const auto pv = plane.walk(v), pw = plane.walk(w);
  long best = -1;
  std::function<void(std::size_t, std::size_t, std::size_t, std::size_t, long)> walk =
      [&](std::size_t i, std::size_t j, std::size_t vrun, std::size_t wrun, long worst) {
        worst = std::max(worst, Plane::dist(pv[i], pw[j]));
        if (best >= 0 && worst >= best) return;
        if (i + 1 == pv.size() && j + 1 == pw.size()) {
          best = worst;
          return;
        }
        if (i + 1 < pv.size() && j + 1 < pw.size()) walk(i + 1, j + 1, 0, 0, worst);
        if (i + 1 < pv.size() && vrun < M) walk(i + 1, j, vrun + 1, 0, worst);
        if (j + 1 < pw.size() && wrun < M) walk(i, j + 1, 0, wrun + 1, worst);
      };
  walk(0, 0, 0, 0, 0);
  return best;
}

TEST(FellowTravel, IdenticalWordsUseTheDiagonal) {
  const auto c = heisenberg_combing(1);
  const Ball b = ball(c->model(), 2);
  const Word w = Word::parse(c->alphabet(), "x x y z^-1 y x^-1");
  const auto cert = check_fellow_travel(w, w, c->model(), 0, 1, b);
  ASSERT_TRUE(cert);
  ASSERT_EQ(cert->path.size(), w.length() + 1);
  for (std::size_t k = 0; k < cert->path.size(); ++k) EXPECT_EQ(cert->path[k], std::make_pair(k, k));
  EXPECT_EQ(minimal_K(w, w, c->model(), 1, b).K, 0u);
}

TEST(FellowTravel, DivergingAxesFail) {
  const auto c = comb_abelian(2, {"a", "b"});
  const Word v = Word::parse(c->alphabet(), "a a a a a");
  const Word w = Word::parse(c->alphabet(), "b b b b b");
  EXPECT_FALSE(check_fellow_travel(v, w, c->model(), 1, 1));
  const Ball b = ball(c->model(), 12);
  EXPECT_EQ(minimal_K(v, w, c->model(), 1, b).K, std::optional<std::size_t>(10));
}

TEST(FellowTravel, SmallBallIsAnErrorNotAFailure) {
  const auto c = comb_abelian(2);
  const Ball b = ball(c->model(), 2);
  const Word w = c->word(Element{1, 1});
  EXPECT_THROW(check_fellow_travel(w, w, c->model(), 3, 1, b), BallTooSmall);
}

TEST(FellowTravel, PlaneNeighboursMatchIncrementalOracle) {
  const Plane plane;
  const Ball b = ball(plane.c->model(), 6);
  std::set<std::size_t> constants;
  for (long p = 0; p <= 40; ++p) {
    for (long q = 0; q <= 40; ++q) {
      const Word v = comb(LatticePoint{p, q});
      const Word w = comb(LatticePoint{p + 1, q});
      const auto found = minimal_K(v, w, plane.c->model(), 1, b);
      ASSERT_TRUE(found.K) << p << "," << q;
      EXPECT_EQ(long(*found.K), minimal_K_oracle(v, w, 1)) << p << "," << q;
      constants.insert(*found.K);
      std::string why;
      EXPECT_TRUE(verify_certificate(*found.certificate, v, w, plane.c->model(), b, &why)) << why;
    }
  }
  // One constant serves every pair.
  EXPECT_LE(*constants.rbegin(), 2u);
}

TEST(FellowTravel, MatchesPathEnumeration) {
  const Plane plane;
  const Ball b = ball(plane.c->model(), 8);
  const Word v = comb(LatticePoint{4, 3});
  const Word w = comb(LatticePoint{4, 4});
  for (std::size_t M = 1; M <= 4; ++M) {
    const auto found = minimal_K(v, w, plane.c->model(), M, b);
    ASSERT_TRUE(found.K);
    EXPECT_EQ(long(*found.K), minimal_K_by_paths(v, w, M)) << "M=" << M;
  }
}

TEST(FellowTravel, RandomPlanePairsAgreeWithOracles) {
  const Plane plane;
  const Ball b = ball(plane.c->model(), 16);
  Rng rng(808);
  for (int trial = 0; trial < 60; ++trial) {
    const Word v = rng.word(plane.c->alphabet(), 7);
    const Word w = rng.word(plane.c->alphabet(), 7);
    const std::size_t M = std::size_t(rng.uniform(1, 3));
    const auto found = minimal_K(v, w, plane.c->model(), M, b);
    // Unequal lengths can make every path break the run bound.
    const long expected = found.K ? long(*found.K) : -1;
    EXPECT_EQ(expected, minimal_K_by_paths(v, w, M)) << v.to_string() << " | " << w.to_string();
    EXPECT_EQ(expected, minimal_K_oracle(v, w, M));
  }
}

TEST(FellowTravel, MonotoneInSlope) {
  const auto c = heisenberg_combing(1);
  const Ball b = ball(c->model(), 8);
  Rng rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const Word v = rng.word(c->alphabet(), 9);
    const Word w = rng.word(c->alphabet(), 9);
    std::optional<std::size_t> previous;
    for (std::size_t M = 1; M <= 5; ++M) {
      const auto found = minimal_K(v, w, c->model(), M, b);
      if (previous) {
        ASSERT_TRUE(found.K);
        EXPECT_LE(*found.K, *previous);
      }
      if (found.K) previous = found.K;
    }
  }
}

TEST(FellowTravel, VerifierAgreesAndCatchesTampering) {
  const auto c = heisenberg_combing(1);
  const Ball b = ball(c->model(), 8);
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const Word v = rng.word(c->alphabet(), 8);
    const Word w = rng.word(c->alphabet(), 8);
    const auto found = minimal_K(v, w, c->model(), 2, b);
    if (!found.K) continue;
    std::string why;
    ASSERT_TRUE(verify_certificate(*found.certificate, v, w, c->model(), b, &why)) << why;
    if (*found.K > 0) {
      auto tighter = *found.certificate;
      --tighter.K;
      EXPECT_FALSE(verify_certificate(tighter, v, w, c->model(), b));
    }
    auto truncated = *found.certificate;
    truncated.path.pop_back();
    EXPECT_FALSE(verify_certificate(truncated, v, w, c->model(), b));
  }
  // A pure v-run of length 2 violates M = 1.
  const Word v = Word::parse(c->alphabet(), "x x");
  const Word e(c->alphabet());
  TravelCertificate bad{2, 1, {{0, 0}, {1, 0}, {2, 0}}};
  EXPECT_FALSE(verify_certificate(bad, v, e, c->model(), b));
  bad.M = 2;
  EXPECT_TRUE(verify_certificate(bad, v, e, c->model(), b));
}

TEST(CombingConstant, RadiusZeroUsesGeneratorWords) {
  const auto c = comb_abelian(3);
  ConstantOptions options;
  options.K_cap = 4;
  const auto k = combing_constant(*c, 0, 1, options);
  EXPECT_EQ(k.pairs, 6u);
  EXPECT_EQ(k.K, 1u);
  EXPECT_EQ(k.length_ratio, Rational(2));
  EXPECT_EQ(k.identity_length, 0u);
}

TEST(CombingConstant, AbelianStableAndSynchronous) {
  const auto c = comb_abelian(2);
  ConstantOptions options;
  options.K_cap = 6;
  options.jobs = 4;
  const auto k20 = combing_constant(*c, 20, 1, options);
  const auto k40 = combing_constant(*c, 40, 1, options);
  ASSERT_TRUE(k20.K);
  ASSERT_TRUE(k40.K);
  EXPECT_EQ(*k20.K, *k40.K);
  EXPECT_EQ(k20.diverged_pairs, 0u);
  EXPECT_LE(*k20.K, 2u);
}

TEST(CombingConstant, ThreeDimensionalAbelianIsSynchronous) {
  const auto c = comb_abelian(3);
  ConstantOptions options;
  options.K_cap = 6;
  const auto k = combing_constant(*c, 8, 1, options);
  ASSERT_TRUE(k.K);
  EXPECT_EQ(k.diverged_pairs, 0u);
}

TEST(CombingConstant, ThreadCountDoesNotChangeTheAnswer) {
  const auto c = heisenberg_combing(1);
  ConstantOptions options;
  options.K_cap = 6;
  options.jobs = 1;
  const auto serial = combing_constant(*c, 3, 2, options);
  options.jobs = 6;
  const auto parallel = combing_constant(*c, 3, 2, options);
  EXPECT_EQ(serial.K, parallel.K);
  ASSERT_TRUE(serial.worst && parallel.worst);
  EXPECT_EQ(serial.worst->g, parallel.worst->g);
  EXPECT_EQ(serial.worst->x, parallel.worst->x);
  EXPECT_EQ(serial.length_ratio, parallel.length_ratio);
}

TEST(CombingConstant, HeisenbergFinite) {
  const auto c = heisenberg_combing(1);
  ConstantOptions options;
  options.K_cap = 8;
  options.jobs = 4;
  const auto k = combing_constant(*c, 4, 2, options);
  ASSERT_TRUE(k.K) << k.diverged_pairs << " diverged";
  ASSERT_TRUE(k.worst);
  // The worst pair really needs K.
  const Word v = c->word(k.worst->g);
  const Word w = c->word(c->group()->multiply(k.worst->g, c->model().image(k.worst->x)));
  const Ball b = ball(c->model(), options.K_cap);
  EXPECT_EQ(minimal_K(v, w, c->model(), 2, b).K, k.K);
}

TEST(CombingConstant, ReportsDivergence) {
  // y^4 against x y^4 z^-4 cannot stay within distance 1.
  const auto c = heisenberg_combing(1);
  ConstantOptions options;
  options.K_cap = 1;
  const auto k = combing_constant(*c, 4, 1, options);
  EXPECT_FALSE(k.K);
  EXPECT_GT(k.diverged_pairs, 0u);
  ASSERT_TRUE(k.worst);
  EXPECT_FALSE(k.worst->K);
}

TEST(LengthFunction, AbelianIsGeodesic) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto c = comb_abelian(n);
    const auto t = length_function(*c, 8);
    ASSERT_EQ(t.rows.size(), 9u);
    EXPECT_FALSE(t.lower_bound);
    for (const auto& row : t.rows) EXPECT_EQ(row.f, row.n);
  }
}

TEST(LengthFunction, TableInvariants) {
  const auto c = heisenberg_combing(1);
  const auto t = length_function(*c, 6);
  const Ball b = ball(c->model(), 6);
  for (std::size_t k = 0; k < t.rows.size(); ++k) {
    const auto& row = t.rows[k];
    EXPECT_GE(row.f, row.n);
    if (k) EXPECT_GE(row.f, t.rows[k - 1].f);
    EXPECT_EQ(c->word(row.witness).length(), row.f);
    EXPECT_LE(*b.length(row.witness), row.n);
  }
  // Brute force over the ball.
  std::size_t f6 = 0;
  for (const auto& [g, d] : b.distance) f6 = std::max(f6, c->word(g).length());
  EXPECT_EQ(t.rows.back().f, f6);
}

TEST(LengthFunction, HeisenbergQuadratic) {
  const auto c = heisenberg_combing(1);
  const auto t = length_function(*c, 10);
  const double slope = fit_degree(t, 0.5);
  EXPECT_GE(slope, 1.5);
  EXPECT_LE(slope, 2.5);
  for (const auto& row : t.rows) EXPECT_LE(row.f, 3 * row.n * row.n + row.n);
}

TEST(LengthFunction, CapWithoutProbesThrows) {
  const auto c = unipotent_combing(4);
  EXPECT_THROW(length_function(*c, 10, 1000), BallCapExceeded);
}

TEST(LengthFunction, ProbeWitnessMustEvaluate) {
  const auto c = fibonacci_combing();
  ProbeFamily bad{"bad", {{Element{0, 1, 0}, Word::parse(c->alphabet(), "z")}}};
  EXPECT_THROW(length_function(*c, bad, 3), std::invalid_argument);
}

TEST(Probes, FibonacciMatchesMatrixPowers) {
  const auto c = fibonacci_combing();
  const auto family = fibonacci_probes(*c, 12);
  ASSERT_EQ(family.probes.size(), 13u);
  // (1, 0) A^m with A = [[0, 1], [1, 1]] gives (F_{m-1}, F_m).
  long a = 1, b = 0;
  for (std::size_t m = 0; m <= 12; ++m) {
    const auto& probe = family.probes[m];
    EXPECT_EQ(probe.witness.length(), 2 * m + 1);
    EXPECT_EQ(probe.g, (Element{0, a, b}));
    EXPECT_EQ(c->word(probe.g).length(), std::size_t(a + b));
    std::tie(a, b) = std::make_pair(b, a + b);
  }
  const auto t = length_function(*c, family, 8);
  EXPECT_TRUE(t.lower_bound);
  // BFS confirms the small probes are geodesic.
  for (const auto& row : t.rows) {
    if (row.n <= 8) EXPECT_TRUE(row.exact_geodesic) << row.n;
  }
}

TEST(Probes, UnipotentCornerIsCubic) {
  const auto c = unipotent_combing(4);
  const auto family = unipotent_corner_probes(*c, 4, 120);
  const Unipotent u4(4);
  for (const auto& probe : family.probes) {
    const Element m = unipotent_preset_to_matrix(*c->group(), 4, probe.g);
    // Only the corner entry survives.
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (k != u4.coordinate(0, 3)) EXPECT_EQ(m[k], 0);
    }
    EXPECT_NE(m[u4.coordinate(0, 3)], 0);
  }
  const auto t = length_function(*c, family, 4);
  EXPECT_TRUE(t.lower_bound);
  const double slope = fit_degree(t, 0.5);
  EXPECT_GE(slope, 2.4);
  EXPECT_LE(slope, 3.6);
}

TEST(FitDegree, SyntheticPowers) {
  LengthTable linear, square;
  for (std::size_t n = 0; n <= 40; ++n) {
    linear.rows.push_back({n, n, {}, true});
    square.rows.push_back({n, n * n, {}, true});
  }
  EXPECT_NEAR(fit_degree(linear, 0.5), 1.0, 0.01);
  EXPECT_NEAR(fit_degree(square, 0.5), 2.0, 0.01);
}

TEST(FitDegree, DegenerateTails) {
  LengthTable t;
  for (std::size_t n = 0; n <= 3; ++n) t.rows.push_back({n, n, {}, true});
  EXPECT_THROW(fit_degree(t, 1.0), DegenerateFit);
  EXPECT_THROW(fit_degree(t, 0.0), DegenerateFit);
}

TEST(Ceiling, ExactComparison) {
  LengthTable t;
  t.rows = {{0, 0, {}, true}, {1, 3, {}, true}, {2, 9, {}, true}, {3, 28, {}, true}};
  EXPECT_TRUE(exponential_ceiling(t, 0, Rational(3)).holds == false);
  EXPECT_EQ(exponential_ceiling(t, 0, Rational(3)).first_violation, 3u);
  EXPECT_TRUE(exponential_ceiling(t, 1, Rational(3)).holds);
  EXPECT_TRUE(exponential_ceiling(t, 0, Rational(7, 2)).holds);
}

TEST(Ceiling, HoldsForMeasuredCombings) {
  ConstantOptions options;
  options.K_cap = 8;
  options.jobs = 4;
  for (const auto& c : {comb_abelian(2), heisenberg_combing(1), fibonacci_combing()}) {
    const auto k = combing_constant(*c, 4, 3, options);
    const auto t = length_function(*c, 6);
    EXPECT_TRUE(exponential_ceiling(t, k.identity_length, k.length_ratio).holds) << c->info().description;
  }
}

TEST(LengthTable, Csv) {
  LengthTable t;
  t.rows = {{0, 0, Element{0, 0}, true}, {1, 1, Element{1, 0}, true}};
  EXPECT_EQ(t.to_csv(), "n,f,exact_geodesic,witness\n0,0,1,\"(0,0)\"\n1,1,1,\"(1,0)\"\n");
}

}  // namespace
}  // namespace rtcomb
