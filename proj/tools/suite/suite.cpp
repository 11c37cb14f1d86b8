#include "suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

#include "rtcomb/builders.hpp"
#include "rtcomb/certify.hpp"
#include "rtcomb/lsharp.hpp"
#include "rtcomb/parallel.hpp"
#include "rtcomb/words.hpp"
#include "rtcomb/zn_comb.hpp"

namespace rtcomb::suite {

namespace {

using nlohmann::json;

std::string str(const Rational& r) {
  std::ostringstream out;
  out << r;
  return out.str();
}

std::string fixed(double x, int digits = 3) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << x;
  return out.str();
}

std::vector<Letter> from_bits(std::uint64_t bits, std::size_t length) {
  std::vector<Letter> w(length);
  for (std::size_t i = 0; i < length; ++i) w[i] = Letter{static_cast<std::uint16_t>((bits >> (length - 1 - i)) & 1), 1};
  return w;
}

bool only_b(LetterSpan w) {
  return std::all_of(w.begin(), w.end(), [](Letter l) { return l.symbol == 1; });
}

// Sigma_n word number `code` of the given length, letters ordered
// a1, a1^-1, a2, a2^-1, ...
void sigma_word(std::uint64_t code, std::size_t n, std::size_t length, std::vector<Letter>& out) {
  out.resize(length);
  for (std::size_t i = length; i-- > 0;) {
    const auto digit = code % (2 * n);
    code /= 2 * n;
    out[i] = Letter{static_cast<std::uint16_t>(digit / 2), static_cast<std::int8_t>(digit % 2 ? -1 : 1)};
  }
}

std::uint64_t ipow(std::uint64_t base, std::size_t e) {
  std::uint64_t r = 1;
  while (e--) r *= base;
  return r;
}

Word ab_word(const std::vector<std::uint8_t>& level) {
  std::vector<Letter> letters;
  for (auto s : level) letters.push_back(Letter{s, 1});
  return Word(ab_alphabet(), std::move(letters));
}

}  // namespace

void TraceStats::add(const TraceSummary& s) {
  ++runs;
  steps += s.steps;
  max_moves_per_tape = std::max(max_moves_per_tape, s.max_moves_per_tape);
  min_tapes = std::min(min_tapes, s.work_tapes);
  max_tapes = std::max(max_tapes, s.work_tapes);
}

void TraceStats::merge(const TraceStats& o) {
  runs += o.runs;
  steps += o.steps;
  max_moves_per_tape = std::max(max_moves_per_tape, o.max_moves_per_tape);
  min_tapes = std::min(min_tapes, o.min_tapes);
  max_tapes = std::max(max_tapes, o.max_tapes);
}

std::string Battery::title(int id) {
  switch (id) {
    case 1: return "straight-line combing of (4,3) and its sign flip";
    case 2: return "three-way membership agreement on L2#";
    case 3: return "positive-orthant sweep with parse roundtrip and mutants";
    case 4: return "real-time contract of the L2# recognizer";
    case 5: return "L3 membership by reduction";
    case 6: return "Phi identities and palindromes on generated levels";
    case 7: return "bounded deviation from the straight line";
    case 8: return "H3 split-extension fellow-traveller constant";
    case 9: return "quadratic length function of H3";
    case 10: return "cubic length growth in U4";
    case 11: return "Fibonacci extension: geometric growth under an exponential ceiling";
    case 12: return "soundness and injectivity of built combings";
  }
  return "unknown";
}

Result Battery::run(int id) {
  const auto start = std::chrono::steady_clock::now();
  Result r;
  switch (id) {
    case 1: r = figure_one(); break;
    case 2: r = membership_sweep(); break;
    case 3: r = positive_sweep(); break;
    case 4: r = real_time_contract(); break;
    case 5: r = reductions(); break;
    case 6: r = lemma_suite(); break;
    case 7: r = almost_linearity(); break;
    case 8: r = heisenberg_constant(); break;
    case 9: r = heisenberg_length(); break;
    case 10: r = unipotent_cubic(); break;
    case 11: r = fibonacci_ceiling(); break;
    case 12: r = soundness(); break;
    default: throw std::invalid_argument("no criterion " + std::to_string(id));
  }
  r.id = id;
  r.title = title(id);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<Result> Battery::run_all() {
  std::vector<Result> out;
  for (int id = 1; id <= kCriteria; ++id) out.push_back(run(id));
  return out;
}

Result Battery::figure_one() {
  Result r;
  const Word w = comb({4, 3});
  const std::string expected = "a1 a2 a1 a2 a1 a2 a1";
  const Word flipped = apply_hom(MonoidHom::sign_flip(sigma(2), {0}), w);
  const Word negative = comb({-4, 3});
  r.pass = w.to_string() == expected && negative == flipped && flipped.to_string() != expected;
  r.detail = "comb(4,3) = " + w.to_string() + "; comb(-4,3) = " + negative.to_string();
  r.data = {{"comb_4_3", w.to_string()}, {"comb_-4_3", negative.to_string()}, {"flip_image", flipped.to_string()}};
  return r;
}

Result Battery::membership_sweep() {
  const std::size_t max_length = options_.quick ? 12 : 16;
  // One task per (length, top four bits).
  struct Task {
    std::size_t length;
    std::uint64_t first, last;
  };
  std::vector<Task> tasks;
  for (std::size_t L = 1; L <= max_length; ++L) {
    const std::uint64_t total = std::uint64_t{1} << L;
    const std::uint64_t chunk = std::max<std::uint64_t>(1, total / 16);
    for (std::uint64_t b = 0; b < total; b += chunk) tasks.push_back({L, b, std::min(total, b + chunk)});
  }
  struct Out {
    std::size_t words = 0, members = 0, mismatches = 0;
    std::optional<std::string> first_mismatch;
    TraceStats trace;
  };
  std::vector<Out> outs(tasks.size());
  parallel_for(tasks.size(), options_.jobs, [&](std::size_t t) {
    auto& o = outs[t];
    for (std::uint64_t bits = tasks[t].first; bits < tasks[t].last; ++bits) {
      const auto w = from_bits(bits, tasks[t].length);
      const auto machine = recognize_lsharp(w);
      const bool parsed = parse(w).accepted;
      const bool direct = is_member_direct(w, 2) && !only_b(w);
      o.trace.add(machine.summary);
      ++o.words;
      o.members += direct;
      if (machine.accepted != parsed || parsed != direct) {
        ++o.mismatches;
        if (!o.first_mismatch) o.first_mismatch = Word(ab_alphabet(), w).to_string();
      }
    }
  });
  Out total;
  for (auto& o : outs) {
    total.words += o.words;
    total.members += o.members;
    total.mismatches += o.mismatches;
    if (!total.first_mismatch) total.first_mismatch = o.first_mismatch;
    total.trace.merge(o.trace);
  }
  membership_trace_ = total.trace;
  Result r;
  r.pass = total.mismatches == 0 && total.words == (std::size_t{1} << (max_length + 1)) - 2;
  r.detail = std::to_string(total.words) + " words of length <= " + std::to_string(max_length) + ", " +
             std::to_string(total.members) + " members, " + std::to_string(total.mismatches) + " mismatches";
  if (total.first_mismatch) r.detail += " (first: " + *total.first_mismatch + ")";
  r.data = {{"max_length", max_length}, {"words", total.words}, {"members", total.members},
            {"mismatches", total.mismatches}};
  return r;
}

Result Battery::positive_sweep() {
  const std::uint64_t bound = options_.quick ? 60 : 150;
  struct Out {
    std::size_t points = 0, failures = 0, mutants = 0, mutants_accepted = 0, mutant_members = 0;
    std::size_t recognizer_errors = 0;
    std::optional<std::string> first_failure;
    TraceStats trace;
  };
  std::vector<Out> outs(bound);
  parallel_for(bound, options_.jobs, [&](std::size_t row) {
    auto& o = outs[row];
    const std::uint64_t p = row + 1;
    auto fail = [&](std::uint64_t q, const std::string& what) {
      ++o.failures;
      if (!o.first_failure) o.first_failure = "(" + std::to_string(p) + "," + std::to_string(q) + "): " + what;
    };
    for (std::uint64_t q = 1; q <= bound; ++q) {
      ++o.points;
      const Word w = comb({std::int64_t(p), std::int64_t(q)});
      const auto machine = recognize_lsharp(w.letters());
      o.trace.add(machine.summary);
      if (!machine.accepted) fail(q, "recognizer rejects comb");
      const auto params = params_from_point(p, q);
      const auto parsed = parse(w);
      if (!parsed.accepted || parsed.params != params) fail(q, "parse does not return the canonical parameters");
      if (generate(params).letters().size() != w.length() ||
          !std::equal(w.letters().begin(), w.letters().end(), generate(params).letters().begin())) {
        fail(q, "generate(params) differs from comb");
      }
      std::seed_seq seq{options_.seed, p, q};
      std::mt19937_64 rng(seq);
      std::uniform_int_distribution<std::size_t> position(0, w.length() - 1);
      for (int k = 0; k < 3; ++k) {
        std::vector<Letter> mutant(w.letters().begin(), w.letters().end());
        auto& l = mutant[position(rng)];
        l.symbol ^= 1;
        ++o.mutants;
        const auto verdict = recognize_lsharp(mutant);
        o.trace.add(verdict.summary);
        const bool member = is_member_direct(mutant, 2) && !only_b(mutant);
        o.mutant_members += member;
        if (verdict.accepted != member) ++o.recognizer_errors;
        // A flip can land on another member (ba -> aa). The criterion asks
        // for rejection regardless, so such a mutant counts as a failure.
        if (verdict.accepted) {
          ++o.mutants_accepted;
          fail(q, "mutant " + Word(ab_alphabet(), mutant).to_string() + " accepted");
        }
      }
    }
  });
  Out total;
  for (auto& o : outs) {
    total.points += o.points;
    total.failures += o.failures;
    total.mutants += o.mutants;
    total.mutants_accepted += o.mutants_accepted;
    total.mutant_members += o.mutant_members;
    total.recognizer_errors += o.recognizer_errors;
    if (!total.first_failure) total.first_failure = o.first_failure;
    total.trace.merge(o.trace);
  }
  positive_trace_ = total.trace;
  Result r;
  r.pass = total.failures == 0;
  r.detail = std::to_string(total.points) + " points, " + std::to_string(total.mutants) + " mutants, " +
             std::to_string(total.mutants_accepted) + " accepted (" + std::to_string(total.mutant_members) +
             " mutants are members by the direct oracle, " + std::to_string(total.recognizer_errors) +
             " recognizer disagreements), " + std::to_string(total.failures) + " failures";
  if (total.first_failure) r.detail += "; first: " + *total.first_failure;
  r.data = {{"bound", bound},
            {"seed", options_.seed},
            {"points", total.points},
            {"mutants", total.mutants},
            {"mutants_accepted", total.mutants_accepted},
            {"mutant_members", total.mutant_members},
            {"recognizer_errors", total.recognizer_errors},
            {"failures", total.failures}};
  return r;
}

Result Battery::real_time_contract() {
  if (!membership_trace_) run(2);
  if (!positive_trace_) run(3);
  TraceStats all = *membership_trace_;
  all.merge(*positive_trace_);
  Result r;
  r.pass = all.max_moves_per_tape <= 1 && all.min_tapes == 2 && all.max_tapes == 2;
  r.detail = std::to_string(all.runs) + " runs, " + std::to_string(all.steps) + " steps, max " +
             std::to_string(all.max_moves_per_tape) + " head move per tape per symbol, " +
             std::to_string(all.min_tapes) + ".." + std::to_string(all.max_tapes) + " work tapes";
  r.data = {{"runs", all.runs},
            {"steps", all.steps},
            {"max_moves_per_tape", all.max_moves_per_tape},
            {"min_tapes", all.min_tapes},
            {"max_tapes", all.max_tapes}};
  return r;
}

Result Battery::reductions() {
  const std::int64_t bound = options_.quick ? 6 : 12;
  const std::size_t max_length = options_.quick ? 7 : 10;
  std::size_t points = 0, failures = 0;
  std::optional<std::string> first;
  auto fail = [&](const std::string& what) {
    ++failures;
    if (!first) first = what;
  };
  std::vector<MonoidHom> projections;
  std::vector<std::pair<std::size_t, std::size_t>> pairs{{0, 1}, {0, 2}, {1, 2}};
  for (auto [i, j] : pairs) projections.push_back(MonoidHom::projection(3, i, j));
  for (std::int64_t a = -bound; a <= bound; ++a) {
    for (std::int64_t b = -bound; b <= bound; ++b) {
      for (std::int64_t c = -bound; c <= bound; ++c) {
        ++points;
        const LatticePoint p{a, b, c};
        const Word w = comb(p);
        if (!is_member_reduction(w)) fail("comb" + w.to_string() + " rejected by reduction");
        if (a < 0 || b < 0 || c < 0) continue;
        for (std::size_t k = 0; k < pairs.size(); ++k) {
          const auto [i, j] = pairs[k];
          if (apply_hom(projections[k], w) != comb({p[i], p[j]})) {
            fail("projection " + std::to_string(i + 1) + std::to_string(j + 1) + " of comb(" + std::to_string(a) +
                 "," + std::to_string(b) + "," + std::to_string(c) + ")");
          }
        }
      }
    }
  }

  // Exhaustive equivalence, one task per (length, leading letters).
  struct Task {
    std::size_t length;
    std::uint64_t first, last;
  };
  std::vector<Task> tasks;
  for (std::size_t L = 0; L <= max_length; ++L) {
    const std::uint64_t total = ipow(6, L);
    const std::uint64_t chunk = std::max<std::uint64_t>(1, total / 216);
    for (std::uint64_t b = 0; b < total; b += chunk) tasks.push_back({L, b, std::min(total, b + chunk)});
  }
  struct Out {
    std::size_t words = 0, members = 0, mismatches = 0;
    std::optional<std::string> first;
  };
  std::vector<Out> outs(tasks.size());
  parallel_for(tasks.size(), options_.jobs, [&](std::size_t t) {
    auto& o = outs[t];
    std::vector<Letter> w;
    for (std::uint64_t code = tasks[t].first; code < tasks[t].last; ++code) {
      sigma_word(code, 3, tasks[t].length, w);
      const bool direct = is_member_direct(w, 3);
      ++o.words;
      o.members += direct;
      if (is_member_reduction(w, 3) != direct) {
        ++o.mismatches;
        if (!o.first) o.first = Word(sigma(3), w).to_string();
      }
    }
  });
  std::size_t words = 0, members = 0, mismatches = 0;
  for (const auto& o : outs) {
    words += o.words;
    members += o.members;
    mismatches += o.mismatches;
    if (o.first && !first) first = "reduction and direct membership differ on " + *o.first;
  }
  failures += mismatches;

  Result r;
  r.pass = failures == 0;
  r.detail = std::to_string(points) + " points with |p_i| <= " + std::to_string(bound) + ", " +
             std::to_string(words) + " Sigma_3 words of length <= " + std::to_string(max_length) + " (" +
             std::to_string(members) + " members), " + std::to_string(failures) + " failures";
  if (first) r.detail += "; first: " + *first;
  r.data = {{"bound", bound}, {"points", points}, {"max_length", max_length}, {"words", words},
            {"members", members}, {"failures", failures}};
  return r;
}

Result Battery::lemma_suite() {
  const std::uint64_t bound = options_.quick ? 60 : 150;
  std::size_t levels_checked = 0, failures = 0;
  std::optional<std::string> first;
  for (std::uint64_t p = 1; p <= bound; ++p) {
    for (std::uint64_t q = 1; q <= bound; ++q) {
      const auto levels = generate_levels(params_from_point(p, q));
      for (std::size_t j = 1; j < levels.size(); ++j) {
        ++levels_checked;
        const Word wj = ab_word(levels[j]);
        const Word wprev = ab_word(levels[j - 1]);
        const auto& l = levels[j];
        const bool phi_ok = concat(wj, wprev) == concat(wprev, phi(wj)) && concat(wprev, wj) == phi(concat(wj, wprev));
        const bool palindrome = l.size() >= 2 && std::equal(l.begin(), l.end() - 2, l.rbegin() + 2);
        const bool pair_ok = l.size() >= 2 && l[l.size() - 2] != l[l.size() - 1];
        if (!(phi_ok && palindrome && pair_ok)) {
          ++failures;
          if (!first) first = "(" + std::to_string(p) + "," + std::to_string(q) + ") level " + std::to_string(j);
        }
      }
    }
  }
  Result r;
  r.pass = failures == 0 && levels_checked > 0;
  r.detail = std::to_string(levels_checked) + " levels over 1 <= p,q <= " + std::to_string(bound) + ", " +
             std::to_string(failures) + " failures";
  if (first) r.detail += "; first: " + *first;
  r.data = {{"bound", bound}, {"levels", levels_checked}, {"failures", failures}};
  return r;
}

Result Battery::almost_linearity() {
  const std::int64_t inner = options_.quick ? 15 : 30;
  const std::int64_t outer = 2 * inner;
  struct Max {
    Rational value{0};
    LatticePoint at;
  };
  auto sweep = [&](std::int64_t lo_exclusive, std::int64_t bound) {
    // max over points with sup-norm in (lo_exclusive, bound]
    std::vector<Max> rows(std::size_t(2 * bound + 1));
    parallel_for(rows.size(), options_.jobs, [&](std::size_t k) {
      const std::int64_t a = std::int64_t(k) - bound;
      for (std::int64_t b = -bound; b <= bound; ++b) {
        if (std::max(std::abs(a), std::abs(b)) <= lo_exclusive || (a == 0 && b == 0)) continue;
        const Rational d = deviation({a, b});
        if (d > rows[k].value) rows[k] = {d, {a, b}};
      }
    });
    Max best;
    for (auto& m : rows) {
      if (m.value > best.value) best = m;
    }
    return best;
  };
  const Max small = sweep(0, inner);
  const Max ring = sweep(inner, outer);
  const Max large = ring.value > small.value ? ring : small;
  auto at = [](const LatticePoint& p) { return "(" + std::to_string(p[0]) + "," + std::to_string(p[1]) + ")"; };
  Result r;
  r.pass = large.value <= small.value;
  r.detail = "max deviation " + str(small.value) + " at " + at(small.at) + " for |p_i| <= " + std::to_string(inner) +
             ", " + str(large.value) + " at " + at(large.at) + " for |p_i| <= " + std::to_string(outer);
  if (!r.pass) r.detail += "; the maximum grows with the range";
  r.data = {{"inner", inner}, {"outer", outer}, {"max_inner", str(small.value)}, {"max_outer", str(large.value)}};
  return r;
}

Result Battery::heisenberg_constant() {
  const std::size_t radius = options_.quick ? 4 : 6;
  const std::size_t M = 2;
  const auto c = heisenberg_combing(1);
  ConstantOptions opts;
  opts.K_cap = 12;
  opts.jobs = options_.jobs;
  opts.ball_cap = options_.ball_cap;
  const auto first = combing_constant(*c, radius, M, opts);
  const auto second = combing_constant(*c, radius + 1, M, opts);
  auto show = [&](const CombingConstant& k) {
    std::string s = "radius " + std::to_string(k.radius) + ": ";
    s += k.K ? "K = " + std::to_string(*k.K) : std::to_string(k.diverged_pairs) + " diverged pairs";
    s += " over " + std::to_string(k.pairs) + " pairs";
    return s;
  };
  auto to_json = [&](const CombingConstant& k) {
    json j = {{"radius", k.radius}, {"pairs", k.pairs}, {"diverged", k.diverged_pairs}};
    j["K"] = k.K ? json(*k.K) : json(nullptr);
    if (k.worst) {
      j["worst"] = {{"g", c->group()->format(k.worst->g)},
                    {"x", c->alphabet()->format(k.worst->x)},
                    {"v_length", k.worst->v_length},
                    {"w_length", k.worst->w_length}};
    }
    return j;
  };
  Result r;
  r.pass = first.K && second.K && *first.K == *second.K;
  r.detail = "M = 2, K cap 12; " + show(first) + "; " + show(second);
  if (first.worst && first.K) {
    r.detail += "; worst pair g = " + c->group()->format(first.worst->g) + ", x = " +
                c->alphabet()->format(first.worst->x);
  }
  r.data = {{"M", M}, {"K_cap", opts.K_cap}, {"runs", {to_json(first), to_json(second)}}};
  return r;
}

Result Battery::heisenberg_length() {
  const std::size_t n_max = options_.quick ? 8 : 10;
  const auto c = heisenberg_combing(1);
  const auto table = length_function(*c, n_max, options_.ball_cap);
  const double slope = fit_degree(table, 0.5);
  bool pointwise = true;
  json rows = json::array();
  for (const auto& row : table.rows) {
    pointwise = pointwise && row.f <= 3 * row.n * row.n + row.n;
    rows.push_back({row.n, row.f});
  }
  Result r;
  r.pass = slope >= 1.5 && slope <= 2.5 && pointwise;
  r.detail = "n <= " + std::to_string(n_max) + ", f(n_max) = " + std::to_string(table.rows.back().f) +
             ", fitted degree " + fixed(slope) + " (band [1.5, 2.5]), f(n) <= 3n^2 + n " +
             (pointwise ? "holds" : "fails");
  r.data = {{"n_max", n_max}, {"slope", fixed(slope, 6)}, {"pointwise", pointwise}, {"table", rows}};
  return r;
}

Result Battery::unipotent_cubic() {
  const std::size_t max_length = options_.quick ? 160 : 240;
  const std::size_t confirm = 6;
  const auto c = unipotent_combing(4);
  const auto family = unipotent_corner_probes(*c, 4, max_length);
  const auto table = length_function(*c, family, confirm, options_.ball_cap);
  const double slope = fit_degree(table, 0.5);
  std::size_t confirmed = 0;
  for (const auto& row : table.rows) confirmed += row.exact_geodesic;
  Result r;
  r.pass = table.lower_bound && slope >= 2.4 && slope <= 3.6;
  r.detail = std::to_string(family.probes.size()) + " corner probes up to length " + std::to_string(max_length) +
             ", " + std::to_string(table.rows.size()) + " rows (" + std::to_string(confirmed) +
             " BFS-confirmed up to radius " + std::to_string(confirm) + "), f(" +
             std::to_string(table.rows.back().n) + ") >= " + std::to_string(table.rows.back().f) +
             ", fitted degree " + fixed(slope) + " (band [2.4, 3.6])";
  json rows = json::array();
  for (const auto& row : table.rows) rows.push_back({row.n, row.f, row.exact_geodesic});
  r.data = {{"max_length", max_length}, {"probes", family.probes.size()}, {"slope", fixed(slope, 6)},
            {"table", rows}};
  return r;
}

Result Battery::fibonacci_ceiling() {
  const std::size_t max_m = 12;
  const std::size_t confirm = 17;  // witnesses for m <= 8
  const auto c = fibonacci_combing();
  const auto family = fibonacci_probes(*c, max_m);
  const auto table = length_function(*c, family, confirm, options_.ball_cap);

  // Successive rows of the lower-bound table.
  double worst_ratio = INFINITY;
  for (std::size_t k = 1; k < table.rows.size(); ++k) {
    worst_ratio = std::min(worst_ratio, double(table.rows[k].f) / double(table.rows[k - 1].f));
  }
  // Raw probe lengths, m -> m + 1, for the record.
  std::vector<std::size_t> lengths;
  for (const auto& probe : family.probes) lengths.push_back(c->word(probe.g).length());
  const double geometric = std::pow(double(lengths.back()) / double(lengths.front()), 1.0 / double(max_m));

  ConstantOptions opts;
  opts.K_cap = 6;
  opts.jobs = options_.jobs;
  opts.ball_cap = options_.ball_cap;
  const auto k = combing_constant(*c, 4, 3, opts);
  const auto ceiling = exponential_ceiling(table, k.identity_length, k.length_ratio);

  Result r;
  r.pass = table.rows.size() >= 2 && worst_ratio >= 1.4 && ceiling.holds;
  r.detail = "probes y^(x^m), m <= 12: " + std::to_string(table.rows.size()) + " table rows, f from " +
             std::to_string(table.rows.front().f) + " to " + std::to_string(table.rows.back().f) +
             ", smallest successive ratio " + fixed(worst_ratio) + " (>= 1.4), mean ratio per m " + fixed(geometric) +
             "; ceiling (c+1) M'^n with c = " + std::to_string(k.identity_length) + ", M' = " + str(k.length_ratio) +
             (ceiling.holds ? " holds" : " fails at n = " + std::to_string(*ceiling.first_violation));
  json rows = json::array();
  for (const auto& row : table.rows) rows.push_back({row.n, row.f, row.exact_geodesic});
  r.data = {{"max_m", max_m},
            {"probe_lengths", lengths},
            {"min_ratio", fixed(worst_ratio, 6)},
            {"ratio_M", str(k.length_ratio)},
            {"identity_length", k.identity_length},
            {"ceiling", ceiling.holds},
            {"table", rows}};
  return r;
}

Result Battery::soundness() {
  const std::size_t radius = options_.quick ? 4 : 5;
  std::vector<std::pair<std::string, CombingPtr>> combings;
  for (std::size_t n = 1; n <= 4; ++n) combings.emplace_back("Z^" + std::to_string(n), comb_abelian(n));
  combings.emplace_back("H_3", heisenberg_combing(1));
  combings.emplace_back("H_5", heisenberg_combing(2));
  combings.emplace_back("U_3", unipotent_combing(3));
  combings.emplace_back("U_4", unipotent_combing(4));
  combings.emplace_back("G_3", gc_combing(3));
  combings.emplace_back("free2(2)", free2_combing(2));
  combings.emplace_back("H_3 x Z", comb_direct_product(heisenberg_combing(1), comb_abelian(1)));
  combings.emplace_back("Z^2 x Z^2", comb_direct_product(comb_abelian(2), comb_abelian(2)));
  combings.emplace_back("H_3 over {x,y}", heisenberg_over_xy());
  combings.emplace_back("Z over 2Z", even_subgroup_extension());

  struct Out {
    std::size_t elements = 0, unsound = 0, collisions = 0;
  };
  std::vector<Out> outs(combings.size());
  parallel_for(combings.size(), options_.jobs, [&](std::size_t k) {
    const auto& c = combings[k].second;
    const Ball b = ball(c->model(), radius, options_.ball_cap);
    std::unordered_set<std::string> seen;
    std::vector<Letter> letters;
    for (const auto& [g, d] : b.distance) {
      ++outs[k].elements;
      letters.clear();
      c->word_into(g, letters);
      if (evaluate(LetterSpan(letters), c->model()) != g) ++outs[k].unsound;
      std::string key(reinterpret_cast<const char*>(letters.data()), letters.size() * sizeof(Letter));
      if (!seen.insert(std::move(key)).second) ++outs[k].collisions;
    }
  });
  std::size_t elements = 0, failures = 0;
  json per = json::array();
  std::string bad;
  for (std::size_t k = 0; k < combings.size(); ++k) {
    elements += outs[k].elements;
    failures += outs[k].unsound + outs[k].collisions;
    if (outs[k].unsound + outs[k].collisions && bad.empty()) bad = combings[k].first;
    per.push_back({{"combing", combings[k].first},
                   {"elements", outs[k].elements},
                   {"unsound", outs[k].unsound},
                   {"collisions", outs[k].collisions}});
  }
  Result r;
  r.pass = failures == 0;
  r.detail = std::to_string(combings.size()) + " combings, " + std::to_string(elements) +
             " elements within radius " + std::to_string(radius) + ", " + std::to_string(failures) + " failures";
  if (!bad.empty()) r.detail += "; first failing: " + bad;
  r.data = {{"radius", radius}, {"combings", per}};
  return r;
}

std::string format_line(const Result& r) {
  std::ostringstream out;
  out << "criterion " << std::setw(2) << r.id << ' ' << (r.pass ? "PASS" : "FAIL") << "  " << r.title << ": "
      << r.detail << " [" << fixed(r.seconds, 1) << " s]";
  return out.str();
}

json to_json(const std::vector<Result>& results, const Options& options) {
  json out = {{"seed", options.seed}, {"quick", options.quick}};
  json list = json::array();
  std::size_t passed = 0;
  for (const auto& r : results) {
    passed += r.pass;
    list.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}, {"data", r.data}});
  }
  out["criteria"] = list;
  out["passed"] = passed;
  out["total"] = results.size();
  return out;
}

}  // namespace rtcomb::suite
