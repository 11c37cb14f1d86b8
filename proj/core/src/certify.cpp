#include "rtcomb/certify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "rtcomb/parallel.hpp"

namespace rtcomb {

namespace {

std::vector<Element> prefixes(LetterSpan w, const GroupModel& model) {
  std::vector<Element> out;
  out.reserve(w.size() + 1);
  out.push_back(model.group->identity());
  for (Letter l : w) out.push_back(model.group->multiply(out.back(), model.image(l)));
  return out;
}

// Search state at a node: 0 after a diagonal step (or at the start),
// r in [1, M] after r consecutive v-steps, M + r after r consecutive w-steps.
struct Search {
  std::size_t rows, cols, states, M;
  std::vector<std::int64_t> from;  // predecessor state index, -1 unreachable, -2 for the start

  std::size_t index(std::size_t i, std::size_t j, std::size_t s) const { return (i * cols + j) * states + s; }
};

std::optional<TravelCertificate> search(PrefixDistances& d, std::size_t K, std::size_t M) {
  const std::size_t rows = d.rows(), cols = d.cols();
  // Runs never need to be longer than the words.
  const std::size_t m = std::max<std::size_t>(1, std::min(M, std::max(rows, cols)));
  Search s{rows, cols, 1 + 2 * m, m, {}};
  s.from.assign(rows * cols * s.states, -1);

  auto admissible = [&](std::size_t i, std::size_t j) {
    auto dist = d.at(i, j);
    return dist && *dist <= K;
  };
  if (!admissible(0, 0)) return std::nullopt;
  s.from[s.index(0, 0, 0)] = -2;

  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (i == 0 && j == 0) continue;
      std::vector<std::int64_t> in(s.states, -1);
      bool any = false;
      auto reached = [&](std::size_t pi, std::size_t pj, std::size_t ps) {
        return s.from[s.index(pi, pj, ps)] != -1;
      };
      auto offer = [&](std::size_t state, std::size_t pi, std::size_t pj, std::size_t ps) {
        if (in[state] == -1 && reached(pi, pj, ps)) {
          in[state] = static_cast<std::int64_t>(s.index(pi, pj, ps));
          any = true;
        }
      };
      if (i > 0 && j > 0) {
        for (std::size_t ps = 0; ps < s.states; ++ps) offer(0, i - 1, j - 1, ps);
      }
      if (i > 0) {  // v-step
        offer(1, i - 1, j, 0);
        for (std::size_t r = 1; r <= m; ++r) offer(1, i - 1, j, m + r);
        for (std::size_t r = 1; r < m; ++r) offer(r + 1, i - 1, j, r);
      }
      if (j > 0) {  // w-step
        offer(m + 1, i, j - 1, 0);
        for (std::size_t r = 1; r <= m; ++r) offer(m + 1, i, j - 1, r);
        for (std::size_t r = 1; r < m; ++r) offer(m + r + 1, i, j - 1, m + r);
      }
      if (!any || !admissible(i, j)) continue;
      std::copy(in.begin(), in.end(), s.from.begin() + static_cast<std::ptrdiff_t>(s.index(i, j, 0)));
    }
  }

  std::int64_t at = -1;
  for (std::size_t st = 0; st < s.states && at == -1; ++st) {
    if (s.from[s.index(rows - 1, cols - 1, st)] != -1) at = static_cast<std::int64_t>(s.index(rows - 1, cols - 1, st));
  }
  if (at == -1) return std::nullopt;

  TravelCertificate cert{K, M, {}};
  while (at >= 0) {
    const auto node = static_cast<std::size_t>(at) / s.states;
    cert.path.emplace_back(node / cols, node % cols);
    at = s.from[static_cast<std::size_t>(at)];
  }
  std::reverse(cert.path.begin(), cert.path.end());
  return cert;
}

void require_radius(const Ball& ball, std::size_t K) {
  if (ball.radius < K) {
    throw BallTooSmall("fellow travel: ball radius " + std::to_string(ball.radius) + " is below K = " +
                       std::to_string(K));
  }
}

}  // namespace

PrefixDistances::PrefixDistances(LetterSpan v, LetterSpan w, const GroupModel& model, const Ball& ball)
    : model_(model), ball_(ball), w_prefix_(prefixes(w, model)) {
  v_inverse_ = prefixes(v, model);
  for (auto& p : v_inverse_) p = model.group->invert(p);
  cache_.assign(v_inverse_.size() * w_prefix_.size(), -2);
}

std::optional<std::uint32_t> PrefixDistances::at(std::size_t i, std::size_t j) {
  auto& slot = cache_.at(i * w_prefix_.size() + j);
  if (slot == -2) {
    ++evaluations_;
    auto d = ball_.length(model_.group->multiply(v_inverse_[i], w_prefix_[j]));
    slot = d ? static_cast<std::int32_t>(*d) : -1;
  }
  if (slot < 0) return std::nullopt;
  return static_cast<std::uint32_t>(slot);
}

std::optional<TravelCertificate> check_fellow_travel(const Word& v, const Word& w, const GroupModel& model,
                                                     std::size_t K, std::size_t M, const Ball& ball) {
  if (M == 0) throw std::invalid_argument("fellow travel: M must be positive");
  require_radius(ball, K);
  PrefixDistances d(v.letters(), w.letters(), model, ball);
  return search(d, K, M);
}

std::optional<TravelCertificate> check_fellow_travel(const Word& v, const Word& w, const GroupModel& model,
                                                     std::size_t K, std::size_t M) {
  return check_fellow_travel(v, w, model, K, M, ball(model, K));
}

bool verify_certificate(const TravelCertificate& certificate, const Word& v, const Word& w, const GroupModel& model,
                        const Ball& ball, std::string* why) {
  auto fail = [&](std::string message) {
    if (why) *why = std::move(message);
    return false;
  };
  const auto& path = certificate.path;
  if (certificate.M == 0) return fail("M is zero");
  if (path.empty()) return fail("empty path");
  if (path.front() != std::pair<std::size_t, std::size_t>{0, 0}) return fail("path does not start at (0,0)");
  if (path.back() != std::pair<std::size_t, std::size_t>{v.length(), w.length()}) {
    return fail("path does not end at (l(v), l(w))");
  }
  std::size_t v_run = 0, w_run = 0;
  Element a = model.group->identity(), b = a;  // v(i), w(j) along the path
  for (std::size_t k = 0; k < path.size(); ++k) {
    const auto [i, j] = path[k];
    if (k > 0) {
      const auto [pi, pj] = path[k - 1];
      const std::size_t di = i - pi, dj = j - pj;
      if (i < pi || j < pj || di > 1 || dj > 1 || di + dj == 0) {
        return fail("bad step at node " + std::to_string(k));
      }
      v_run = (di == 1 && dj == 0) ? v_run + 1 : 0;
      w_run = (di == 0 && dj == 1) ? w_run + 1 : 0;
      if (v_run > certificate.M || w_run > certificate.M) return fail("run longer than M at node " + std::to_string(k));
      if (di) a = model.group->multiply(a, model.image(v[pi]));
      if (dj) b = model.group->multiply(b, model.image(w[pj]));
    }
    const auto d = ball.length(model.group->multiply(model.group->invert(a), b));
    if (!d || *d > certificate.K) {
      return fail("node (" + std::to_string(i) + "," + std::to_string(j) + ") is farther than K");
    }
  }
  return true;
}

MinimalK minimal_K(const Word& v, const Word& w, const GroupModel& model, std::size_t M, const Ball& ball) {
  if (M == 0) throw std::invalid_argument("minimal_K: M must be positive");
  MinimalK out;
  out.K_cap = ball.radius;
  PrefixDistances d(v.letters(), w.letters(), model, ball);
  // Both ends of every path are nodes.
  const auto end = d.at(d.rows() - 1, d.cols() - 1);
  if (!end) return out;
  for (std::size_t K = *end; K <= ball.radius; ++K) {
    if (auto cert = search(d, K, M)) {
      out.K = K;
      out.certificate = std::move(cert);
      return out;
    }
  }
  return out;
}

CombingConstant combing_constant(const Combing& c, std::size_t radius, std::size_t M,
                                 const ConstantOptions& options) {
  const GroupModel& model = c.model();
  const Ball distances = ball(model, options.K_cap, options.ball_cap);
  const Ball centres = radius + 1 <= options.K_cap ? Ball{} : ball(model, radius + 1, options.ball_cap);
  const Ball& source = radius + 1 <= options.K_cap ? distances : centres;

  std::vector<const Element*> elements;
  for (std::size_t r = 0; r <= radius; ++r) {
    for (const auto& g : source.spheres.at(r)) elements.push_back(&g);
  }
  std::vector<Letter> letters;
  for (std::size_t s = 0; s < model.images.size(); ++s) letters.push_back(Letter{static_cast<std::uint16_t>(s), 1});
  for (std::size_t s = 0; s < model.images.size(); ++s) letters.push_back(Letter{static_cast<std::uint16_t>(s), -1});

  struct PairResult {
    std::optional<std::size_t> K;
    std::size_t v_length = 0, w_length = 0;
  };
  const std::size_t pairs = elements.size() * letters.size();
  std::vector<PairResult> results(pairs);
  parallel_for(elements.size(), options.jobs, [&](std::size_t e) {
    const Element& g = *elements[e];
    const Word v = c.word(g);
    for (std::size_t k = 0; k < letters.size(); ++k) {
      const Word w = c.word(model.group->multiply(g, model.image(letters[k])));
      auto found = minimal_K(v, w, model, M, distances);
      if (found.K && options.verify) {
        std::string why;
        if (!verify_certificate(*found.certificate, v, w, model, distances, &why)) {
          throw std::logic_error("combing_constant: certificate rejected by the verifier: " + why);
        }
      }
      results[e * letters.size() + k] = {found.K, v.length(), w.length()};
    }
  });

  CombingConstant out;
  out.radius = radius;
  out.M = M;
  out.K_cap = options.K_cap;
  out.pairs = pairs;
  out.identity_length = c.word(model.group->identity()).length();
  std::size_t best = 0;
  std::optional<std::size_t> worst_index, diverged_index;
  for (std::size_t p = 0; p < pairs; ++p) {
    const auto& r = results[p];
    const Rational a(r.v_length + 1), b(r.w_length + 1);
    out.length_ratio = std::max({out.length_ratio, Rational(b / a), Rational(a / b)});
    if (!r.K) {
      ++out.diverged_pairs;
      if (!diverged_index) diverged_index = p;
    } else if (!worst_index || *r.K > best) {
      best = *r.K;
      worst_index = p;
    }
  }
  const auto pick = diverged_index ? diverged_index : worst_index;
  if (!diverged_index) out.K = best;
  if (pick) {
    const auto& r = results[*pick];
    out.worst = PairWitness{*elements[*pick / letters.size()], letters[*pick % letters.size()], r.K, r.v_length,
                            r.w_length};
  }
  return out;
}

std::string LengthTable::to_csv() const {
  std::ostringstream out;
  out << "n,f,exact_geodesic,witness\n";
  for (const auto& row : rows) {
    out << row.n << ',' << row.f << ',' << (row.exact_geodesic ? 1 : 0) << ",\"" << format_element(row.witness)
        << "\"\n";
  }
  return out.str();
}

LengthTable length_function(const Combing& c, std::size_t n_max, std::size_t ball_cap) {
  const Ball b = ball(c.model(), n_max, ball_cap);
  LengthTable table;
  table.source = "ball of radius " + std::to_string(n_max);
  for (std::size_t n = 0; n <= n_max; ++n) {
    LengthRow row = table.rows.empty() ? LengthRow{0, 0, c.group()->identity(), true} : table.rows.back();
    row.n = n;
    for (const auto& g : b.spheres.at(n)) {
      const std::size_t len = c.word(g).length();
      if (len > row.f) {
        row.f = len;
        row.witness = g;
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

LengthTable length_function(const Combing& c, const ProbeFamily& probes, std::size_t confirm_radius,
                            std::size_t ball_cap) {
  const GroupModel& model = c.model();
  const GeodesicOracle oracle(model, confirm_radius, ball_cap);
  std::map<std::size_t, LengthRow> best;
  for (const auto& probe : probes.probes) {
    if (evaluate(probe.witness, model) != probe.g) {
      throw std::invalid_argument("length_function: probe witness " + probe.witness.to_string() +
                                  " does not evaluate to " + format_element(probe.g));
    }
    const auto exact = oracle.length(probe.g);
    const std::size_t n = exact ? *exact : probe.witness.length();
    const std::size_t f = c.word(probe.g).length();
    auto [it, fresh] = best.try_emplace(n, LengthRow{n, f, probe.g, exact.has_value()});
    if (!fresh && f > it->second.f) it->second = LengthRow{n, f, probe.g, exact.has_value()};
  }
  LengthTable table;
  table.lower_bound = true;
  table.source = "probe family " + probes.name;
  for (auto& [n, row] : best) {
    if (!table.rows.empty() && table.rows.back().f >= row.f) {
      // f is nondecreasing, so the earlier witness still bounds f(n).
      LengthRow carried = table.rows.back();
      carried.n = n;
      carried.exact_geodesic = false;
      table.rows.push_back(std::move(carried));
    } else {
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

LengthTable length_function(const Combing& c, std::size_t n_max, const ProbeFamily& fallback,
                            std::size_t confirm_radius, std::size_t ball_cap) {
  try {
    return length_function(c, n_max, ball_cap);
  } catch (const BallCapExceeded&) {
    return length_function(c, fallback, confirm_radius, ball_cap);
  }
}

ProbeFamily unipotent_corner_probes(const Combing& preset, std::size_t n, std::size_t max_length) {
  if (n < 3) throw std::invalid_argument("corner probes: need n >= 3");
  const auto units = unipotent_generator_units(n);
  std::vector<std::uint16_t> superdiagonal(n - 1);
  for (std::size_t k = 0; k < units.size(); ++k) {
    if (units[k].second == units[k].first + 1) superdiagonal[units[k].first] = static_cast<std::uint16_t>(k);
  }
  const GroupModel& model = preset.model();
  auto power = [](std::vector<Letter>& out, std::uint16_t symbol, std::size_t e) {
    out.insert(out.end(), e, Letter{symbol, 1});
  };
  auto inverse = [](const std::vector<Letter>& u) {
    std::vector<Letter> out;
    for (auto it = u.rbegin(); it != u.rend(); ++it) out.push_back(it->inverse());
    return out;
  };
  // Length of the nested commutator with exponents a, .., a, b.
  auto length = [&](std::size_t a, std::size_t b) {
    std::size_t l = a;
    for (std::size_t k = 2; k + 1 < n; ++k) l = 2 * l + 2 * a;
    return 2 * l + 2 * b;
  };

  ProbeFamily family;
  family.name = "U_" + std::to_string(n) + " corner commutators";
  for (std::size_t a = 1; length(a, 1) <= max_length; ++a) {
    for (std::size_t b = 1; length(a, b) <= max_length; ++b) {
      std::vector<Letter> u;
      power(u, superdiagonal[0], a);
      for (std::size_t k = 1; k + 1 < n; ++k) {
        std::vector<Letter> t;
        power(t, superdiagonal[k], k + 2 < n ? a : b);
        std::vector<Letter> next = inverse(u);
        const auto ti = inverse(t);
        next.insert(next.end(), ti.begin(), ti.end());
        next.insert(next.end(), u.begin(), u.end());
        next.insert(next.end(), t.begin(), t.end());
        u = std::move(next);
      }
      Word witness(model.alphabet, std::move(u));
      Element g = evaluate(witness, model);
      family.probes.push_back(Probe{std::move(g), std::move(witness)});
    }
  }
  return family;
}

ProbeFamily fibonacci_probes(const Combing& preset, std::size_t max_m) {
  const GroupModel& model = preset.model();
  const auto x = model.alphabet->find("x");
  const auto y = model.alphabet->find("y");
  if (!x || !y) throw std::invalid_argument("fibonacci probes: alphabet lacks x or y");
  ProbeFamily family;
  family.name = "y^(x^m)";
  for (std::size_t m = 0; m <= max_m; ++m) {
    std::vector<Letter> letters(m, Letter{*x, -1});
    letters.push_back(Letter{*y, 1});
    letters.insert(letters.end(), m, Letter{*x, 1});
    Word witness(model.alphabet, std::move(letters));
    Element g = evaluate(witness, model);
    family.probes.push_back(Probe{std::move(g), std::move(witness)});
  }
  return family;
}

double fit_degree(const LengthTable& table, double tail_fraction) {
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) throw DegenerateFit("fit_degree: tail fraction outside (0, 1]");
  std::vector<std::pair<double, double>> points;
  for (const auto& row : table.rows) {
    if (row.n >= 1 && row.f >= 1) points.emplace_back(std::log(double(row.n)), std::log(double(row.f)));
  }
  const auto tail = static_cast<std::size_t>(std::ceil(tail_fraction * double(points.size())));
  if (tail < 4) throw DegenerateFit("fit_degree: fewer than 4 tail points");
  points.erase(points.begin(), points.end() - static_cast<std::ptrdiff_t>(tail));
  double mx = 0, my = 0;
  for (auto [x, y] : points) mx += x, my += y;
  mx /= double(tail), my /= double(tail);
  double sxx = 0, sxy = 0;
  for (auto [x, y] : points) sxx += (x - mx) * (x - mx), sxy += (x - mx) * (y - my);
  if (sxx <= 0) throw DegenerateFit("fit_degree: tail has a single n");
  return sxy / sxx;
}

CeilingCheck exponential_ceiling(const LengthTable& table, std::size_t identity_length, const Rational& ratio) {
  CeilingCheck out;
  for (const auto& row : table.rows) {
    Rational bound(identity_length + 1);
    for (std::size_t k = 0; k < row.n; ++k) bound *= ratio;
    if (Rational(row.f) > bound) {
      out.holds = false;
      out.first_violation = row.n;
      return out;
    }
  }
  return out;
}

}  // namespace rtcomb
