// rtcomb: command-line front end.
//
// Exit codes: 0 success, 1 a check failed or a computation hit a limit,
// 2 usage error (bad flags, malformed word or group spec).

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rtcomb/builders.hpp"
#include "rtcomb/certify.hpp"
#include "rtcomb/group_spec.hpp"
#include "rtcomb/lsharp.hpp"
#include "rtcomb/rt_machine.hpp"
#include "rtcomb/zn_comb.hpp"
#include "suite.hpp"

namespace {

using nlohmann::json;
using namespace rtcomb;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Global {
  std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
  std::uint64_t seed = suite::kDefaultSeed;
  std::size_t ball_cap = kDefaultBallCap;
};

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// abababa rather than a b a b a b a.
std::string compact(const Word& w) {
  if (!w.alphabet()->single_character()) return w.to_string();
  std::string out;
  for (Letter l : w.letters()) out += w.alphabet()->format(l);
  return out;
}

json params_json(const LsharpParams& p) {
  return {{"k", p.k}, {"i", p.exponents}, {"n", p.n}, {"leading", p.leading_a ? "a" : "b"}};
}

// ---------------------------------------------------------------- comb

int run_comb(const Global& g, const std::vector<std::int64_t>& coords, bool as_json) {
  if (coords.empty()) throw UsageError("comb: need at least one coordinate");
  const Word w = comb(coords);
  if (as_json) {
    std::cout << dump({{"point", coords}, {"word", w.to_string()}, {"length", w.length()}, {"seed", g.seed}});
  } else {
    std::cout << w.to_string() << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- lsharp

int run_lsharp_parse(const Global& g, const std::string& text, bool as_json) {
  Word w(ab_alphabet());
  try {
    w = Word::parse(ab_alphabet(), text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("lsharp parse: ") + e.what());
  }
  const auto result = parse(w);
  if (as_json) {
    json j = {{"word", compact(w)}, {"accepted", result.accepted}, {"seed", g.seed}};
    if (result.accepted) {
      j["params"] = params_json(result.params);
    } else {
      j["reject_position"] = result.reject_position;
    }
    std::cout << dump(j);
  } else if (result.accepted) {
    std::cout << "accept " << result.params.to_string() << "\n";
  } else {
    std::cout << "reject at " << result.reject_position << "\n";
  }
  return 0;
}

int run_lsharp_gen(const Global& g, const std::vector<std::string>& assignments, bool as_json) {
  std::map<std::string, std::string> kv;
  for (const auto& a : assignments) {
    const auto eq = a.find('=');
    if (eq == std::string::npos) throw UsageError("lsharp gen: expected key=value, got '" + a + "'");
    kv[a.substr(0, eq)] = a.substr(eq + 1);
  }
  for (const auto& [key, value] : kv) {
    if (key != "k" && key != "i" && key != "n" && key != "leading") throw UsageError("lsharp gen: unknown key " + key);
  }
  auto number = [](const std::string& s) {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return static_cast<std::uint64_t>(v);
  };
  LsharpParams params;
  try {
    std::vector<std::uint64_t> exponents;
    if (kv.count("i") && !kv["i"].empty()) {
      std::stringstream in(kv["i"]);
      for (std::string item; std::getline(in, item, ',');) exponents.push_back(number(item));
    }
    const std::uint64_t n = kv.count("n") ? number(kv["n"]) : 1;
    params = make_params(exponents, n);
    if (kv.count("k") && number(kv["k"]) != params.k) {
      throw std::invalid_argument("k=" + kv["k"] + " but " + std::to_string(params.k) + " exponents given");
    }
    if (kv.count("leading") && kv["leading"] != (params.leading_a ? "a" : "b")) {
      throw std::invalid_argument("leading letter is fixed by the parity of k");
    }
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("lsharp gen: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw UsageError("lsharp gen: number out of range");
  }
  const Word w = generate(params);
  if (as_json) {
    std::cout << dump({{"params", params_json(params)}, {"word", compact(w)}, {"seed", g.seed}});
  } else {
    std::cout << compact(w) << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- recognize

int run_recognize(const Global& g, const std::string& lang, std::size_t n, const std::string& text, bool trace,
                  bool as_json) {
  static const std::map<std::string, Language> languages{
      {"lsharp", Language::kLsharp}, {"l2plus", Language::kL2Plus}, {"l2", Language::kL2}, {"ln", Language::kLn}};
  const auto it = languages.find(lang);
  if (it == languages.end()) throw UsageError("recognize: unknown language " + lang);
  if (it->second != Language::kLn) n = 2;
  const bool ab = it->second == Language::kLsharp || it->second == Language::kL2Plus;
  const AlphabetPtr alphabet = ab ? ab_alphabet() : sigma(n);
  Word w(alphabet);
  try {
    w = Word::parse(alphabet, text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("recognize: ") + e.what());
  }

  auto machine = make_recognizer(it->second, n);
  machine->record_steps(trace);
  LetterStream input(w.letters());
  const auto result = run(*machine, input);

  if (as_json) {
    json j = {{"language", lang},
              {"word", compact(w)},
              {"accepted", result.accepted},
              {"steps", result.summary.steps},
              {"work_tapes", result.summary.work_tapes},
              {"max_moves_per_tape", result.summary.max_moves_per_tape},
              {"seed", g.seed}};
    if (!result.accepted) j["reject_position"] = result.reject_position;
    if (trace) {
      json steps = json::array();
      for (const auto& s : machine->trace().steps) {
        steps.push_back({{"input", alphabet->format(s.input)},
                         {"moves", s.moves},
                         {"writes", s.writes},
                         {"state", s.control_state},
                         {"repositioning", s.repositioning}});
      }
      j["trace"] = steps;
    }
    std::cout << dump(j);
    return 0;
  }
  if (trace) {
    std::size_t k = 0;
    for (const auto& s : machine->trace().steps) {
      std::cout << std::setw(5) << k++ << "  " << std::setw(6) << std::left << alphabet->format(s.input) << std::right
                << " moves";
      for (int m : s.moves) std::cout << ' ' << std::showpos << m << std::noshowpos;
      std::cout << "  writes";
      for (int wr : s.writes) std::cout << ' ' << wr;
      std::cout << "  " << s.control_state << (s.repositioning ? "  [reposition]" : "") << "\n";
    }
    std::cout << "steps " << result.summary.steps << ", work tapes " << result.summary.work_tapes
              << ", max moves per tape " << result.summary.max_moves_per_tape << "\n";
  }
  if (result.accepted) {
    std::cout << "accept\n";
  } else {
    std::cout << "reject at " << result.reject_position << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- build / certify

struct Loaded {
  GroupSpec spec;
  CombingPtr combing;
};

Loaded load(const std::string& path) {
  try {
    Loaded l{load_group_spec(path), nullptr};
    l.combing = tower(l.spec);
    return l;
  } catch (const SpecError& e) {
    throw UsageError(e.what());
  }
}

json info_json(const Combing& c) {
  const auto& info = c.info();
  json j = {{"description", info.description},
            {"group", c.group()->name()},
            {"alphabet", c.alphabet()->names()},
            {"synchronous", info.synchronous},
            {"depth", info.depth}};
  j["claimed_degree"] = info.claimed_degree ? json(*info.claimed_degree) : json(nullptr);
  j["relative_class"] = info.relative_class ? json(*info.relative_class) : json(nullptr);
  return j;
}

int run_build(const Global& g, const std::string& spec_path, std::size_t radius, const std::string& emit,
              bool as_json) {
  const auto loaded = load(spec_path);
  const auto& c = *loaded.combing;
  if (as_json) {
    json j = info_json(c);
    j["spec"] = loaded.spec.to_string();
    j["seed"] = g.seed;
    std::cout << dump(j);
  } else {
    const auto& info = c.info();
    std::cout << "spec        " << loaded.spec.to_string() << "\n"
              << "combing     " << info.description << "\n"
              << "group       " << c.group()->name() << "\n"
              << "alphabet    ";
    for (const auto& name : c.alphabet()->names()) std::cout << name << ' ';
    std::cout << "\n"
              << "synchronous " << (info.synchronous ? "yes" : "no") << "\n"
              << "depth       " << info.depth << "\n";
    if (info.claimed_degree) std::cout << "degree      " << *info.claimed_degree << "\n";
    if (info.relative_class) std::cout << "class       " << *info.relative_class << "\n";
  }
  if (!emit.empty()) {
    const Ball b = ball(c.model(), radius, g.ball_cap);
    std::ostringstream lines;
    for (std::size_t d = 0; d <= radius; ++d) {
      for (const auto& e : b.spheres[d]) {
        const Word w = c.word(e);
        lines << json{{"g", c.group()->format(e)}, {"distance", d}, {"word", w.to_string()}, {"length", w.length()}}
                     .dump()
              << "\n";
      }
    }
    write_output(emit, lines.str());
  }
  return 0;
}

std::optional<ProbeFamily> probes_for(const GroupSpec& spec, const Combing& c) {
  if (spec.kind == GroupSpec::Kind::kUnipotent && spec.size >= 3) {
    return unipotent_corner_probes(c, spec.size, 24 * spec.size);
  }
  if (spec.kind == GroupSpec::Kind::kFibonacci) return fibonacci_probes(c, 12);
  return std::nullopt;
}

struct CertifyArgs {
  std::string spec;
  std::size_t radius = 3;
  std::size_t slope = 2;
  std::size_t n_max = 8;
  std::size_t k_cap = 12;
  std::size_t confirm = 6;
  double tail = 0.5;
  std::string json_path, csv_path;
};

int run_certify(const Global& g, const CertifyArgs& a) {
  const auto loaded = load(a.spec);
  const auto& c = *loaded.combing;

  ConstantOptions options;
  options.K_cap = a.k_cap;
  options.jobs = g.jobs;
  options.ball_cap = g.ball_cap;
  const auto k = combing_constant(c, a.radius, a.slope, options);

  LengthTable table;
  try {
    table = length_function(c, a.n_max, g.ball_cap);
  } catch (const BallCapExceeded&) {
    const auto probes = probes_for(loaded.spec, c);
    if (!probes) throw;
    table = length_function(c, *probes, a.confirm, g.ball_cap);
  }
  std::optional<double> degree;
  std::string degree_note;
  try {
    degree = fit_degree(table, a.tail);
  } catch (const DegenerateFit& e) {
    degree_note = e.what();
  }
  const auto ceiling = exponential_ceiling(table, k.identity_length, k.length_ratio);

  std::ostringstream ratio;
  ratio << k.length_ratio;
  json out = {{"spec", loaded.spec.to_string()},
              {"combing", info_json(c)},
              {"radius", a.radius},
              {"M", a.slope},
              {"K_cap", a.k_cap},
              {"pairs", k.pairs},
              {"diverged_pairs", k.diverged_pairs},
              {"length_ratio", ratio.str()},
              {"identity_length", k.identity_length},
              {"ceiling_holds", ceiling.holds},
              {"seed", g.seed}};
  out["K"] = k.K ? json(*k.K) : json(nullptr);
  if (k.worst) {
    out["worst_pair"] = {{"g", c.group()->format(k.worst->g)},
                         {"x", c.alphabet()->format(k.worst->x)},
                         {"K", k.worst->K ? json(*k.worst->K) : json(nullptr)},
                         {"v", c.word(k.worst->g).to_string()},
                         {"w", c.word(c.group()->multiply(k.worst->g, c.model().image(k.worst->x))).to_string()}};
  }
  json rows = json::array();
  for (const auto& row : table.rows) {
    rows.push_back({{"n", row.n}, {"f", row.f}, {"witness", c.group()->format(row.witness)},
                    {"exact_geodesic", row.exact_geodesic}});
  }
  out["table"] = {{"source", table.source}, {"lower_bound", table.lower_bound}, {"rows", rows}};
  out["fitted_degree"] = degree ? json(*degree) : json(nullptr);

  std::cout << "combing     " << c.info().description << " (" << loaded.spec.to_string() << ")\n";
  std::cout << "constant    ";
  if (k.K) {
    std::cout << "K = " << *k.K;
  } else {
    std::cout << "diverged: " << k.diverged_pairs << " pairs need K > " << a.k_cap;
  }
  std::cout << " at M = " << a.slope << " over " << k.pairs << " pairs within radius " << a.radius << "\n";
  if (k.worst) {
    std::cout << "worst pair  g = " << c.group()->format(k.worst->g) << ", x = " << c.alphabet()->format(k.worst->x)
              << " (lengths " << k.worst->v_length << ", " << k.worst->w_length << ")\n";
  }
  std::cout << "table       " << table.source << (table.lower_bound ? " (lower bounds)" : "") << "\n";
  for (const auto& row : table.rows) {
    std::cout << "  f(" << row.n << ") " << (table.lower_bound ? ">= " : "= ") << row.f << "\n";
  }
  std::cout << "degree      " << (degree ? std::to_string(*degree) : "n/a (" + degree_note + ")") << "\n";
  std::cout << "ceiling     (c+1) M'^n with c = " << k.identity_length << ", M' = " << ratio.str() << ": "
            << (ceiling.holds ? "holds" : "fails") << "\n";

  if (!a.json_path.empty()) write_output(a.json_path, dump(out));
  if (!a.csv_path.empty()) write_output(a.csv_path, table.to_csv());
  return ceiling.holds ? 0 : 1;
}

// ---------------------------------------------------------------- suite

int run_suite(const Global& g, bool quick, const std::vector<int>& only, const std::string& json_path) {
  suite::Options options;
  options.quick = quick;
  options.jobs = g.jobs;
  options.seed = g.seed;
  options.ball_cap = g.ball_cap;
  suite::Battery battery(options);
  std::vector<suite::Result> results;
  std::vector<int> ids = only;
  if (ids.empty()) {
    for (int id = 1; id <= suite::kCriteria; ++id) ids.push_back(id);
  }
  std::cout << "seed " << g.seed << (quick ? " (quick)" : "") << "\n";
  for (int id : ids) {
    if (id < 1 || id > suite::kCriteria) throw UsageError("suite: no criterion " + std::to_string(id));
    results.push_back(battery.run(id));
    std::cout << suite::format_line(results.back()) << std::endl;
  }
  const auto passed = std::count_if(results.begin(), results.end(), [](const auto& r) { return r.pass; });
  std::cout << passed << "/" << results.size() << " criteria passed\n";
  if (!json_path.empty()) write_output(json_path, dump(suite::to_json(results, options)));
  return passed == static_cast<std::ptrdiff_t>(results.size()) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Real-time combings of nilpotent and polycyclic groups"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for randomized sweeps (echoed in outputs)");
  app.add_option("--ball-cap", g.ball_cap, "Largest ball to enumerate")->check(CLI::PositiveNumber);

  bool as_json = false;

  auto* comb_cmd = app.add_subcommand("comb", "Straight-line combing word of a lattice point");
  std::vector<std::int64_t> coords;
  comb_cmd->add_option("coords", coords, "Coordinates p_1 .. p_n")->required();
  comb_cmd->add_flag("--json", as_json, "JSON output");

  auto* lsharp_cmd = app.add_subcommand("lsharp", "Parse or generate L2# words");
  lsharp_cmd->require_subcommand(1);
  auto* parse_cmd = lsharp_cmd->add_subcommand("parse", "Recover the parameters of a word");
  std::string parse_word;
  parse_cmd->add_option("word", parse_word, "Word over {a, b}")->required();
  parse_cmd->add_flag("--json", as_json, "JSON output");
  auto* gen_cmd = lsharp_cmd->add_subcommand("gen", "Generate from parameters: k=<k> i=<i1,..,ik> n=<n>");
  std::vector<std::string> assignments;
  gen_cmd->add_option("params", assignments, "key=value pairs")->required();
  gen_cmd->add_flag("--json", as_json, "JSON output");

  auto* rec_cmd = app.add_subcommand("recognize", "Run a real-time recognizer");
  std::string lang = "lsharp";
  std::vector<std::string> rec_tokens;
  std::size_t rec_n = 2;
  bool trace = false;
  rec_cmd->add_option("--lang", lang, "lsharp, l2plus, l2 or ln")->check(CLI::IsMember({"lsharp", "l2plus", "l2", "ln"}));
  rec_cmd->add_option("--n", rec_n, "Rank for --lang ln")->check(CLI::Range(2, 64));
  rec_cmd->add_flag("--trace", trace, "Print every machine step");
  rec_cmd->add_flag("--json", as_json, "JSON output");
  rec_cmd->add_option("word", rec_tokens, "Input word (tokens are joined with spaces)")->required();

  auto* build_cmd = app.add_subcommand("build", "Build a combing from a group spec");
  std::string build_spec, emit;
  std::size_t build_radius = 3;
  build_cmd->add_option("--spec", build_spec, "Group spec file")->required();
  build_cmd->add_option("--radius", build_radius, "Radius for --emit-words");
  build_cmd->add_option("--emit-words", emit, "Write JSON lines for the ball (- for stdout)");
  build_cmd->add_flag("--json", as_json, "JSON output");

  auto* cert_cmd = app.add_subcommand("certify", "Measure the combing constant and length function");
  CertifyArgs cert;
  cert_cmd->add_option("--spec", cert.spec, "Group spec file")->required();
  cert_cmd->add_option("--radius", cert.radius, "Ball radius for adjacent pairs");
  cert_cmd->add_option("--slope", cert.slope, "Run-length bound M")->check(CLI::PositiveNumber);
  cert_cmd->add_option("--n-max", cert.n_max, "Largest n in the length table");
  cert_cmd->add_option("--k-cap", cert.k_cap, "Largest K searched");
  cert_cmd->add_option("--confirm-radius", cert.confirm, "BFS confirmation radius for probe families");
  cert_cmd->add_option("--tail", cert.tail, "Tail fraction for the degree fit")->check(CLI::Range(0.0, 1.0));
  cert_cmd->add_option("--json", cert.json_path, "Write a JSON report (- for stdout)");
  cert_cmd->add_option("--csv", cert.csv_path, "Write the length table as CSV (- for stdout)");

  auto* suite_cmd = app.add_subcommand("suite", "Run the acceptance battery");
  bool quick = false;
  std::vector<int> only;
  std::string suite_json;
  suite_cmd->add_flag("--quick", quick, "Reduced bounds");
  suite_cmd->add_option("--criterion", only, "Run only these criteria");
  suite_cmd->add_option("--json", suite_json, "Write a JSON report (- for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*comb_cmd) return run_comb(g, coords, as_json);
    if (*parse_cmd) return run_lsharp_parse(g, parse_word, as_json);
    if (*gen_cmd) return run_lsharp_gen(g, assignments, as_json);
    if (*rec_cmd) {
      std::string text;
      for (const auto& t : rec_tokens) text += (text.empty() ? "" : " ") + t;
      return run_recognize(g, lang, rec_n, text, trace, as_json);
    }
    if (*build_cmd) return run_build(g, build_spec, build_radius, emit, as_json);
    if (*cert_cmd) return run_certify(g, cert);
    if (*suite_cmd) return run_suite(g, quick, only, suite_json);
  } catch (const UsageError& e) {
    std::cerr << "rtcomb: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "rtcomb: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
