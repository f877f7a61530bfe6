// gridq: command-line front end for the grid failprone analyses.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gq/errors.hpp"
#include "gq/execution.hpp"
#include "gq/parallel.hpp"
#include "gq/resilience.hpp"
#include "gq/serialize.hpp"
#include "gq/threshold.hpp"
#include "gq/tightness.hpp"

using namespace gq;

namespace {

constexpr int kHolds = 0;
constexpr int kViolated = 1;
constexpr int kBudget = 2;
constexpr int kUsage = 3;

struct Range {
  int lo = 0;
  int hi = 0;
};

Range parse_range(const std::string& s) {
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(s);
      return {v, v};
    }
    Range r{std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
    if (r.lo > r.hi) throw std::invalid_argument("empty range");
    return r;
  } catch (const std::logic_error&) {
    throw CLI::ValidationError("range", "expected N or A..B, got '" + s + "'");
  }
}

struct Global {
  std::string schema_path;
  std::string cardinalities;  // "4,4,4" as an alternative to a schema file
  std::string out;
  std::string format = "json";
  std::string effort = "medium";
  std::string budget = "1000000";
  std::uint64_t seed = 0;
  int threads = default_threads();

  BigInt budget_value() const { return BigInt(budget); }

  AttributeSchema schema() const {
    if (!schema_path.empty()) return load_schema(schema_path);
    if (cardinalities.empty()) throw SchemaError("give --schema FILE or --grid LIST");
    std::vector<int> ks;
    std::stringstream ss(cardinalities);
    for (std::string item; std::getline(ss, item, ',');) ks.push_back(std::stoi(item));
    return AttributeSchema::uniform(std::span<const int>(ks));
  }

  AdversarialOptions adversarial() const {
    AdversarialOptions o;
    if (effort == "low") o = {.restarts = 4, .iterations = 100};
    if (effort == "high") o = {.restarts = 256, .iterations = 1000};
    o.seed = seed;
    return o;
  }
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void emit(const Global& g, const Json& j, const std::string& text) {
  Output out(g.out);
  if (g.format == "text")
    out.stream() << text;
  else
    out.stream() << j.dump(2) << '\n';
}

int cmd_universe(const Global& g) {
  const AttributeSchema s = g.schema();
  Json j;
  j["n"] = universe_size(s.cardinalities());
  j["attributes"] = Json::array();
  std::ostringstream text;
  text << "n = " << universe_size(s.cardinalities()) << '\n';
  for (int t = 0; t < s.d(); ++t) {
    Json a = {{"name", s.attributes()[t].name}, {"k", s.k(t)}};
    text << s.attributes()[t].name << ": k = " << s.k(t);
    if (s.k(t) >= 4) {
      const GridParams p = grid_params(s, t);
      a["params"] = to_json(p);
      text << ", f = " << p.f << ", p = " << p.p << ", alpha = " << p.alpha << ", epsilon = " << to_string(p.epsilon)
           << ", delta = " << to_string(p.delta) << ", |F| = " << p.failprone_size();
    } else {
      a["params"] = nullptr;
      text << " (too few values to act as a belief)";
    }
    text << '\n';
    j["attributes"].push_back(a);
  }
  if (!s.warnings().empty()) j["warnings"] = s.warnings();
  emit(g, j, text.str());
  return 0;
}

struct CheckArgs {
  std::string property;
  int i = 0;
  int j = 1;
  std::optional<std::int64_t> force_f;
  std::optional<std::int64_t> alpha;
  bool no_slack = false;
};

int cmd_check(const Global& g, const CheckArgs& a) {
  const AttributeSchema s = g.schema();
  Universe u(s);
  const GridParams gi = grid_params(s, a.i, {.alpha = a.alpha, .f = a.force_f});
  CheckOptions opt;
  opt.budget = g.budget_value();
  opt.threads = g.threads;
  opt.compute_slack = !a.no_slack;
  ResilienceVerdict v;
  Json j;
  if (a.property == "q3") {
    v = check_q3_exhaustive(u, gi, opt);
  } else if (a.property == "availability") {
    v = check_b3_availability(u, gi, opt);
  } else {
    if (a.j == a.i) throw CLI::ValidationError("--j", "needs a belief different from --i");
    const GridParams gj = grid_params(s, a.j);
    v = a.property == "b3" ? check_b3_exhaustive(u, gi, gj, opt) : check_b3_consistency_direct(u, gi, gj, opt);
    j["bound"] = to_json(check_b3_bound(gi, gj));
    j["params_j"] = to_json(gj);
  }
  j["params_i"] = to_json(gi);
  j["verdict"] = to_json(v);
  std::ostringstream text;
  text << to_string(v.property) << ": " << (v.holds ? "holds" : "violated");
  if (v.slack) text << ", slack " << *v.slack;
  text << " (" << v.configurations.str() << " configurations)\n";
  emit(g, j, text.str());
  return v.holds ? kHolds : kViolated;
}

struct SweepArgs {
  std::string kind;
  std::string d = "2";
  std::string k = "4..20";
  std::string k1 = "4..16";
  std::string k2 = "4..16";
  std::string mode = "exhaustive";
  bool joint = false;
};

AlphaSearchOptions alpha_options(const Global& g, const std::string& mode, bool joint) {
  AlphaSearchOptions o;
  o.mode = mode == "adversarial" ? SearchMode::Adversarial : SearchMode::Exhaustive;
  o.budget = g.budget_value() * 10;
  o.adversarial = g.adversarial();
  o.joint = joint;
  return o;
}

int cmd_sweep(const Global& g, const SweepArgs& a) {
  Output out(g.out);
  auto& os = out.stream();
  if (a.kind == "equal") {
    const Range d = parse_range(a.d), k = parse_range(a.k);
    write_scan_csv(os, sweep_equal(d.lo, d.hi, k.lo, k.hi, g.threads));
  } else if (a.kind == "2d") {
    const Range k1 = parse_range(a.k1), k2 = parse_range(a.k2);
    write_scan_csv(os, sweep_2d(k1.lo, k1.hi, k2.lo, k2.hi, g.threads));
  } else if (a.kind == "alpha") {
    const Range k1 = parse_range(a.k1), k2 = parse_range(a.k2);
    write_alpha_csv(os, alpha_tightness_sweep(k1.lo, k1.hi, k2.lo, k2.hi, alpha_options(g, a.mode, a.joint), g.threads));
  } else {
    const auto rep = verify_usefulness_inequalities();
    write_inequality_csv(os, rep);
    std::cerr << rep.checks.size() << " inequalities, " << rep.violations() << " violations, " << rep.mismatches()
              << " mismatches\n";
    return rep.violations() == 0 && rep.mismatches() == 0 ? kHolds : kViolated;
  }
  return kHolds;
}

int cmd_alpha(const Global& g, int i, const std::string& mode, bool joint) {
  const AttributeSchema s = g.schema();
  const auto r = max_alpha(s, i, alpha_options(g, mode, joint));
  std::ostringstream text;
  text << "belief " << i << ": default alpha " << r.default_alpha << ", max alpha " << r.max_alpha << " ("
       << (r.mode == SearchMode::Exhaustive ? "feasible" : "no violation found") << "), +"
       << to_double(r.increase_percent) << "%\n";
  emit(g, to_json(r), text.str());
  return kHolds;
}

int cmd_scenario(const Global& g, const std::string& file) {
  const Scenario sc = load_scenario(file);
  const auto verdicts = check_availability(sc);
  Json j;
  j["n"] = static_cast<std::int64_t>(sc.beliefs.size());
  j["faults"] = sc.faults;
  std::size_t wise = 0, naive = 0, faulty = 0;
  j["processes"] = Json::array();
  for (const auto& v : verdicts) {
    j["processes"].push_back(to_json(v));
    wise += v.status == Status::Wise;
    naive += v.status == Status::Naive;
    faulty += v.status == Status::Faulty;
  }
  j["summary"] = {{"faulty", faulty}, {"wise", wise}, {"naive", naive}};
  j["degenerate"] = faulty == sc.beliefs.size();

  std::vector<int> used;
  for (int b : sc.beliefs)
    if (std::find(used.begin(), used.end(), b) == used.end()) used.push_back(b);
  std::sort(used.begin(), used.end());
  j["safety"] = Json::array();
  std::ostringstream text;
  text << "faulty " << faulty << ", wise " << wise << ", naive " << naive << '\n';
  for (std::size_t x = 0; x < used.size() && faulty < sc.beliefs.size(); ++x)
    for (std::size_t y = x + 1; y < used.size(); ++y) {
      const auto rep = check_pairwise_safety(sc, used[x], used[y], static_cast<std::int64_t>(g.budget_value()));
      j["safety"].push_back(to_json(rep));
      text << "beliefs " << used[x] << "," << used[y] << ": "
           << (rep.violation_found ? "quorums may intersect only in faulty processes" : "safe") << '\n';
    }
  emit(g, j, text.str());
  return kHolds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grid failprone systems: resilience checks, sweeps and scenarios"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--schema", g.schema_path, "Schema JSON file");
  app.add_option("--grid", g.cardinalities, "Uniform schema from cardinalities, e.g. 4,4,4");
  app.add_option("--out", g.out, "Write output to a file instead of stdout");
  app.add_option("--budget", g.budget, "Configuration budget for exhaustive methods");
  app.add_option("--seed", g.seed, "Seed for sampling and adversarial search");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--effort", g.effort, "Adversarial effort")->check(CLI::IsMember({"low", "medium", "high"}));

  auto* universe = app.add_subcommand("universe", "Process count and per-belief parameters");

  CheckArgs ca;
  auto* check = app.add_subcommand("check", "Check a property; exit 0 holds, 1 violated, 2 budget exceeded");
  check->add_option("property", ca.property)->required()->check(CLI::IsMember({"q3", "b3", "b3-direct", "availability"}));
  check->add_option("--i", ca.i, "Belief attribute");
  check->add_option("--j", ca.j, "Second belief attribute for b3");
  check->add_option("--force-f", ca.force_f, "Override the number of full values of belief i");
  check->add_option("--alpha", ca.alpha, "Override alpha of belief i (not below the default)");
  check->add_flag("--no-slack", ca.no_slack, "Skip the exact maximum-union computation");

  SweepArgs sa;
  auto* sweep = app.add_subcommand("sweep", "Parameter sweeps written as CSV");
  sweep->add_option("kind", sa.kind)->required()->check(CLI::IsMember({"equal", "2d", "alpha", "inequalities"}));
  sweep->add_option("--d", sa.d, "Dimension range for equal sweeps");
  sweep->add_option("--k", sa.k, "Cardinality range for equal sweeps, A..B");
  sweep->add_option("--k1", sa.k1, "First cardinality range");
  sweep->add_option("--k2", sa.k2, "Second cardinality range");
  sweep->add_option("--mode", sa.mode, "exhaustive or adversarial")->check(CLI::IsMember({"exhaustive", "adversarial"}));
  sweep->add_flag("--joint", sa.joint, "Raise alpha of every belief together (experimental)");

  std::string scenario_file;
  auto* scenario = app.add_subcommand("scenario", "Classify processes of a fault scenario");
  scenario->add_option("file", scenario_file)->required()->check(CLI::ExistingFile);

  int ai = 0;
  std::string amode = "exhaustive";
  bool ajoint = false;
  auto* alpha = app.add_subcommand("alpha", "Largest alpha keeping the system resilient");
  alpha->add_option("--i", ai, "Belief attribute");
  alpha->add_option("--mode", amode, "exhaustive or adversarial")->check(CLI::IsMember({"exhaustive", "adversarial"}));
  alpha->add_flag("--joint", ajoint, "Raise alpha of every belief together (experimental)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (universe->parsed()) return cmd_universe(g);
    if (check->parsed()) return cmd_check(g, ca);
    if (sweep->parsed()) return cmd_sweep(g, sa);
    if (scenario->parsed()) return cmd_scenario(g, scenario_file);
    if (alpha->parsed()) return cmd_alpha(g, ai, amode, ajoint);
  } catch (const BudgetExceeded& e) {
    Json j = {{"error", "budget exceeded"}, {"required", e.required().str()}, {"budget", e.budget().str()}};
    std::cout << j.dump(2) << '\n';
    return kBudget;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "gridq: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "gridq: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
