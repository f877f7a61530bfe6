// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "gq/execution.hpp"
#include "gq/resilience.hpp"
#include "gq/threshold.hpp"
#include "gq/tightness.hpp"
#include "support.hpp"

using namespace gq;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

class Expect {
 public:
  void require(bool cond, const std::string& what) {
    if (!cond && failures_++ < 5) notes_ << (notes_.tellp() > 0 ? "; " : "") << what;
  }
  Outcome outcome(std::string summary) const {
    if (failures_ == 0) return {true, std::move(summary)};
    return {false, std::to_string(failures_) + " failure(s): " + notes_.str()};
  }

 private:
  int failures_ = 0;
  std::ostringstream notes_;
};

std::string key(const std::vector<int>& k) {
  std::string s = "{";
  for (std::size_t t = 0; t < k.size(); ++t) s += (t ? "," : "") + std::to_string(k[t]);
  return s + "}";
}

std::vector<std::vector<int>> resilience_grids() {
  return {{4, 4}, {4, 5}, {5, 4}, {5, 5}, {4, 4, 4}};
}

Outcome expected_cardinalities(const std::vector<int>& k, std::int64_t grid, std::int64_t thr) {
  Expect e;
  auto r = usefulness(k, 0);
  e.require(r.grid_card == grid, "grid_card " + std::to_string(r.grid_card));
  e.require(r.threshold_card == thr, "threshold_card " + std::to_string(r.threshold_card));
  e.require(r.useful, "not useful");
  return e.outcome("gridCard " + std::to_string(r.grid_card) + " > thresholdCard " + std::to_string(r.threshold_card));
}

Outcome equal_verdicts() {
  Expect e;
  auto rows = sweep_equal(2, 2, 4, 64);
  int useful = 0;
  for (const auto& r : rows) {
    const int k = r.k[0];
    if (k == 9 || k == 12) e.require(!r.useful, "k=" + std::to_string(k) + " useful");
    if (k == 7 || k == 8 || k == 10 || k == 11 || k >= 13) e.require(r.useful, "k=" + std::to_string(k) + " not useful");
    useful += r.useful;
  }
  return e.outcome(std::to_string(useful) + " of " + std::to_string(rows.size()) + " useful, k=9,12 not");
}

Outcome unequal_verdicts() {
  Expect e;
  int checked = 0;
  auto want = [&](int k1, int k2) {
    e.require(usefulness(std::vector<int>{k1, k2}, 0).useful, key({k1, k2}) + " not useful");
    ++checked;
  };
  for (int k2 : {7, 8, 9}) want(4, k2);
  for (int k2 = 13; k2 <= 64; ++k2) want(4, k2);
  for (int k2 = 7; k2 <= 64; ++k2) want(7, k2);
  return e.outcome(std::to_string(checked) + " configurations useful");
}

Outcome exhaustive_b3() {
  Expect e;
  int pairs = 0;
  for (const auto& k : resilience_grids()) {
    Universe u(AttributeSchema::uniform(std::span<const int>(k)));
    for (int i = 0; i < u.d(); ++i)
      for (int j = 0; j < u.d(); ++j) {
        if (i == j) continue;
        auto v = check_b3_exhaustive(u, grid_params(u.schema(), i), grid_params(u.schema(), j));
        e.require(v.holds, key(k) + " beliefs " + std::to_string(i) + "," + std::to_string(j));
        ++pairs;
      }
    for (int i = 0; i < u.d(); ++i) e.require(check_q3_exhaustive(u, grid_params(u.schema(), i)).holds, key(k) + " Q3");
  }
  return e.outcome(std::to_string(pairs) + " belief pairs resilient");
}

Outcome equivalence() {
  Expect e;
  int agree = 0, broken = 0;
  for (const auto& k : resilience_grids()) {
    Universe u(AttributeSchema::uniform(std::span<const int>(k)));
    for (int i = 0; i < u.d(); ++i)
      for (int j = 0; j < u.d(); ++j) {
        if (i == j) continue;
        const GridParams gi = grid_params(u.schema(), i), gj = grid_params(u.schema(), j);
        const bool a = check_b3_exhaustive(u, gi, gj).holds;
        const bool b = check_b3_consistency_direct(u, gi, gj).holds;
        e.require(a == b, key(k) + " disagree");
        agree += a == b;

        // Mutations: forced full-value counts and inflated alpha on belief i.
        for (std::int64_t df = 0; df <= 2; ++df)
          for (std::int64_t da = 0; da <= 2; ++da) {
            if (df == 0 && da == 0) continue;
            if (gi.f + df > gi.k || gi.alpha + da > gi.slice) continue;
            const GridParams mi = grid_params(u.schema(), i, {.alpha = gi.alpha + da, .f = gi.f + df});
            auto ex = check_b3_exhaustive(u, mi, gj);
            auto di = check_b3_consistency_direct(u, mi, gj);
            e.require(ex.holds == di.holds, key(k) + " mutated disagree");
            if (ex.holds || di.holds) continue;
            try {
              recheck_b3_witness(u, mi, gj, *ex.witness);
              recheck_consistency_witness(u, mi, gj, *di.witness);
              recheck_consistency_witness(u, mi, gj, resilience_to_consistency(u, mi, gj, *ex.witness));
              recheck_b3_witness(u, mi, gj, consistency_to_resilience(u, mi, gj, *di.witness));
              ++broken;
            } catch (const std::exception& x) {
              e.require(false, key(k) + " witness: " + x.what());
            }
          }
      }
  }
  e.require(broken >= 20, "only " + std::to_string(broken) + " broken systems");
  return e.outcome(std::to_string(agree) + " default pairs agree, " + std::to_string(broken) +
                   " mutated systems fail in both with convertible witnesses");
}

Outcome bound_chain() {
  Expect e;
  int pairs = 0;
  for (int a = 4; a <= 64; ++a)
    for (int b = 4; b <= 64; ++b) {
      const std::vector<int> k{a, b};
      Universe u(AttributeSchema::uniform(std::span<const int>(k)));
      const GridParams gi = grid_params(u.schema(), 0), gj = grid_params(u.schema(), 1);
      auto br = check_b3_bound(gi, gj);
      e.require(br.total < br.n, key(k) + " total >= n");
      e.require(Rational(br.total) == Rational(br.n) - br.slack_sum(), key(k) + " slack identity");
      auto adv = adversarial_max_union(u, gi, gj, {.restarts = 4, .iterations = 100, .seed = 0});
      e.require(adv.cardinality <= br.total, key(k) + " adversarial above bound");
      ++pairs;
    }
  return e.outcome(std::to_string(pairs) + " configurations, zero violations");
}

Outcome full_failures() {
  Expect e;
  for (int k = 4; k <= 20; ++k) {
    Universe u(AttributeSchema::uniform({k, 4}));
    auto cx = full_failure_counterexample(u, 0);
    ProcessSet cover = u.empty_set();
    for (const auto& d : cx.witness.failprone) cover |= materialize(u, cx.params, d);
    e.require(cover == u.full_set(), "k=" + std::to_string(k) + " no cover");
    e.require(!check_q3_exhaustive(u, cx.params).holds, "k=" + std::to_string(k) + " Q3 holds with f+1");
    e.require(check_q3_exhaustive(u, grid_params(u.schema(), 0)).holds, "k=" + std::to_string(k) + " Q3 fails with f");
  }
  return e.outcome("k in [4,20]: f+1 full values give three covering sets");
}

Rational mean(const std::vector<Rational>& v) {
  Rational s = 0;
  for (const auto& x : v) s += x;
  return s / static_cast<std::int64_t>(v.size());
}

Outcome alpha_tightness() {
  Expect e;
  auto rows = alpha_tightness_sweep(4, 8, 4, 8);
  for (const auto& r : rows) {
    AttributeSchema s = AttributeSchema::uniform(std::span<const int>(r.k));
    Universe u(s);
    const GridParams gj = grid_params(s, 1);
    const GridParams best = grid_params(s, 0, {.alpha = r.max_alpha});
    e.require(check_b3_exhaustive(u, best, gj).holds && check_q3_exhaustive(u, best).holds,
              key(r.k) + " max alpha fails");
    if (r.max_alpha + 1 <= best.slice) {
      const GridParams next = grid_params(s, 0, {.alpha = r.max_alpha + 1});
      e.require(!(check_b3_exhaustive(u, next, gj).holds && check_q3_exhaustive(u, next).holds),
                key(r.k) + " max alpha + 1 passes");
    }
    e.require(r.increase_percent >= 0, key(r.k) + " negative increase");
  }

  AlphaSearchOptions adv;
  adv.mode = SearchMode::Adversarial;
  for (const auto& r : alpha_tightness_sweep(4, 16, 4, 16, adv))
    e.require(r.increase_percent >= 0, key(r.k) + " negative increase");

  std::vector<Rational> small, large;
  for (int a = 14; a <= 24; a += 2)
    for (int b = 14; b <= 24; b += 2)
      small.push_back(max_alpha(AttributeSchema::uniform({a, b}), 0, adv).increase_percent);
  for (int a = 54; a <= 64; a += 2)
    for (int b = 54; b <= 64; b += 2)
      large.push_back(max_alpha(AttributeSchema::uniform({a, b}), 0, adv).increase_percent);
  const Rational corner = max_alpha(AttributeSchema::uniform({64, 64}), 0, adv).increase_percent;
  const Rational ms = mean(small), ml = mean(large);
  e.require(ml * 2 < ms, "large-k mean not below half the small-k mean");
  e.require(corner <= 5, "k=64 increase above 5%");

  char buf[160];
  std::snprintf(buf, sizeof buf, "exhaustive [4,8]^2 exact; adversarial mean increase %.1f%% on [14,24]^2, %.1f%% on [54,64]^2, %.1f%% at {64,64}",
                to_double(ms), to_double(ml), to_double(corner));
  return e.outcome(buf);
}

Outcome formulas() {
  Expect e;
  std::mt19937_64 rng(2024);
  int restricted = 0, card_checks = 0, union_checks = 0, inter_checks = 0;
  while (restricted < 100 || card_checks < 100 || union_checks < 100 || inter_checks < 100) {
    const int d = 2 + static_cast<int>(rng() % 2);
    std::vector<int> k;
    int n = 1;
    for (int t = 0; t < d; ++t) {
      k.push_back(4 + static_cast<int>(rng() % 6));
      n *= k.back();
    }
    if (n > 100) continue;
    AttributeSchema s = AttributeSchema::uniform(std::span<const int>(k));
    Universe u(s);
    oracle::Grid og(k);

    Predicate pred;
    for (int t = 0; t < d; ++t) {
      std::vector<int> vals;
      for (int v = 0; v < k[t]; ++v)
        if (rng() % 2) vals.push_back(v);
      if (rng() % 4) pred.where(t, vals);
    }
    int brute = 0;
    for (int p = 0; p < n; ++p) {
      bool in = true;
      for (const auto& c : pred.constraints())
        in = in && std::count(c.values.begin(), c.values.end(), og.coord(p, c.attribute)) > 0;
      brute += in;
    }
    e.require(restricted_cardinality(s, pred) == brute, key(k) + " restricted cardinality");
    ++restricted;

    const int i = static_cast<int>(rng() % d);
    const int j = (i + 1 + static_cast<int>(rng() % (d - 1))) % d;
    GridParams gi = grid_params(s, i), gj = grid_params(s, j);
    if (rng() % 2 && gi.alpha < gi.slice) gi = grid_params(s, i, {.alpha = gi.alpha + 1});
    if (failprone_count(gi) > 3000 || failprone_count(gj) > 3000) continue;
    auto fi = oracle::failprone(og, i, static_cast<int>(gi.f), static_cast<int>(gi.alpha));
    auto fj = oracle::failprone(og, j, static_cast<int>(gj.f), static_cast<int>(gj.alpha));

    bool sizes = failprone_count(gi) == static_cast<std::int64_t>(fi.size());
    for (const auto& f : fi) sizes = sizes && static_cast<std::int64_t>(f.count()) == gi.failprone_size();
    e.require(sizes, key(k) + " failprone cardinality");
    ++card_checks;

    bool unions = true;
    for_each_combination(static_cast<int>(gi.k), static_cast<int>(gi.f), [&](const std::vector<int>& a) {
      return for_each_combination(static_cast<int>(gj.k), static_cast<int>(gj.f), [&](const std::vector<int>& b) {
        oracle::Mask m;
        for (int v : a) m |= og.slice(i, v);
        for (int v : b) m |= og.slice(j, v);
        unions = unions && static_cast<std::int64_t>(m.count()) == full_union_cardinality(gi, gj);
        return unions;
      });
    });
    e.require(unions, key(k) + " full union");
    ++union_checks;

    if (fi.size() * fj.size() > 2'000'000) continue;
    std::int64_t most = 0;
    for (const auto& a : fi)
      for (const auto& b : fj) most = std::max<std::int64_t>(most, static_cast<std::int64_t>((a & b).count()));
    const std::int64_t m = cell_size(gi, gj);
    e.require(most <= intersection_bound(gi, gj), key(k) + " intersection above bound");
    if (gi.alpha <= m * gj.f && gj.alpha <= m * gi.f)
      e.require(most == intersection_bound(gi, gj), key(k) + " intersection bound not attained");
    ++inter_checks;
  }
  return e.outcome("instances: restricted " + std::to_string(restricted) + ", cardinality " + std::to_string(card_checks) +
                   ", full union " + std::to_string(union_checks) + ", intersection " + std::to_string(inter_checks));
}

Outcome scenarios() {
  Expect e;
  AttributeSchema schema({{"OS", {"windows", "ubuntu", "apple", "redhat", "freebsd"}},
                          {"Loc", {"AT", "CH", "DE", "FR", "IT", "NL", "UK"}}});
  Universe u(schema);
  auto run = [&](const std::vector<ProcessId>& faults, int wise_belief, const char* name) {
    Scenario sc;
    sc.schema = schema;
    sc.faults = faults;
    for (ProcessId p = 0; p < u.n(); ++p) sc.beliefs.push_back(static_cast<int>(p % 2));
    for (const auto& v : check_availability(sc)) {
      if (v.status == Status::Faulty) continue;
      const Status want = v.belief == wise_belief ? Status::Wise : Status::Naive;
      e.require(v.status == want, std::string(name) + " process " + std::to_string(v.process));
      if (v.status == Status::Wise) e.require(v.availability_ok, std::string(name) + " wise without quorum");
    }
  };
  std::vector<ProcessId> apple;
  for (int loc = 0; loc < 7; ++loc) apple.push_back(u.id(std::vector<int>{2, loc}));
  for (int os : {0, 1, 3, 4}) apple.push_back(u.id(std::vector<int>{os, os}));
  run(apple, 0, "one OS plus singletons");
  std::vector<ProcessId> it_uk;
  for (int os = 0; os < 5; ++os)
    for (int loc : {4, 6}) it_uk.push_back(u.id(std::vector<int>{os, loc}));
  run(it_uk, 1, "IT and UK");

  // Closure membership against the subset oracle on every grid whose family has at most 1e5 sets.
  std::vector<std::vector<int>> grids;
  for (int a = 4; a <= 12; ++a)
    for (int b = 4; b <= 12; ++b) grids.push_back({a, b});
  for (int a = 4; a <= 5; ++a)
    for (int b = 4; b <= 5; ++b)
      for (int c = 4; c <= 5; ++c) grids.push_back({a, b, c});
  std::mt19937_64 rng(77);
  int families = 0;
  long queries = 0;
  for (const auto& k : grids) {
    AttributeSchema s = AttributeSchema::uniform(std::span<const int>(k));
    Universe gu(s);
    oracle::Grid og(k);
    for (int i = 0; i < s.d(); ++i) {
      const GridParams g = grid_params(s, i);
      if (failprone_count(g) > 100000) continue;
      auto fam = oracle::failprone(og, i, static_cast<int>(g.f), static_cast<int>(g.alpha));
      ++families;
      for (int t = 0; t < 150; ++t) {
        oracle::Mask m;
        if (t % 2 == 0) {
          m = fam[rng() % fam.size()];
          for (int p = 0; p < og.n; ++p)
            if (rng() % 4 == 0) m.reset(static_cast<std::size_t>(p));
          if (t % 4 == 0) m.set(static_cast<std::size_t>(rng() % og.n));
        } else {
          for (int p = 0; p < og.n; ++p)
            if (rng() % (3 + t % 7) == 0) m.set(static_cast<std::size_t>(p));
        }
        e.require(in_closure(gu, g, from_mask(m, og.n)) == oracle::subset_of_some(m, fam),
                  key(k) + " closure mismatch");
        ++queries;
      }
    }
  }
  return e.outcome("both fault patterns split as expected; closure agrees on " + std::to_string(families) +
                   " families, " + std::to_string(queries) + " queries");
}

Outcome inequalities() {
  Expect e;
  auto rep = verify_usefulness_inequalities();
  e.require(rep.violations() == 0, std::to_string(rep.violations()) + " violations");
  e.require(rep.mismatches() == 0, std::to_string(rep.mismatches()) + " mismatches");
  return e.outcome(std::to_string(rep.checks.size()) + " inequalities, zero violations");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "d=3 k=4 cardinalities", 1, [] { return expected_cardinalities({4, 4, 4}, 22, 21); }},
      {2, "d=3 k=(8,4,4) cardinalities", 1, [] { return expected_cardinalities({8, 4, 4}, 44, 42); }},
      {3, "equal-cardinality verdicts d=2", 5, equal_verdicts},
      {4, "unequal-cardinality verdicts", 5, unequal_verdicts},
      {5, "exhaustive B3 on small grids", 60, exhaustive_b3},
      {6, "resilience/consistency equivalence", 120, equivalence},
      {7, "bound chain over [4,64]^2", 60, bound_chain},
      {8, "full-failure tightness", 5, full_failures},
      {9, "alpha tightness", 600, alpha_tightness},
      {10, "formulas against brute force", 60, formulas},
      {11, "scenarios and closure oracle", 60, scenarios},
      {12, "usefulness inequalities", 30, inequalities},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& x) {
      o = {false, std::string("exception: ") + x.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit) {
      o.ok = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(c.limit)) + " s limit)";
    }
    failed += !o.ok;
    std::printf("%s %2d %-36s %7.2fs  %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
