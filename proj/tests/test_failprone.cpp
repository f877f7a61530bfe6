#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "gq/errors.hpp"
#include "gq/failprone.hpp"
#include "support.hpp"

using namespace gq;

namespace {

std::vector<ProcessSet> enumerate_all(const Universe& u, const GridParams& g) {
  std::vector<ProcessSet> out;
  FailproneEnumerator e(u, g);
  FailproneDescriptor d;
  while (e.next(d)) out.push_back(materialize(u, g, d));
  return out;
}

}  // namespace

TEST_SUITE("failprone") {

TEST_CASE("default parameters") {
  const std::vector<int> k44{4, 4};
  GridParams g = grid_params(k44, 0);
  CHECK(g.f == 1);
  CHECK(g.p == 3);
  CHECK(g.alpha == 0);
  CHECK(g.slice == 4);
  CHECK(g.epsilon == ratio(1, 3));
  CHECK(g.delta == ratio(2, 3));
  CHECK(g.failprone_size() == 4);

  const std::vector<int> k777{7, 7};
  GridParams h = grid_params(k777, 1);
  CHECK(h.f == 2);
  CHECK(h.p == 5);
  CHECK(h.alpha == 1);
  CHECK(h.failprone_size() == 19);

  // d = 3, k = 4: the belief's failprone sets hold 22 processes.
  const std::vector<int> k444{4, 4, 4};
  GridParams t = grid_params(k444, 0);
  CHECK(t.alpha == 2);
  CHECK(t.failprone_size() == 22);
}

TEST_CASE("epsilon and delta stay in (0,1]") {
  for (int a = 4; a <= 40; ++a)
    for (int b = 4; b <= 40; ++b) {
      const std::vector<int> ks{a, b};
      GridParams g = grid_params(ks, 0);
      CHECK(g.epsilon > 0);
      CHECK(g.epsilon <= 1);
      CHECK(g.delta > 0);
      CHECK(g.delta <= 1);
      CHECK(Rational(g.k) == 3 * (g.f + g.epsilon));
      CHECK(Rational(g.n, 6 * g.k) == g.alpha + g.delta);
    }
}

TEST_CASE("overrides") {
  const std::vector<int> ks{4, 5};
  CHECK(grid_params(ks, 0, {.alpha = 2}).alpha == 2);
  CHECK_THROWS_AS(grid_params(ks, 0, {.alpha = 6}), std::invalid_argument);
  CHECK_THROWS_AS(grid_params(std::vector<int>{7, 7}, 0, {.alpha = 0}), std::invalid_argument);
  CHECK(grid_params(ks, 0, {.f = 2}).p == 2);
  CHECK_THROWS_AS(grid_params(ks, 0, {.f = 5}), std::invalid_argument);
  CHECK_THROWS_AS(grid_params(std::vector<int>{3, 8}, 0), UnsupportedCardinality);
}

TEST_CASE("enumeration counts") {
  Universe u44(AttributeSchema::uniform({4, 4}));
  CHECK(enumerate_all(u44, grid_params(u44.schema(), 0)).size() == 4);

  Universe u45(AttributeSchema::uniform({4, 5}));
  CHECK(enumerate_all(u45, grid_params(u45.schema(), 1)).size() == 5);

  Universe u77(AttributeSchema::uniform({7, 7}));
  GridParams g = grid_params(u77.schema(), 0);
  CHECK(failprone_count(g) == 352947);
  FailproneEnumerator e(u77, g);
  FailproneDescriptor d;
  std::int64_t count = 0;
  while (e.next(d)) {
    if (count > 0 && count % 997 == 0) CHECK_NOTHROW(validate(u77, g, d));
    ++count;
  }
  CHECK(count == 352947);
}

TEST_CASE("enumeration agrees with the brute-force family") {
  for (auto ks : {std::vector<int>{4, 4}, std::vector<int>{4, 5}, std::vector<int>{5, 4}, std::vector<int>{4, 4, 4}}) {
    AttributeSchema s = AttributeSchema::uniform(std::span<const int>(ks));
    Universe u(s);
    oracle::Grid og(ks);
    for (int i = 0; i < s.d(); ++i) {
      GridParams g0 = grid_params(s, i);
      for (std::int64_t alpha = g0.alpha; alpha <= std::min<std::int64_t>(g0.alpha + 1, g0.slice); ++alpha) {
        GridParams g = grid_params(s, i, {.alpha = alpha});
        if (failprone_count(g) > 20000) continue;
        auto lib = enumerate_all(u, g);
        auto ref = oracle::failprone(og, i, static_cast<int>(g.f), static_cast<int>(alpha));
        REQUIRE(lib.size() == ref.size());
        std::set<std::string> a, b;
        for (const auto& x : lib) a.insert(to_mask(x).to_string());
        for (const auto& x : ref) b.insert(x.to_string());
        CHECK(a == b);
        CHECK(a.size() == lib.size());
      }
    }
  }
}

TEST_CASE("failprone cardinality, full union and intersection bound on random instances") {
  std::mt19937_64 rng(11);
  int instances = 0;
  while (instances < 120) {
    const int d = 2 + static_cast<int>(rng() % 2);
    std::vector<int> ks;
    int n = 1;
    for (int t = 0; t < d; ++t) {
      ks.push_back(4 + static_cast<int>(rng() % 4));
      n *= ks.back();
    }
    if (n > 100) continue;
    AttributeSchema s = AttributeSchema::uniform(std::span<const int>(ks));
    Universe u(s);
    const int i = static_cast<int>(rng() % d);
    const int j = (i + 1 + static_cast<int>(rng() % (d - 1))) % d;
    GridParams gi = grid_params(s, i), gj = grid_params(s, j);
    if (rng() % 2) gi = grid_params(s, i, {.alpha = gi.alpha + static_cast<std::int64_t>(rng() % 2)});

    for (int t = 0; t < 20; ++t) {
      FailproneDescriptor di = sample_failprone(u, gi, rng);
      FailproneDescriptor dj = sample_failprone(u, gj, rng);
      const ProcessSet fi = materialize(u, gi, di), fj = materialize(u, gj, dj);
      CHECK(static_cast<std::int64_t>(fi.size()) == gi.failprone_size());

      ProcessSet fulls = u.empty_set();
      for (int a : di.full) fulls |= u.slice(i, a);
      for (int b : dj.full) fulls |= u.slice(j, b);
      CHECK(static_cast<std::int64_t>(fulls.size()) == full_union_cardinality(gi, gj));

      CHECK(static_cast<std::int64_t>((fi & fj).size()) <= intersection_bound(gi, gj));
    }

    // Push the intersection up: both sides share full values and partial picks where possible.
    FailproneDescriptor di, dj;
    di.belief = i;
    dj.belief = j;
    for (int a = 0; a < gi.f; ++a) di.full.push_back(a);
    for (int b = 0; b < gj.f; ++b) dj.full.push_back(b);
    ProcessSet full_j = u.empty_set();
    for (int b : dj.full) full_j |= u.slice(j, b);
    ProcessSet full_i = u.empty_set();
    for (int a : di.full) full_i |= u.slice(i, a);
    for (int a = static_cast<int>(gi.f); a < gi.k; ++a) {
      auto members = (u.slice(i, a) & full_j).members();
      for (ProcessId p : (u.slice(i, a) - full_j).members()) members.push_back(p);
      members.resize(static_cast<std::size_t>(gi.alpha));
      std::sort(members.begin(), members.end());
      di.partial[a] = members;
    }
    for (int b = static_cast<int>(gj.f); b < gj.k; ++b) {
      auto members = (u.slice(j, b) & full_i).members();
      for (ProcessId p : (u.slice(j, b) - full_i).members()) members.push_back(p);
      members.resize(static_cast<std::size_t>(gj.alpha));
      std::sort(members.begin(), members.end());
      dj.partial[b] = members;
    }
    REQUIRE_NOTHROW(validate(u, gi, di));
    REQUIRE_NOTHROW(validate(u, gj, dj));
    const auto both = static_cast<std::int64_t>((materialize(u, gi, di) & materialize(u, gj, dj)).size());
    CHECK(both <= intersection_bound(gi, gj));
    const std::int64_t m = cell_size(gi, gj);
    if (gi.alpha <= m * gj.f && gj.alpha <= m * gi.f) CHECK(both == intersection_bound(gi, gj));
    ++instances;
  }
}

TEST_CASE("descriptor validation rejects malformed input") {
  Universe u(AttributeSchema::uniform({4, 4, 4}));
  GridParams g = grid_params(u.schema(), 0);
  FailproneDescriptor d = sample_failprone(u, g, 3);
  CHECK_NOTHROW(validate(u, g, d));

  auto bad = d;
  bad.full.push_back((d.full[0] + 1) % 4);
  CHECK_THROWS_AS(validate(u, g, bad), InvalidDescriptor);

  bad = d;
  bad.partial.begin()->second.pop_back();
  CHECK_THROWS_AS(validate(u, g, bad), InvalidDescriptor);

  bad = d;
  bad.partial.begin()->second[0] = u.slice(0, d.full[0]).members()[0];
  CHECK_THROWS_AS(validate(u, g, bad), InvalidDescriptor);

  bad = d;
  bad.belief = 1;
  CHECK_THROWS_AS(validate(u, g, bad), InvalidDescriptor);
}

TEST_CASE("sampling is deterministic and covers the space") {
  Universe u(AttributeSchema::uniform({4, 5}));
  GridParams g = grid_params(u.schema(), 0, {.alpha = 1});
  REQUIRE(failprone_count(g) == 500);
  CHECK(sample_failprone(u, g, 42) == sample_failprone(u, g, 42));

  std::mt19937_64 rng(5);
  std::map<std::string, int> hits;
  const int draws = 20000;
  for (int t = 0; t < draws; ++t) ++hits[to_mask(materialize(u, g, sample_failprone(u, g, rng))).to_string()];
  // 500 coupons: 20000 draws leave one unseen with probability about 500 e^-40.
  CHECK(hits.size() == 500);
  int lo = draws, hi = 0;
  for (auto& [_, c] : hits) {
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  CHECK(lo > 10);
  CHECK(hi < 80);
}

TEST_CASE("uniform_below is unbiased on small bounds") {
  std::mt19937_64 rng(1);
  std::vector<int> c(3);
  for (int t = 0; t < 30000; ++t) ++c[uniform_below(rng, 3)];
  for (int v : c) CHECK(std::abs(v - 10000) < 400);
  CHECK_THROWS(uniform_below(rng, 0));
}

TEST_CASE("closure test agrees with the subset oracle") {
  for (auto ks : {std::vector<int>{4, 4}, std::vector<int>{4, 5}, std::vector<int>{5, 5}, std::vector<int>{4, 4, 4}}) {
    AttributeSchema s = AttributeSchema::uniform(std::span<const int>(ks));
    Universe u(s);
    oracle::Grid og(ks);
    std::mt19937_64 rng(ks.size() * 100 + ks[1]);
    for (int i = 0; i < s.d(); ++i) {
      GridParams g = grid_params(s, i);
      const bool small = failprone_count(g) <= 100000;
      // Too many sets to list: sample members of the family directly and test by full-value choice.
      auto family = small ? oracle::failprone(og, i, static_cast<int>(g.f), static_cast<int>(g.alpha))
                          : std::vector<oracle::Mask>{};
      if (!small)
        for (int t = 0; t < 50; ++t) family.push_back(to_mask(materialize(u, g, sample_failprone(u, g, rng))));
      for (int t = 0; t < 3000; ++t) {
        oracle::Mask m;
        const int mode = t % 3;
        if (mode == 0) {
          m = family[rng() % family.size()];
          for (int p = 0; p < og.n; ++p)
            if (rng() % 3 == 0) m.reset(static_cast<std::size_t>(p));
          m.set(static_cast<std::size_t>(rng() % og.n));
        } else {
          const int density = mode == 1 ? 4 : 8;
          for (int p = 0; p < og.n; ++p)
            if (rng() % density == 0) m.set(static_cast<std::size_t>(p));
        }
        const ProcessSet ps = from_mask(m, og.n);
        const bool expect = small ? oracle::subset_of_some(m, family)
                                  : oracle::within_some_choice(og, i, static_cast<int>(g.f), static_cast<int>(g.alpha), m);
        REQUIRE(in_closure(u, g, ps) == expect);
        auto cover = covering_failprone(u, g, ps);
        REQUIRE(cover.has_value() == expect);
        if (cover) {
          CHECK_NOTHROW(validate(u, g, *cover));
          CHECK(ps.is_subset_of(materialize(u, g, *cover)));
        }
      }
    }
  }
}

TEST_CASE("maximal joint faults") {
  Universe u(AttributeSchema::uniform({4, 5}));
  GridParams gi = grid_params(u.schema(), 0, {.alpha = 1});
  GridParams gj = grid_params(u.schema(), 1);
  oracle::Grid og({4, 5});
  auto fi = oracle::failprone(og, 0, 1, 1);
  auto fj = oracle::failprone(og, 1, 1, 0);

  std::vector<oracle::Mask> inter;
  for (auto& a : fi)
    for (auto& b : fj) inter.push_back(a & b);
  std::set<std::string> maximal;
  for (auto& x : inter) {
    bool dominated = false;
    for (auto& y : inter)
      if (x != y && (x & ~y).none()) dominated = true;
    if (!dominated) maximal.insert(x.to_string());
  }

  std::set<std::string> got;
  for (auto& s : maximal_joint_faults(u, gi, gj, JointFaultMode::Explicit)) got.insert(to_mask(s).to_string());
  CHECK(got == maximal);

  for (auto& s : maximal_joint_faults(u, gi, gj, JointFaultMode::Structured)) {
    CHECK(is_joint_fault(u, gi, gj, s));
    CHECK(maximal.count(to_mask(s).to_string()) == 1);
  }

  // Saturation reaches a maximal element from any joint fault.
  std::mt19937_64 rng(9);
  for (int t = 0; t < 200; ++t) {
    oracle::Mask m = inter[rng() % inter.size()];
    for (int p = 0; p < og.n; ++p)
      if (rng() % 2) m.reset(static_cast<std::size_t>(p));
    ProcessSet sat = saturate_joint_fault(u, gi, gj, from_mask(m, og.n));
    CHECK(from_mask(m, og.n).is_subset_of(sat));
    CHECK(maximal.count(to_mask(sat).to_string()) == 1);
  }
  CHECK_THROWS_AS(saturate_joint_fault(u, gi, gj, u.full_set()), std::invalid_argument);
}

TEST_CASE("combinations") {
  int count = 0;
  std::vector<int> last;
  for_each_combination(6, 3, [&](const std::vector<int>& c) {
    if (!last.empty()) CHECK(last < c);
    last = c;
    ++count;
    return true;
  });
  CHECK(count == 20);
  count = 0;
  for_each_combination(6, 3, [&](const std::vector<int>&) { return ++count < 5; });
  CHECK(count == 5);
}

}
