#include <doctest.h>

#include <sstream>

#include "gq/resilience.hpp"
#include "gq/tightness.hpp"
#include "support.hpp"

using namespace gq;

TEST_SUITE("tightness") {

TEST_CASE("one more full value breaks Q3") {
  for (int k = 4; k <= 20; ++k) {
    Universe u(AttributeSchema::uniform({k, 4}));
    auto cx = full_failure_counterexample(u, 0);
    CAPTURE(k);
    CHECK(cx.params.f == grid_params(u.schema(), 0).f + 1);
    REQUIRE(cx.fulls.size() == 3);
    std::vector<bool> hit(static_cast<std::size_t>(k));
    for (const auto& f : cx.fulls) {
      CHECK(static_cast<std::int64_t>(f.size()) == cx.params.f);
      for (int v : f) hit[static_cast<std::size_t>(v)] = true;
    }
    CHECK(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
    CHECK_NOTHROW(recheck_q3_witness(u, cx.params, cx.witness));

    ProcessSet cover = u.empty_set();
    for (const auto& d : cx.witness.failprone) cover |= materialize(u, cx.params, d);
    CHECK(cover == u.full_set());
    CHECK(check_q3_exhaustive(u, grid_params(u.schema(), 0)).holds);
  }
}

TEST_CASE("small cases") {
  Universe u(AttributeSchema::uniform({7, 4}));
  auto cx = full_failure_counterexample(u, 0);
  CHECK(cx.fulls == std::vector<std::vector<int>>{{0, 1, 2}, {3, 4, 5}, {6, 0, 1}});
  Universe u6(AttributeSchema::uniform({6, 4}));
  CHECK(full_failure_counterexample(u6, 0).fulls == std::vector<std::vector<int>>{{0, 1}, {2, 3}, {4, 5}});
}

TEST_CASE("alpha cap") {
  CHECK(alpha_cap(std::vector<int>{4, 4}, 0) == 3);
  for (int a = 4; a <= 12; ++a)
    for (int b = 4; b <= 12; ++b) {
      const std::vector<int> ks{a, b};
      const auto cap = alpha_cap(ks, 0);
      CHECK(cap <= b);
      CHECK(cap > grid_params(ks, 0).alpha);
    }
}

TEST_CASE("exhaustive max alpha is exact against brute force on the smallest grids") {
  for (auto ks : {std::vector<int>{4, 4}, std::vector<int>{4, 5}, std::vector<int>{5, 4}}) {
    AttributeSchema s = AttributeSchema::uniform(std::span<const int>(ks));
    auto r = max_alpha(s, 0);
    oracle::Grid og(ks);
    const GridParams gj = grid_params(s, 1);
    auto fj = oracle::failprone(og, 1, static_cast<int>(gj.f), static_cast<int>(gj.alpha));
    const GridParams g0 = grid_params(s, 0);
    std::int64_t brute = g0.alpha;
    for (std::int64_t a = g0.alpha + 1; a < r.cap; ++a) {
      auto fi = oracle::failprone(og, 0, static_cast<int>(g0.f), static_cast<int>(a));
      // The i = j condition of B3 is Q3 of the modified belief.
      if (oracle::b3_violated(og, fi, fj) || oracle::q3_violated(og, fi)) break;
      brute = a;
    }
    CAPTURE(ks);
    CHECK(r.max_alpha == brute);
  }
}

TEST_CASE("exhaustive sweep over small grids") {
  auto rows = alpha_tightness_sweep(4, 8, 4, 8);
  REQUIRE(rows.size() == 25);
  const std::int64_t expect[5][5] = {
      {1, 1, 1, 2, 2}, {1, 1, 1, 2, 2}, {1, 1, 1, 2, 2}, {1, 1, 1, 1, 2}, {1, 1, 1, 1, 2}};
  for (const auto& r : rows) {
    const int a = r.k[0], b = r.k[1];
    CAPTURE(a);
    CAPTURE(b);
    CHECK(r.max_alpha == expect[a - 4][b - 4]);
    CHECK(r.max_alpha >= r.default_alpha);
    CHECK(r.increase_percent >= 0);
    CHECK((r.increase_percent == 0) == (r.max_alpha == r.default_alpha));

    AttributeSchema s = AttributeSchema::uniform(std::span<const int>(r.k));
    Universe u(s);
    const GridParams gj = grid_params(s, 1);
    const GridParams best = grid_params(s, 0, {.alpha = r.max_alpha});
    CHECK(check_b3_exhaustive(u, best, gj).holds);
    CHECK(check_q3_exhaustive(u, best).holds);
    if (r.max_alpha + 1 <= grid_params(s, 0).slice) {
      const GridParams next = grid_params(s, 0, {.alpha = r.max_alpha + 1});
      auto pair = check_b3_exhaustive(u, next, gj);
      auto self = check_q3_exhaustive(u, next);
      CHECK_FALSE((pair.holds && self.holds));
      CHECK((pair.witness.has_value() || self.witness.has_value()));
    }
  }
}

TEST_CASE("adversarial mode agrees on small grids and realises every rejection") {
  AlphaSearchOptions opt;
  opt.mode = SearchMode::Adversarial;
  for (int a = 4; a <= 8; ++a)
    for (int b = 4; b <= 8; ++b) {
      AttributeSchema s = AttributeSchema::uniform({a, b});
      CHECK(max_alpha(s, 0, opt).max_alpha == max_alpha(s, 0).max_alpha);
    }
}

TEST_CASE("increase percentage") {
  AttributeSchema s = AttributeSchema::uniform({4, 4});
  auto r = max_alpha(s, 0);
  // |F| goes from 4 to 4 + 3 = 7.
  CHECK(r.default_alpha == 0);
  CHECK(r.max_alpha == 1);
  CHECK(r.increase_percent == 75);
}

TEST_CASE("sampled decisions only report realisable violations") {
  for (int k = 9; k <= 16; ++k) {
    AttributeSchema s = AttributeSchema::uniform({k, k});
    Universe u(s);
    const GridParams gj = grid_params(s, 1);
    for (std::int64_t a = grid_params(s, 0).alpha; a < alpha_cap(s.cardinalities(), 0); ++a) {
      const GridParams gi = grid_params(s, 0, {.alpha = a});
      const ReducedGrid g = reduce(gi, gj);
      auto cfg = sampled_violation(g, 20, 1);
      if (!cfg) continue;
      auto r = realise(u, gi, gj, g, *cfg);
      Witness w;
      w.failprone = {r.fi, r.fj};
      w.joint_fault = saturate_joint_fault(u, gi, gj, r.joint);
      CHECK_NOTHROW(recheck_b3_witness(u, gi, gj, w));
    }
  }
}

TEST_CASE("alpha CSV") {
  AttributeSchema s = AttributeSchema::uniform({4, 4});
  std::ostringstream os;
  write_alpha_csv(os, {max_alpha(s, 0)});
  CHECK(os.str() == "k1,k2,default_alpha,max_alpha,method,increase_percent\n4,4,0,1,EXHAUSTIVE,75.000000\n");
}

TEST_CASE("exhaustive mode needs two attributes") {
  CHECK_THROWS(max_alpha(AttributeSchema::uniform({4, 4, 4}), 0));
  AlphaSearchOptions opt;
  opt.mode = SearchMode::Adversarial;
  auto r = max_alpha(AttributeSchema::uniform({4, 4, 4}), 0, opt);
  CHECK(r.max_alpha >= r.default_alpha);
  CHECK_FALSE(r.partner.has_value());
}

}
