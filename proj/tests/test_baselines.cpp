#include "doctest.h"

#include <cmath>
#include <set>

#include "lel/dg2cc.hpp"
#include "lel/diagnostics.hpp"
#include "lel/jso.hpp"

using namespace lel;

TEST_CASE("linear population size reduction law") {
  const int n_init = 1118;
  CHECK(jso_initial_pop(96) == 1118);
  CHECK(jso_pop_at(0.0, n_init, 4) == n_init);
  CHECK(jso_pop_at(1.0, n_init, 4) == 4);
  CHECK(jso_pop_at(0.5, n_init, 4) ==
        static_cast<int>(std::lround(n_init + 0.5 * (4 - n_init))));
  // monotone non-increasing in t
  int prev = n_init;
  for (double t = 0.0; t <= 1.0; t += 0.01) {
    const int np = jso_pop_at(t, n_init, 4);
    CHECK(np <= prev);
    prev = np;
  }
}

TEST_CASE("jso consumes exactly its budget and replays per seed") {
  auto run_once = [](std::uint64_t seed) {
    Problem p = make_problem(Fn::S1Sphere, 16, 3000);
    Rng rng = rng_stream({"jso", "test"}, seed);
    jso_run(p, rng);
    return std::make_pair(p.evals_used(), p.best_f());
  };
  const auto a = run_once(5);
  const auto b = run_once(5);
  CHECK(a.first == 3000);
  CHECK(a == b);
  const auto c = run_once(6);
  CHECK(c.second != a.second);
}

TEST_CASE("jso makes progress on the sphere") {
  Problem p = make_problem(Fn::S1Sphere, 16, 5000);
  Rng rng = rng_stream({"jso", "progress"}, 1);
  jso_run(p, rng);
  CHECK(p.best_f() < 1.0);
}

TEST_CASE("dg2 probe count formula and self-consistency") {
  CHECK(dg2_probe_count(96) == 4657);  // 1 + 96 + 96*95/2
  Problem p = make_problem(Fn::S1Sphere, 96, 10000);
  const Dg2Grouping g = dg2_group(p);
  CHECK(g.eval_cost == dg2_probe_count(96));
  CHECK(p.evals_used() == g.eval_cost);
}

TEST_CASE("dg2 grouping is deterministic") {
  Problem p1 = make_problem(Fn::S5BandedQuad, 32, 10000);
  Problem p2 = make_problem(Fn::S5BandedQuad, 32, 10000);
  CHECK(dg2_group(p1).groups == dg2_group(p2).groups);
}

TEST_CASE("dg2 recovers the separable sphere as singletons") {
  Problem p = make_problem(Fn::S1Sphere, 96, 10000);
  const Dg2Grouping g = dg2_group(p);
  REQUIRE(g.groups.size() == 96);
  for (int i = 0; i < 96; ++i) CHECK(g.groups[i] == std::vector<int>{i});
}

TEST_CASE("dg2 recovers the twelve contiguous rosenbrock blocks") {
  Problem p = make_problem(Fn::S2BlockRosen, 96, 10000);
  const Dg2Grouping g = dg2_group(p);
  REQUIRE(g.groups.size() == 12);
  for (int b = 0; b < 12; ++b) {
    std::vector<int> expected;
    for (int i = 8 * b; i < 8 * (b + 1); ++i) expected.push_back(i);
    CHECK(g.groups[b] == expected);
  }
}

TEST_CASE("dg2 sees the permuted blocks through the permutation") {
  Problem p = make_problem(Fn::S3PermRosen, 96, 10000);
  const Dg2Grouping g = dg2_group(p);
  CHECK(g.groups.size() == 12);
  std::set<int> all;
  for (const auto& grp : g.groups) {
    CHECK(grp.size() == 8);
    for (int v : grp) all.insert(v);
  }
  CHECK(all.size() == 96);
}

TEST_CASE("dg2 groups the rotated ellipsoid as one block") {
  Problem p = make_problem(Fn::S6RotEllipsoid, 96, 10000);
  const Dg2Grouping g = dg2_group(p);
  REQUIRE(g.groups.size() == 1);
  CHECK(g.groups[0].size() == 96);
}

TEST_CASE("dg2 chains the banded quadratic into one group") {
  Problem p = make_problem(Fn::S5BandedQuad, 96, 10000);
  const Dg2Grouping g = dg2_group(p);
  REQUIRE(g.groups.size() == 1);
  CHECK(g.groups[0].size() == 96);
}

TEST_CASE("dg2 raises budget exhaustion when probes do not fit") {
  Problem p = make_problem(Fn::S1Sphere, 96, 100);
  CHECK_THROWS_AS(dg2_group(p), BudgetExhausted);
}

TEST_CASE("cc context stays synchronized with the incumbent") {
  Problem p = make_problem(Fn::S1Sphere, 24, 6000);
  Rng rng = rng_stream({"cc", "sync"}, 3);
  const Dg2Grouping g = dg2_group(p);
  const CcResult r = cc_optimize(p, g, rng);
  CHECK(p.evals_used() == 6000);
  CHECK(r.context_f == p.best_f());
  // re-evaluating the context off-budget reproduces the stored value
  Problem fresh = make_problem(Fn::S1Sphere, 24, 10);
  CHECK(fresh.evaluate(r.context) == doctest::Approx(r.context_f).epsilon(1e-12));
}

TEST_CASE("cc on singleton groups drives the sphere down fast") {
  Problem p = make_problem(Fn::S1Sphere, 24, 8000);
  Rng rng = rng_stream({"cc", "sphere"}, 1);
  dg2_cc_run(p, rng);
  CHECK(p.evals_used() == 8000);
  CHECK(p.best_f() < 1e-4);
}

TEST_CASE("single full-space group degenerates to the plain subsolver") {
  Problem p = make_problem(Fn::S6RotEllipsoid, 16, 4000);
  Rng rng = rng_stream({"cc", "full"}, 2);
  Dg2Grouping g;
  std::vector<int> everyone;
  for (int i = 0; i < 16; ++i) everyone.push_back(i);
  g.groups.push_back(everyone);
  const CcResult r = cc_optimize(p, g, rng);
  CHECK(p.evals_used() == 4000);
  CHECK(r.best_f == p.best_f());
  CHECK(p.best_f() < 1e6);
}

TEST_CASE("dg2_cc replays deterministically") {
  auto run_once = [] {
    Problem p = make_problem(Fn::S2BlockRosen, 32, 4000);
    Rng rng = rng_stream({"dg2cc", "det"}, 9);
    dg2_cc_run(p, rng);
    return p.best_f();
  };
  CHECK(run_once() == run_once());
}
