#include "erlab/graph/random_graph.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "erlab/random.hpp"

using namespace erlab::graph;

TEST_CASE("G(n,p) extremes") {
  auto empty = sample_gnp(50, 0.0, 3, 1);
  CHECK(empty.m == 0);
  for (int k = 1; k <= 3; ++k) CHECK(empty.s_k(k) == 50);
  CHECK(empty.chi == 1.0);

  auto complete = sample_gnp(4, 1.0, 3, 1);
  CHECK(complete.m == 6);
  CHECK(complete.s_k(2) == 16);
  CHECK(complete.s_k(3) == 64);
  CHECK(complete.chi == 4.0);
  CHECK(complete.largest1 == 4);
  CHECK(complete.largest2 == 0);
  CHECK(std::isinf(complete.t));

  CHECK_THROWS_AS((void)sample_gnp(10, 1.5, 2, 1), std::invalid_argument);
}

TEST_CASE("same seed, same graph") {
  auto a = sample_gnp(5000, 1.0 / 5000, 4, 77);
  auto b = sample_gnp(5000, 1.0 / 5000, 4, 77);
  auto c = sample_gnp(5000, 1.0 / 5000, 4, 78);
  CHECK(a.s == b.s);
  CHECK(a.m == b.m);
  CHECK(a.s != c.s);
}

TEST_CASE("trajectory checkpoints") {
  const std::vector<std::uint64_t> start{0};
  auto initial = trajectory(30, 3, start, 5);
  REQUIRE(initial.size() == 1);
  CHECK(initial[0].s_k(3) == 30);

  const std::uint32_t n = 12;
  const std::vector<std::uint64_t> full{0, 10, 40, pair_count(n)};
  auto rows = trajectory(n, 3, full, 5);
  REQUIRE(rows.size() == 4);
  CHECK(rows.back().chi == static_cast<double>(n));
  CHECK(rows.back().p == 1.0);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].m == full[i]);
    CHECK(rows[i].s_k(2) >= rows[i - 1].s_k(2));
  }

  const std::vector<std::uint64_t> duplicate{3, 3};
  CHECK_THROWS_AS((void)trajectory(n, 3, duplicate, 1), std::invalid_argument);
  const std::vector<std::uint64_t> too_many{pair_count(n) + 1};
  CHECK_THROWS_AS((void)trajectory(n, 3, too_many, 1), std::invalid_argument);
}

TEST_CASE("trajectory reports p = m/N and t = -log(1-p)") {
  const std::uint32_t n = 10'000;
  const double N = static_cast<double>(pair_count(n));
  const double target_nt = 0.3;
  const double p = -std::expm1(-target_nt / n);
  const std::vector<std::uint64_t> checkpoints{static_cast<std::uint64_t>(std::llround(p * N))};
  auto rows = trajectory(n, 2, checkpoints, 11);
  CHECK(rows[0].p == doctest::Approx(static_cast<double>(checkpoints[0]) / N));
  CHECK(rows[0].t == doctest::Approx(-std::log1p(-rows[0].p)));
  CHECK(rows[0].nt == doctest::Approx(target_nt).epsilon(1e-3));
  // sd of chi here is about sqrt(hp_22(1/0.7)/n) ~ 0.019
  CHECK(std::abs(rows[0].chi - 1.0 / 0.7) < 0.1);
}

TEST_CASE("edges are uniform over pairs, sparse and dense paths") {
  // First edge of a random-order process on 4 vertices: 6 equally likely pairs.
  for (std::uint64_t count : {1u, 4u}) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, int> hits;
    constexpr int kRuns = 12000;
    for (int run = 0; run < kRuns; ++run) {
      RandomGraph g(4, 2, erlab::derive_seed(3, static_cast<std::uint64_t>(run)));
      g.add_random_edges(count);  // count = 4 takes the dense path
      auto s = g.snapshot();
      CHECK(s.m == count);
      if (count == 1) {
        std::uint32_t a = 0, b = 0;
        for (std::uint32_t u = 0; u < 4; ++u)
          for (std::uint32_t v = u + 1; v < 4; ++v)
            if (!g.add_edge(u, v)) a = u, b = v;
        ++hits[{a, b}];
      }
    }
    if (count == 1) {
      REQUIRE(hits.size() == 6);
      // Binomial(12000, 1/6): sd ~ 40.8; allow 4 sd.
      for (auto& [pair, h] : hits) CHECK(std::abs(h - 2000) < 164);
    }
  }
}

TEST_CASE("continuous-time window drift matches V_2") {
  // Fixed subcritical state at nt = 0.5, then independent short windows.
  const std::uint32_t n = 10'000;
  RandomGraph base(n, 4, 2024);
  base.add_random_edges(static_cast<std::uint64_t>(std::llround(-std::expm1(-0.5 / n) * pair_count(n))));
  const double drift = to_double(base.tracker().drift_v(2));
  const double dt = 20.0 / static_cast<double>(base.pairs() - base.edge_count());
  constexpr int kWindows = 500;
  double sum = 0.0, sum_sq = 0.0;
  for (int w = 0; w < kWindows; ++w) {
    RandomGraph window = base;
    window.reseed(erlab::derive_seed(55, static_cast<std::uint64_t>(w)));
    window.advance_time(dt);
    const double rate = (to_double(window.tracker().s(2)) - to_double(base.tracker().s(2))) / dt;
    sum += rate;
    sum_sq += rate * rate;
  }
  const double mean = sum / kWindows;
  const double var = (sum_sq - kWindows * mean * mean) / (kWindows - 1);
  const double se = std::sqrt(var / kWindows);
  CHECK(std::abs(mean - drift) < 3.0 * se);
}

TEST_CASE("snapshot CSV") {
  std::vector<SnapshotSummary> rows{sample_gnp(4, 1.0, 3, 9)};
  rows[0].replicate = 2;
  std::ostringstream out;
  write_snapshot_csv(out, rows);
  CHECK(out.str() == "n,m,p,t,nt,kmax,S_1,S_2,S_3,chi,largest1,largest2,seed,replicate\n"
                     "4,6,1,inf,inf,3,4,16,64,4,4,0,9,2\n");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(2.0) == "2");
}
