#include "erlab/borel/borel.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "erlab/poly/families.hpp"

using namespace erlab::borel;

namespace {

// Naive j^{j-1}/j! lambda^{j-1} e^{-j lambda}; fine for small j only.
double naive_pmf(double lambda, int j) {
  double fact = 1.0;
  for (int i = 2; i <= j; ++i) fact *= i;
  return std::pow(j, j - 1) / fact * std::pow(lambda, j - 1) * std::exp(-j * lambda);
}

// sum_j j^power * weight(j) until terms are negligible past the mode.
template <typename Weight>
double truncated_sum(int power, Weight weight) {
  double sum = 0.0;
  double previous = 0.0;
  for (std::uint64_t j = 1; j < 10'000'000; ++j) {
    const double term = std::pow(static_cast<double>(j), power) * weight(j);
    sum += term;
    if (term < previous && term < 1e-18 * sum) break;
    previous = term;
  }
  return sum;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("pmf values") {
  CHECK(borel_pmf(0.5, 1) == doctest::Approx(0.6065306597).epsilon(1e-10));
  CHECK(borel_pmf(0.5, 2) == doctest::Approx(0.1839397206).epsilon(1e-10));
  for (double lambda : {0.2, 0.5, 0.8}) {
    for (int j = 1; j <= 20; ++j) CHECK(rel_err(borel_pmf(lambda, j), naive_pmf(lambda, j)) < 1e-12);
  }
  double mass = 0.0;
  for (int j = 1; j <= 200; ++j) mass += borel_pmf(0.2, j);
  CHECK(std::abs(mass - 1.0) < 1e-12);
  // large j stays finite in log space
  CHECK(std::isfinite(borel_pmf(0.8, 5000)));
  CHECK(borel_pmf(0.8, 5000) > 0.0);
}

TEST_CASE("mass deficit for J = 10^4") {
  for (double lambda : {0.2, 0.5, 0.8}) {
    double mass = 0.0;
    for (int j = 1; j <= 10000; ++j) mass += borel_pmf(lambda, j);
    CHECK(std::abs(1.0 - mass) < 1e-10);
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS((void)borel_pmf(0.0, 1), std::domain_error);
  CHECK_THROWS_AS((void)borel_pmf(1.0, 1), std::domain_error);
  CHECK_THROWS_AS((void)borel_pmf(0.5, 0), std::domain_error);
  CHECK_THROWS_AS((void)pair_pmf(0.5, 1), std::domain_error);
  CHECK_THROWS_AS((void)borel_moment(0.5, -1), std::domain_error);
  CHECK_THROWS_AS((void)borel_cumulant(0.5, 0), std::domain_error);
  CHECK_THROWS_AS((void)size_biased_moment(1.5, 1), std::domain_error);
}

TEST_CASE("pair pmf matches the convolution") {
  CHECK(pair_pmf(0.5, 2) == doctest::Approx(0.3678794412).epsilon(1e-10));
  CHECK(pair_pmf(0.5, 3) == doctest::Approx(0.2231301601).epsilon(1e-10));
  for (double lambda : {0.2, 0.5, 0.8}) {
    for (std::uint64_t j = 2; j <= 50; ++j) {
      double conv = 0.0;
      for (std::uint64_t i = 1; i < j; ++i) conv += borel_pmf(lambda, i) * borel_pmf(lambda, j - i);
      CHECK(std::abs(pair_pmf(lambda, j) - conv) < 1e-12);
    }
  }
}

TEST_CASE("moments, cumulants and size-biased moments") {
  CHECK(borel_moment(0.5, 0) == 1.0);
  CHECK(borel_moment(0.5, 1) == doctest::Approx(2.0));
  CHECK(borel_moment(0.5, 2) == doctest::Approx(8.0));
  CHECK(borel_moment(0.5, 3) == doctest::Approx(64.0));
  CHECK(borel_cumulant(0.5, 1) == doctest::Approx(2.0));
  CHECK(borel_cumulant(0.5, 2) == doctest::Approx(4.0));
  CHECK(borel_cumulant(0.5, 2) == doctest::Approx(borel_moment(0.5, 2) - std::pow(borel_moment(0.5, 1), 2)));
  CHECK(size_biased_moment(0.5, 0) == 1.0);
  CHECK(size_biased_moment(0.5, 1) == doctest::Approx(4.0));
  CHECK(size_biased_moment(0.5, 2) == doctest::Approx(32.0));

  for (double lambda : {0.2, 0.5, 0.8}) {
    for (int m = 1; m <= 5; ++m) {
      CAPTURE(lambda);
      CAPTURE(m);
      const double oracle = truncated_sum(m, [&](std::uint64_t j) { return borel_pmf(lambda, j); });
      CHECK(rel_err(borel_moment(lambda, m), oracle) < 1e-9);
      const double sb_oracle = truncated_sum(m, [&](std::uint64_t j) { return size_biased_pmf(lambda, j); });
      CHECK(rel_err(size_biased_moment(lambda, m), sb_oracle) < 1e-9);
    }
  }
  // third cumulant from raw moments: mu3 - 3 mu2 mu1 + 2 mu1^3
  for (double lambda : {0.2, 0.5, 0.8}) {
    const double m1 = borel_moment(lambda, 1), m2 = borel_moment(lambda, 2), m3 = borel_moment(lambda, 3);
    CHECK(rel_err(borel_cumulant(lambda, 3), m3 - 3 * m2 * m1 + 2 * m1 * m1 * m1) < 1e-12);
  }
}

TEST_CASE("size-biased identity") {
  for (double lambda : {0.2, 0.5, 0.8}) {
    const double mean = borel_moment(lambda, 1);
    for (std::uint64_t j = 1; j <= 100; ++j) {
      const double lhs = size_biased_pmf(lambda, j) * mean;
      const double rhs = static_cast<double>(j) * borel_pmf(lambda, j);
      CHECK(rel_err(lhs, rhs) < 1e-14);
    }
  }
}

TEST_CASE("covariance bridge to hp_kl") {
  for (double lambda : {0.2, 0.5}) {
    const double x = 1.0 / (1.0 - lambda);
    auto sb = [&](int power) {
      return truncated_sum(power, [&](std::uint64_t j) { return size_biased_pmf(lambda, j); });
    };
    for (int k = 2; k <= 4; ++k) {
      for (int l = 2; l <= 4; ++l) {
        const double cov = sb(k + l - 2) - sb(k - 1) * sb(l - 1);
        CHECK(rel_err(erlab::poly::compute_hp(k, l).evaluate(x), x * cov) < 1e-8);
      }
    }
  }
}

TEST_CASE("moment table") {
  auto table = moment_table(0.5, 4);
  REQUIRE(table.moments.size() == 5);
  CHECK(table.moments[1] == doctest::Approx(2.0));
  CHECK(table.cumulants[2] == doctest::Approx(4.0));
  for (int m = 0; m < 4; ++m) {
    CHECK(table.size_biased_moments[m] == doctest::Approx(table.moments[m + 1] / table.moments[1]));
  }
}

TEST_CASE("mgf functional equation") {
  CHECK(mgf_functional_check(0.3, 0.0).residual < 1e-14);
  CHECK(mgf_functional_check(0.5, 0.1).residual < 1e-9);
  CHECK(mgf_functional_check(0.2, 0.5).residual < 1e-9);
  CHECK(mgf_functional_check(0.5, -1.0).residual < 1e-9);
  CHECK(mgf_radius(0.5) == doctest::Approx(0.5 - 1.0 + std::log(2.0)));
  CHECK_THROWS_AS((void)mgf_functional_check(0.5, 0.19), std::domain_error);
}

TEST_CASE("Galton-Watson sampler") {
  erlab::Rng rng(12345);
  SUBCASE("tiny lambda gives singletons") {
    BorelParams params{1e-9, kDefaultTruncationCap};
    for (int i = 0; i < 1000; ++i) CHECK(sample_borel(params, rng) == std::optional<std::uint64_t>(1));
  }
  SUBCASE("mean and P(beta = 1) at lambda = 0.5") {
    BorelParams params{0.5, kDefaultTruncationCap};
    constexpr int kSamples = 100000;
    double sum = 0.0;
    int ones = 0;
    for (int i = 0; i < kSamples; ++i) {
      auto draw = sample_borel(params, rng);
      REQUIRE(draw.has_value());
      sum += static_cast<double>(*draw);
      ones += *draw == 1 ? 1 : 0;
    }
    const double se_mean = std::sqrt(4.0 / kSamples);  // Var beta = 4
    CHECK(std::abs(sum / kSamples - 2.0) < 3.0 * se_mean);
    const double p1 = std::exp(-0.5);
    const double se_p1 = std::sqrt(p1 * (1.0 - p1) / kSamples);
    CHECK(std::abs(static_cast<double>(ones) / kSamples - p1) < 3.0 * se_p1);
  }
  SUBCASE("truncation cap aborts instead of clamping") {
    BorelParams params{0.5, 1};
    int aborted = 0;
    int singles = 0;
    for (int i = 0; i < 1000; ++i) {
      auto draw = sample_borel(params, rng);
      if (!draw) {
        ++aborted;
      } else {
        CHECK(*draw == 1);
        ++singles;
      }
    }
    CHECK(aborted > 0);
    CHECK(singles > 0);
  }
}
