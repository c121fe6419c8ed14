#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "erlab/random.hpp"

namespace erlab::borel {

inline constexpr std::uint64_t kDefaultTruncationCap = 10'000'000;

struct BorelParams {
  double lambda = 0.5;  ///< mean offspring, in (0, 1)
  std::uint64_t truncation_cap = kDefaultTruncationCap;
};

/// Throws std::domain_error unless 0 < lambda < 1.
void validate_lambda(double lambda);

/// log P(beta = j) = (j-1) log j - log j! + (j-1) log lambda - j lambda.
double borel_log_pmf(double lambda, std::uint64_t j);
double borel_pmf(double lambda, std::uint64_t j);

/// P(beta' + beta'' = j) for independent Bo(lambda) copies, j >= 2.
double pair_pmf(double lambda, std::uint64_t j);

/// P(beta_hat = j) = j P(beta = j) / E beta.
double size_biased_pmf(double lambda, std::uint64_t j);

/// E beta^m = p_{m+1}(1/(1-lambda)); 1 for m = 0.
double borel_moment(double lambda, int m);

/// kappa_1 = 1/(1-lambda), kappa_m = lambda E beta^m for m >= 2.
double borel_cumulant(double lambda, int m);

/// E beta_hat^m = (1-lambda) p_{m+2}(1/(1-lambda)); 1 for m = 0.
double size_biased_moment(double lambda, int m);

/// Total progeny of a Poisson(lambda) Galton-Watson tree started from one
/// individual. Returns nullopt when the running total passes the cap; the
/// draw is then abandoned rather than clamped.
std::optional<std::uint64_t> sample_borel(const BorelParams& params, Rng& rng);

/// lambda - 1 - log(lambda): the mgf series converges for t below this.
double mgf_radius(double lambda);

struct MgfEvaluation {
  double psi = 1.0;          ///< E exp(t beta) by truncated series
  double residual = 0.0;     ///< |log psi - (lambda psi - lambda + t)|
  std::uint64_t terms = 0;   ///< series terms summed
};

/// Checks log psi = lambda psi - lambda + t by direct summation. Requires
/// t <= mgf_radius(lambda) - margin; throws std::domain_error otherwise.
MgfEvaluation mgf_functional_check(double lambda, double t, double margin = 0.01);

struct BorelMomentTable {
  double lambda = 0.0;
  std::vector<double> moments;               ///< index m = 0..order
  std::vector<double> cumulants;             ///< index m = 1..order; slot 0 unused (0)
  std::vector<double> size_biased_moments;   ///< index m = 0..order
};

BorelMomentTable moment_table(double lambda, int order);

}  // namespace erlab::borel
