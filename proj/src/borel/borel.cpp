#include "erlab/borel/borel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/random/poisson_distribution.hpp>

#include "erlab/poly/families.hpp"

namespace erlab::borel {

void validate_lambda(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw std::domain_error("Borel parameter lambda must lie in (0, 1), got " + std::to_string(lambda));
  }
}

namespace {

void require_order(int m, int min_order, const char* what) {
  if (m < min_order) {
    throw std::domain_error(std::string(what) + " order must be >= " + std::to_string(min_order));
  }
}

}  // namespace

double borel_log_pmf(double lambda, std::uint64_t j) {
  validate_lambda(lambda);
  if (j < 1) throw std::domain_error("Borel support starts at j = 1");
  const double jd = static_cast<double>(j);
  return (jd - 1.0) * std::log(jd) - std::lgamma(jd + 1.0) + (jd - 1.0) * std::log(lambda) - jd * lambda;
}

double borel_pmf(double lambda, std::uint64_t j) { return std::exp(borel_log_pmf(lambda, j)); }

double pair_pmf(double lambda, std::uint64_t j) {
  validate_lambda(lambda);
  if (j < 2) throw std::domain_error("the sum of two Borel variables is at least 2");
  const double jd = static_cast<double>(j);
  const double log_p = std::log(2.0) + (jd - 3.0) * std::log(jd) - std::lgamma(jd - 1.0) +
                       (jd - 2.0) * std::log(lambda) - jd * lambda;
  return std::exp(log_p);
}

double size_biased_pmf(double lambda, std::uint64_t j) {
  return static_cast<double>(j) * borel_pmf(lambda, j) * (1.0 - lambda);
}

double borel_moment(double lambda, int m) {
  validate_lambda(lambda);
  require_order(m, 0, "moment");
  if (m == 0) return 1.0;
  return poly::compute_p(m + 1).evaluate(1.0 / (1.0 - lambda));
}

double borel_cumulant(double lambda, int m) {
  validate_lambda(lambda);
  require_order(m, 1, "cumulant");
  if (m == 1) return 1.0 / (1.0 - lambda);
  return lambda * borel_moment(lambda, m);
}

double size_biased_moment(double lambda, int m) {
  validate_lambda(lambda);
  require_order(m, 0, "size-biased moment");
  if (m == 0) return 1.0;
  return (1.0 - lambda) * poly::compute_p(m + 2).evaluate(1.0 / (1.0 - lambda));
}

std::optional<std::uint64_t> sample_borel(const BorelParams& params, Rng& rng) {
  validate_lambda(params.lambda);
  if (params.truncation_cap < 1) throw std::domain_error("truncation_cap must be >= 1");
  boost::random::poisson_distribution<std::uint64_t, double> offspring(params.lambda);
  std::uint64_t pending = 1;
  std::uint64_t total = 1;
  while (pending > 0) {
    --pending;
    const std::uint64_t children = offspring(rng);
    pending += children;
    total += children;
    if (total > params.truncation_cap) return std::nullopt;
  }
  return total;
}

double mgf_radius(double lambda) {
  validate_lambda(lambda);
  return lambda - 1.0 - std::log(lambda);
}

MgfEvaluation mgf_functional_check(double lambda, double t, double margin) {
  const double radius = mgf_radius(lambda);
  if (!(t <= radius - margin)) {
    throw std::domain_error("t = " + std::to_string(t) + " is outside the convergence-safe region t <= " +
                            std::to_string(radius - margin));
  }
  constexpr std::uint64_t kMaxTerms = 50'000'000;
  MgfEvaluation out;
  double sum = 0.0;
  double previous = 0.0;
  std::uint64_t j = 1;
  for (; j <= kMaxTerms; ++j) {
    const double term = std::exp(borel_log_pmf(lambda, j) + t * static_cast<double>(j));
    sum += term;
    if (term < previous && term < 1e-16 * sum) break;
    previous = term;
  }
  if (j > kMaxTerms) throw std::runtime_error("mgf series did not converge");
  out.psi = sum;
  out.terms = j;
  out.residual = std::abs(std::log(sum) - (lambda * sum - lambda + t));
  return out;
}

BorelMomentTable moment_table(double lambda, int order) {
  validate_lambda(lambda);
  require_order(order, 1, "table");
  BorelMomentTable table;
  table.lambda = lambda;
  table.moments.resize(static_cast<std::size_t>(order) + 1);
  table.cumulants.resize(static_cast<std::size_t>(order) + 1, 0.0);
  table.size_biased_moments.resize(static_cast<std::size_t>(order) + 1);
  for (int m = 0; m <= order; ++m) {
    const auto i = static_cast<std::size_t>(m);
    table.moments[i] = borel_moment(lambda, m);
    if (m >= 1) table.cumulants[i] = borel_cumulant(lambda, m);
    table.size_biased_moments[i] = size_biased_moment(lambda, m);
  }
  return table;
}

}  // namespace erlab::borel
