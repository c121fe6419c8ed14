#include "erlab/experiments/theory.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "erlab/poly/families.hpp"

namespace erlab::experiments {

double subcritical_x(double nt) {
  if (!(nt >= 0.0 && nt < 1.0)) {
    throw std::domain_error("subcritical theory needs 0 <= nt < 1, got nt = " + std::to_string(nt));
  }
  return 1.0 / (1.0 - nt);
}

double theory_mean_s_k(double n, double nt, int k) {
  return n * poly::compute_p(k).evaluate(subcritical_x(nt));
}

double theory_cov_s_kl(double n, double nt, int k, int l) {
  return n * poly::compute_hp(k, l).evaluate(subcritical_x(nt));
}

double theory_chi_variance(double n, double p) {
  const double np = n * p;
  if (!(np >= 0.0 && np < 1.0)) throw std::domain_error("chi variance needs 0 <= np < 1");
  return 2.0 * p / std::pow(1.0 - np, 5);
}

double rho_residual(double lambda, double rho) {
  return std::abs(-std::expm1(-lambda * rho) - rho);
}

double solve_rho(double lambda) {
  if (!(lambda > 1.0 + 1e-9)) {
    throw std::domain_error("survival probability needs lambda > 1, got " + std::to_string(lambda));
  }
  // f(rho) = 1 - exp(-lambda rho) - rho is positive at (lambda-1)/lambda^2 and negative at 1.
  auto f = [lambda](double rho) { return -std::expm1(-lambda * rho) - rho; };
  double lo = (lambda - 1.0) / (lambda * lambda);
  double hi = 1.0;
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
}

}  // namespace erlab::experiments
