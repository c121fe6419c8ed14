#pragma once

#include <cstdint>

namespace erlab::experiments {

/// x = 1/(1-nt), the argument of the moment and covariance polynomials.
/// Throws std::domain_error unless 0 <= nt < 1.
[[nodiscard]] double subcritical_x(double nt);

/// n p_k(1/(1-nt)).
[[nodiscard]] double theory_mean_s_k(double n, double nt, int k);

/// n hp_{k,l}(1/(1-nt)).
[[nodiscard]] double theory_cov_s_kl(double n, double nt, int k, int l);

/// Asymptotic variance of chi = S_2/n in G(n,p): 2p/(1-np)^5.
/// Throws std::domain_error unless 0 <= np < 1.
[[nodiscard]] double theory_chi_variance(double n, double p);

/// Survival probability of a Poisson(lambda) Galton-Watson process: the root
/// in (0,1) of rho = 1 - exp(-lambda rho), bisected to machine precision.
/// Throws std::domain_error for lambda <= 1 + 1e-9.
[[nodiscard]] double solve_rho(double lambda);

/// |1 - exp(-lambda rho) - rho|.
[[nodiscard]] double rho_residual(double lambda, double rho);

}  // namespace erlab::experiments
