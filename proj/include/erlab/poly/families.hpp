#pragma once

#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "erlab/poly/polynomial.hpp"

namespace erlab::poly {

/// Largest index accepted by the public accessors unless overridden.
inline constexpr int kDefaultMaxIndex = 64;

/// Memoized constructor for the moment and covariance polynomial families.
///
///   p_k    mean of S_k:          E S_k ~ n p_k(1/(1-nt)),      deg 2k-3
///   q_k    p_k = x^k q_k,                                     deg k-3
///   pi_k   one-vertex increment, pi_k = p_{k+1}/x,             deg 2k-2
///   hp_kl  covariance:        Cov(S_k,S_l) ~ n hp_kl(1/(1-nt)), deg 2k+2l-3
///   r_m    Borel mgf derivative polynomial, r_m = p_{m+1},     deg 2m-1
///   px_k   quadratic-variation drift polynomial,               deg 2k-2
///   py_k   integral of px_k / x^2 anchored at py_k(1) = 0,     deg 2k-3
///
/// Entries are never modified after insertion, so references returned by the
/// accessors stay valid for the lifetime of the cache. Accessors lock an
/// internal mutex; once warm, concurrent readers only contend on that lock.
class PolyFamilyCache {
 public:
  explicit PolyFamilyCache(int max_index = kDefaultMaxIndex);

  PolyFamilyCache(const PolyFamilyCache&) = delete;
  PolyFamilyCache& operator=(const PolyFamilyCache&) = delete;

  /// Process-wide cache used by the free functions below.
  static PolyFamilyCache& shared();

  [[nodiscard]] int max_index() const noexcept { return max_index_; }

  const Polynomial& q(int k);
  const Polynomial& p(int k);
  const Polynomial& pi(int k);
  const Polynomial& hp(int k, int l);
  const Polynomial& r(int m);
  const Polynomial& px(int k);
  const Polynomial& py(int k);

 private:
  void check_range(const char* family, int index, int min_index) const;

  const Polynomial& q_impl(int k);
  const Polynomial& p_impl(int k);
  const Polynomial& pi_impl(int k);
  const Polynomial& hp_impl(int k, int l);
  const Polynomial& r_impl(int m);
  const Polynomial& px_impl(int k);
  const Polynomial& py_impl(int k);

  int max_index_;
  std::recursive_mutex mutex_;
  std::map<int, Polynomial> q_;
  std::map<int, Polynomial> p_;
  std::map<int, Polynomial> pi_;
  std::map<std::pair<int, int>, Polynomial> hp_;
  std::map<int, Polynomial> r_;
  std::map<int, Polynomial> px_;
  std::map<int, Polynomial> py_;
};

const Polynomial& compute_q(int k);
const Polynomial& compute_p(int k);
const Polynomial& compute_pi(int k);
const Polynomial& compute_hp(int k, int l);
const Polynomial& compute_r(int m);
const Polynomial& compute_px(int k);
const Polynomial& compute_py(int k);

/// n!! for n >= -1, with (-1)!! = 0!! = 1.
BigInt double_factorial(int n);

/// (2k+2l-5)!! - (2k-3)!!(2l-3)!!, the leading coefficient of hp_kl.
BigInt leading_constant_c(int k, int l);

/// Binomial coefficient C(n, k) as an exact integer.
BigInt binomial(int n, int k);

struct ConjectureRow {
  int k = 0;
  int l = 0;
  Polynomial stated;    ///< literal asymptotic-covariance polynomial
  Polynomial computed;  ///< hp_kl from the family cache
  /// computed - stated, coefficient-wise from degree 0 upward.
  std::vector<Rational> difference;
  bool identical = false;
};

/// Stated asymptotic-covariance polynomials for (2,2), (3,3), (2,3) next to
/// hp_kl. Reports differences without judging them.
std::vector<ConjectureRow> conjecture_report();

}  // namespace erlab::poly
