#include "erlab/poly/families.hpp"

#include <stdexcept>
#include <string>

namespace erlab::poly {

namespace {

void require_integral(const Polynomial& poly, const std::string& name) {
  if (!poly.has_integer_coefficients()) {
    throw std::logic_error(name + " has a non-integral coefficient: " + poly.to_string());
  }
}

// x^3 - x^2
const Polynomial& cubic_shift() {
  static const Polynomial poly = Polynomial::from_integers({0, 0, -1, 1});
  return poly;
}

// One step of r_{m+1} = x r_m + (x^3 - x^2) r_m', shared by p_k and r_m.
Polynomial linear_step(const Polynomial& prev) {
  return prev.times_x_power(1) + cubic_shift() * prev.derivative();
}

}  // namespace

PolyFamilyCache::PolyFamilyCache(int max_index) : max_index_(max_index) {
  if (max_index < 2) throw std::invalid_argument("max_index must be at least 2");
}

PolyFamilyCache& PolyFamilyCache::shared() {
  static PolyFamilyCache cache;
  return cache;
}

void PolyFamilyCache::check_range(const char* family, int index, int min_index) const {
  if (index < min_index) {
    throw std::invalid_argument(std::string(family) + " index " + std::to_string(index) +
                                " is below the minimum " + std::to_string(min_index));
  }
  if (index > max_index_) {
    throw std::out_of_range(std::string(family) + " index " + std::to_string(index) +
                            " exceeds the guardrail " + std::to_string(max_index_) +
                            "; construct a cache with a larger max_index");
  }
}

const Polynomial& PolyFamilyCache::q(int k) {
  check_range("q", k, 3);
  std::lock_guard lock(mutex_);
  return q_impl(k);
}

const Polynomial& PolyFamilyCache::p(int k) {
  check_range("p", k, 2);
  std::lock_guard lock(mutex_);
  return p_impl(k);
}

const Polynomial& PolyFamilyCache::pi(int k) {
  check_range("pi", k, 2);
  std::lock_guard lock(mutex_);
  return pi_impl(k);
}

const Polynomial& PolyFamilyCache::hp(int k, int l) {
  check_range("hp", k, 2);
  check_range("hp", l, 2);
  std::lock_guard lock(mutex_);
  return hp_impl(k, l);
}

const Polynomial& PolyFamilyCache::r(int m) {
  check_range("r", m, 0);
  std::lock_guard lock(mutex_);
  return r_impl(m);
}

const Polynomial& PolyFamilyCache::px(int k) {
  check_range("px", k, 2);
  std::lock_guard lock(mutex_);
  return px_impl(k);
}

const Polynomial& PolyFamilyCache::py(int k) {
  check_range("py", k, 2);
  std::lock_guard lock(mutex_);
  return py_impl(k);
}

// q_k' = 1/2 sum_{l=2}^{k-2} C(k,l) q_{l+1} q_{k+1-l}, q_k(1) = 1.
// Every index on the right lies in [3, k-1].
const Polynomial& PolyFamilyCache::q_impl(int k) {
  if (auto it = q_.find(k); it != q_.end()) return it->second;
  Polynomial derivative;
  for (int l = 2; l <= k - 2; ++l) {
    Rational weight = Rational(binomial(k, l)) / 2;
    derivative += weight * (q_impl(l + 1) * q_impl(k + 1 - l));
  }
  Polynomial result = derivative.antiderivative();
  result += Polynomial::constant(Rational(1) - result.evaluate(Rational(1)));
  require_integral(result, "q_" + std::to_string(k));
  return q_.emplace(k, std::move(result)).first->second;
}

const Polynomial& PolyFamilyCache::p_impl(int k) {
  if (auto it = p_.find(k); it != p_.end()) return it->second;
  Polynomial result = k == 2 ? Polynomial::identity() : linear_step(p_impl(k - 1));
  require_integral(result, "p_" + std::to_string(k));
  return p_.emplace(k, std::move(result)).first->second;
}

const Polynomial& PolyFamilyCache::pi_impl(int k) {
  if (auto it = pi_.find(k); it != pi_.end()) return it->second;
  const Polynomial& pk = p_impl(k);
  Polynomial via_derivative = pk + Polynomial::from_integers({0, -1, 1}) * pk.derivative();
  Polynomial via_shift = p_impl(k + 1).divided_by_x_power(1);
  if (via_derivative != via_shift) {
    throw std::logic_error("pi_" + std::to_string(k) + ": p_k + (x^2-x)p_k' = " +
                           via_derivative.to_string() + " but p_{k+1}/x = " + via_shift.to_string());
  }
  require_integral(via_shift, "pi_" + std::to_string(k));
  return pi_.emplace(k, std::move(via_shift)).first->second;
}

// hp_kl = p_{k+l} - p_{k+1} p_{l+1} / x
const Polynomial& PolyFamilyCache::hp_impl(int k, int l) {
  const std::pair key{k, l};
  if (auto it = hp_.find(key); it != hp_.end()) return it->second;
  Polynomial result = p_impl(k + l) - (p_impl(k + 1) * p_impl(l + 1)).divided_by_x_power(1);
  require_integral(result, "hp_" + std::to_string(k) + "," + std::to_string(l));
  return hp_.emplace(key, std::move(result)).first->second;
}

const Polynomial& PolyFamilyCache::r_impl(int m) {
  if (auto it = r_.find(m); it != r_.end()) return it->second;
  Polynomial result = m == 0 ? Polynomial::constant(1) : linear_step(r_impl(m - 1));
  require_integral(result, "r_" + std::to_string(m));
  return r_.emplace(m, std::move(result)).first->second;
}

// px_k = x^2 sum_{l,m=1}^{k-1} 1/2 C(k,l) C(k,m) q_{l+m+1} q_{2k+1-l-m}
const Polynomial& PolyFamilyCache::px_impl(int k) {
  if (auto it = px_.find(k); it != px_.end()) return it->second;
  Polynomial sum;
  for (int l = 1; l <= k - 1; ++l) {
    for (int m = 1; m <= k - 1; ++m) {
      Rational weight = Rational(binomial(k, l) * binomial(k, m)) / 2;
      sum += weight * (q_impl(l + m + 1) * q_impl(2 * k + 1 - l - m));
    }
  }
  Polynomial result = sum.times_x_power(2);
  require_integral(result, "px_" + std::to_string(k));
  return px_.emplace(k, std::move(result)).first->second;
}

// py_k' = px_k / x^2, py_k(1) = 0. Not integral in general (py_4 has thirds).
const Polynomial& PolyFamilyCache::py_impl(int k) {
  if (auto it = py_.find(k); it != py_.end()) return it->second;
  Polynomial result = px_impl(k).divided_by_x_power(2).antiderivative();
  result -= Polynomial::constant(result.evaluate(Rational(1)));
  return py_.emplace(k, std::move(result)).first->second;
}

const Polynomial& compute_q(int k) { return PolyFamilyCache::shared().q(k); }
const Polynomial& compute_p(int k) { return PolyFamilyCache::shared().p(k); }
const Polynomial& compute_pi(int k) { return PolyFamilyCache::shared().pi(k); }
const Polynomial& compute_hp(int k, int l) { return PolyFamilyCache::shared().hp(k, l); }
const Polynomial& compute_r(int m) { return PolyFamilyCache::shared().r(m); }
const Polynomial& compute_px(int k) { return PolyFamilyCache::shared().px(k); }
const Polynomial& compute_py(int k) { return PolyFamilyCache::shared().py(k); }

BigInt double_factorial(int n) {
  if (n < -1) throw std::invalid_argument("double factorial needs n >= -1");
  BigInt out = 1;
  for (int i = n; i > 1; i -= 2) out *= i;
  return out;
}

BigInt leading_constant_c(int k, int l) {
  if (k < 2 || l < 2) throw std::invalid_argument("leading_constant_c needs k, l >= 2");
  return double_factorial(2 * k + 2 * l - 5) - double_factorial(2 * k - 3) * double_factorial(2 * l - 3);
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt out = 1;
  for (int i = 1; i <= k; ++i) {
    out *= n - k + i;
    out /= i;
  }
  return out;
}

std::vector<ConjectureRow> conjecture_report() {
  struct Stated {
    int k;
    int l;
    Polynomial poly;
  };
  const std::vector<Stated> stated{
      {2, 2, Polynomial::from_integers({0, 0, 0, 0, 0, 2})},
      {3, 3, Polynomial::from_integers({0, 0, 0, 0, 0, 0, -24, 126, -198, 96})},
      {2, 3, Polynomial::from_integers({0, 0, 0, 0, 0, 6, -18, 12})},
  };
  std::vector<ConjectureRow> rows;
  for (const auto& s : stated) {
    ConjectureRow row;
    row.k = s.k;
    row.l = s.l;
    row.stated = s.poly;
    row.computed = compute_hp(s.k, s.l);
    const int top = std::max(row.stated.degree(), row.computed.degree());
    for (int i = 0; i <= top; ++i) {
      row.difference.push_back(row.computed.coeff(static_cast<std::size_t>(i)) -
                               row.stated.coeff(static_cast<std::size_t>(i)));
    }
    row.identical = row.stated == row.computed;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace erlab::poly
