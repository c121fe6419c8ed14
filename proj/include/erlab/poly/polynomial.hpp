#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace erlab::poly {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Dense univariate polynomial over the rationals.
///
/// Coefficients are stored from degree 0 upward and kept canonical: the
/// highest stored coefficient is nonzero, and the zero polynomial has no
/// coefficients at all.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);

  static Polynomial constant(const Rational& c);
  static Polynomial monomial(const Rational& c, std::size_t power);
  /// The polynomial `x`.
  static Polynomial identity();
  /// Builds from integer literals listed from degree 0 upward.
  static Polynomial from_integers(std::initializer_list<long long> ascending);

  [[nodiscard]] bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Degree, or -1 for the zero polynomial.
  [[nodiscard]] int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] std::span<const Rational> coefficients() const noexcept { return coeffs_; }
  /// Coefficient of x^power; zero past the degree.
  [[nodiscard]] Rational coeff(std::size_t power) const;
  /// Leading coefficient; zero for the zero polynomial.
  [[nodiscard]] Rational leading() const;
  /// Power of the lowest nonzero term, or -1 for the zero polynomial.
  [[nodiscard]] int lowest_power() const noexcept;

  [[nodiscard]] Polynomial derivative() const;
  /// Term-by-term antiderivative with zero constant of integration.
  [[nodiscard]] Polynomial antiderivative() const;
  [[nodiscard]] Polynomial times_x_power(std::size_t power) const;
  /// Divides by x^power; throws std::domain_error when a low coefficient
  /// would be discarded.
  [[nodiscard]] Polynomial divided_by_x_power(std::size_t power) const;

  [[nodiscard]] Rational evaluate(const Rational& x) const;
  /// Horner evaluation in double precision.
  [[nodiscard]] double evaluate(double x) const;

  [[nodiscard]] bool has_integer_coefficients() const;

  /// Descending powers with explicit signs, e.g. "3x^5 - 2x^4".
  [[nodiscard]] std::string to_string() const;
  /// Decimal coefficient strings from degree 0 upward ("a/b" if non-integral).
  [[nodiscard]] std::vector<std::string> coefficient_strings() const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Rational& scalar);

  friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
  friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
  friend Polynomial operator*(Polynomial lhs, const Rational& s) { return lhs *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial rhs) { return rhs *= s; }
  friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);
  friend bool operator==(const Polynomial& lhs, const Polynomial& rhs) = default;

 private:
  void normalize();

  std::vector<Rational> coeffs_;
};

}  // namespace erlab::poly
