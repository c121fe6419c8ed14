#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace erlab::experiments {

/// 0.999 quantile of the chi-square distribution with 2 degrees of freedom,
/// -2 log(0.001).
inline constexpr double kJarqueBeraCritical = 13.815510557964274;

/// Single-pass central moments up to order four (Welford / Pébay updates).
/// Partial accumulators merge exactly in the algebraic sense.
class MomentAccumulator {
 public:
  void add(double x) noexcept;
  void merge(const MomentAccumulator& other) noexcept;

  [[nodiscard]] std::uint64_t count() const noexcept { return count_; }
  [[nodiscard]] double mean() const noexcept { return mean_; }
  /// Unbiased sample variance; 0 for fewer than two samples.
  [[nodiscard]] double variance() const noexcept;
  /// g1 = m3 / m2^{3/2} with population central moments.
  [[nodiscard]] double skewness() const noexcept;
  /// g2 = m4 / m2^2 - 3.
  [[nodiscard]] double excess_kurtosis() const noexcept;

 private:
  std::uint64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double m3_ = 0.0;
  double m4_ = 0.0;
};

/// Streaming means and co-moments of a fixed-dimension vector.
class CovarianceAccumulator {
 public:
  explicit CovarianceAccumulator(std::size_t dimension);

  void add(std::span<const double> x);
  void merge(const CovarianceAccumulator& other);

  [[nodiscard]] std::size_t dimension() const noexcept { return means_.size(); }
  [[nodiscard]] std::uint64_t count() const noexcept { return count_; }
  [[nodiscard]] double mean(std::size_t i) const { return means_.at(i); }
  /// Unbiased sample covariance.
  [[nodiscard]] double covariance(std::size_t i, std::size_t j) const;

 private:
  std::uint64_t count_ = 0;
  std::vector<double> means_;
  std::vector<double> comoments_;  // row-major dimension x dimension
};

/// R (g1^2/6 + g2^2/24).
[[nodiscard]] double jarque_bera(std::uint64_t count, double skewness, double excess_kurtosis) noexcept;

struct SummaryStats {
  std::uint64_t count = 0;
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  double jarque_bera = 0.0;
};

[[nodiscard]] SummaryStats summarize(const MomentAccumulator& acc) noexcept;

struct NormalityResult {
  SummaryStats standardized;  ///< statistics of (x - mean) / sqrt(variance)
  bool pass = false;          ///< JB below kJarqueBeraCritical
};

/// Standardizes the sample by the supplied theoretical mean and variance and
/// applies the Jarque-Bera test at the 0.999 level. Needs at least 100
/// samples (std::invalid_argument) and a non-degenerate sample
/// (std::domain_error).
[[nodiscard]] NormalityResult normality_suite(std::span<const double> samples, double theory_mean,
                                              double theory_variance);

/// Median; averages the two middle values for even sizes.
[[nodiscard]] double median(std::vector<double> values);

}  // namespace erlab::experiments
