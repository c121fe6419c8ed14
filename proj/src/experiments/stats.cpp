#include "erlab/experiments/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace erlab::experiments {

void MomentAccumulator::add(double x) noexcept {
  const double n1 = static_cast<double>(count_);
  ++count_;
  const double n = static_cast<double>(count_);
  const double delta = x - mean_;
  const double delta_n = delta / n;
  const double delta_n2 = delta_n * delta_n;
  const double term1 = delta * delta_n * n1;
  mean_ += delta_n;
  m4_ += term1 * delta_n2 * (n * n - 3 * n + 3) + 6 * delta_n2 * m2_ - 4 * delta_n * m3_;
  m3_ += term1 * delta_n * (n - 2) - 3 * delta_n * m2_;
  m2_ += term1;
}

void MomentAccumulator::merge(const MomentAccumulator& other) noexcept {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(other.count_);
  const double n = na + nb;
  const double delta = other.mean_ - mean_;
  const double delta2 = delta * delta;

  const double m2 = m2_ + other.m2_ + delta2 * na * nb / n;
  const double m3 = m3_ + other.m3_ + delta2 * delta * na * nb * (na - nb) / (n * n) +
                    3 * delta * (na * other.m2_ - nb * m2_) / n;
  const double m4 = m4_ + other.m4_ + delta2 * delta2 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n) +
                    6 * delta2 * (na * na * other.m2_ + nb * nb * m2_) / (n * n) +
                    4 * delta * (na * other.m3_ - nb * m3_) / n;

  mean_ += delta * nb / n;
  m2_ = m2;
  m3_ = m3;
  m4_ = m4;
  count_ += other.count_;
}

double MomentAccumulator::variance() const noexcept {
  return count_ < 2 ? 0.0 : m2_ / static_cast<double>(count_ - 1);
}

double MomentAccumulator::skewness() const noexcept {
  if (count_ == 0 || m2_ == 0.0) return 0.0;
  return std::sqrt(static_cast<double>(count_)) * m3_ / std::pow(m2_, 1.5);
}

double MomentAccumulator::excess_kurtosis() const noexcept {
  if (count_ == 0 || m2_ == 0.0) return 0.0;
  return static_cast<double>(count_) * m4_ / (m2_ * m2_) - 3.0;
}

CovarianceAccumulator::CovarianceAccumulator(std::size_t dimension)
    : means_(dimension, 0.0), comoments_(dimension * dimension, 0.0) {}

void CovarianceAccumulator::add(std::span<const double> x) {
  const std::size_t d = dimension();
  if (x.size() != d) throw std::invalid_argument("sample dimension mismatch");
  ++count_;
  const double n = static_cast<double>(count_);
  std::vector<double> before(d);
  for (std::size_t i = 0; i < d; ++i) {
    before[i] = x[i] - means_[i];
    means_[i] += before[i] / n;
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) comoments_[i * d + j] += before[i] * (x[j] - means_[j]);
  }
}

void CovarianceAccumulator::merge(const CovarianceAccumulator& other) {
  const std::size_t d = dimension();
  if (other.dimension() != d) throw std::invalid_argument("accumulator dimension mismatch");
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(other.count_);
  const double n = na + nb;
  std::vector<double> delta(d);
  for (std::size_t i = 0; i < d; ++i) delta[i] = other.means_[i] - means_[i];
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      comoments_[i * d + j] += other.comoments_[i * d + j] + delta[i] * delta[j] * na * nb / n;
    }
  }
  for (std::size_t i = 0; i < d; ++i) means_[i] += delta[i] * nb / n;
  count_ += other.count_;
}

double CovarianceAccumulator::covariance(std::size_t i, std::size_t j) const {
  const std::size_t d = dimension();
  if (i >= d || j >= d) throw std::out_of_range("covariance index");
  return count_ < 2 ? 0.0 : comoments_[i * d + j] / static_cast<double>(count_ - 1);
}

double jarque_bera(std::uint64_t count, double skewness, double excess_kurtosis) noexcept {
  return static_cast<double>(count) * (skewness * skewness / 6.0 + excess_kurtosis * excess_kurtosis / 24.0);
}

SummaryStats summarize(const MomentAccumulator& acc) noexcept {
  SummaryStats out;
  out.count = acc.count();
  out.mean = acc.mean();
  out.variance = acc.variance();
  out.skewness = acc.skewness();
  out.excess_kurtosis = acc.excess_kurtosis();
  out.jarque_bera = jarque_bera(out.count, out.skewness, out.excess_kurtosis);
  return out;
}

NormalityResult normality_suite(std::span<const double> samples, double theory_mean, double theory_variance) {
  if (samples.size() < 100) {
    throw std::invalid_argument("normality test needs at least 100 samples, got " + std::to_string(samples.size()));
  }
  if (!(theory_variance > 0.0)) throw std::invalid_argument("theoretical variance must be positive");
  const double scale = std::sqrt(theory_variance);
  MomentAccumulator acc;
  for (double x : samples) acc.add((x - theory_mean) / scale);
  if (acc.variance() == 0.0) throw std::domain_error("degenerate sample: zero variance");
  NormalityResult out;
  out.standardized = summarize(acc);
  out.pass = out.standardized.jarque_bera < kJarqueBeraCritical;
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of an empty sample");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

}  // namespace erlab::experiments
