#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "erlab/experiments/stats.hpp"
#include "erlab/graph/random_graph.hpp"
#include "json.hpp"

namespace erlab::experiments {

/// How the edge density of G(n, .) is given. `m` selects the G(n,m) model.
enum class DensityKind { p, t, nt, m };

struct DensitySpec {
  DensityKind kind = DensityKind::nt;
  double value = 0.5;
};

/// Edge probability for n vertices: p as given, 1-exp(-t), 1-exp(-nt/n), or m/N.
/// Throws std::invalid_argument if the result is not in [0, 1].
[[nodiscard]] double resolve_p(const DensitySpec& density, std::uint32_t n);

/// n t = -n log(1-p).
[[nodiscard]] double resolve_nt(const DensitySpec& density, std::uint32_t n);

enum class ExperimentKind { lln, clt, covariance, inverse_chi, supercritical, critical_scaling, drift };

[[nodiscard]] std::string_view kind_name(ExperimentKind kind) noexcept;
/// Accepts the kind names plus the aliases "subcritical" (lln) and "critical".
[[nodiscard]] std::optional<ExperimentKind> parse_kind(std::string_view name);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::lln;
  std::uint32_t n = 100'000;
  DensitySpec density;
  int kmax = 4;
  std::uint64_t replicates = 200;
  std::uint64_t master_seed = 0;
  double lambda = 1.5;                    ///< supercritical
  std::vector<std::uint32_t> n_list;      ///< critical_scaling, inverse_chi
  std::vector<double> nt_grid;            ///< inverse_chi

  /// Throws std::invalid_argument on R < 2, unresolvable density, bad kmax.
  void validate() const;
};

/// Harness defaults per kind (replicate counts, n, grids).
[[nodiscard]] ExperimentConfig default_config(ExperimentKind kind);

/// One G(n,p) (or G(n,m)) replicate with seed derive_seed(master_seed, index).
[[nodiscard]] graph::SnapshotSummary run_replicate(const ExperimentConfig& config, std::uint64_t index);

/// All replicates, sorted by replicate index.
[[nodiscard]] std::vector<graph::SnapshotSummary> run_replicates(const ExperimentConfig& config, unsigned threads);

/// Hands replicates to `sink` in index order while holding at most one block
/// of them in memory.
void stream_replicates(const ExperimentConfig& config, unsigned threads,
                       const std::function<void(const graph::SnapshotSummary&)>& sink);

/// One checked statistic. z = (empirical - theory)/se when se > 0, NaN otherwise.
struct TheoryComparison {
  std::string name;
  double empirical = 0.0;
  double theory = 0.0;
  double se = 0.0;
  double z = 0.0;
  bool pass = false;
  std::string criterion;  ///< the acceptance rule, in words
  std::string source;     ///< the formula the theoretical value comes from
};

/// Passes when |z| < max_z.
[[nodiscard]] TheoryComparison compare_z(std::string name, double empirical, double theory, double se,
                                         double max_z, std::string source);
/// Passes when lo <= empirical/theory <= hi.
[[nodiscard]] TheoryComparison compare_ratio(std::string name, double empirical, double theory, double se,
                                             double lo, double hi, std::string source);
/// Passes when lo <= empirical <= hi; theory is reported as NaN.
[[nodiscard]] TheoryComparison compare_interval(std::string name, double empirical, double lo, double hi,
                                                std::string source);

struct SuiteReport {
  std::string suite;
  nlohmann::ordered_json config;
  std::vector<TheoryComparison> rows;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
  std::vector<std::string> warnings;

  [[nodiscard]] bool passed() const;
  /// {config, per_statistic, details, verdict, warnings}; deterministic for a
  /// given config, so the dump is byte-identical across runs and thread counts.
  [[nodiscard]] nlohmann::ordered_json to_json() const;
};

/// Streaming aggregate of a subcritical G(n,p) run.
struct SubcriticalSample {
  std::uint32_t n = 0;
  double p = 0.0;
  double nt = 0.0;
  int kmax = 0;
  MomentAccumulator chi;
  std::vector<MomentAccumulator> scaled_moments;  ///< S_k/n for k = 2..kmax
  CovarianceAccumulator scaled{0};                ///< S_2/n .. S_kmax/n
  std::vector<double> chi_values;
  std::uint64_t master_seed = 0;
};

/// Requires kmax >= 3 and 0 <= nt < 1.
[[nodiscard]] SubcriticalSample collect_subcritical(const ExperimentConfig& config, unsigned threads);

/// Mean chi within 1% of 1/(1-nt); mean S_k/n within 3 SE of p_k(1/(1-nt)).
[[nodiscard]] std::vector<TheoryComparison> lln_comparisons(const SubcriticalSample& sample);
/// Var(chi) against 2p/(1-np)^5; Var(S_k)/n and Cov(S_2,S_3)/n against hp; all within 30%.
[[nodiscard]] std::vector<TheoryComparison> covariance_comparisons(const SubcriticalSample& sample);
/// Jarque-Bera of standardized chi, plus the normal and exponential controls.
[[nodiscard]] std::vector<TheoryComparison> clt_comparisons(const SubcriticalSample& sample);

/// Positive control: R standard normal draws must pass Jarque-Bera.
/// Negative control: R exponential draws must fail it.
[[nodiscard]] std::vector<TheoryComparison> normality_controls(std::uint64_t seed, std::uint64_t count);

/// G(n, lambda/n): giant component against n rho(lambda) and S_2 against |C_1|^2.
[[nodiscard]] SuiteReport supercritical_check(std::uint32_t n, double lambda, std::uint64_t replicates,
                                              std::uint64_t seed, unsigned threads);

/// G(n, 1/n) for each n: medians of n^{-4/3} S_2 must agree within a factor 2.
[[nodiscard]] SuiteReport critical_scaling(std::span<const std::uint32_t> n_list, std::uint64_t replicates,
                                           std::uint64_t seed, unsigned threads);

/// D(n) = max over the grid of median |1/chi - (1-nt)_+|; needs exactly two
/// sizes n1 < n2 and passes when D(n2)/D(n1) < 1.
[[nodiscard]] SuiteReport inverse_chi_scan(std::span<const std::uint32_t> n_pair, std::span<const double> nt_grid,
                                           std::uint64_t replicates, std::uint64_t seed, unsigned threads);

/// Short continuous-time windows from one fixed state at density nt: mean
/// growth rate of S_2 and S_3 against the exact drift V_2, V_3.
[[nodiscard]] SuiteReport drift_check(std::uint32_t n, double nt, std::uint64_t windows, std::uint64_t seed,
                                      unsigned threads);

/// Runs the suite selected by config.kind.
[[nodiscard]] SuiteReport run_suite(const ExperimentConfig& config, unsigned threads);

}  // namespace erlab::experiments
