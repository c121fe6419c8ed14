#include "erlab/experiments/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/random/exponential_distribution.hpp>
#include <boost/random/normal_distribution.hpp>

#include "erlab/experiments/parallel.hpp"
#include "erlab/experiments/theory.hpp"
#include "erlab/random.hpp"

namespace erlab::experiments {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::uint64_t kStreamBlock = 256;

std::string density_name(DensityKind kind) {
  switch (kind) {
    case DensityKind::p: return "p";
    case DensityKind::t: return "t";
    case DensityKind::nt: return "nt";
    case DensityKind::m: return "m";
  }
  return "?";
}

TheoryComparison make_row(std::string name, double empirical, double theory, double se, bool pass,
                          std::string criterion, std::string source) {
  TheoryComparison row;
  row.name = std::move(name);
  row.empirical = empirical;
  row.theory = theory;
  row.se = se;
  row.z = se > 0.0 && std::isfinite(theory) ? (empirical - theory) / se : kNaN;
  row.pass = pass;
  row.criterion = std::move(criterion);
  row.source = std::move(source);
  return row;
}

std::string fixed(double value) { return graph::format_double(value); }

// Standard error of an unbiased variance estimate, from the sample kurtosis.
double variance_se(const MomentAccumulator& acc) {
  const double r = static_cast<double>(acc.count());
  const double s2 = acc.variance();
  const double factor = acc.excess_kurtosis() + 3.0 - (r - 3.0) / (r - 1.0);
  return s2 * std::sqrt(std::max(factor, 0.0) / r);
}

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }
double min_of(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }

nlohmann::ordered_json json_number(double value) {
  if (std::isnan(value)) return nullptr;
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return value;
}

}  // namespace

double resolve_p(const DensitySpec& density, std::uint32_t n) {
  double p = 0.0;
  switch (density.kind) {
    case DensityKind::p: p = density.value; break;
    case DensityKind::t: p = -std::expm1(-density.value); break;
    case DensityKind::nt: p = -std::expm1(-density.value / static_cast<double>(n)); break;
    case DensityKind::m: {
      const double pairs = static_cast<double>(graph::pair_count(n));
      if (density.value < 0 || density.value != std::floor(density.value) || density.value > pairs) {
        throw std::invalid_argument("edge count m must be an integer in [0, n(n-1)/2]");
      }
      p = pairs > 0 ? density.value / pairs : 0.0;
      break;
    }
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("density " + density_name(density.kind) + " = " + fixed(density.value) +
                                " does not give an edge probability in [0, 1]");
  }
  return p;
}

double resolve_nt(const DensitySpec& density, std::uint32_t n) {
  if (density.kind == DensityKind::nt) return density.value;
  return -static_cast<double>(n) * std::log1p(-resolve_p(density, n));
}

std::string_view kind_name(ExperimentKind kind) noexcept {
  switch (kind) {
    case ExperimentKind::lln: return "lln";
    case ExperimentKind::clt: return "clt";
    case ExperimentKind::covariance: return "covariance";
    case ExperimentKind::inverse_chi: return "inverse_chi";
    case ExperimentKind::supercritical: return "supercritical";
    case ExperimentKind::critical_scaling: return "critical_scaling";
    case ExperimentKind::drift: return "drift";
  }
  return "?";
}

std::optional<ExperimentKind> parse_kind(std::string_view name) {
  if (name == "subcritical") return ExperimentKind::lln;
  if (name == "critical") return ExperimentKind::critical_scaling;
  for (auto kind : {ExperimentKind::lln, ExperimentKind::clt, ExperimentKind::covariance, ExperimentKind::inverse_chi,
                    ExperimentKind::supercritical, ExperimentKind::critical_scaling, ExperimentKind::drift}) {
    if (kind_name(kind) == name) return kind;
  }
  return std::nullopt;
}

void ExperimentConfig::validate() const {
  if (replicates < 2) throw std::invalid_argument("replicates must be at least 2");
  if (kmax < 2 || kmax > graph::kMaxTrackedMoment) {
    throw std::invalid_argument("kmax must be in [2, " + std::to_string(graph::kMaxTrackedMoment) + "]");
  }
  switch (kind) {
    case ExperimentKind::lln:
    case ExperimentKind::clt:
    case ExperimentKind::covariance: {
      if (n < 2) throw std::invalid_argument("n must be at least 2");
      if (kmax < 3) throw std::invalid_argument("subcritical suites need kmax >= 3");
      const double nt = resolve_nt(density, n);
      if (!(nt >= 0.0 && nt < 1.0)) throw std::invalid_argument("subcritical suites need 0 <= nt < 1");
      if (kind == ExperimentKind::clt && replicates < 100) {
        throw std::invalid_argument("the normality test needs at least 100 replicates");
      }
      break;
    }
    case ExperimentKind::drift:
      if (n < 2) throw std::invalid_argument("n must be at least 2");
      if (!(resolve_nt(density, n) >= 0.0)) throw std::invalid_argument("drift needs nt >= 0");
      break;
    case ExperimentKind::supercritical:
      if (n < 2) throw std::invalid_argument("n must be at least 2");
      if (!(lambda > 1.0 + 1e-9) || lambda > static_cast<double>(n)) {
        throw std::invalid_argument("supercritical check needs 1 < lambda <= n");
      }
      break;
    case ExperimentKind::critical_scaling:
      if (n_list.empty()) throw std::invalid_argument("critical scaling needs at least one n");
      for (auto size : n_list) {
        if (size < 1000) throw std::invalid_argument("critical scaling needs every n >= 1000");
      }
      break;
    case ExperimentKind::inverse_chi:
      if (n_list.size() != 2 || n_list[0] >= n_list[1] || n_list[0] < 2) {
        throw std::invalid_argument("inverse chi scan needs two sizes n1 < n2");
      }
      if (nt_grid.empty()) throw std::invalid_argument("inverse chi scan needs a non-empty nt grid");
      for (double nt : nt_grid) {
        if (!(nt >= 0.0 && nt <= 2.0)) throw std::invalid_argument("nt grid values must lie in [0, 2]");
      }
      break;
  }
}

ExperimentConfig default_config(ExperimentKind kind) {
  ExperimentConfig config;
  config.kind = kind;
  switch (kind) {
    case ExperimentKind::lln: config.replicates = 200; break;
    case ExperimentKind::clt:
    case ExperimentKind::covariance: config.replicates = 2000; break;
    case ExperimentKind::supercritical: config.replicates = 50; break;
    case ExperimentKind::critical_scaling:
      config.replicates = 200;
      config.kmax = 2;
      config.n_list = {10'000, 40'000, 160'000};
      break;
    case ExperimentKind::inverse_chi:
      config.replicates = 50;
      config.kmax = 2;
      config.n_list = {10'000, 80'000};
      config.nt_grid = {0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 2.0};
      break;
    case ExperimentKind::drift:
      config.n = 10'000;
      config.replicates = 500;
      config.kmax = 5;
      break;
  }
  return config;
}

graph::SnapshotSummary run_replicate(const ExperimentConfig& config, std::uint64_t index) {
  const std::uint64_t seed = derive_seed(config.master_seed, index);
  graph::SnapshotSummary out =
      config.density.kind == DensityKind::m
          ? graph::sample_gnm(config.n, static_cast<std::uint64_t>(config.density.value), config.kmax, seed)
          : graph::sample_gnp(config.n, resolve_p(config.density, config.n), config.kmax, seed);
  out.replicate = index;
  return out;
}

std::vector<graph::SnapshotSummary> run_replicates(const ExperimentConfig& config, unsigned threads) {
  config.validate();
  return parallel_indexed<graph::SnapshotSummary>(config.replicates, threads,
                                                  [&](std::uint64_t i) { return run_replicate(config, i); });
}

void stream_replicates(const ExperimentConfig& config, unsigned threads,
                       const std::function<void(const graph::SnapshotSummary&)>& sink) {
  config.validate();
  for (std::uint64_t start = 0; start < config.replicates; start += kStreamBlock) {
    const std::uint64_t size = std::min(kStreamBlock, config.replicates - start);
    auto block = parallel_indexed<graph::SnapshotSummary>(
        size, threads, [&](std::uint64_t i) { return run_replicate(config, start + i); });
    for (const auto& row : block) sink(row);
  }
}

TheoryComparison compare_z(std::string name, double empirical, double theory, double se, double max_z,
                           std::string source) {
  auto row = make_row(std::move(name), empirical, theory, se, false, "|z| < " + fixed(max_z), std::move(source));
  row.pass = std::isfinite(row.z) && std::abs(row.z) < max_z;
  return row;
}

TheoryComparison compare_ratio(std::string name, double empirical, double theory, double se, double lo, double hi,
                               std::string source) {
  const double ratio = empirical / theory;
  return make_row(std::move(name), empirical, theory, se, ratio >= lo && ratio <= hi,
                  "empirical/theory in [" + fixed(lo) + ", " + fixed(hi) + "]", std::move(source));
}

TheoryComparison compare_interval(std::string name, double empirical, double lo, double hi, std::string source) {
  return make_row(std::move(name), empirical, kNaN, kNaN, empirical >= lo && empirical <= hi,
                  "empirical in [" + fixed(lo) + ", " + fixed(hi) + "]", std::move(source));
}

bool SuiteReport::passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const TheoryComparison& r) { return r.pass; });
}

nlohmann::ordered_json SuiteReport::to_json() const {
  nlohmann::ordered_json out;
  out["suite"] = suite;
  out["config"] = config;
  auto stats = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    stats.push_back({{"name", row.name},
                     {"empirical", json_number(row.empirical)},
                     {"theory", json_number(row.theory)},
                     {"se", json_number(row.se)},
                     {"z", json_number(row.z)},
                     {"verdict", row.pass ? "pass" : "fail"},
                     {"criterion", row.criterion},
                     {"source", row.source}});
  }
  out["per_statistic"] = std::move(stats);
  out["details"] = details;
  out["verdict"] = passed() ? "pass" : "fail";
  out["warnings"] = warnings;
  return out;
}

SubcriticalSample collect_subcritical(const ExperimentConfig& config, unsigned threads) {
  config.validate();
  if (config.kmax < 3) throw std::invalid_argument("subcritical sample needs kmax >= 3");
  SubcriticalSample sample;
  sample.n = config.n;
  sample.p = resolve_p(config.density, config.n);
  sample.nt = resolve_nt(config.density, config.n);
  if (!(sample.nt >= 0.0 && sample.nt < 1.0)) throw std::invalid_argument("subcritical sample needs 0 <= nt < 1");
  sample.kmax = config.kmax;
  sample.master_seed = config.master_seed;
  const auto dim = static_cast<std::size_t>(config.kmax - 1);
  sample.scaled_moments.assign(dim, MomentAccumulator{});
  sample.scaled = CovarianceAccumulator(dim);
  sample.chi_values.reserve(config.replicates);
  const double n = static_cast<double>(config.n);
  std::vector<double> row(dim);
  stream_replicates(config, threads, [&](const graph::SnapshotSummary& snap) {
    sample.chi.add(snap.chi);
    sample.chi_values.push_back(snap.chi);
    for (std::size_t i = 0; i < dim; ++i) {
      row[i] = graph::to_double(snap.s_k(static_cast<int>(i) + 2)) / n;
      sample.scaled_moments[i].add(row[i]);
    }
    sample.scaled.add(row);
  });
  return sample;
}

std::vector<TheoryComparison> lln_comparisons(const SubcriticalSample& sample) {
  std::vector<TheoryComparison> rows;
  const double r = static_cast<double>(sample.chi.count());
  const double x = subcritical_x(sample.nt);
  rows.push_back(compare_ratio("mean chi", sample.chi.mean(), x, std::sqrt(sample.chi.variance() / r), 0.99, 1.01,
                               "1/(1-nt)"));
  for (int k = 2; k <= std::min(sample.kmax, 4); ++k) {
    const auto& acc = sample.scaled_moments[static_cast<std::size_t>(k - 2)];
    rows.push_back(compare_z("mean S_" + std::to_string(k) + "/n", acc.mean(),
                             theory_mean_s_k(sample.n, sample.nt, k) / sample.n, std::sqrt(acc.variance() / r), 3.0,
                             "p_" + std::to_string(k) + "(1/(1-nt))"));
  }
  return rows;
}

std::vector<TheoryComparison> covariance_comparisons(const SubcriticalSample& sample) {
  std::vector<TheoryComparison> rows;
  const double n = static_cast<double>(sample.n);
  const double r = static_cast<double>(sample.chi.count());
  rows.push_back(compare_ratio("var chi", sample.chi.variance(), theory_chi_variance(n, sample.p),
                               variance_se(sample.chi), 0.7, 1.3, "2p/(1-np)^5"));
  for (int k = 2; k <= 3; ++k) {
    const auto& acc = sample.scaled_moments[static_cast<std::size_t>(k - 2)];
    const std::string ks = std::to_string(k);
    rows.push_back(compare_ratio("var S_" + ks + "/n", n * acc.variance(), theory_cov_s_kl(n, sample.nt, k, k) / n,
                                 n * variance_se(acc), 0.7, 1.3, "hp_" + ks + "," + ks + "(1/(1-nt))"));
  }
  const double sxx = sample.scaled.covariance(0, 0);
  const double syy = sample.scaled.covariance(1, 1);
  const double sxy = sample.scaled.covariance(0, 1);
  const double cov_se = std::sqrt((sxx * syy + sxy * sxy) / (r - 1.0));
  rows.push_back(compare_ratio("cov S_2,S_3/n", n * sxy, theory_cov_s_kl(n, sample.nt, 3, 2) / n, n * cov_se, 0.7,
                               1.3, "hp_3,2(1/(1-nt))"));
  return rows;
}

std::vector<TheoryComparison> normality_controls(std::uint64_t seed, std::uint64_t count) {
  std::vector<double> normal(count), exponential(count);
  Rng normal_rng(derive_seed(seed, 0));
  Rng exponential_rng(derive_seed(seed, 1));
  boost::random::normal_distribution<double> gauss;
  boost::random::exponential_distribution<double> expo;
  for (auto& v : normal) v = gauss(normal_rng);
  for (auto& v : exponential) v = expo(exponential_rng);
  const auto pos = normality_suite(normal, 0.0, 1.0);
  const auto neg = normality_suite(exponential, 1.0, 1.0);
  const std::string threshold = fixed(kJarqueBeraCritical);
  return {make_row("JB normal control", pos.standardized.jarque_bera, kNaN, kNaN, pos.pass, "JB < " + threshold,
                   "chi-square(2) 0.999 quantile"),
          make_row("JB exponential control", neg.standardized.jarque_bera, kNaN, kNaN, !neg.pass,
                   "JB >= " + threshold, "chi-square(2) 0.999 quantile")};
}

std::vector<TheoryComparison> clt_comparisons(const SubcriticalSample& sample) {
  const double n = static_cast<double>(sample.n);
  const auto result = normality_suite(sample.chi_values, subcritical_x(sample.nt), theory_chi_variance(n, sample.p));
  std::vector<TheoryComparison> rows;
  rows.push_back(make_row("JB standardized chi", result.standardized.jarque_bera, kNaN, kNaN, result.pass,
                          "JB < " + fixed(kJarqueBeraCritical), "chi ~ N(1/(1-np), 2p/(1-np)^5)"));
  for (auto& row : normality_controls(~sample.master_seed, sample.chi_values.size())) rows.push_back(std::move(row));
  return rows;
}

SuiteReport supercritical_check(std::uint32_t n, double lambda, std::uint64_t replicates, std::uint64_t seed,
                                unsigned threads) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  if (replicates < 1) throw std::invalid_argument("replicates must be positive");
  const double rho = solve_rho(lambda);
  const double p = lambda / static_cast<double>(n);
  if (p > 1.0) throw std::invalid_argument("lambda/n must be at most 1");

  struct Outcome {
    double giant = 0.0;
    double s2_ratio = 0.0;
    bool below = false;
  };
  auto outcomes = parallel_indexed<Outcome>(replicates, threads, [&](std::uint64_t i) {
    const auto snap = graph::sample_gnp(n, p, 2, derive_seed(seed, i));
    const graph::u128 c1 = snap.largest1;
    const graph::u128 c1_sq = c1 * c1;
    Outcome out;
    out.giant = static_cast<double>(snap.largest1) / (static_cast<double>(n) * rho);
    out.s2_ratio = graph::to_double(snap.s_k(2)) / graph::to_double(c1_sq);
    out.below = snap.s_k(2) < c1_sq;
    return out;
  });
  std::vector<double> giant, s2_ratio;
  double below = 0;
  for (const auto& o : outcomes) {
    giant.push_back(o.giant);
    s2_ratio.push_back(o.s2_ratio);
    below += o.below ? 1 : 0;
  }

  SuiteReport report;
  report.suite = "supercritical";
  const double residual = rho_residual(lambda, rho);
  report.rows.push_back(make_row("rho residual", residual, 0.0, kNaN, residual < 1e-12, "residual < 1e-12",
                                 "rho = 1 - exp(-lambda rho)"));
  report.rows.push_back(compare_ratio("median |C_1|/(n rho)", median(giant), 1.0, kNaN, 0.97, 1.03,
                                      "|C_1| ~ n rho(lambda)"));
  report.rows.push_back(
      compare_ratio("median S_2/|C_1|^2", median(s2_ratio), 1.0, kNaN, 1.0, 1.05, "S_2 ~ |C_1|^2"));
  report.rows.push_back(
      compare_interval("replicates with S_2 < |C_1|^2", below, 0.0, 0.0, "|C_1|^2 is one summand of S_2"));
  report.details = {{"rho", rho},
                    {"giant_ratio_min", min_of(giant)},
                    {"giant_ratio_max", max_of(giant)},
                    {"s2_ratio_min", min_of(s2_ratio)},
                    {"s2_ratio_max", max_of(s2_ratio)}};
  const double scale = static_cast<double>(n) * std::pow(lambda - 1.0, 3);
  if (scale < 1e3) {
    report.warnings.push_back("n(lambda-1)^3 = " + fixed(scale) +
                              " is below 1000; the giant component is not yet well separated");
  }
  return report;
}

SuiteReport critical_scaling(std::span<const std::uint32_t> n_list, std::uint64_t replicates, std::uint64_t seed,
                             unsigned threads) {
  if (n_list.empty()) throw std::invalid_argument("critical scaling needs at least one n");
  for (auto n : n_list) {
    if (n < 1000) throw std::invalid_argument("critical scaling needs every n >= 1000");
  }
  if (replicates < 1) throw std::invalid_argument("replicates must be positive");
  const std::uint64_t sizes = n_list.size();
  auto scaled = parallel_indexed<double>(sizes * replicates, threads, [&](std::uint64_t flat) {
    const std::uint64_t j = flat / replicates;
    const std::uint64_t i = flat % replicates;
    const double n = n_list[j];
    const auto snap = graph::sample_gnp(n_list[j], 1.0 / n, 2, derive_seed(derive_seed(seed, j), i));
    return graph::to_double(snap.s_k(2)) * std::pow(n, -4.0 / 3.0);
  });

  SuiteReport report;
  report.suite = "critical_scaling";
  std::vector<double> medians;
  double violations = 0;
  auto per_n = nlohmann::ordered_json::array();
  for (std::uint64_t j = 0; j < sizes; ++j) {
    std::vector<double> values(scaled.begin() + static_cast<std::ptrdiff_t>(j * replicates),
                               scaled.begin() + static_cast<std::ptrdiff_t>((j + 1) * replicates));
    const double floor = std::pow(static_cast<double>(n_list[j]), -1.0 / 3.0);
    // S_2 >= n, checked with a relative slack for the floating-point scaling.
    for (double v : values) violations += v < floor * (1.0 - 1e-12) ? 1 : 0;
    medians.push_back(median(values));
    per_n.push_back({{"n", n_list[j]}, {"median", medians.back()}, {"min", min_of(values)}, {"lower_bound", floor}});
  }
  report.details["per_n"] = std::move(per_n);
  const double ratio = max_of(medians) / min_of(medians);
  report.rows.push_back(make_row("median n^(-4/3) S_2 max/min", ratio, 1.0, kNaN, ratio < 2.0, "ratio < 2",
                                 "n^(-4/3) S_2 converges in distribution at p = 1/n"));
  report.rows.push_back(compare_interval("replicates with n^(-4/3) S_2 < n^(-1/3)", violations, 0.0, 0.0,
                                         "S_2 >= n"));
  return report;
}

SuiteReport inverse_chi_scan(std::span<const std::uint32_t> n_pair, std::span<const double> nt_grid,
                             std::uint64_t replicates, std::uint64_t seed, unsigned threads) {
  if (n_pair.size() != 2 || n_pair[0] >= n_pair[1] || n_pair[0] < 2) {
    throw std::invalid_argument("inverse chi scan needs two sizes n1 < n2");
  }
  if (nt_grid.empty()) throw std::invalid_argument("inverse chi scan needs a non-empty nt grid");
  for (double nt : nt_grid) {
    if (!(nt >= 0.0 && nt <= 2.0)) throw std::invalid_argument("nt grid values must lie in [0, 2]");
  }
  if (replicates < 1) throw std::invalid_argument("replicates must be positive");
  const std::uint64_t grid = nt_grid.size();
  auto deviations = parallel_indexed<double>(2 * grid * replicates, threads, [&](std::uint64_t flat) {
    const std::uint64_t j = flat / (grid * replicates);
    const std::uint64_t g = (flat / replicates) % grid;
    const std::uint64_t i = flat % replicates;
    const double n = n_pair[j];
    const double nt = nt_grid[g];
    const auto snap = graph::sample_gnp(n_pair[j], -std::expm1(-nt / n), 2,
                                        derive_seed(derive_seed(derive_seed(seed, j), g), i));
    return std::abs(1.0 / snap.chi - std::max(1.0 - nt, 0.0));
  });

  SuiteReport report;
  report.suite = "inverse_chi";
  double d[2] = {0.0, 0.0};
  double at_zero = 0.0;
  bool has_zero = false;
  auto per_n = nlohmann::ordered_json::array();
  for (std::uint64_t j = 0; j < 2; ++j) {
    auto medians = nlohmann::ordered_json::array();
    for (std::uint64_t g = 0; g < grid; ++g) {
      const auto begin = deviations.begin() + static_cast<std::ptrdiff_t>((j * grid + g) * replicates);
      const double med = median(std::vector<double>(begin, begin + static_cast<std::ptrdiff_t>(replicates)));
      medians.push_back({{"nt", nt_grid[g]}, {"median", med}});
      d[j] = std::max(d[j], med);
      if (nt_grid[g] == 0.0) {
        has_zero = true;
        at_zero = std::max(at_zero, med);
      }
    }
    per_n.push_back({{"n", n_pair[j]},
                     {"D", d[j]},
                     {"D_times_n_cuberoot", d[j] * std::cbrt(static_cast<double>(n_pair[j]))},
                     {"median_deviation", std::move(medians)}});
  }
  report.details["per_n"] = std::move(per_n);
  const double ratio = d[1] / d[0];
  report.rows.push_back(make_row("D(n2)/D(n1)", ratio, std::cbrt(static_cast<double>(n_pair[0]) / n_pair[1]), kNaN,
                                 ratio < 1.0, "ratio < 1", "1/chi = (1-nt)_+ + O(n^(-1/3))"));
  if (has_zero) {
    report.rows.push_back(compare_interval("median deviation at nt = 0", at_zero, 0.0, 0.0, "empty graph has chi = 1"));
  }
  return report;
}

SuiteReport drift_check(std::uint32_t n, double nt, std::uint64_t windows, std::uint64_t seed, unsigned threads) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  if (!(nt >= 0.0)) throw std::invalid_argument("drift needs nt >= 0");
  if (windows < 2) throw std::invalid_argument("drift needs at least two windows");
  constexpr int kTop = 3;
  graph::RandomGraph base(n, kTop + 2, derive_seed(~seed, 0));
  const double p = -std::expm1(-nt / static_cast<double>(n));
  base.add_random_edges(static_cast<std::uint64_t>(std::llround(p * static_cast<double>(base.pairs()))));
  const double free_pairs = static_cast<double>(base.pairs() - base.edge_count());
  // About ten arrivals per window keeps the drift itself within a few percent.
  const double dt = 10.0 / free_pairs;

  using Rates = std::array<double, kTop + 1>;
  auto rates = parallel_indexed<Rates>(windows, threads, [&](std::uint64_t w) {
    graph::RandomGraph window = base;
    window.reseed(derive_seed(seed, w));
    window.advance_time(dt);
    Rates out{};
    for (int k = 2; k <= kTop; ++k) {
      out[static_cast<std::size_t>(k)] =
          (graph::to_double(window.tracker().s(k)) - graph::to_double(base.tracker().s(k))) / dt;
    }
    return out;
  });

  SuiteReport report;
  report.suite = "drift";
  report.details = {{"base_edges", base.edge_count()}, {"dt", dt}};
  for (int k = 2; k <= kTop; ++k) {
    MomentAccumulator acc;
    for (const auto& r : rates) acc.add(r[static_cast<std::size_t>(k)]);
    const double drift = graph::to_double(base.tracker().drift_v(k));
    const std::string ks = std::to_string(k);
    report.rows.push_back(compare_z("mean dS_" + ks + "/dt", acc.mean(), drift,
                                    std::sqrt(acc.variance() / static_cast<double>(acc.count())), 3.0,
                                    "V_" + ks + " = sum_l C(" + ks + ",l) S_{l+1," + ks + "+1-l}/2"));
  }
  return report;
}

SuiteReport run_suite(const ExperimentConfig& config, unsigned threads) {
  config.validate();
  nlohmann::ordered_json cfg;
  cfg["suite"] = std::string(kind_name(config.kind));
  SuiteReport report;
  switch (config.kind) {
    case ExperimentKind::lln:
    case ExperimentKind::clt:
    case ExperimentKind::covariance: {
      const auto sample = collect_subcritical(config, threads);
      cfg["n"] = config.n;
      cfg["density"] = {{"kind", density_name(config.density.kind)}, {"value", config.density.value}};
      cfg["p"] = sample.p;
      cfg["nt"] = sample.nt;
      cfg["kmax"] = config.kmax;
      cfg["replicates"] = config.replicates;
      cfg["seed"] = config.master_seed;
      report.suite = std::string(kind_name(config.kind));
      if (config.kind == ExperimentKind::lln) report.rows = lln_comparisons(sample);
      if (config.kind == ExperimentKind::covariance) report.rows = covariance_comparisons(sample);
      if (config.kind == ExperimentKind::clt) report.rows = clt_comparisons(sample);
      break;
    }
    case ExperimentKind::supercritical:
      report = supercritical_check(config.n, config.lambda, config.replicates, config.master_seed, threads);
      cfg["n"] = config.n;
      cfg["lambda"] = config.lambda;
      cfg["replicates"] = config.replicates;
      cfg["seed"] = config.master_seed;
      break;
    case ExperimentKind::critical_scaling:
      report = critical_scaling(config.n_list, config.replicates, config.master_seed, threads);
      cfg["n_list"] = config.n_list;
      cfg["replicates"] = config.replicates;
      cfg["seed"] = config.master_seed;
      break;
    case ExperimentKind::inverse_chi:
      report = inverse_chi_scan(config.n_list, config.nt_grid, config.replicates, config.master_seed, threads);
      cfg["n_list"] = config.n_list;
      cfg["nt_grid"] = config.nt_grid;
      cfg["replicates"] = config.replicates;
      cfg["seed"] = config.master_seed;
      break;
    case ExperimentKind::drift: {
      const double nt = resolve_nt(config.density, config.n);
      report = drift_check(config.n, nt, config.replicates, config.master_seed, threads);
      cfg["n"] = config.n;
      cfg["nt"] = nt;
      cfg["windows"] = config.replicates;
      cfg["seed"] = config.master_seed;
      break;
    }
  }
  report.config = std::move(cfg);
  return report;
}

}  // namespace erlab::experiments
