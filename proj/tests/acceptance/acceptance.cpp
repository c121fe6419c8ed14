// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "erlab/borel/borel.hpp"
#include "erlab/cli/cli.hpp"
#include "erlab/experiments/experiments.hpp"
#include "erlab/experiments/theory.hpp"
#include "erlab/graph/component_tracker.hpp"
#include "erlab/poly/families.hpp"
#include "graph_oracle.hpp"

namespace {

using erlab::poly::Polynomial;
namespace ex = erlab::experiments;

constexpr std::uint64_t kSeed = 7;
const unsigned kThreads = std::max(1u, std::thread::hardware_concurrency());

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& text) { detail += (detail.empty() ? "" : "; ") + text; }
};

std::string fmt(const char* format, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, format, value);
  return buffer;
}

struct Invocation {
  int code;
  std::string out;
};

Invocation cli(std::vector<std::string> args) {
  args.insert(args.begin(), "erlab");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = erlab::cli::dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str()};
}

int failures = 0;

void criterion(int id, const std::string& title, double budget_seconds, const std::function<Verdict()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v.pass = false;
    v.detail = std::string("exception: ") + e.what();
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget_seconds > 0 && seconds >= budget_seconds) {
    v.require(false, "runtime " + fmt("%.2f", seconds) + " s exceeds " + fmt("%.0f", budget_seconds) + " s");
  }
  if (!v.pass) ++failures;
  std::cout << "AC" << id << ' ' << (v.pass ? "PASS" : "FAIL") << "  " << title << " (" << fmt("%.2f", seconds)
            << " s)";
  if (!v.detail.empty()) std::cout << ": " << v.detail;
  std::cout << std::endl;
}

void require_row(Verdict& v, const ex::TheoryComparison& row) {
  std::string text = row.name + " = " + fmt("%.6g", row.empirical);
  if (std::isfinite(row.theory)) text += " vs " + fmt("%.6g", row.theory);
  if (std::isfinite(row.z)) text += " (z " + fmt("%.2f", row.z) + ")";
  v.note(text);
  v.require(row.pass, row.name + " violates " + row.criterion);
}

const ex::TheoryComparison& row_named(const std::vector<ex::TheoryComparison>& rows, const std::string& name) {
  for (const auto& r : rows) {
    if (r.name == name) return r;
  }
  throw std::runtime_error("missing statistic " + name);
}

// Borel oracles by direct summation of the pmf, independent of the polynomial engine.
double truncated_sum(double lambda, int power, bool size_biased) {
  double sum = 0.0, previous = 0.0;
  for (std::uint64_t j = 1; j < 10'000'000; ++j) {
    const double jd = static_cast<double>(j);
    const double log_pmf = (jd - 1) * std::log(jd) - std::lgamma(jd + 1) + (jd - 1) * std::log(lambda) - jd * lambda;
    double term = std::pow(jd, power) * std::exp(log_pmf);
    if (size_biased) term *= jd * (1 - lambda);
    sum += term;
    if (term < previous && term < 1e-18 * sum) break;
    previous = term;
  }
  return sum;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

int main() {
  criterion(1, "moment and covariance polynomial tables, coefficient-exact", 1.0, [] {
    Verdict v;
    const std::string p_table =
        "p_2(x) = x\n"
        "p_3(x) = x^3\n"
        "p_4(x) = 3x^5 - 2x^4\n"
        "p_5(x) = 15x^7 - 20x^6 + 6x^5\n"
        "p_6(x) = 105x^9 - 210x^8 + 130x^7 - 24x^6\n"
        "p_7(x) = 945x^11 - 2520x^10 + 2380x^9 - 924x^8 + 120x^7\n"
        "p_8(x) = 10395x^13 - 34650x^12 + 44100x^11 - 26432x^10 + 7308x^9 - 720x^8\n";
    const auto p_run = cli({"polys", "--family", "p", "--k", "8", "--format", "text"});
    v.require(p_run.code == 0 && p_run.out == p_table, "polys --family p --k 8 differs from the p_k table");

    const char* hp[5][5] = {};
    hp[2][2] = "2x^5 - 2x^4";
    hp[3][3] = "96x^9 - 198x^8 + 126x^7 - 24x^6";
    hp[4][4] = "10170x^13 - 34050x^12 + 43520x^11 - 26192x^10 + 7272x^9 - 720x^8";
    hp[3][2] = hp[2][3] = "12x^7 - 18x^6 + 6x^5";
    hp[4][2] = hp[2][4] = "90x^9 - 190x^8 + 124x^7 - 24x^6";
    hp[4][3] = hp[3][4] = "900x^11 - 2430x^10 + 2322x^9 - 912x^8 + 120x^7";
    std::string hp_table;
    for (int k = 2; k <= 4; ++k) {
      for (int l = 2; l <= 4; ++l) {
        hp_table += "hp_" + std::to_string(k) + "," + std::to_string(l) + "(x) = " + hp[k][l] + "\n";
      }
    }
    const auto hp_run = cli({"polys", "--family", "hp", "--k", "4", "--l", "4", "--format", "text"});
    v.require(hp_run.code == 0 && hp_run.out == hp_table, "polys --family hp --k 4 differs from the hp_kl table");
    if (v.pass) v.note("7 p_k lines and 9 hp_kl lines identical");
    return v;
  });

  criterion(2, "recursion cross-checks (k <= 20, leading constants k,l <= 10)", 5.0, [] {
    using namespace erlab::poly;
    Verdict v;
    const Polynomial x = Polynomial::identity();
    const Polynomial x3_minus_x2 = Polynomial::from_integers({0, 0, -1, 1});
    Polynomial stepped = compute_p(2);
    for (int k = 2; k <= 20; ++k) {
      const auto& p = compute_p(k);
      if (k > 2) v.require(p == stepped, "p_" + std::to_string(k) + " differs from the linear step");
      stepped = x * p + x3_minus_x2 * p.derivative();
      if (k >= 3) v.require(p == compute_q(k).times_x_power(k), "p_" + std::to_string(k) + " != x^k q_k");
      v.require(p.evaluate(Rational(1)) == 1, "p_" + std::to_string(k) + "(1) != 1");
      v.require(p.leading() == double_factorial(2 * k - 5), "leading coefficient of p_" + std::to_string(k));
    }
    for (int m = 1; m <= 19; ++m) {
      v.require(compute_r(m) == compute_p(m + 1), "r_" + std::to_string(m) + " != p_" + std::to_string(m + 1));
    }
    v.require(compute_r(0) == Polynomial::constant(1), "r_0 != 1");
    for (int k = 2; k <= 19; ++k) {
      v.require(x * compute_pi(k) == compute_p(k + 1), "x pi_" + std::to_string(k) + " != p_" + std::to_string(k + 1));
    }
    for (int k = 2; k <= 10; ++k) {
      for (int l = 2; l <= 10; ++l) {
        v.require(compute_hp(k, l).leading() == leading_constant_c(k, l),
                  "leading coefficient of hp_" + std::to_string(k) + "," + std::to_string(l) + " != c_kl");
      }
    }
    if (v.pass) v.note("all identities exact");
    return v;
  });

  criterion(3, "Borel oracles: moments, pair convolution, mgf equation, covariance bridge", 10.0, [] {
    namespace b = erlab::borel;
    Verdict v;
    double worst_moment = 0, worst_conv = 0, worst_mgf = 0, worst_bridge = 0;
    for (double lambda : {0.2, 0.5, 0.8}) {
      const double x = 1 / (1 - lambda);
      for (int m = 1; m <= 5; ++m) {
        worst_moment = std::max(worst_moment, rel(erlab::poly::compute_p(m + 1).evaluate(x),
                                                  truncated_sum(lambda, m, false)));
      }
      for (std::uint64_t j = 2; j <= 50; ++j) {
        double conv = 0;
        for (std::uint64_t i = 1; i < j; ++i) conv += b::borel_pmf(lambda, i) * b::borel_pmf(lambda, j - i);
        worst_conv = std::max(worst_conv, std::abs(b::pair_pmf(lambda, j) - conv));
      }
      for (int k = 2; k <= 4; ++k) {
        for (int l = 2; l <= 4; ++l) {
          const double cov = truncated_sum(lambda, k + l - 2, true) -
                             truncated_sum(lambda, k - 1, true) * truncated_sum(lambda, l - 1, true);
          worst_bridge = std::max(worst_bridge, rel(erlab::poly::compute_hp(k, l).evaluate(x), x * cov));
        }
      }
    }
    const std::pair<double, double> mgf_points[] = {{0.5, 0.1}, {0.2, 0.5}, {0.5, 0.0}, {0.8, 0.0}};
    for (auto [lambda, t] : mgf_points) {
      // psi = E exp(t beta) by direct summation; check log psi = lambda psi - lambda + t.
      double psi = 0, previous = 0;
      for (std::uint64_t j = 1; j < 10'000'000; ++j) {
        const double jd = static_cast<double>(j);
        const double term = std::exp(b::borel_log_pmf(lambda, j) + t * jd);
        psi += term;
        if (term < previous && term < 1e-18 * psi) break;
        previous = term;
      }
      worst_mgf = std::max(worst_mgf, std::abs(std::log(psi) - (lambda * psi - lambda + t)));
    }
    v.require(worst_moment < 1e-9, "moment relative error " + fmt("%.3g", worst_moment));
    v.require(worst_conv < 1e-12, "convolution error " + fmt("%.3g", worst_conv));
    v.require(worst_mgf < 1e-9, "mgf residual " + fmt("%.3g", worst_mgf));
    v.require(worst_bridge < 1e-8, "covariance bridge relative error " + fmt("%.3g", worst_bridge));
    v.note("max moment rel err " + fmt("%.2g", worst_moment) + ", convolution " + fmt("%.2g", worst_conv) +
           ", mgf " + fmt("%.2g", worst_mgf) + ", bridge " + fmt("%.2g", worst_bridge));
    return v;
  });

  criterion(4, "incremental tracker against brute force on 200 instances", 30.0, [] {
    Verdict v;
    std::mt19937_64 gen(kSeed);
    std::uint64_t checks = 0;
    for (int instance = 0; instance < 200; ++instance) {
      const auto n = std::uniform_int_distribution<std::uint32_t>(1, 2000)(gen);
      erlab::graph::ComponentTracker tracker(n, 8);
      std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
      if (n > 1) {
        std::uniform_int_distribution<std::uint32_t> pick(0, n - 1);
        const auto budget = std::uniform_int_distribution<std::uint32_t>(0, 3 * n / 2)(gen);
        while (edges.size() < budget) {
          const auto a = pick(gen), c = pick(gen);
          if (a == c) continue;
          tracker.add_edge(a, c);
          edges.emplace_back(a, c);
        }
      }
      const auto sizes = erlab::testing::bfs_component_sizes(n, edges);
      for (int k = 1; k <= 8; ++k) {
        ++checks;
        v.require(tracker.s(k) == erlab::testing::brute_s(sizes, k), "S_" + std::to_string(k) + " mismatch");
      }
      for (int k = 1; k <= 4; ++k) {
        for (int l = 1; l <= 4; ++l) {
          ++checks;
          v.require(tracker.s_kl(k, l) == erlab::testing::brute_s_kl(sizes, k, l),
                    "S_" + std::to_string(k) + "," + std::to_string(l) + " mismatch");
        }
      }
      if (!v.pass) break;
    }
    v.note(std::to_string(checks) + " exact comparisons");
    return v;
  });

  auto lln_config = ex::default_config(ex::ExperimentKind::lln);
  lln_config.n = 100'000;
  lln_config.density = {ex::DensityKind::nt, 0.5};
  lln_config.master_seed = kSeed;

  criterion(5, "laws of large numbers at n = 1e5, nt = 0.5, R = 200", 120.0, [&] {
    Verdict v;
    const auto sample = ex::collect_subcritical(lln_config, kThreads);
    const auto rows = ex::lln_comparisons(sample);
    for (const char* name : {"mean chi", "mean S_3/n", "mean S_4/n"}) require_row(v, row_named(rows, name));
    return v;
  });

  auto clt_config = ex::default_config(ex::ExperimentKind::covariance);
  clt_config.n = 100'000;
  clt_config.density = {ex::DensityKind::nt, 0.5};
  clt_config.master_seed = kSeed;
  std::optional<ex::SubcriticalSample> shared;

  criterion(6, "variance and covariance at n = 1e5, nt = 0.5, R = 2000", 900.0, [&] {
    Verdict v;
    shared = ex::collect_subcritical(clt_config, kThreads);
    const auto rows = ex::covariance_comparisons(*shared);
    for (const char* name : {"var chi", "var S_2/n", "cov S_2,S_3/n"}) require_row(v, row_named(rows, name));
    const auto& s3 = row_named(rows, "var S_3/n");
    v.note("(not graded) var S_3/n = " + fmt("%.6g", s3.empirical) + " vs " + fmt("%.6g", s3.theory));
    return v;
  });

  criterion(7, "asymptotic normality of chi (Jarque-Bera) with controls, same sample", 0.0, [&] {
    Verdict v;
    if (!shared) shared = ex::collect_subcritical(clt_config, kThreads);
    const auto rows = ex::clt_comparisons(*shared);
    for (const auto& row : rows) require_row(v, row);
    v.note("g1 = " + fmt("%.4f", shared->chi.skewness()) + ", g2 = " + fmt("%.4f", shared->chi.excess_kurtosis()));
    return v;
  });

  criterion(8, "supercritical giant component at n = 1e5, lambda = 1.5, R = 50", 120.0, [] {
    Verdict v;
    const auto report = ex::supercritical_check(100'000, 1.5, 50, kSeed, kThreads);
    for (const auto& row : report.rows) require_row(v, row);
    for (const auto& w : report.warnings) v.note("warning: " + w);
    return v;
  });

  criterion(9, "critical scaling of n^(-4/3) S_2 at p = 1/n, R = 200", 300.0, [] {
    Verdict v;
    const std::vector<std::uint32_t> sizes{10'000, 40'000, 160'000};
    const auto report = ex::critical_scaling(sizes, 200, kSeed, kThreads);
    for (const auto& row : report.rows) require_row(v, row);
    std::string medians;
    for (const auto& entry : report.details["per_n"]) {
      medians += (medians.empty() ? "" : ", ") + fmt("%.4g", entry["median"].get<double>());
    }
    v.note("medians " + medians);
    return v;
  });

  criterion(10, "verify reports byte-identical across runs and thread counts", 0.0, [] {
    Verdict v;
    const std::vector<std::vector<std::string>> suites = {
        {"verify", "--suite", "subcritical", "--n", "100000", "--nt", "0.5", "--replicates", "200", "--seed", "7"},
        {"verify", "--suite", "supercritical", "--n", "100000", "--lambda", "1.5", "--replicates", "50", "--seed",
         "7"}};
    for (const auto& base : suites) {
      auto with_threads = [&](const char* t) {
        auto args = base;
        args.insert(args.end(), {"--threads", t});
        return cli(args);
      };
      const auto first = with_threads("1");
      const auto second = with_threads("1");
      const auto eight = with_threads("8");
      v.require(!first.out.empty() && first.out == second.out, base[2] + ": two runs differ");
      v.require(first.out == eight.out, base[2] + ": --threads 1 and 8 differ");
      v.require(first.code == second.code && first.code == eight.code, base[2] + ": exit codes differ");
      v.note(base[2] + " " + std::to_string(first.out.size()) + " bytes");
    }
    return v;
  });

  std::cout << "acceptance: " << 10 - failures << "/10 criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
