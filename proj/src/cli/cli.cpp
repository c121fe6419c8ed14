#include "erlab/cli/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "erlab/borel/borel.hpp"
#include "erlab/experiments/experiments.hpp"
#include "erlab/experiments/parallel.hpp"
#include "erlab/experiments/theory.hpp"
#include "erlab/graph/random_graph.hpp"
#include "erlab/poly/families.hpp"
#include "json.hpp"

namespace erlab::cli {

namespace {

using nlohmann::ordered_json;

enum class Format { csv, json, text };

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::optional<std::string> format;
  std::string out_path;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());

  [[nodiscard]] Format format_or(Format fallback) const {
    if (!format) return fallback;
    if (*format == "csv") return Format::csv;
    if (*format == "json") return Format::json;
    return Format::text;
  }
};

std::string fixed12(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12f", value);
  return buffer;
}

std::string num(double value) { return graph::format_double(value); }

// ---- polys ---------------------------------------------------------------

struct PolysOptions {
  std::string family = "p";
  int k = -1;
  std::optional<int> l;
  std::optional<int> from;
};

int family_minimum(const std::string& family) {
  if (family == "q") return 3;
  if (family == "r") return 0;
  return 2;
}

const poly::Polynomial& family_member(const std::string& family, int k, int l) {
  if (family == "p") return poly::compute_p(k);
  if (family == "q") return poly::compute_q(k);
  if (family == "pi") return poly::compute_pi(k);
  if (family == "hp") return poly::compute_hp(k, l);
  if (family == "r") return poly::compute_r(k);
  if (family == "px") return poly::compute_px(k);
  return poly::compute_py(k);
}

void run_polys(const PolysOptions& opt, const GlobalOptions& global, std::ostream& out) {
  const bool pair = opt.family == "hp";
  const int lo = opt.from.value_or(family_minimum(opt.family));
  const int k_hi = opt.k;
  const int l_hi = opt.l.value_or(opt.k);
  if (k_hi < lo || (pair && l_hi < lo)) {
    throw std::invalid_argument("empty index range: --from " + std::to_string(lo) + " exceeds the upper index");
  }
  struct Entry {
    int k, l;
    const poly::Polynomial* poly;
  };
  std::vector<Entry> entries;
  for (int k = lo; k <= k_hi; ++k) {
    if (!pair) {
      entries.push_back({k, 0, &family_member(opt.family, k, 0)});
      continue;
    }
    for (int l = lo; l <= l_hi; ++l) entries.push_back({k, l, &family_member(opt.family, k, l)});
  }
  auto label = [&](const Entry& e) {
    return opt.family + "_" + std::to_string(e.k) + (pair ? "," + std::to_string(e.l) : "");
  };

  switch (global.format_or(Format::text)) {
    case Format::text:
      for (const auto& e : entries) out << label(e) << "(x) = " << e.poly->to_string() << '\n';
      break;
    case Format::csv:
      out << "family,k,l,degree,polynomial\n";
      for (const auto& e : entries) {
        out << opt.family << ',' << e.k << ',' << (pair ? std::to_string(e.l) : "") << ',' << e.poly->degree() << ','
            << e.poly->to_string() << '\n';
      }
      break;
    case Format::json: {
      ordered_json rows = ordered_json::array();
      for (const auto& e : entries) {
        ordered_json row{{"family", opt.family}, {"k", e.k}};
        if (pair) row["l"] = e.l;
        row["degree"] = e.poly->degree();
        row["coefficients"] = e.poly->coefficient_strings();
        rows.push_back(std::move(row));
      }
      out << rows.dump(2) << '\n';
      break;
    }
  }
}

// ---- borel ---------------------------------------------------------------

struct BorelOptions {
  double lambda = 0.5;
  std::uint64_t jmax = 10;
  int order = 5;
};

void run_borel(const BorelOptions& opt, const GlobalOptions& global, std::ostream& out) {
  const auto table = borel::moment_table(opt.lambda, opt.order);
  std::vector<double> pmf;
  for (std::uint64_t j = 1; j <= opt.jmax; ++j) pmf.push_back(borel::borel_pmf(opt.lambda, j));

  switch (global.format_or(Format::text)) {
    case Format::json: {
      ordered_json rows = ordered_json::array();
      for (std::uint64_t j = 1; j <= opt.jmax; ++j) rows.push_back({{"j", j}, {"p", pmf[j - 1]}});
      ordered_json moments = ordered_json::array();
      ordered_json cumulants = ordered_json::array();
      ordered_json biased = ordered_json::array();
      for (int m = 1; m <= opt.order; ++m) {
        const auto i = static_cast<std::size_t>(m);
        moments.push_back({{"m", m}, {"value", table.moments[i]}});
        cumulants.push_back({{"m", m}, {"value", table.cumulants[i]}});
        biased.push_back({{"m", m}, {"value", table.size_biased_moments[i]}});
      }
      const ordered_json doc{{"lambda", opt.lambda},
                             {"pmf", std::move(rows)},
                             {"moments", std::move(moments)},
                             {"cumulants", std::move(cumulants)},
                             {"size_biased_moments", std::move(biased)}};
      out << doc.dump(2) << '\n';
      break;
    }
    case Format::csv:
      out << "j,pmf\n";
      for (std::uint64_t j = 1; j <= opt.jmax; ++j) out << j << ',' << num(pmf[j - 1]) << '\n';
      break;
    case Format::text:
      out << "lambda = " << num(opt.lambda) << '\n';
      for (std::uint64_t j = 1; j <= opt.jmax; ++j) out << "P(beta = " << j << ") = " << num(pmf[j - 1]) << '\n';
      for (int m = 1; m <= opt.order; ++m) {
        const auto i = static_cast<std::size_t>(m);
        out << "E beta^" << m << " = " << num(table.moments[i]) << "  kappa_" << m << " = "
            << num(table.cumulants[i]) << "  E hat-beta^" << m << " = " << num(table.size_biased_moments[i])
            << '\n';
      }
      break;
  }
}

// ---- simulate / trajectory ------------------------------------------------

struct DensityOptions {
  std::optional<double> p, t, nt;
  std::optional<std::uint64_t> m;

  [[nodiscard]] experiments::DensitySpec spec(experiments::DensitySpec fallback) const {
    using experiments::DensityKind;
    if (p) return {DensityKind::p, *p};
    if (t) return {DensityKind::t, *t};
    if (nt) return {DensityKind::nt, *nt};
    if (m) return {DensityKind::m, static_cast<double>(*m)};
    return fallback;
  }
};

void add_density_flags(CLI::App* cmd, DensityOptions& d) {
  auto* p = cmd->add_option("--p", d.p, "Edge probability");
  auto* t = cmd->add_option("--t", d.t, "Process time t, p = 1 - exp(-t)");
  auto* nt = cmd->add_option("--nt", d.nt, "Scaled time nt, p = 1 - exp(-nt/n)");
  auto* m = cmd->add_option("--m", d.m, "Exact edge count (G(n,m))");
  p->excludes(t, nt, m);
  t->excludes(nt, m);
  nt->excludes(m);
}

ordered_json snapshot_json(const graph::SnapshotSummary& s) {
  ordered_json row{{"n", s.n}, {"m", s.m}, {"p", s.p}, {"t", num(s.t)}, {"nt", num(s.nt)}, {"kmax", s.kmax}};
  std::vector<std::string> moments;
  for (auto v : s.s) moments.push_back(graph::to_decimal(v));
  row["S"] = moments;
  row["chi"] = s.chi;
  row["largest1"] = s.largest1;
  row["largest2"] = s.largest2;
  row["seed"] = s.seed;
  row["replicate"] = s.replicate;
  return row;
}

void emit_snapshots(const std::vector<graph::SnapshotSummary>& rows, Format format, std::ostream& out) {
  switch (format) {
    case Format::csv: graph::write_snapshot_csv(out, rows); break;
    case Format::json: {
      ordered_json doc = ordered_json::array();
      for (const auto& r : rows) doc.push_back(snapshot_json(r));
      out << doc.dump(2) << '\n';
      break;
    }
    case Format::text:
      for (const auto& r : rows) {
        out << "replicate " << r.replicate << ": m = " << r.m << ", nt = " << num(r.nt) << ", chi = " << num(r.chi)
            << ", |C1| = " << r.largest1 << ", |C2| = " << r.largest2;
        for (int k = 1; k <= r.kmax; ++k) out << ", S_" << k << " = " << graph::to_decimal(r.s_k(k));
        out << '\n';
      }
      break;
  }
}

struct SimulateOptions {
  std::uint32_t n = 1000;
  DensityOptions density;
  int kmax = 4;
  std::uint64_t replicates = 1;
};

void run_simulate(const SimulateOptions& opt, const GlobalOptions& global, std::ostream& out) {
  experiments::ExperimentConfig config;
  config.n = opt.n;
  config.density = opt.density.spec({experiments::DensityKind::nt, 0.5});
  config.kmax = opt.kmax;
  config.replicates = opt.replicates;
  config.master_seed = global.seed;
  if (config.kmax < 2 || config.kmax > graph::kMaxTrackedMoment) {
    throw std::invalid_argument("kmax must be in [2, " + std::to_string(graph::kMaxTrackedMoment) + "]");
  }
  (void)experiments::resolve_p(config.density, config.n);
  const auto rows = experiments::parallel_indexed<graph::SnapshotSummary>(
      config.replicates, global.threads, [&](std::uint64_t i) { return experiments::run_replicate(config, i); });
  emit_snapshots(rows, global.format_or(Format::csv), out);
}

struct TrajectoryOptions {
  std::uint32_t n = 1000;
  int kmax = 4;
  std::vector<std::uint64_t> checkpoints;
  std::vector<double> nt_grid;
};

void run_trajectory(const TrajectoryOptions& opt, const GlobalOptions& global, std::ostream& out) {
  std::vector<std::uint64_t> checkpoints = opt.checkpoints;
  if (!opt.nt_grid.empty()) {
    const double pairs = static_cast<double>(graph::pair_count(opt.n));
    for (double nt : opt.nt_grid) {
      const double p = experiments::resolve_p({experiments::DensityKind::nt, nt}, opt.n);
      checkpoints.push_back(static_cast<std::uint64_t>(std::llround(p * pairs)));
    }
  }
  if (checkpoints.empty()) throw std::invalid_argument("trajectory needs --checkpoints or --nt-grid");
  auto rows = graph::trajectory(opt.n, opt.kmax, checkpoints, global.seed);
  emit_snapshots(rows, global.format_or(Format::csv), out);
}

// ---- verify ----------------------------------------------------------------

struct VerifyOptions {
  std::string suite;
  std::optional<std::uint32_t> n;
  DensityOptions density;
  std::optional<double> lambda;
  std::optional<std::uint64_t> replicates;
  std::optional<int> kmax;
  std::vector<std::uint32_t> n_list;
  std::vector<double> nt_grid;
};

int run_verify(const VerifyOptions& opt, const GlobalOptions& global, std::ostream& out, std::ostream& err) {
  const auto kind = experiments::parse_kind(opt.suite);
  if (!kind) throw std::invalid_argument("unknown suite '" + opt.suite + "'");
  auto config = experiments::default_config(*kind);
  if (opt.n) config.n = *opt.n;
  config.density = opt.density.spec(config.density);
  if (opt.lambda) config.lambda = *opt.lambda;
  if (opt.replicates) config.replicates = *opt.replicates;
  if (opt.kmax) config.kmax = *opt.kmax;
  if (!opt.n_list.empty()) config.n_list = opt.n_list;
  if (!opt.nt_grid.empty()) config.nt_grid = opt.nt_grid;
  config.master_seed = global.seed;

  const auto start = std::chrono::steady_clock::now();
  const auto report = experiments::run_suite(config, global.threads);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  switch (global.format_or(Format::json)) {
    case Format::json: out << report.to_json().dump(2) << '\n'; break;
    case Format::csv:
      out << "name,empirical,theory,se,z,verdict\n";
      for (const auto& r : report.rows) {
        out << '"' << r.name << "\"," << num(r.empirical) << ',' << num(r.theory) << ',' << num(r.se) << ','
            << num(r.z) << ',' << (r.pass ? "pass" : "fail") << '\n';
      }
      break;
    case Format::text:
      for (const auto& r : report.rows) {
        out << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << num(r.empirical);
        if (std::isfinite(r.theory)) out << " vs " << num(r.theory);
        if (std::isfinite(r.z)) out << " (z = " << num(r.z) << ")";
        out << "  [" << r.criterion << "]\n";
      }
      for (const auto& w : report.warnings) out << "warning: " << w << '\n';
      out << "verdict: " << (report.passed() ? "pass" : "fail") << '\n';
      break;
  }
  for (const auto& w : report.warnings) err << "warning: " << w << '\n';
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.2f", seconds);
  err << "suite " << report.suite << ": " << (report.passed() ? "pass" : "fail") << " (" << timing << " s)\n";
  return report.passed() ? kExitOk : kExitFailed;
}

// ---- rho / conjecture ------------------------------------------------------

void run_rho(double lambda, const GlobalOptions& global, std::ostream& out) {
  const double rho = experiments::solve_rho(lambda);
  switch (global.format_or(Format::text)) {
    case Format::text: out << fixed12(rho) << '\n'; break;
    case Format::csv: out << "lambda,rho,residual\n" << num(lambda) << ',' << fixed12(rho) << ','
                          << num(experiments::rho_residual(lambda, rho)) << '\n'; break;
    case Format::json:
      out << ordered_json{{"lambda", lambda}, {"rho", rho}, {"residual", experiments::rho_residual(lambda, rho)}}
                 .dump(2)
          << '\n';
      break;
  }
}

std::string render_rationals(const std::vector<poly::Rational>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += values[i].str();
  }
  return out;
}

void run_conjecture(const GlobalOptions& global, std::ostream& out) {
  const auto rows = poly::conjecture_report();
  switch (global.format_or(Format::text)) {
    case Format::text:
      for (const auto& r : rows) {
        out << "hp_" << r.k << ',' << r.l << ": stated " << r.stated.to_string() << '\n'
            << "       computed " << r.computed.to_string() << '\n'
            << "       " << (r.identical ? "identical" : "differs by " + render_rationals(r.difference)) << '\n';
      }
      break;
    case Format::csv:
      out << "k,l,stated,computed,identical\n";
      for (const auto& r : rows) {
        out << r.k << ',' << r.l << ',' << r.stated.to_string() << ',' << r.computed.to_string() << ','
            << (r.identical ? "true" : "false") << '\n';
      }
      break;
    case Format::json: {
      ordered_json doc = ordered_json::array();
      for (const auto& r : rows) {
        std::vector<std::string> diff;
        for (const auto& d : r.difference) diff.push_back(d.str());
        doc.push_back({{"k", r.k},
                       {"l", r.l},
                       {"stated", r.stated.coefficient_strings()},
                       {"computed", r.computed.coefficient_strings()},
                       {"difference", diff},
                       {"identical", r.identical}});
      }
      out << doc.dump(2) << '\n';
      break;
    }
  }
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Susceptibility and component-size moments of Erdos-Renyi random graphs."};
  app.name("erlab");
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--seed", global.seed, "Master seed; replicate i uses a hash of (seed, i)")->capture_default_str();
  app.add_option("--format", global.format, "Output format")->check(CLI::IsMember({"csv", "json", "text"}));
  app.add_option("--out", global.out_path, "Write data to this file instead of standard output");
  app.add_option("--threads", global.threads, "Worker threads; never changes results")
      ->check(CLI::Range(1u, 1024u));

  PolysOptions polys;
  auto* polys_cmd = app.add_subcommand(
      "polys",
      "Exact moment and covariance polynomials in x = 1/(1-nt): E S_k ~ n p_k(x), Cov(S_k,S_l) ~ n hp_kl(x), "
      "p_k = x^k q_k, pi_k = p_{k+1}/x, r_m = p_{m+1}, and the quadratic-variation pair px_k, py_k. "
      "Lists indices --from..--k (and --from..--l for hp).");
  polys_cmd->add_option("--family", polys.family, "Polynomial family")
      ->check(CLI::IsMember({"p", "q", "hp", "pi", "r", "px", "py"}))
      ->capture_default_str();
  polys_cmd->add_option("--k", polys.k, "Largest first index")->required();
  polys_cmd->add_option("--l", polys.l, "Largest second index for hp (default: --k)");
  polys_cmd->add_option("--from", polys.from, "Smallest index (default: the family's first index)");

  BorelOptions borel_opt;
  auto* borel_cmd = app.add_subcommand(
      "borel",
      "Borel(lambda) law of the component of a fixed vertex in G(n, lambda/n): pmf, moments "
      "E beta^m = p_{m+1}(1/(1-lambda)), cumulants and size-biased moments.");
  borel_cmd->add_option("--lambda", borel_opt.lambda, "Mean offspring in (0,1)")->required();
  borel_cmd->add_option("--jmax", borel_opt.jmax, "Largest j in the pmf table")->capture_default_str()
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1'000'000}));
  borel_cmd->add_option("--order", borel_opt.order, "Highest moment order")->capture_default_str()
      ->check(CLI::Range(1, 30));

  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand(
      "simulate", "Sample G(n,p) or G(n,m) replicates and report S_1..S_kmax, chi = S_2/n and the two largest "
                  "components.");
  sim_cmd->add_option("--n", sim.n, "Vertices")->required()->check(CLI::Range(1u, 4'000'000'000u));
  add_density_flags(sim_cmd, sim.density);
  sim_cmd->add_option("--kmax", sim.kmax, "Highest tracked moment")->capture_default_str();
  sim_cmd->add_option("--replicates", sim.replicates, "Independent graphs")->capture_default_str()
      ->check(CLI::PositiveNumber);

  TrajectoryOptions traj;
  auto* traj_cmd = app.add_subcommand(
      "trajectory", "One random graph process in edge order, summarised at increasing edge counts m; reports "
                    "p = m/N and t = -log(1-p).");
  traj_cmd->add_option("--n", traj.n, "Vertices")->required()->check(CLI::Range(1u, 4'000'000'000u));
  traj_cmd->add_option("--kmax", traj.kmax, "Highest tracked moment")->capture_default_str();
  auto* cp = traj_cmd->add_option("--checkpoints", traj.checkpoints, "Strictly increasing edge counts")
                 ->delimiter(',');
  traj_cmd->add_option("--nt-grid", traj.nt_grid, "Increasing nt values converted to edge counts")
      ->delimiter(',')
      ->excludes(cp);

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand(
      "verify",
      "Monte Carlo checks against the asymptotic theory. Suites: subcritical/lln (E S_k ~ n p_k(x), "
      "chi -> 1/(1-nt)), covariance (Var chi ~ 2p/(1-np)^5, Cov(S_k,S_l) ~ n hp_kl(x)), clt (chi asymptotically "
      "normal, Jarque-Bera), supercritical (|C_1| ~ n rho(lambda), S_2 ~ |C_1|^2), critical (n^(-4/3) S_2 tight at "
      "p = 1/n), inverse_chi (1/chi = (1-np)_+ + O(n^(-1/3))), drift (E dS_k/dt = V_k). Exit 2 when a check "
      "fails.");
  verify_cmd->add_option("--suite", verify.suite, "Suite name")->required();
  verify_cmd->add_option("--n", verify.n, "Vertices");
  add_density_flags(verify_cmd, verify.density);
  verify_cmd->add_option("--lambda", verify.lambda, "np for the supercritical suite");
  verify_cmd->add_option("--replicates", verify.replicates, "Replicates (windows for drift)");
  verify_cmd->add_option("--kmax", verify.kmax, "Highest tracked moment");
  verify_cmd->add_option("--n-list", verify.n_list, "Sizes for critical and inverse_chi")->delimiter(',');
  verify_cmd->add_option("--nt-grid", verify.nt_grid, "nt grid for inverse_chi")->delimiter(',');

  double rho_lambda = 2.0;
  auto* rho_cmd = app.add_subcommand(
      "rho", "Survival probability rho of a Poisson(lambda) Galton-Watson process, the root of "
             "rho = 1 - exp(-lambda rho); the giant component has about n rho vertices.");
  rho_cmd->add_option("--lambda", rho_lambda, "Mean offspring, > 1")->required();

  auto* conj_cmd = app.add_subcommand(
      "conjecture", "Compare the stated covariance polynomials 2x^5, 12x^7-18x^6+6x^5 and "
                    "96x^9-198x^8+126x^7-24x^6 with the exactly computed hp_kl.");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  std::ostringstream buffer;
  int code = kExitOk;
  try {
    if (*polys_cmd) run_polys(polys, global, buffer);
    if (*borel_cmd) run_borel(borel_opt, global, buffer);
    if (*sim_cmd) run_simulate(sim, global, buffer);
    if (*traj_cmd) run_trajectory(traj, global, buffer);
    if (*verify_cmd) code = run_verify(verify, global, buffer, err);
    if (*rho_cmd) run_rho(rho_lambda, global, buffer);
    if (*conj_cmd) run_conjecture(global, buffer);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (global.out_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(global.out_path, std::ios::binary);
    if (!file || !(file << buffer.str()) || !file.flush()) {
      err << "error: cannot write " << global.out_path << '\n';
      return kExitUsage;
    }
  }
  return code;
}

}  // namespace erlab::cli
