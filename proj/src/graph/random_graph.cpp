#include "erlab/graph/random_graph.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include <boost/random/binomial_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>

namespace erlab::graph {

RandomGraph::RandomGraph(std::uint32_t n, int kmax, std::uint64_t seed)
    : tracker_(n, kmax), rng_(seed), seed_(seed) {}

std::uint64_t RandomGraph::key(Vertex u, Vertex v) const noexcept {
  if (u > v) std::swap(u, v);
  return static_cast<std::uint64_t>(u) * tracker_.n() + v;
}

void RandomGraph::insert_new(Vertex u, Vertex v) {
  tracker_.add_edge(u, v);
  edges_.insert(key(u, v));
}

bool RandomGraph::add_edge(Vertex u, Vertex v) {
  if (u >= tracker_.n() || v >= tracker_.n() || u == v) {
    throw std::invalid_argument("edge {" + std::to_string(u) + ", " + std::to_string(v) + "} is not a vertex pair");
  }
  if (edges_.contains(key(u, v))) return false;
  insert_new(u, v);
  return true;
}

void RandomGraph::add_random_edges(std::uint64_t count) {
  const std::uint64_t total = pairs();
  if (count > total - edge_count()) {
    throw std::length_error("requested " + std::to_string(count) + " new edges but only " +
                            std::to_string(total - edge_count()) + " vertex pairs are free");
  }
  if (count == 0) return;
  if (2 * (edge_count() + count) > total) {
    add_dense(count);
    return;
  }
  edges_.reserve(edge_count() + count);
  boost::random::uniform_int_distribution<Vertex> pick(0, tracker_.n() - 1);
  for (std::uint64_t added = 0; added < count;) {
    const Vertex u = pick(rng_);
    const Vertex v = pick(rng_);
    if (u == v) continue;
    const std::uint64_t k = key(u, v);
    if (!edges_.insert(k).second) continue;
    try {
      tracker_.add_edge(u, v);
    } catch (...) {
      edges_.erase(k);
      throw;
    }
    ++added;
  }
}

void RandomGraph::add_dense(std::uint64_t count) {
  if (pairs() > kDensePairLimit) {
    throw std::length_error("dense regime with " + std::to_string(pairs()) +
                            " vertex pairs is beyond the supported limit");
  }
  std::vector<std::pair<Vertex, Vertex>> free;
  free.reserve(pairs() - edge_count());
  const Vertex n = tracker_.n();
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (!edges_.contains(key(u, v))) free.emplace_back(u, v);
    }
  }
  // Partial Fisher-Yates: the first `count` slots become a uniform random
  // ordered selection.
  for (std::uint64_t i = 0; i < count; ++i) {
    boost::random::uniform_int_distribution<std::uint64_t> pick(i, free.size() - 1);
    std::swap(free[i], free[pick(rng_)]);
    insert_new(free[i].first, free[i].second);
  }
}

std::uint64_t RandomGraph::advance_time(double dt) {
  if (!(dt >= 0.0)) throw std::invalid_argument("time step must be nonnegative");
  const std::uint64_t free = pairs() - edge_count();
  if (free == 0 || dt == 0.0) return 0;
  boost::random::binomial_distribution<std::int64_t, double> arrivals(static_cast<std::int64_t>(free),
                                                                      -std::expm1(-dt));
  const auto count = static_cast<std::uint64_t>(arrivals(rng_));
  add_random_edges(count);
  return count;
}

SnapshotSummary RandomGraph::snapshot_at_probability(double p) const {
  SnapshotSummary out;
  out.n = tracker_.n();
  out.m = edge_count();
  out.p = p;
  out.t = -std::log1p(-p);
  out.nt = static_cast<double>(out.n) * out.t;
  out.kmax = tracker_.kmax();
  out.s.assign(tracker_.moments().begin(), tracker_.moments().end());
  out.chi = tracker_.chi();
  out.largest1 = tracker_.largest1();
  out.largest2 = tracker_.largest2();
  out.seed = seed_;
  return out;
}

SnapshotSummary RandomGraph::snapshot() const {
  const std::uint64_t total = pairs();
  const double p = total == 0 ? 0.0 : static_cast<double>(edge_count()) / static_cast<double>(total);
  return snapshot_at_probability(p);
}

SnapshotSummary sample_gnp(std::uint32_t n, double p, int kmax, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must lie in [0, 1]");
  RandomGraph graph(n, kmax, seed);
  const std::uint64_t total = graph.pairs();
  std::uint64_t m = 0;
  if (total > 0 && p > 0.0) {
    boost::random::binomial_distribution<std::int64_t, double> edges(static_cast<std::int64_t>(total), p);
    m = static_cast<std::uint64_t>(edges(graph.rng()));
  }
  graph.add_random_edges(m);
  return graph.snapshot_at_probability(p);
}

SnapshotSummary sample_gnm(std::uint32_t n, std::uint64_t m, int kmax, std::uint64_t seed) {
  RandomGraph graph(n, kmax, seed);
  graph.add_random_edges(m);
  return graph.snapshot();
}

std::vector<SnapshotSummary> trajectory(std::uint32_t n, int kmax, std::span<const std::uint64_t> checkpoints,
                                        std::uint64_t seed) {
  const std::uint64_t total = pair_count(n);
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (i > 0 && checkpoints[i] <= checkpoints[i - 1]) {
      throw std::invalid_argument("checkpoints must be strictly increasing (duplicate or descending value " +
                                  std::to_string(checkpoints[i]) + ")");
    }
    if (checkpoints[i] > total) {
      throw std::invalid_argument("checkpoint " + std::to_string(checkpoints[i]) + " exceeds n(n-1)/2 = " +
                                  std::to_string(total));
    }
  }
  RandomGraph graph(n, kmax, seed);
  std::vector<SnapshotSummary> out;
  out.reserve(checkpoints.size());
  for (std::uint64_t target : checkpoints) {
    graph.add_random_edges(target - graph.edge_count());
    out.push_back(graph.snapshot());
  }
  return out;
}

std::string format_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

void write_snapshot_csv(std::ostream& out, std::span<const SnapshotSummary> rows) {
  const int kmax = rows.empty() ? 0 : rows.front().kmax;
  out << "n,m,p,t,nt,kmax";
  for (int k = 1; k <= kmax; ++k) out << ",S_" << k;
  out << ",chi,largest1,largest2,seed,replicate\n";
  for (const auto& row : rows) {
    if (row.kmax != kmax) throw std::invalid_argument("CSV rows must share kmax");
    out << row.n << ',' << row.m << ',' << format_double(row.p) << ',' << format_double(row.t) << ','
        << format_double(row.nt) << ',' << row.kmax;
    for (u128 s : row.s) out << ',' << to_decimal(s);
    out << ',' << format_double(row.chi) << ',' << row.largest1 << ',' << row.largest2 << ',' << row.seed << ','
        << row.replicate << '\n';
  }
}

}  // namespace erlab::graph
