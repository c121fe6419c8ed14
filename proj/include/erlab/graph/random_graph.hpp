#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <unordered_set>
#include <vector>

#include "erlab/graph/component_tracker.hpp"
#include "erlab/random.hpp"

namespace erlab::graph {

/// Moments and component statistics of one graph at one density.
struct SnapshotSummary {
  std::uint64_t n = 0;
  std::uint64_t m = 0;  ///< edges present
  double p = 0.0;       ///< edge probability (G(n,p)) or m/N (edge-count driven)
  double t = 0.0;       ///< -log(1-p)
  double nt = 0.0;
  int kmax = 0;
  std::vector<u128> s;  ///< S_1..S_kmax
  double chi = 0.0;
  std::uint32_t largest1 = 0;
  std::uint32_t largest2 = 0;
  std::uint64_t seed = 0;
  std::uint64_t replicate = 0;

  [[nodiscard]] u128 s_k(int k) const { return s.at(static_cast<std::size_t>(k - 1)); }
};

/// n(n-1)/2.
[[nodiscard]] constexpr std::uint64_t pair_count(std::uint64_t n) noexcept { return n * (n - 1) / 2; }

/// Complete graphs above this many vertex pairs are refused when more than
/// half of all pairs would be needed.
inline constexpr std::uint64_t kDensePairLimit = std::uint64_t{1} << 26;

/// Erdős–Rényi graph grown one uniformly random new edge at a time.
///
/// Each added edge is uniform over the pairs not yet present, so the edge
/// sequence is a uniformly random ordering of all pairs. Sparse stretches
/// use rejection against a hash set; once more than half the pairs are
/// requested the remaining absent pairs are listed and shuffled.
class RandomGraph {
 public:
  RandomGraph(std::uint32_t n, int kmax, std::uint64_t seed);

  /// Adds `count` new uniformly random edges. Throws std::length_error if
  /// that would exceed the number of vertex pairs.
  void add_random_edges(std::uint64_t count);
  /// Runs the continuous-time process for `dt`: every absent pair appears
  /// independently with probability 1 - exp(-dt). Returns the edges added.
  std::uint64_t advance_time(double dt);
  /// Adds {u, v} if absent; returns false if the edge was already there.
  bool add_edge(Vertex u, Vertex v);

  [[nodiscard]] const ComponentTracker& tracker() const noexcept { return tracker_; }
  [[nodiscard]] std::uint64_t edge_count() const noexcept { return edges_.size(); }
  [[nodiscard]] std::uint64_t pairs() const noexcept { return pair_count(tracker_.n()); }
  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
  Rng& rng() noexcept { return rng_; }
  /// Restarts the random stream, e.g. for independent windows from a copied state.
  void reseed(std::uint64_t seed) {
    rng_.seed(seed);
    seed_ = seed;
  }

  /// Summary with p = m/N, t = -log(1-p).
  [[nodiscard]] SnapshotSummary snapshot() const;
  /// Summary reporting the given edge probability instead of m/N.
  [[nodiscard]] SnapshotSummary snapshot_at_probability(double p) const;

 private:
  [[nodiscard]] std::uint64_t key(Vertex u, Vertex v) const noexcept;
  void insert_new(Vertex u, Vertex v);
  void add_dense(std::uint64_t count);

  ComponentTracker tracker_;
  Rng rng_;
  std::uint64_t seed_;
  std::unordered_set<std::uint64_t> edges_;
};

/// Binomial(n(n-1)/2, p) edges placed on distinct uniform pairs.
SnapshotSummary sample_gnp(std::uint32_t n, double p, int kmax, std::uint64_t seed);

/// Exactly m distinct uniform edges.
SnapshotSummary sample_gnm(std::uint32_t n, std::uint64_t m, int kmax, std::uint64_t seed);

/// One random-order edge process, summarised after each checkpoint edge
/// count. Checkpoints must be strictly increasing and at most n(n-1)/2.
std::vector<SnapshotSummary> trajectory(std::uint32_t n, int kmax, std::span<const std::uint64_t> checkpoints,
                                        std::uint64_t seed);

/// CSV with header n,m,p,t,nt,kmax,S_1..S_kmax,chi,largest1,largest2,seed,replicate.
/// All rows must share kmax.
void write_snapshot_csv(std::ostream& out, std::span<const SnapshotSummary> rows);

/// Shortest decimal text that round-trips the double ("inf" for infinity).
std::string format_double(double value);

}  // namespace erlab::graph
