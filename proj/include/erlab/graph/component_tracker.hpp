#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "erlab/graph/wide_int.hpp"

namespace erlab::graph {

using Vertex = std::uint32_t;

/// Highest moment order a tracker will maintain.
inline constexpr int kMaxTrackedMoment = 16;

struct MergeOutcome {
  bool merged = false;
  std::uint32_t size_a = 0;  ///< size of u's component before the merge
  std::uint32_t size_b = 0;  ///< size of v's component before the merge
  /// delta[k] = (a+b)^k - a^k - b^k for k = 1..kmax; delta[0] unused.
  std::array<u128, kMaxTrackedMoment + 1> delta{};
};

/// Union-find over n vertices that keeps S_k = sum over components of
/// |C|^k exact for k = 1..kmax as edges arrive.
///
/// Union by size with path compression. Every update is computed with
/// checked 128-bit arithmetic before any state changes, so an overflow
/// leaves the tracker as it was.
class ComponentTracker {
 public:
  ComponentTracker(std::uint32_t n, int kmax);

  /// Adds edge {u, v}. Self-loops and out-of-range vertices are rejected
  /// with std::invalid_argument. Throws MomentOverflow if some S_k would
  /// exceed 128 bits.
  MergeOutcome add_edge(Vertex u, Vertex v);

  Vertex find(Vertex v);
  [[nodiscard]] bool connected(Vertex u, Vertex v) { return find(u) == find(v); }
  std::uint32_t component_size(Vertex v) { return size_[find(v)]; }

  [[nodiscard]] std::uint32_t n() const noexcept { return n_; }
  [[nodiscard]] int kmax() const noexcept { return kmax_; }
  [[nodiscard]] std::uint64_t merges() const noexcept { return merges_; }
  [[nodiscard]] std::uint32_t largest1() const;
  [[nodiscard]] std::uint32_t largest2() const;
  [[nodiscard]] std::uint64_t component_count() const noexcept { return n_ - merges_; }

  /// S_k for 1 <= k <= kmax.
  [[nodiscard]] u128 s(int k) const;
  /// S_1..S_kmax; element i holds S_{i+1}.
  [[nodiscard]] std::span<const u128> moments() const noexcept { return s_; }

  /// S_{k,l} = S_k S_l - S_{k+l}, needs k + l <= kmax.
  [[nodiscard]] u128 s_kl(int k, int l) const;

  /// Drift of S_k in the continuous-time process:
  /// V_k = 1/2 sum_{l=1}^{k-1} C(k,l) S_{l+1,k+1-l}. Needs kmax >= k + 2.
  [[nodiscard]] u128 drift_v(int k) const;

  /// Susceptibility S_2 / n.
  [[nodiscard]] double chi() const;

  /// Sizes of all current components, in root order.
  [[nodiscard]] std::vector<std::uint32_t> component_sizes() const;

 private:
  std::uint32_t n_;
  int kmax_;
  std::vector<Vertex> parent_;
  std::vector<std::uint32_t> size_;
  std::vector<u128> s_;
  // component size -> number of components of that size
  std::map<std::uint32_t, std::uint32_t> size_histogram_;
  std::uint64_t merges_ = 0;
};

}  // namespace erlab::graph
