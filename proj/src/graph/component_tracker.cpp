#include "erlab/graph/component_tracker.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace erlab::graph {

namespace {

void require_order(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

u128 binomial128(int n, int k) {
  u128 out = 1;
  for (int i = 1; i <= k; ++i) out = out * static_cast<u128>(n - k + i) / static_cast<u128>(i);
  return out;
}

}  // namespace

ComponentTracker::ComponentTracker(std::uint32_t n, int kmax)
    : n_(n), kmax_(kmax), parent_(n), size_(n, 1), s_(static_cast<std::size_t>(kmax), n) {
  require_order(n >= 1, "tracker needs at least one vertex");
  require_order(kmax >= 2 && kmax <= kMaxTrackedMoment,
                "kmax must lie in [2, " + std::to_string(kMaxTrackedMoment) + "], got " + std::to_string(kmax));
  std::iota(parent_.begin(), parent_.end(), Vertex{0});
  size_histogram_[1] = n;
}

Vertex ComponentTracker::find(Vertex v) {
  Vertex root = v;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[v] != root) {
    const Vertex next = parent_[v];
    parent_[v] = root;
    v = next;
  }
  return root;
}

MergeOutcome ComponentTracker::add_edge(Vertex u, Vertex v) {
  if (u >= n_ || v >= n_) {
    throw std::invalid_argument("vertex out of range: {" + std::to_string(u) + ", " + std::to_string(v) +
                                "} with n = " + std::to_string(n_));
  }
  if (u == v) throw std::invalid_argument("self-loops are not part of the model");

  MergeOutcome out;
  Vertex ru = find(u);
  Vertex rv = find(v);
  if (ru == rv) return out;

  const std::uint32_t a = size_[ru];
  const std::uint32_t b = size_[rv];
  out.size_a = a;
  out.size_b = b;

  // Stage every new moment before touching the state.
  std::array<u128, kMaxTrackedMoment + 1> next{};
  u128 pa = 1, pb = 1, pab = 1;
  for (int k = 1; k <= kmax_; ++k) {
    pa = checked_mul(pa, a, k);
    pb = checked_mul(pb, b, k);
    pab = checked_mul(pab, static_cast<u128>(a) + b, k);
    out.delta[k] = pab - pa - pb;  // (a+b)^k >= a^k + b^k
    next[k] = checked_add(s_[k - 1], out.delta[k], k);
  }

  for (int k = 1; k <= kmax_; ++k) s_[k - 1] = next[k];
  if (a < b) std::swap(ru, rv);
  parent_[rv] = ru;
  size_[ru] = a + b;
  ++merges_;
  out.merged = true;

  for (std::uint32_t gone : {a, b}) {
    auto it = size_histogram_.find(gone);
    if (--it->second == 0) size_histogram_.erase(it);
  }
  ++size_histogram_[a + b];
  return out;
}

std::uint32_t ComponentTracker::largest1() const { return size_histogram_.rbegin()->first; }

std::uint32_t ComponentTracker::largest2() const {
  auto it = size_histogram_.rbegin();
  if (it->second >= 2) return it->first;
  ++it;
  return it == size_histogram_.rend() ? 0 : it->first;
}

u128 ComponentTracker::s(int k) const {
  if (k < 1 || k > kmax_) {
    throw std::out_of_range("S_" + std::to_string(k) + " is not tracked (kmax = " + std::to_string(kmax_) + ")");
  }
  return s_[static_cast<std::size_t>(k - 1)];
}

u128 ComponentTracker::s_kl(int k, int l) const {
  require_order(k >= 1 && l >= 1, "S_{k,l} needs k, l >= 1");
  require_order(k + l <= kmax_, "S_{k,l} needs k + l <= kmax");
  return checked_mul(s(k), s(l), k + l) - s(k + l);
}

u128 ComponentTracker::drift_v(int k) const {
  require_order(k >= 2, "drift needs k >= 2");
  require_order(kmax_ >= k + 2, "drift V_" + std::to_string(k) + " needs kmax >= " + std::to_string(k + 2));
  u128 twice = 0;
  for (int l = 1; l <= k - 1; ++l) {
    twice = checked_add(twice, checked_mul(binomial128(k, l), s_kl(l + 1, k + 1 - l), k + 2), k + 2);
  }
  if (twice % 2 != 0) throw std::logic_error("drift numerator is odd");
  return twice / 2;
}

double ComponentTracker::chi() const { return to_double(s_[1]) / static_cast<double>(n_); }

std::vector<std::uint32_t> ComponentTracker::component_sizes() const {
  std::vector<std::uint32_t> out;
  out.reserve(component_count());
  for (Vertex v = 0; v < n_; ++v) {
    if (parent_[v] == v) out.push_back(size_[v]);
  }
  return out;
}

}  // namespace erlab::graph
