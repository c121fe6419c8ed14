#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace erlab::graph {

using u128 = unsigned __int128;

/// Raised when a moment S_k (or a product built from moments) no longer
/// fits in 128 bits.
class MomentOverflow : public std::overflow_error {
 public:
  explicit MomentOverflow(int k);
  [[nodiscard]] int k() const noexcept { return k_; }

 private:
  int k_;
};

[[nodiscard]] inline u128 checked_add(u128 a, u128 b, int k) {
  u128 out;
  if (__builtin_add_overflow(a, b, &out)) throw MomentOverflow(k);
  return out;
}

[[nodiscard]] inline u128 checked_sub(u128 a, u128 b, int k) {
  u128 out;
  if (__builtin_sub_overflow(a, b, &out)) throw MomentOverflow(k);
  return out;
}

[[nodiscard]] inline u128 checked_mul(u128 a, u128 b, int k) {
  u128 out;
  if (__builtin_mul_overflow(a, b, &out)) throw MomentOverflow(k);
  return out;
}

[[nodiscard]] std::string to_decimal(u128 value);
[[nodiscard]] u128 parse_decimal(std::string_view text);
[[nodiscard]] inline double to_double(u128 value) { return static_cast<double>(value); }

}  // namespace erlab::graph
