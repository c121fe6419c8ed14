#include "erlab/graph/wide_int.hpp"

#include <algorithm>

namespace erlab::graph {

MomentOverflow::MomentOverflow(int k)
    : std::overflow_error("128-bit overflow while updating S_" + std::to_string(k) +
                          "; rerun with a lower kmax"),
      k_(k) {}

std::string to_decimal(u128 value) {
  if (value == 0) return "0";
  std::string out;
  while (value > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

u128 parse_decimal(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty decimal string");
  u128 out = 0;
  for (char c : text) {
    if (c < '0' || c > '9') throw std::invalid_argument("not a decimal digit: " + std::string(1, c));
    out = checked_add(checked_mul(out, 10, 0), static_cast<u128>(c - '0'), 0);
  }
  return out;
}

}  // namespace erlab::graph
