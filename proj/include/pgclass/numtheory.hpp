#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace pgclass {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Integer power with no overflow checking; callers keep results in range.
inline std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp--) r *= base;
  return r;
}

/// Returns k when n == p^k, -1 otherwise.
inline int log_p(std::uint64_t n, std::uint64_t p) {
  int k = 0;
  while (n > 1) {
    if (n % p) return -1;
    n /= p;
    ++k;
  }
  return n == 1 ? k : -1;
}

/// Distinct prime divisors in increasing order.
inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace pgclass
