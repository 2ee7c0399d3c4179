#pragma once

// Brute-force reference computations for the tests. Nothing here calls into
// the library code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;

inline u64 ipow(u64 b, unsigned e) {
  u64 r = 1;
  while (e--) r *= b;
  return r;
}

/// Orbit of k under repeated multiplication by q mod M, as a sorted set.
inline std::vector<u64> orbit(u64 q, u64 modulus, u64 k) {
  std::set<u64> seen;
  u64 x = k % modulus;
  while (seen.insert(x).second) x = (x * q) % modulus;
  return {seen.begin(), seen.end()};
}

/// Inverse by exhaustive search.
inline std::optional<u64> inverse(u64 a, u64 modulus) {
  for (u64 x = 0; x < modulus; ++x) {
    if ((a * x) % modulus == 1 % modulus) return x;
  }
  return std::nullopt;
}

inline u64 order(u64 k, u64 modulus) {
  for (u64 t = 1;; ++t) {
    if ((k * t) % modulus == 0) return t;
  }
}

inline bool is_power_of(u64 value, u64 ell) {
  while (value % ell == 0) value /= ell;
  return value == 1;
}

/// All splittings k = a + b with ord(a) prime to ell and ord(b) a power of ell.
inline std::vector<std::pair<u64, u64>> ell_splittings(u64 modulus, u64 k, u64 ell) {
  std::vector<std::pair<u64, u64>> result;
  for (u64 a = 0; a < modulus; ++a) {
    const u64 b = (k + modulus - a) % modulus;
    if (std::gcd(order(a, modulus), ell) == 1 && is_power_of(order(b, modulus), ell)) {
      result.emplace_back(a, b);
    }
  }
  return result;
}

/// Floating-point (-1)^{n-1} sum_{i<n} exp(2 pi i k m q^i / M).
inline std::complex<double> trace_numeric(u64 q, unsigned n, u64 modulus, u64 k, u64 m) {
  std::complex<double> sum = 0.0;
  u64 x = (k * m) % modulus;
  for (unsigned i = 0; i < n; ++i) {
    sum += std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(x) / static_cast<double>(modulus));
    x = (x * q) % modulus;
  }
  return n % 2 == 1 ? sum : -sum;
}

/// Evaluates a polynomial at exp(2 pi i / M).
inline std::complex<double> eval_at_root(const std::vector<std::int64_t>& coeffs, u64 modulus) {
  std::complex<double> sum = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    sum += static_cast<double>(coeffs[i]) *
           std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(modulus));
  }
  return sum;
}

/// Small fields (q prime power, n) with q^n - 1 <= bound.
inline std::vector<std::pair<u64, unsigned>> small_fields(u64 bound) {
  std::vector<std::pair<u64, unsigned>> result;
  for (u64 q : {2ULL, 3ULL, 4ULL, 5ULL, 7ULL, 8ULL, 9ULL, 11ULL, 13ULL, 16ULL, 25ULL, 27ULL}) {
    for (unsigned n = 1; ipow(q, n) - 1 <= bound; ++n) result.emplace_back(q, n);
  }
  return result;
}

}  // namespace oracle
