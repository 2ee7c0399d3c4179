#pragma once

// Exact 64-bit integer helpers: modular products and powers, primality,
// factorization and divisor lists.

#include <cstdint>
#include <utility>
#include <vector>

namespace levelzero {

using u64 = std::uint64_t;
using i64 = std::int64_t;

struct PrimePower {
  u64 prime;
  unsigned exponent;

  bool operator==(const PrimePower&) const = default;
};

inline u64 mulmod(u64 a, u64 b, u64 m) {
  if (((a | b) >> 32) == 0) return a * b % m;
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

inline u64 addmod(u64 a, u64 b, u64 m) {
  a %= m;
  b %= m;
  return a >= m - b ? a - (m - b) : a + b;
}

inline u64 submod(u64 a, u64 b, u64 m) {
  a %= m;
  b %= m;
  return a >= b ? a - b : a + (m - b);
}

u64 powmod(u64 base, u64 exp, u64 m);

/// base^exp, throwing OverflowError if the result does not fit in 64 bits.
u64 checked_pow(u64 base, unsigned exp);

u64 gcd(u64 a, u64 b);

/// Inverse of a modulo m; throws ParameterError when gcd(a, m) != 1.
/// For m == 1 the (only) residue 0 is returned.
u64 invmod(u64 a, u64 m);

/// Deterministic Miller-Rabin, valid on the full 64-bit range.
bool is_prime(u64 n);

/// Prime factorization in increasing prime order (Pollard rho for large factors).
std::vector<PrimePower> factorize(u64 n);

/// Distinct primes dividing n, increasing.
std::vector<u64> prime_divisors(u64 n);

/// All positive divisors of n, increasing.
std::vector<u64> divisors(u64 n);

/// If q = p^a with p prime and a >= 1, returns {p, a}.
std::pair<u64, unsigned> prime_power_decomposition(u64 q);

bool is_prime_power(u64 q);

/// Largest power of `prime` dividing n, together with the cofactor: n = ell^v * m.
struct PrimeSplit {
  u64 prime_part;  // ell^v
  u64 cofactor;    // m, coprime to ell
  unsigned valuation;
};
PrimeSplit split_prime(u64 n, u64 prime);

/// Order of k in the additive group Z/m, i.e. the order of the character it labels.
inline u64 additive_order(u64 k, u64 m) { return m / gcd(k % m, m); }

/// Prime powers q with 2 <= q <= bound, increasing.
std::vector<u64> prime_powers_up_to(u64 bound);

}  // namespace levelzero
