#include "levelzero/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>

#include "levelzero/errors.hpp"

namespace levelzero {

u64 powmod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u64 checked_pow(u64 base, unsigned exp) {
  u64 result = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(result, base, &result)) {
      throw OverflowError(std::to_string(base) + "^" + std::to_string(exp) +
                          " does not fit in 64 bits");
    }
  }
  return result;
}

u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }

u64 invmod(u64 a, u64 m) {
  if (m == 1) return 0;
  // extended Euclid on signed 128-bit to avoid overflow
  __int128 old_r = static_cast<__int128>(a % m), r = m;
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    __int128 quotient = old_r / r;
    __int128 tmp = old_r - quotient * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quotient * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) {
    throw ParameterError(std::to_string(a) + " is not invertible modulo " + std::to_string(m));
  }
  __int128 inv = old_s % static_cast<__int128>(m);
  if (inv < 0) inv += m;
  return static_cast<u64>(inv);
}

namespace {

bool miller_rabin_witness(u64 n, u64 a, u64 d, unsigned s) {
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (unsigned i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

u64 pollard_rho(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 x = 2, y = 2, d = 1;
    auto f = [&](u64 v) { return addmod(mulmod(v, v, n), c, n); };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_into(u64 n, std::vector<u64>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  u64 d = pollard_rho(n);
  factor_into(d, primes);
  factor_into(n / d, primes);
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  if (n < 37 * 37) return true;
  // bases 2, 3, 5, 7 are deterministic below 3215031751
  const std::size_t bases = n < 3215031751ULL ? 4 : 12;
  static constexpr u64 witnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::size_t i = 0; i < bases; ++i) {
    if (miller_rabin_witness(n, witnesses[i], d, s)) return false;
  }
  return true;
}

std::vector<PrimePower> factorize(u64 n) {
  if (n == 0) throw ParameterError("cannot factor 0");
  std::vector<u64> primes;
  for (u64 p = 2; p < 1000 && p * p <= n; ++p) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<PrimePower> result;
  for (u64 p : primes) {
    if (!result.empty() && result.back().prime == p) {
      ++result.back().exponent;
    } else {
      result.push_back({p, 1});
    }
  }
  return result;
}

std::vector<u64> prime_divisors(u64 n) {
  std::vector<u64> result;
  for (const auto& pp : factorize(n)) result.push_back(pp.prime);
  return result;
}

std::vector<u64> divisors(u64 n) {
  std::vector<u64> result{1};
  for (const auto& [prime, exponent] : factorize(n)) {
    const std::size_t count = result.size();
    u64 power = 1;
    for (unsigned e = 0; e < exponent; ++e) {
      power *= prime;
      for (std::size_t i = 0; i < count; ++i) result.push_back(result[i] * power);
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

namespace {

// r^e compared against n without overflow: -1, 0, 1.
int compare_power(u64 r, unsigned e, u64 n) {
  u64 acc = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (acc > n / r) return 1;
    acc *= r;
  }
  return acc < n ? -1 : (acc == n ? 0 : 1);
}

// (p, e) with p^e = q and p prime, if any. Tries each exponent with an
// integer root instead of factoring q.
std::optional<std::pair<u64, unsigned>> search_prime_power(u64 q) {
  if (q < 2) return std::nullopt;
  if (is_prime(q)) return std::pair{q, 1u};
  for (unsigned e = 2; e < 64 && (u64{1} << e) <= q; ++e) {
    // e >= 2, so the root is below 2^32 and r + 1 cannot overflow
    u64 r = static_cast<u64>(std::llround(std::pow(static_cast<double>(q), 1.0 / e)));
    r = std::clamp<u64>(r, 2, u64{1} << 32);
    while (r > 2 && compare_power(r, e, q) > 0) --r;
    while (compare_power(r + 1, e, q) <= 0) ++r;
    if (compare_power(r, e, q) == 0 && is_prime(r)) return std::pair{r, e};
  }
  return std::nullopt;
}

// Field constructors ask about the same q over and over; remember the last answer.
std::optional<std::pair<u64, unsigned>> try_prime_power(u64 q) {
  thread_local u64 last_q = 0;
  thread_local std::optional<std::pair<u64, unsigned>> last_result;
  if (q != last_q) {
    last_result = search_prime_power(q);
    last_q = q;
  }
  return last_result;
}

}  // namespace

std::pair<u64, unsigned> prime_power_decomposition(u64 q) {
  const auto found = try_prime_power(q);
  if (!found) throw ParameterError(std::to_string(q) + " is not a prime power");
  return *found;
}

bool is_prime_power(u64 q) { return try_prime_power(q).has_value(); }

PrimeSplit split_prime(u64 n, u64 prime) {
  PrimeSplit split{1, n, 0};
  while (split.cofactor % prime == 0) {
    split.cofactor /= prime;
    split.prime_part *= prime;
    ++split.valuation;
  }
  return split;
}

std::vector<u64> prime_powers_up_to(u64 bound) {
  std::vector<u64> result;
  for (u64 q = 2; q <= bound; ++q) {
    if (is_prime_power(q)) result.push_back(q);
  }
  return result;
}

}  // namespace levelzero
