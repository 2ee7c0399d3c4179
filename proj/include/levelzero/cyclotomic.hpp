#pragma once

// Exact arithmetic in Z[zeta_M], the ring of integers of the M-th cyclotomic
// field, in the power basis 1, x, ..., x^{phi(M)-1} of Z[x]/(Phi_M).

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "levelzero/arith.hpp"

namespace levelzero {

/// Integer polynomial, coefficient of x^i at index i.
using IntPoly = std::vector<i64>;

u64 euler_phi(u64 m);

/// Phi_m, computed by dividing x^m - 1 by Phi_d for the proper divisors d | m.
/// Results are cached for the life of the process; safe to call concurrently.
std::shared_ptr<const IntPoly> cyclotomic_polynomial(u64 m);

/// (x^m - 1) / Phi_m, the product of Phi_d over the proper divisors d | m. Cached.
std::shared_ptr<const IntPoly> cyclotomic_cofactor(u64 m);

/// Remainder of `poly` modulo the monic `divisor`, exact.
IntPoly poly_remainder(IntPoly poly, const IntPoly& divisor);

class CyclotomicValue {
 public:
  /// Reduces `coeffs` (any length) modulo Phi_M.
  CyclotomicValue(u64 modulus, IntPoly coeffs);

  /// sign * sum of zeta_M^e over `exponents` (taken modulo M).
  static CyclotomicValue from_exponents(u64 modulus, std::span<const u64> exponents, i64 sign = 1);

  u64 modulus() const { return modulus_; }
  /// Exactly phi(M) coefficients.
  const IntPoly& coefficients() const { return coeffs_; }

  /// Floating-point evaluation at exp(2 pi i / M). Approximate.
  std::complex<double> approximate() const;

  bool operator==(const CyclotomicValue&) const = default;

 private:
  u64 modulus_;
  IntPoly coeffs_;
};

/// Image of sign * sum zeta^e under the injective Z-module map
/// Z[x]/(Phi_M) -> Z[x]/(x^M - 1), P -> P * Psi_M with Psi_M the cofactor.
/// Two sparse sums are equal in Z[zeta_M] iff their keys are equal. Costs
/// O(|exponents| * M) and needs no division.
std::vector<i64> embedding_key(u64 modulus, std::span<const u64> exponents, i64 sign = 1);

}  // namespace levelzero
