#pragma once

// Cuspidal representations of GL_n(F_q) named by Galois orbits of
// characters of F_{q^n}^x: Green's parametrization in characteristic zero
// and James's in characteristic ell. Tokens identify representations up to
// isomorphism; no representation spaces are constructed.

#include <cstdint>
#include <vector>

#include "levelzero/character_lattice.hpp"
#include "levelzero/cyclotomic.hpp"

namespace levelzero {

class CuspidalToken {
 public:
  /// Characteristic-zero token sigma[chi]; throws ParameterError unless the orbit is regular.
  static CuspidalToken characteristic_zero(const CharOrbit& orbit);

  /// Characteristic-ell token sigma_ell[lambda]. Throws ParameterError unless
  /// every member is ell-regular and lambda has a regular extension.
  static CuspidalToken characteristic_ell(const CharOrbit& orbit, u64 ell);

  const FieldSpec& field() const { return orbit_.field(); }
  const CharOrbit& orbit() const { return orbit_; }
  /// 0 or the prime ell.
  u64 characteristic() const { return characteristic_; }

  bool operator==(const CuspidalToken&) const = default;

 private:
  CuspidalToken(CharOrbit orbit, u64 characteristic)
      : orbit_(std::move(orbit)), characteristic_(characteristic) {}

  CharOrbit orbit_;
  u64 characteristic_;
};

struct SupportEntry {
  unsigned degree;      // d: the factor is a supercuspidal of GL_d(F_q)
  CharOrbit orbit;      // regular orbit over F_{q^d}
  unsigned multiplicity;

  bool operator==(const SupportEntry&) const = default;
};

/// Supercuspidal support as a multiset; sum of degree * multiplicity is n.
using SupportMultiset = std::vector<SupportEntry>;

CuspidalToken green_rep(const FieldSpec& field, const CharOrbit& orbit);

/// Exponents m with g^m a primitive element of F_{q^n}/F_q, ascending.
std::vector<u64> primitive_elements(const FieldSpec& field);
bool is_primitive_element(const FieldSpec& field, u64 m);

/// Trace of sigma[chi] at g^m: (-1)^{n-1} sum_{i<n} zeta_M^{k q^i m}, exact.
CyclotomicValue green_trace(const CuspidalToken& token, u64 m);

CuspidalToken reduce_mod_ell(const CuspidalToken& token, u64 ell);

bool is_supercuspidal(const CuspidalToken& token);

/// Whether some regular k has ell-regular part in lambda. Searches the
/// ell-primary coset of the canonical member.
bool has_regular_extension(const CharOrbit& lambda, u64 ell);

SupportMultiset cuspidal_support_mod_ell(const CuspidalToken& token, u64 ell);

/// Twist by the character of F_q^x labeled s (mod q - 1). In characteristic
/// ell the twisting character is replaced by its ell-regular part.
CuspidalToken twist_token(const CuspidalToken& token, u64 s);

/// All cuspidal tokens of GL_n(F_q) in characteristic ell, by canonical label.
std::vector<CuspidalToken> enumerate_cuspidal_tokens(const FieldSpec& field, u64 ell);

}  // namespace levelzero
