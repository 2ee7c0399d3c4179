#pragma once

// Characters of F_{q^n}^x as residues modulo M = q^n - 1.
//
// A character is labeled by its exponent k relative to a fixed (implicit)
// generator of the character group, so the Frobenius x -> x^q acts on labels
// by k -> q*k mod M and Galois orbits are the orbits of that map.

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "levelzero/arith.hpp"

namespace levelzero {

class FieldSpec {
 public:
  /// F_{q^n} over F_q. Throws ParameterError unless q is a prime power and
  /// n >= 1, OverflowError if q^n - 1 does not fit in 64 bits.
  FieldSpec(u64 q, unsigned n);

  u64 p() const { return p_; }
  u64 q() const { return q_; }
  unsigned n() const { return n_; }
  /// Order of the multiplicative group, q^n - 1.
  u64 modulus() const { return modulus_; }

  /// q^d - 1 for d | n.
  u64 subfield_order(unsigned d) const;
  /// M / (q^d - 1) for d | n: the exponent of the norm map to F_{q^d}.
  u64 norm_factor(unsigned d) const;
  /// Positive divisors of n, increasing.
  const std::vector<unsigned>& degree_divisors() const { return divisors_; }
  bool divides_degree(unsigned d) const { return d >= 1 && n_ % d == 0; }

  /// The subfield F_{q^d} as a field in its own right.
  FieldSpec subfield(unsigned d) const;

  std::string to_string() const;

  bool operator==(const FieldSpec& other) const { return q_ == other.q_ && n_ == other.n_; }

 private:
  u64 p_;
  u64 q_;
  unsigned n_;
  u64 modulus_;
  std::vector<unsigned> divisors_;
};

/// A Galois orbit of character labels, members ascending.
class CharOrbit {
 public:
  const FieldSpec& field() const { return field_; }
  const std::vector<u64>& members() const { return members_; }
  /// Minimal member; orbits are identified by it.
  u64 canonical() const { return members_.front(); }
  std::size_t size() const { return members_.size(); }
  bool contains(u64 k) const;

  bool operator==(const CharOrbit& other) const {
    return field_ == other.field_ && canonical() == other.canonical();
  }

 private:
  friend CharOrbit orbit_of(const FieldSpec& field, u64 k);
  CharOrbit(FieldSpec field, std::vector<u64> members)
      : field_(std::move(field)), members_(std::move(members)) {}

  FieldSpec field_;
  std::vector<u64> members_;
};

enum class OrbitFilter { all, regular, nonregular };

/// k * q^i mod M; negative i uses the inverse of q modulo M.
u64 frobenius_act(const FieldSpec& field, u64 k, long long i);

CharOrbit orbit_of(const FieldSpec& field, u64 k);

/// Smallest d | n with q^d k = k mod M. Equals the orbit size.
unsigned stabilizer_degree(const FieldSpec& field, u64 k);

bool is_regular(const FieldSpec& field, u64 k);
inline bool is_regular(const CharOrbit& orbit) {
  return orbit.size() == orbit.field().n();
}

/// Unique splitting of a label into parts of order prime to ell and of
/// ell-power order. Precomputes the CRT idempotent, so sweeps should hold
/// one instance per (field, ell).
class EllSplit {
 public:
  /// Throws ParameterError if ell is not prime or ell == p.
  EllSplit(const FieldSpec& field, u64 ell);

  u64 ell() const { return ell_; }
  /// ell^v with M = ell^v * m.
  u64 primary_order() const { return primary_order_; }
  /// m, coprime to ell.
  u64 regular_order() const { return regular_order_; }

  u64 regular_part(u64 k) const { return mulmod(k, idempotent_, modulus_); }
  u64 primary_part(u64 k) const { return submod(k, regular_part(k), modulus_); }
  bool is_ell_regular(u64 k) const { return regular_part(k) == k % modulus_; }

 private:
  u64 ell_;
  u64 modulus_;
  u64 primary_order_;
  u64 regular_order_;
  u64 idempotent_;  // 1 mod m, 0 mod ell^v
};

struct EllParts {
  u64 regular;
  u64 primary;
  bool operator==(const EllParts&) const = default;
};

EllParts ell_decompose(const FieldSpec& field, u64 k, u64 ell);

/// Pullback along the norm F_{q^n}^x -> F_{q^d}^x: j * M / (q^d - 1).
u64 norm_inflate(const FieldSpec& field, unsigned d, u64 j);

/// True iff k is inflated from F_{q^d}, i.e. M/(q^d - 1) divides k.
bool is_norm_inflated(const FieldSpec& field, u64 k, unsigned d);

struct Descent {
  unsigned degree;  // stabilizer degree d
  u64 label;        // regular label over F_{q^d}
  bool operator==(const Descent&) const = default;
};

/// The regular character of the smallest subfield that k is inflated from.
Descent regular_descent(const FieldSpec& field, u64 k);

/// Restriction to the roots of unity of F_{q^d}: k mod (q^d - 1).
u64 restrict_to_subfield(const FieldSpec& field, u64 k, unsigned d);

/// k + norm_inflate(d, s mod (q^d - 1)) mod M.
u64 twist_by_subfield_char(const FieldSpec& field, u64 k, unsigned d, u64 s);

/// Every orbit exactly once, ordered by canonical representative.
/// Throws ResourceError if M exceeds the sweep bound.
std::vector<CharOrbit> enumerate_orbits(const FieldSpec& field,
                                        OrbitFilter filter = OrbitFilter::all);

/// Minimal member of the orbit of k without materializing the orbit.
u64 orbit_min(const FieldSpec& field, u64 k);

}  // namespace levelzero
