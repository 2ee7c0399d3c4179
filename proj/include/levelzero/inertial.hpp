#pragma once

// Simple inertial classes of GL_n(F), and inertial types on the Galois side,
// presented as triples (endo-class, lift, level zero orbit).
//
// The endo-class is reduced to its numeric invariants. The lift ranges over a
// torsor under Gal(E/F) = Z/f whose generator acts on level zero orbits by
// k -> q*k. Changing the beta-extension by a character of the residue field
// shifts level zero labels by the inverse character.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "levelzero/character_lattice.hpp"

namespace levelzero {

struct EndoClassDescriptor {
  u64 p;
  u64 q;            // cardinality of the residue field of F
  unsigned delta;   // degree
  unsigned e;       // ramification index
  unsigned f;       // residue degree
  unsigned r;       // wild exponent

  /// Throws ParameterError unless p is prime, q is a power of p, e*f = delta,
  /// and p^r divides delta.
  void validate() const;

  u64 wild_dimension() const;  // p^r
  unsigned tame_degree() const;  // delta / p^r
  u64 residue_cardinality() const;  // q^f

  bool operator==(const EndoClassDescriptor&) const = default;
};

enum class Side { GL, Galois };

std::string_view to_string(Side side);
Side parse_side(std::string_view text);

/// Point of the Gal(E/F)-torsor of lifts, in Z/f.
struct LiftIndex {
  unsigned value;
  bool operator==(const LiftIndex&) const = default;
};

class SimpleInertialTriple {
 public:
  /// Validates the descriptor, delta | n, lift < f, and (for characteristic
  /// ell) that the orbit is ell-regular. The orbit is that of label k.
  SimpleInertialTriple(unsigned n, const EndoClassDescriptor& endo, LiftIndex lift, u64 k,
                       Side side = Side::GL, u64 characteristic = 0);

  unsigned n() const { return n_; }
  const EndoClassDescriptor& endo_class() const { return endo_; }
  LiftIndex lift() const { return lift_; }
  const CharOrbit& orbit() const { return orbit_; }
  Side side() const { return side_; }
  u64 characteristic() const { return characteristic_; }

  bool operator==(const SimpleInertialTriple& other) const;

 private:
  unsigned n_;
  EndoClassDescriptor endo_;
  LiftIndex lift_;
  CharOrbit orbit_;
  Side side_;
  u64 characteristic_;
};

struct BetaExtensionLabel {
  EndoClassDescriptor endo;
  u64 twist;  // offset from the p-primary beta-extension, mod q^f - 1
  bool eps1_flag;

  bool operator==(const BetaExtensionLabel&) const = default;
};

/// F_{q^f} extended to degree n/delta; Frobenius of the residue field of E
/// acts by k -> q^f k.
FieldSpec residue_context(const EndoClassDescriptor& endo, unsigned n);

/// Lambda = (Lambda^+)^{p^{-r}}: the orbit of k * p^{-r}.
CharOrbit level_zero_twist(const EndoClassDescriptor& endo, const CharOrbit& orbit);
/// Inverse of level_zero_twist: the orbit of k * p^r.
CharOrbit level_zero_untwist(const EndoClassDescriptor& endo, const CharOrbit& orbit);

SimpleInertialTriple change_lift(const SimpleInertialTriple& t, unsigned shift);

/// The f presentations of the class of t, by lift 0, 1, ..., f-1.
std::vector<SimpleInertialTriple> equivalent_presentations(const SimpleInertialTriple& t);

/// The presentation with lift 0.
SimpleInertialTriple canonical_triple(const SimpleInertialTriple& t);

bool triples_equal(const SimpleInertialTriple& a, const SimpleInertialTriple& b);

/// (n/delta) / stabilizer degree of the orbit.
unsigned multiplicity(const SimpleInertialTriple& t);
/// Size of the orbit.
unsigned parametric_degree(const SimpleInertialTriple& t);

/// The class with supercuspidal support m copies of that of t0; the orbit is
/// the norm inflation of t0's (regular) orbit.
SimpleInertialTriple inflate_simple(const SimpleInertialTriple& t0, unsigned m);

/// Effect on level zero orbits of replacing kappa by its twist by the
/// residue character labeled s: the orbit of k - norm_inflate(1, s).
CharOrbit beta_twist_level_zero(const CharOrbit& orbit, u64 s);

/// beta_twist_level_zero on the orbit of t; in characteristic ell the twist
/// is replaced by its ell-regular part.
SimpleInertialTriple beta_twist(const SimpleInertialTriple& t, u64 s);

/// Label of the quadratic character eps_Gal of the residue field of E, or 0.
u64 epsilon_gal(const EndoClassDescriptor& endo);

/// Twist of the canonical beta-extension relative to the p-primary one.
BetaExtensionLabel canonical_beta_label(const EndoClassDescriptor& endo, bool eps1_flag);

/// GL side to Galois side; identical data.
SimpleInertialTriple rec_triple(const SimpleInertialTriple& t);
/// Galois side back to GL side.
SimpleInertialTriple rec_inverse(const SimpleInertialTriple& t);

/// Level zero orbit replaced by its ell-regular part.
SimpleInertialTriple reduce_triple_mod_ell(const SimpleInertialTriple& t, u64 ell);

/// One-line JSON record with keys n, p, q, delta, e, f, r, lift,
/// orbit_canonical, side, char, in that order.
std::string serialize_triple(const SimpleInertialTriple& t);

/// Inverse of serialize_triple. Throws ParameterError on malformed records,
/// invariant violations, or a non-minimal orbit_canonical.
SimpleInertialTriple parse_triple(std::string_view record);

}  // namespace levelzero
