#pragma once

// Random simple inertial triples with small residue contexts.

#include <random>

#include "levelzero/character_lattice.hpp"
#include "levelzero/inertial.hpp"
#include "oracles.hpp"

namespace testgen {

using levelzero::u64;

inline levelzero::EndoClassDescriptor random_descriptor(std::mt19937_64& rng) {
  static constexpr u64 primes[] = {2, 3, 5, 7};
  const u64 p = primes[rng() % 4];
  const u64 q = (p <= 3 && rng() % 2) ? p * p : p;
  const unsigned r = rng() % 3 == 0 ? 1 : 0;
  const unsigned tame = 1 + rng() % 3;
  const unsigned delta = tame * static_cast<unsigned>(oracle::ipow(p, r));
  std::vector<unsigned> fs;
  for (unsigned d = 1; d <= delta; ++d) {
    if (delta % d == 0 && oracle::ipow(q, d) <= 1u << 12) fs.push_back(d);
  }
  const unsigned f = fs[rng() % fs.size()];
  return {p, q, delta, delta / f, f, r};
}

/// A triple of characteristic 0, or `ell` when ell != 0 (the label is then
/// projected to its ell-regular part).
inline levelzero::SimpleInertialTriple random_triple(std::mt19937_64& rng, u64 ell_hint = 0) {
  const auto endo = random_descriptor(rng);
  const u64 base = oracle::ipow(endo.q, endo.f);
  unsigned degree = 1;
  while (degree < 4 && oracle::ipow(base, degree + 1) - 1 <= 4096 && rng() % 2) ++degree;
  const unsigned n = endo.delta * degree;
  const auto field = levelzero::residue_context(endo, n);
  u64 k = rng() % field.modulus();
  const auto lift = levelzero::LiftIndex{static_cast<unsigned>(rng() % endo.f)};
  const auto side = rng() % 2 ? levelzero::Side::GL : levelzero::Side::Galois;
  u64 characteristic = 0;
  if (ell_hint != 0 && ell_hint != endo.p) {
    characteristic = ell_hint;
    k = levelzero::EllSplit(field, ell_hint).regular_part(k);
  }
  return levelzero::SimpleInertialTriple(n, endo, lift, k, side, characteristic);
}

}  // namespace testgen
