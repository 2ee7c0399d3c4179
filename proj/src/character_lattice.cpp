#include "levelzero/character_lattice.hpp"

#include <algorithm>
#include <string>

#include "levelzero/errors.hpp"
#include "levelzero/kernels.hpp"
#include "levelzero/limits.hpp"

namespace levelzero {

FieldSpec::FieldSpec(u64 q, unsigned n) : q_(q), n_(n) {
  if (n == 0) throw ParameterError("extension degree n must be positive");
  if (!is_prime_power(q)) throw ParameterError("q = " + std::to_string(q) + " is not a prime power");
  p_ = prime_power_decomposition(q).first;
  modulus_ = checked_pow(q, n) - 1;
  for (unsigned d = 1; d <= n; ++d) {
    if (n % d == 0) divisors_.push_back(d);
  }
}

u64 FieldSpec::subfield_order(unsigned d) const {
  if (!divides_degree(d)) {
    throw ParameterError("d = " + std::to_string(d) + " does not divide n = " + std::to_string(n_));
  }
  return checked_pow(q_, d) - 1;
}

u64 FieldSpec::norm_factor(unsigned d) const { return modulus_ / subfield_order(d); }

FieldSpec FieldSpec::subfield(unsigned d) const {
  subfield_order(d);
  return FieldSpec(q_, d);
}

std::string FieldSpec::to_string() const {
  return "F_" + std::to_string(q_) + "^" + std::to_string(n_) + " (M=" + std::to_string(modulus_) + ")";
}

bool CharOrbit::contains(u64 k) const {
  return std::binary_search(members_.begin(), members_.end(), k);
}

u64 frobenius_act(const FieldSpec& field, u64 k, long long i) {
  const u64 m = field.modulus();
  if (m == 1) return 0;
  // q has order dividing n in (Z/M)^x, so reduce i modulo n.
  const long long n = field.n();
  const long long shift = ((i % n) + n) % n;
  return mulmod(k % m, powmod(field.q(), static_cast<u64>(shift), m), m);
}

CharOrbit orbit_of(const FieldSpec& field, u64 k) {
  const u64 m = field.modulus();
  std::vector<u64> members;
  members.reserve(field.n());
  u64 x = k % m;
  do {
    members.push_back(x);
    x = mulmod(x, field.q(), m);
  } while (x != members.front());
  std::sort(members.begin(), members.end());
  return CharOrbit(field, std::move(members));
}

u64 orbit_min(const FieldSpec& field, u64 k) {
  const u64 m = field.modulus();
  const u64 start = k % m;
  u64 best = start;
  for (u64 x = mulmod(start, field.q(), m); x != start; x = mulmod(x, field.q(), m)) {
    best = std::min(best, x);
  }
  return best;
}

unsigned stabilizer_degree(const FieldSpec& field, u64 k) {
  const u64 m = field.modulus();
  k %= m;
  for (unsigned d : field.degree_divisors()) {
    if (mulmod(k, powmod(field.q(), d, m), m) == k) return d;
  }
  return field.n();
}

bool is_regular(const FieldSpec& field, u64 k) { return stabilizer_degree(field, k) == field.n(); }

EllSplit::EllSplit(const FieldSpec& field, u64 ell) : ell_(ell), modulus_(field.modulus()) {
  if (!is_prime(ell)) throw ParameterError("ell = " + std::to_string(ell) + " is not prime");
  if (ell == field.p()) {
    throw ParameterError("ell = p = " + std::to_string(ell) + " is not allowed");
  }
  const PrimeSplit split = split_prime(modulus_, ell);
  primary_order_ = split.prime_part;
  regular_order_ = split.cofactor;
  // e = ell^v * (ell^v)^{-1} mod m; e = 1 mod m and e = 0 mod ell^v.
  idempotent_ = mulmod(primary_order_, invmod(primary_order_ % regular_order_, regular_order_),
                       modulus_);
}

EllParts ell_decompose(const FieldSpec& field, u64 k, u64 ell) {
  const EllSplit split(field, ell);
  return {split.regular_part(k), split.primary_part(k)};
}

u64 norm_inflate(const FieldSpec& field, unsigned d, u64 j) {
  const u64 sub = field.subfield_order(d);
  if (j >= sub) {
    throw ParameterError("j = " + std::to_string(j) + " is not a residue modulo q^d - 1 = " +
                         std::to_string(sub));
  }
  return mulmod(j, field.modulus() / sub, field.modulus());
}

bool is_norm_inflated(const FieldSpec& field, u64 k, unsigned d) {
  return (k % field.modulus()) % field.norm_factor(d) == 0;
}

Descent regular_descent(const FieldSpec& field, u64 k) {
  k %= field.modulus();
  const unsigned d = stabilizer_degree(field, k);
  return {d, k / field.norm_factor(d)};
}

u64 restrict_to_subfield(const FieldSpec& field, u64 k, unsigned d) {
  return (k % field.modulus()) % field.subfield_order(d);
}

u64 twist_by_subfield_char(const FieldSpec& field, u64 k, unsigned d, u64 s) {
  const u64 inflated = norm_inflate(field, d, s % field.subfield_order(d));
  return addmod(k, inflated, field.modulus());
}

std::vector<CharOrbit> enumerate_orbits(const FieldSpec& field, OrbitFilter filter) {
  require_within_sweep_bound(field.modulus(), "enumerate_orbits");
  const std::vector<u64> labels = kernels::orbit_labels(field);
  std::vector<CharOrbit> result;
  for (u64 k = 0; k < field.modulus(); ++k) {
    if (labels[k] != k) continue;
    CharOrbit orbit = orbit_of(field, k);
    const bool regular = is_regular(orbit);
    if (filter == OrbitFilter::all || (filter == OrbitFilter::regular) == regular) {
      result.push_back(std::move(orbit));
    }
  }
  return result;
}

}  // namespace levelzero
