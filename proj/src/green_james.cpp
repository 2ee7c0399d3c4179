#include "levelzero/green_james.hpp"

#include <algorithm>
#include <string>

#include "levelzero/errors.hpp"
#include "levelzero/kernels.hpp"
#include "levelzero/limits.hpp"

namespace levelzero {

CuspidalToken CuspidalToken::characteristic_zero(const CharOrbit& orbit) {
  if (!is_regular(orbit)) {
    throw ParameterError("orbit of " + std::to_string(orbit.canonical()) +
                         " is not regular; no characteristic-zero cuspidal is attached");
  }
  return CuspidalToken(orbit, 0);
}

CuspidalToken CuspidalToken::characteristic_ell(const CharOrbit& orbit, u64 ell) {
  const EllSplit split(orbit.field(), ell);
  if (!std::all_of(orbit.members().begin(), orbit.members().end(),
                   [&](u64 k) { return split.is_ell_regular(k); })) {
    throw ParameterError("orbit of " + std::to_string(orbit.canonical()) + " is not " +
                         std::to_string(ell) + "-regular");
  }
  if (!has_regular_extension(orbit, ell)) {
    throw ParameterError("orbit of " + std::to_string(orbit.canonical()) +
                         " has no regular extension");
  }
  return CuspidalToken(orbit, ell);
}

CuspidalToken green_rep(const FieldSpec& field, const CharOrbit& orbit) {
  if (!(orbit.field() == field)) throw ParameterError("orbit lives over a different field");
  return CuspidalToken::characteristic_zero(orbit);
}

bool is_primitive_element(const FieldSpec& field, u64 m) {
  m %= field.modulus();
  for (unsigned d : field.degree_divisors()) {
    if (d == field.n()) continue;
    if (m % field.norm_factor(d) == 0) return false;
  }
  return true;
}

std::vector<u64> primitive_elements(const FieldSpec& field) {
  require_within_sweep_bound(field.modulus(), "primitive_elements");
  std::vector<u64> result;
  for (u64 m = 0; m < field.modulus(); ++m) {
    if (is_primitive_element(field, m)) result.push_back(m);
  }
  return result;
}

CyclotomicValue green_trace(const CuspidalToken& token, u64 m) {
  if (token.characteristic() != 0) {
    throw ParameterError("traces are only available for characteristic-zero tokens");
  }
  const FieldSpec& field = token.field();
  if (!is_primitive_element(field, m)) {
    throw ParameterError("g^" + std::to_string(m) + " is not a primitive element");
  }
  require_within_sweep_bound(field.modulus(), "green_trace");
  const u64 modulus = field.modulus();
  std::vector<u64> exponents;
  u64 x = mulmod(token.orbit().canonical(), m % modulus, modulus);
  for (unsigned i = 0; i < field.n(); ++i) {
    exponents.push_back(x);
    x = mulmod(x, field.q(), modulus);
  }
  return CyclotomicValue::from_exponents(modulus, exponents, field.n() % 2 == 1 ? 1 : -1);
}

CuspidalToken reduce_mod_ell(const CuspidalToken& token, u64 ell) {
  if (token.characteristic() != 0) throw ParameterError("token is already in characteristic ell");
  const EllSplit split(token.field(), ell);
  return CuspidalToken::characteristic_ell(
      orbit_of(token.field(), split.regular_part(token.orbit().canonical())), ell);
}

bool is_supercuspidal(const CuspidalToken& token) {
  return token.characteristic() == 0 || is_regular(token.orbit());
}

bool has_regular_extension(const CharOrbit& lambda, u64 ell) {
  const FieldSpec& field = lambda.field();
  const EllSplit split(field, ell);
  const u64 base = lambda.canonical();
  if (!split.is_ell_regular(base)) {
    throw ParameterError("orbit of " + std::to_string(base) + " is not " + std::to_string(ell) +
                         "-regular");
  }
  require_within_sweep_bound(split.primary_order(), "has_regular_extension coset");
  // the ell-primary subgroup is generated by m = M / ell^v
  const u64 step = split.regular_order();
  u64 k = base;
  for (u64 t = 0; t < split.primary_order(); ++t) {
    if (is_regular(field, k)) return true;
    k = addmod(k, step, field.modulus());
  }
  return false;
}

SupportMultiset cuspidal_support_mod_ell(const CuspidalToken& token, u64 ell) {
  if (token.characteristic() != 0) throw ParameterError("token is already in characteristic ell");
  const FieldSpec& field = token.field();
  const EllSplit split(field, ell);
  const Descent descent = regular_descent(field, split.regular_part(token.orbit().canonical()));
  return {SupportEntry{descent.degree, orbit_of(field.subfield(descent.degree), descent.label),
                       field.n() / descent.degree}};
}

CuspidalToken twist_token(const CuspidalToken& token, u64 s) {
  const FieldSpec& field = token.field();
  u64 shift = norm_inflate(field, 1, s % field.subfield_order(1));
  if (token.characteristic() != 0) shift = EllSplit(field, token.characteristic()).regular_part(shift);
  CharOrbit twisted = orbit_of(field, addmod(token.orbit().canonical(), shift, field.modulus()));
  if (token.characteristic() == 0) return CuspidalToken::characteristic_zero(twisted);
  return CuspidalToken::characteristic_ell(twisted, token.characteristic());
}

std::vector<CuspidalToken> enumerate_cuspidal_tokens(const FieldSpec& field, u64 ell) {
  const EllSplit split(field, ell);
  std::vector<CuspidalToken> result;
  for (const CharOrbit& orbit : enumerate_orbits(field)) {
    if (!split.is_ell_regular(orbit.canonical())) continue;
    if (!has_regular_extension(orbit, ell)) continue;
    result.push_back(CuspidalToken::characteristic_ell(orbit, ell));
  }
  return result;
}

}  // namespace levelzero
