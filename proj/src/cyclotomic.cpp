#include "levelzero/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "levelzero/errors.hpp"

namespace levelzero {

namespace {

i64 checked_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("cyclotomic coefficient overflow");
  return r;
}

i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("cyclotomic coefficient overflow");
  return r;
}

void trim(IntPoly& poly) {
  while (!poly.empty() && poly.back() == 0) poly.pop_back();
}

// Exact quotient of `dividend` by monic `divisor`; throws if not exact.
IntPoly exact_quotient(IntPoly dividend, const IntPoly& divisor) {
  const std::size_t dd = divisor.size() - 1;
  if (dividend.size() < divisor.size()) throw OverflowError("inexact cyclotomic division");
  IntPoly quotient(dividend.size() - dd, 0);
  for (std::size_t i = dividend.size(); i-- > dd;) {
    const i64 c = dividend[i];
    quotient[i - dd] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) {
      dividend[i - dd + j] = checked_add(dividend[i - dd + j], -checked_mul(c, divisor[j]));
    }
  }
  trim(dividend);
  if (!dividend.empty()) throw OverflowError("inexact cyclotomic division");
  return quotient;
}

class PolyCache {
 public:
  std::shared_ptr<const IntPoly> find(u64 m) {
    std::lock_guard lock(mutex_);
    auto it = entries_.find(m);
    return it == entries_.end() ? nullptr : it->second;
  }
  std::shared_ptr<const IntPoly> insert(u64 m, IntPoly poly) {
    std::lock_guard lock(mutex_);
    auto [it, inserted] = entries_.emplace(m, std::make_shared<const IntPoly>(std::move(poly)));
    return it->second;
  }

 private:
  std::mutex mutex_;
  std::map<u64, std::shared_ptr<const IntPoly>> entries_;
};

PolyCache& phi_cache() {
  static PolyCache cache;
  return cache;
}

PolyCache& cofactor_cache() {
  static PolyCache cache;
  return cache;
}

IntPoly x_pow_minus_one(u64 m) {
  IntPoly poly(m + 1, 0);
  poly[0] = -1;
  poly[m] = 1;
  return poly;
}

}  // namespace

u64 euler_phi(u64 m) {
  if (m == 0) throw ParameterError("phi(0) is undefined");
  u64 result = m;
  for (const auto& pp : factorize(m)) result = result / pp.prime * (pp.prime - 1);
  return result;
}

std::shared_ptr<const IntPoly> cyclotomic_polynomial(u64 m) {
  if (m == 0) throw ParameterError("cyclotomic index must be positive");
  if (auto hit = phi_cache().find(m)) return hit;
  IntPoly poly = x_pow_minus_one(m);
  for (u64 d : divisors(m)) {
    if (d == m) continue;
    poly = exact_quotient(std::move(poly), *cyclotomic_polynomial(d));
  }
  return phi_cache().insert(m, std::move(poly));
}

std::shared_ptr<const IntPoly> cyclotomic_cofactor(u64 m) {
  if (m == 0) throw ParameterError("cyclotomic index must be positive");
  if (auto hit = cofactor_cache().find(m)) return hit;
  return cofactor_cache().insert(m, exact_quotient(x_pow_minus_one(m), *cyclotomic_polynomial(m)));
}

IntPoly poly_remainder(IntPoly poly, const IntPoly& divisor) {
  const std::size_t dd = divisor.size() - 1;
  for (std::size_t i = poly.size(); i-- > dd;) {
    const i64 c = poly[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) {
      poly[i - dd + j] = checked_add(poly[i - dd + j], -checked_mul(c, divisor[j]));
    }
  }
  poly.resize(dd, 0);
  return poly;
}

CyclotomicValue::CyclotomicValue(u64 modulus, IntPoly coeffs) : modulus_(modulus) {
  coeffs_ = poly_remainder(std::move(coeffs), *cyclotomic_polynomial(modulus));
}

CyclotomicValue CyclotomicValue::from_exponents(u64 modulus, std::span<const u64> exponents,
                                                i64 sign) {
  IntPoly raw(modulus, 0);
  for (u64 e : exponents) raw[e % modulus] += sign;
  return CyclotomicValue(modulus, std::move(raw));
}

std::complex<double> CyclotomicValue::approximate() const {
  std::complex<double> sum = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(i) /
                         static_cast<double>(modulus_);
    sum += static_cast<double>(coeffs_[i]) * std::polar(1.0, angle);
  }
  return sum;
}

std::vector<i64> embedding_key(u64 modulus, std::span<const u64> exponents, i64 sign) {
  const IntPoly& cofactor = *cyclotomic_cofactor(modulus);
  std::vector<i64> key(modulus, 0);
  for (u64 e : exponents) {
    const u64 shift = e % modulus;
    for (std::size_t j = 0; j < cofactor.size(); ++j) {
      if (cofactor[j] == 0) continue;
      u64 pos = shift + j;
      if (pos >= modulus) pos -= modulus;
      key[pos] = checked_add(key[pos], checked_mul(sign, cofactor[j]));
    }
  }
  return key;
}

}  // namespace levelzero
