#include "doctest.h"
#include "levelzero/character_lattice.hpp"
#include "levelzero/cyclotomic.hpp"
#include "levelzero/kernels.hpp"
#include "oracles.hpp"

using namespace levelzero;

TEST_CASE("parallel kernels match serial references") {
  for (const auto& [q, n] : oracle::small_fields(3000)) {
    const FieldSpec field(q, n);
    CAPTURE(field.to_string());
    CHECK(kernels::orbit_labels(field) == kernels::orbit_labels_serial(field));
    CHECK(kernels::stabilizer_degrees(field) == kernels::stabilizer_degrees_serial(field));
    if (field.modulus() <= 800) {
      CHECK(kernels::trace_classes(field) == kernels::trace_classes_serial(field));
    }
    for (u64 ell : prime_divisors(field.modulus() == 1 ? 2 : field.modulus())) {
      if (ell == field.p()) continue;
      const auto par = kernels::ell_split_tally(field, ell);
      const auto ser = kernels::ell_split_tally_serial(field, ell);
      CHECK(par.count == ser.count);
      CHECK(par.regular == ser.regular);
    }
  }
}

TEST_CASE("kernels against brute force") {
  const FieldSpec field(4, 3);  // M = 63
  const auto labels = kernels::orbit_labels(field);
  const auto degrees = kernels::stabilizer_degrees(field);
  for (u64 k = 0; k < 63; ++k) {
    const auto members = oracle::orbit(4, 63, k);
    CHECK(labels[k] == members.front());
    CHECK(degrees[k] == members.size());
  }

  for (u64 ell : {3u, 7u}) {
    const auto tally = kernels::ell_split_tally(field, ell);
    for (u64 k = 0; k < 63; ++k) {
      const auto splits = oracle::ell_splittings(63, k, ell);
      CHECK(tally.count[k] == splits.size());
      CHECK(splits.size() == 1);
      CHECK(tally.regular[k] == splits.front().first);
    }
  }

  const auto classes = kernels::trace_classes(field);
  for (u64 a = 0; a < 63; ++a) {
    for (u64 b = 0; b < 63; ++b) {
      const bool same = std::abs(oracle::trace_numeric(4, 3, 63, a, 1) -
                                 oracle::trace_numeric(4, 3, 63, b, 1)) < 1e-9;
      CHECK((classes[a] == classes[b]) == same);
    }
  }
}
