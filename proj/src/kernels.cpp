#include "levelzero/kernels.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <unordered_map>

#include "levelzero/cyclotomic.hpp"
#include "levelzero/limits.hpp"

namespace levelzero::kernels {

namespace {

using index_t = std::int64_t;  // OpenMP loop counters must be signed

std::vector<u64> frobenius_orbit_exponents(const FieldSpec& field, u64 k) {
  std::vector<u64> exps(field.n());
  u64 x = k % field.modulus();
  for (unsigned i = 0; i < field.n(); ++i) {
    exps[i] = x;
    x = mulmod(x, field.q(), field.modulus());
  }
  return exps;
}

i64 trace_sign(const FieldSpec& field) { return field.n() % 2 == 1 ? 1 : -1; }

std::uint64_t hash_key(const std::vector<i64>& key) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (key[i] == 0) continue;
    std::uint64_t z = h ^ (static_cast<std::uint64_t>(key[i]) + 0x9e3779b97f4a7c15ULL + (i << 20));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    h = z ^ (z >> 31);
  }
  return h;
}

// Orbit size of k if k is the minimum of its Frobenius orbit, else 0. Gives
// up at the first smaller member, so most k cost a step or two.
unsigned size_if_minimal(const FieldSpec& field, u64 k) {
  const u64 m = field.modulus();
  unsigned size = 1;
  for (u64 x = mulmod(k, field.q(), m); x != k; x = mulmod(x, field.q(), m), ++size) {
    if (x < k) return 0;
  }
  return size;
}

bool ell_power(u64 order, u64 ell) {
  while (order % ell == 0) order /= ell;
  return order == 1;
}

}  // namespace

std::vector<u64> orbit_labels(const FieldSpec& field) {
  require_within_sweep_bound(field.modulus(), "orbit_labels");
  const index_t m = static_cast<index_t>(field.modulus());
  std::vector<u64> labels(m);
  // each orbit is written only by its own minimum, so writes never overlap
#pragma omp parallel for schedule(dynamic, 1024)
  for (index_t k = 0; k < m; ++k) {
    const u64 start = static_cast<u64>(k);
    const unsigned size = size_if_minimal(field, start);
    u64 x = start;
    for (unsigned i = 0; i < size; ++i, x = mulmod(x, field.q(), field.modulus())) labels[x] = start;
  }
  return labels;
}

std::vector<u64> orbit_labels_serial(const FieldSpec& field) {
  require_within_sweep_bound(field.modulus(), "orbit_labels");
  const u64 m = field.modulus();
  std::vector<u64> labels(m, m);
  for (u64 k = 0; k < m; ++k) {
    if (labels[k] != m) continue;
    // k is the first member met in increasing order, hence the minimum
    for (u64 x = k; labels[x] == m; x = mulmod(x, field.q(), m)) labels[x] = k;
  }
  return labels;
}

std::vector<unsigned> stabilizer_degrees(const FieldSpec& field) {
  require_within_sweep_bound(field.modulus(), "stabilizer_degrees");
  const index_t m = static_cast<index_t>(field.modulus());
  std::vector<unsigned> degrees(m);
#pragma omp parallel for schedule(dynamic, 1024)
  for (index_t k = 0; k < m; ++k) {
    const u64 start = static_cast<u64>(k);
    const unsigned size = size_if_minimal(field, start);
    u64 x = start;
    for (unsigned i = 0; i < size; ++i, x = mulmod(x, field.q(), field.modulus())) degrees[x] = size;
  }
  return degrees;
}

std::vector<unsigned> stabilizer_degrees_serial(const FieldSpec& field) {
  require_within_sweep_bound(field.modulus(), "stabilizer_degrees");
  const u64 m = field.modulus();
  std::vector<unsigned> degrees(m, 0);
  for (u64 k = 0; k < m; ++k) {
    if (degrees[k] != 0) continue;
    std::vector<u64> walk;
    for (u64 x = k; walk.empty() || x != k; x = mulmod(x, field.q(), m)) walk.push_back(x);
    for (u64 x : walk) degrees[x] = static_cast<unsigned>(walk.size());
  }
  return degrees;
}

SplitTally ell_split_tally(const FieldSpec& field, u64 ell) {
  require_within_sweep_bound(field.modulus(), "ell_split_tally");
  const u64 m = field.modulus();
  std::vector<u64> regular_elems, primary_elems;
  for (u64 a = 0; a < m; ++a) {
    const u64 order = additive_order(a, m);
    if (gcd(order, ell) == 1) regular_elems.push_back(a);
    if (ell_power(order, ell)) primary_elems.push_back(a);
  }
  SplitTally tally{std::vector<std::uint32_t>(m, 0), std::vector<u64>(m, 0)};
  const index_t nreg = static_cast<index_t>(regular_elems.size());
#pragma omp parallel for schedule(static)
  for (index_t i = 0; i < nreg; ++i) {
    const u64 a = regular_elems[i];
    for (u64 b : primary_elems) {
      const u64 k = addmod(a, b, m);
#pragma omp atomic
      ++tally.count[k];
#pragma omp atomic write
      tally.regular[k] = a;
    }
  }
  return tally;
}

SplitTally ell_split_tally_serial(const FieldSpec& field, u64 ell) {
  require_within_sweep_bound(field.modulus(), "ell_split_tally");
  const u64 m = field.modulus();
  std::vector<bool> regular(m), primary(m);
  for (u64 a = 0; a < m; ++a) {
    const u64 order = additive_order(a, m);
    regular[a] = gcd(order, ell) == 1;
    primary[a] = ell_power(order, ell);
  }
  SplitTally tally{std::vector<std::uint32_t>(m, 0), std::vector<u64>(m, 0)};
  for (u64 k = 0; k < m; ++k) {
    for (u64 a = 0; a < m; ++a) {
      if (regular[a] && primary[submod(k, a, m)]) {
        ++tally.count[k];
        tally.regular[k] = a;
      }
    }
  }
  return tally;
}

std::vector<std::uint32_t> trace_classes(const FieldSpec& field) {
  require_within_sweep_bound(field.modulus(), "trace_classes");
  const u64 m = field.modulus();
  const std::vector<u64> labels = orbit_labels(field);
  std::vector<u64> reps;
  for (u64 k = 0; k < m; ++k) {
    if (labels[k] == k) reps.push_back(k);
  }
  cyclotomic_cofactor(m);  // warm the cache before fanning out
  const i64 sign = trace_sign(field);
  const index_t nreps = static_cast<index_t>(reps.size());
  std::vector<std::uint64_t> hashes(reps.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (index_t i = 0; i < nreps; ++i) {
    hashes[i] = hash_key(embedding_key(m, frobenius_orbit_exponents(field, reps[i]), sign));
  }

  // Representatives are visited in increasing order, so ids follow first appearance.
  std::unordered_map<std::uint64_t, std::vector<std::pair<u64, std::uint32_t>>> buckets;
  std::vector<std::uint32_t> rep_class(m, 0);
  std::uint32_t next_id = 0;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    auto& bucket = buckets[hashes[i]];
    std::optional<std::uint32_t> found;
    if (!bucket.empty()) {
      const auto key = embedding_key(m, frobenius_orbit_exponents(field, reps[i]), sign);
      for (const auto& [other, id] : bucket) {
        if (embedding_key(m, frobenius_orbit_exponents(field, other), sign) == key) {
          found = id;
          break;
        }
      }
    }
    if (!found) {
      found = next_id++;
      bucket.emplace_back(reps[i], *found);
    }
    rep_class[reps[i]] = *found;
  }
  std::vector<std::uint32_t> classes(m);
  for (u64 k = 0; k < m; ++k) classes[k] = rep_class[labels[k]];
  return classes;
}

std::vector<std::uint32_t> trace_classes_serial(const FieldSpec& field) {
  require_within_sweep_bound(field.modulus(), "trace_classes");
  const u64 m = field.modulus();
  const i64 sign = trace_sign(field);
  std::map<IntPoly, std::uint32_t> ids;
  std::vector<std::uint32_t> classes(m);
  for (u64 k = 0; k < m; ++k) {
    const auto exps = frobenius_orbit_exponents(field, k);
    const auto value = CyclotomicValue::from_exponents(m, exps, sign);
    auto [it, inserted] = ids.emplace(value.coefficients(), static_cast<std::uint32_t>(ids.size()));
    classes[k] = it->second;
  }
  return classes;
}

}  // namespace levelzero::kernels
