#pragma once

// Data-parallel sweeps over the whole character group Z/M.
//
// Each kernel has an OpenMP version and a `_serial` reference that computes
// the same result by a different, straightforward route. The references are
// used by the tests to pin the parallel versions and by the benchmark.

#include <cstdint>
#include <vector>

#include "levelzero/character_lattice.hpp"

namespace levelzero::kernels {

/// labels[k] = minimal member of the Galois orbit of k, for every k in [0, M).
std::vector<u64> orbit_labels(const FieldSpec& field);
std::vector<u64> orbit_labels_serial(const FieldSpec& field);

/// degrees[k] = stabilizer_degree(field, k).
std::vector<unsigned> stabilizer_degrees(const FieldSpec& field);
std::vector<unsigned> stabilizer_degrees_serial(const FieldSpec& field);

/// Brute-force census of additive splittings k = a + b with ord(a) prime to
/// ell and ord(b) a power of ell, orders taken from gcds (not from EllSplit).
struct SplitTally {
  std::vector<std::uint32_t> count;  // number of splittings of each k
  std::vector<u64> regular;          // the a of a splitting of k (valid when count[k] >= 1)
};
SplitTally ell_split_tally(const FieldSpec& field, u64 ell);
SplitTally ell_split_tally_serial(const FieldSpec& field, u64 ell);

/// classes[k] identifies the exact value of (-1)^{n-1} sum_{i<n} zeta_M^{k q^i}
/// in Z[zeta_M]: classes[a] == classes[b] iff the two values are equal.
/// Ids are assigned 0, 1, ... in order of the smallest k attaining them.
/// The parallel version compares embedding keys, the reference compares
/// remainders modulo Phi_M.
std::vector<std::uint32_t> trace_classes(const FieldSpec& field);
std::vector<std::uint32_t> trace_classes_serial(const FieldSpec& field);

}  // namespace levelzero::kernels
