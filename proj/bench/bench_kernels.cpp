// Parallel kernels against their serial references.
//
//   bench_kernels --benchmark_filter=orbit_labels

#include <benchmark/benchmark.h>

#include "levelzero/character_lattice.hpp"
#include "levelzero/kernels.hpp"

using namespace levelzero;

namespace {

// (q, n) pairs, indexed by the benchmark argument
const FieldSpec kFields[] = {FieldSpec(2, 12), FieldSpec(3, 9), FieldSpec(2, 18), FieldSpec(5, 9)};
const FieldSpec kTraceFields[] = {FieldSpec(2, 8), FieldSpec(3, 6), FieldSpec(7, 4)};

template <auto Kernel>
void field_kernel(benchmark::State& state) {
  const FieldSpec& field = kFields[state.range(0)];
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(field));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * field.modulus()));
  state.SetLabel(field.to_string());
}

template <auto Kernel>
void split_kernel(benchmark::State& state) {
  const FieldSpec& field = kFields[state.range(0)];
  const u64 ell = prime_divisors(field.modulus()).back();
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(field, ell));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * field.modulus()));
  state.SetLabel(field.to_string() + " ell=" + std::to_string(ell));
}

template <auto Kernel>
void trace_kernel(benchmark::State& state) {
  const FieldSpec& field = kTraceFields[state.range(0)];
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(field));
  state.SetLabel(field.to_string());
}

}  // namespace

BENCHMARK(field_kernel<kernels::orbit_labels>)->Name("orbit_labels/parallel")->DenseRange(0, 3);
BENCHMARK(field_kernel<kernels::orbit_labels_serial>)->Name("orbit_labels/serial")->DenseRange(0, 3);
BENCHMARK(field_kernel<kernels::stabilizer_degrees>)->Name("stabilizer_degrees/parallel")->DenseRange(0, 3);
BENCHMARK(field_kernel<kernels::stabilizer_degrees_serial>)->Name("stabilizer_degrees/serial")->DenseRange(0, 3);
BENCHMARK(split_kernel<kernels::ell_split_tally>)->Name("ell_split_tally/parallel")->DenseRange(0, 1);
BENCHMARK(split_kernel<kernels::ell_split_tally_serial>)->Name("ell_split_tally/serial")->DenseRange(0, 1);
BENCHMARK(trace_kernel<kernels::trace_classes>)->Name("trace_classes/parallel")->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(trace_kernel<kernels::trace_classes_serial>)->Name("trace_classes/serial")->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
