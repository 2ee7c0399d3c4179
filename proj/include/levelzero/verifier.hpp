#pragma once

// Brute-force checks of the finite combinatorial statements behind the
// level zero maps. Each check returns a VerificationReport whose payload
// carries enough witnesses (or a counterexample) to recompute the verdict
// with recheck_report() without repeating the search.

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "levelzero/character_lattice.hpp"
#include "levelzero/limits.hpp"

namespace levelzero {

using Json = nlohmann::ordered_json;

enum class Status { pass, fail, inconclusive };

std::string_view to_string(Status status);

struct VerificationReport {
  std::string claim;
  Json point;    // grid parameters, e.g. {"q":3,"n":2,"ell":2}
  Status status = Status::inconclusive;
  Json payload;  // witnesses on pass, counterexample on fail, reason when inconclusive
  double elapsed_ms = 0.0;
};

/// Claim identifiers used in reports and on the command line.
namespace claims {
inline constexpr std::string_view fixing_character = "fixing-character";
inline constexpr std::string_view divisor_inequality = "divisor-inequality";
inline constexpr std::string_view trace_separation = "trace-separation";
inline constexpr std::string_view regular_cover = "regular-cover";
inline constexpr std::string_view reduction_commutation = "reduction-commutation";
inline constexpr std::string_view xi_rigidity = "xi-rigidity";
inline constexpr std::string_view ell_decomposition = "ell-decomposition";
inline constexpr std::string_view twist_invariance = "twist-invariance";
}  // namespace claims

/// Twist checks over all s in Z/(q-1) cost (#orbits)*(q-2) steps. Above this
/// budget only the generator s = 1 is swept; since twisting by s is the s-th
/// power of twisting by 1 and the sweep covers every orbit, that still
/// decides the statement for all s. Reports record which mode ran.
inline constexpr std::uint64_t kFullTwistSweepBudget = std::uint64_t{1} << 18;

/// Characteristic 0: each nontrivial character of F_q^x moves some regular
/// orbit. Characteristic ell: each nontrivial ell-regular one moves some
/// ell-regular orbit admitting a regular extension.
VerificationReport verify_fixing_character(const FieldSpec& field, u64 characteristic,
                                           const Deadline& deadline = {});

/// q^n - 1 > (q^a - 1)(q^b - 1), for a = b the largest proper divisor of n
/// and for every pair of proper divisors. Requires n > 1.
VerificationReport verify_divisor_inequality(u64 q, unsigned n);

/// Exact trace vectors over all primitive elements are pairwise distinct
/// across regular orbits.
VerificationReport verify_trace_separation(const FieldSpec& field, const Deadline& deadline = {});

struct RegularCover {
  u64 ell;
  u64 beta;        // regular label over the degree a*n' field
  u64 alpha_star;  // norm inflation of alpha
};

struct CoverSearch {
  std::optional<RegularCover> cover;
  std::vector<u64> primes_tried;      // searched, no regular element found
  std::vector<u64> primes_skipped;    // p, or dividing |F[alpha]^x|
  std::vector<u64> primes_truncated;  // coset larger than the sweep bound, not exhausted
};

/// Search for a prime ell != p not dividing q^{d_alpha} - 1 and a regular
/// character beta of F_{q^{a n'}}^x whose ell-regular part is the norm
/// inflation of the non-regular alpha. Primes are tried in increasing order,
/// the ell-primary coset by increasing multiple of its generator.
CoverSearch search_regular_cover(const FieldSpec& context, const CharOrbit& alpha, unsigned a,
                                 const Deadline& deadline = {});

/// Independent recheck of a cover: primality by trial division, stabilizer
/// degrees by walking Frobenius, the norm exponent as a geometric sum, and
/// the ell-parts through element orders.
bool recheck_regular_cover(const FieldSpec& context, u64 alpha, unsigned a, const RegularCover& cover);

/// search_regular_cover for every non-regular orbit of the context (or just
/// alpha, if given), each hit rechecked.
VerificationReport verify_regular_cover(const FieldSpec& context, unsigned a,
                                        std::optional<u64> alpha = std::nullopt,
                                        const Deadline& deadline = {});

/// Over all labels: ell-regular part commutes with Frobenius, with base
/// twists (twist by the ell-regular part), and with norm inflation from
/// every subfield.
VerificationReport verify_reduction_commutation(const FieldSpec& field, u64 ell,
                                                const Deadline& deadline = {});

/// Base-character twist permutations: a nontrivial one moves some regular
/// orbit, all preserve orbit sizes, and all preserve (in both directions)
/// equality of ell-regular parts for each ell given.
VerificationReport verify_xi_rigidity(const FieldSpec& field, const std::vector<u64>& ells,
                                      const Deadline& deadline = {});

/// Exhaustive check of ell_decompose against a brute-force census of all
/// additive splittings with the required element orders.
VerificationReport verify_ell_decomposition(const FieldSpec& field, u64 ell,
                                            const Deadline& deadline = {});

/// beta_twist_level_zero and level_zero_twist preserve orbit sizes and
/// multiplicities on every orbit.
VerificationReport verify_twist_invariance(const FieldSpec& field, const Deadline& deadline = {});

/// Recomputes the verdict from the payload alone. Returns false when the
/// payload does not support the recorded status.
bool recheck_report(const VerificationReport& report);

struct GridTask {
  std::string claim;
  Json point;
  std::function<VerificationReport(const Deadline&)> run;
};

/// Runs tasks (concurrently under OpenMP), each under its own deadline.
/// Timeouts and resource-bound hits become inconclusive reports. Output
/// order matches input order.
std::vector<VerificationReport> run_grid(const std::vector<GridTask>& tasks,
                                         std::optional<std::chrono::milliseconds> per_point_cap);

Json report_to_json(const VerificationReport& report, bool with_timing = false);
std::string reports_to_tsv(const std::vector<VerificationReport>& reports, bool with_timing = false);

}  // namespace levelzero
