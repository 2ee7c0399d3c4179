#include "levelzero/verifier.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <sstream>
#include <unordered_map>

#include "levelzero/cyclotomic.hpp"
#include "levelzero/errors.hpp"
#include "levelzero/green_james.hpp"
#include "levelzero/inertial.hpp"
#include "levelzero/kernels.hpp"

namespace levelzero {

namespace {

class Stopwatch {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

constexpr u64 kDeadlineStride = 4096;

void tick(const Deadline& deadline, u64 counter, std::string_view where) {
  if (counter % kDeadlineStride == 0) deadline.check(where);
}

Json field_point(const FieldSpec& field) { return Json{{"q", field.q()}, {"n", field.n()}}; }

VerificationReport finish(std::string_view claim, Json point, bool ok, Json payload,
                          const Stopwatch& clock) {
  return {std::string(claim), std::move(point), ok ? Status::pass : Status::fail,
          std::move(payload), clock.elapsed_ms()};
}

// Nontrivial characters of F_q^x, as labels mod q - 1. In characteristic ell
// only those of order prime to ell.
std::vector<u64> nontrivial_base_twists(const FieldSpec& field, u64 characteristic) {
  const u64 order = field.q() - 1;
  std::vector<u64> result;
  for (u64 s = 1; s < order; ++s) {
    if (characteristic == 0 || gcd(additive_order(s, order), characteristic) == 1) {
      result.push_back(s);
    }
  }
  return result;
}

bool twist_sweep_is_full(u64 orbit_count, u64 twist_count, u64 multiplier = 1) {
  return orbit_count * twist_count * multiplier <= kFullTwistSweepBudget;
}

std::vector<u64> orbit_representatives(const std::vector<u64>& labels) {
  std::vector<u64> reps;
  for (u64 k = 0; k < labels.size(); ++k) {
    if (labels[k] == k) reps.push_back(k);
  }
  return reps;
}

// Witness for "the twist by s moves some admissible orbit", searching
// canonical labels in increasing order.
std::optional<std::pair<u64, u64>> find_moved_orbit(const FieldSpec& field, u64 characteristic,
                                                    u64 shift, const Deadline& deadline) {
  const u64 m = field.modulus();
  std::optional<EllSplit> split;
  if (characteristic != 0) split.emplace(field, characteristic);
  for (u64 k = 0; k < m; ++k) {
    tick(deadline, k, "fixing-character");
    if (orbit_min(field, k) != k) continue;
    if (characteristic == 0 ? !is_regular(field, k) : !split->is_ell_regular(k)) continue;
    const u64 moved = orbit_min(field, addmod(k, shift, m));
    if (moved == k) continue;
    if (characteristic != 0 && !has_regular_extension(orbit_of(field, k), characteristic)) continue;
    return std::pair{k, moved};
  }
  return std::nullopt;
}

u64 twist_shift(const FieldSpec& field, u64 characteristic, u64 s) {
  u64 shift = norm_inflate(field, 1, s);
  if (characteristic != 0) shift = EllSplit(field, characteristic).regular_part(shift);
  return shift;
}

// Exact trace value of the orbit of k at m for the recheck: remainder modulo
// Phi_M for small M, embedding key otherwise.
std::vector<i64> exact_trace_signature(const FieldSpec& field, u64 k, u64 m) {
  const u64 modulus = field.modulus();
  std::vector<u64> exps;
  u64 x = mulmod(k, m, modulus);
  for (unsigned i = 0; i < field.n(); ++i) {
    exps.push_back(x);
    x = mulmod(x, field.q(), modulus);
  }
  const i64 sign = field.n() % 2 == 1 ? 1 : -1;
  if (modulus <= 2048) return CyclotomicValue::from_exponents(modulus, exps, sign).coefficients();
  return embedding_key(modulus, exps, sign);
}

bool ell_power(u64 value, u64 ell) {
  while (value % ell == 0) value /= ell;
  return value == 1;
}

// Trial-division primality, kept apart from the Miller-Rabin used by the search.
bool trial_division_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d <= n / d; ++d) {
    if (n % d == 0) return false;
    if (d > (1u << 22)) return is_prime(n);  // too large to finish by hand
  }
  return true;
}

unsigned walk_orbit_size(u64 k, u64 q, u64 modulus) {
  unsigned size = 1;
  for (u64 x = mulmod(k, q, modulus); x != k % modulus; x = mulmod(x, q, modulus)) ++size;
  return size;
}

}  // namespace

std::string_view to_string(Status status) {
  switch (status) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

VerificationReport verify_fixing_character(const FieldSpec& field, u64 characteristic,
                                           const Deadline& deadline) {
  Stopwatch clock;
  require_within_sweep_bound(field.modulus(), "fixing-character");
  if (characteristic != 0) EllSplit(field, characteristic);  // validates ell
  Json point = field_point(field);
  point["char"] = characteristic;

  Json witnesses = Json::array();
  const auto twists = nontrivial_base_twists(field, characteristic);
  for (u64 s : twists) {
    const u64 shift = twist_shift(field, characteristic, s);
    const auto hit = find_moved_orbit(field, characteristic, shift, deadline);
    if (!hit) {
      Json payload{{"twists_checked", witnesses.size() + 1},
                   {"witnesses", witnesses},
                   {"counterexample", {{"s", s}, {"shift", shift}}}};
      return finish(claims::fixing_character, point, false, std::move(payload), clock);
    }
    witnesses.push_back({{"s", s}, {"orbit", hit->first}, {"moved_to", hit->second}});
  }
  Json payload{{"twists_checked", twists.size()}, {"witnesses", std::move(witnesses)}};
  return finish(claims::fixing_character, point, true, std::move(payload), clock);
}

VerificationReport verify_divisor_inequality(u64 q, unsigned n) {
  Stopwatch clock;
  if (n <= 1) throw ParameterError("divisor inequality needs n > 1");
  const FieldSpec field(q, n);
  std::vector<unsigned> proper;
  for (unsigned d : field.degree_divisors()) {
    if (d != n) proper.push_back(d);
  }
  const u64 lhs = field.modulus();
  const unsigned largest = proper.back();
  const auto rhs = [&](unsigned a, unsigned b) {
    return static_cast<unsigned __int128>(checked_pow(q, a) - 1) * (checked_pow(q, b) - 1);
  };
  const auto literal = rhs(largest, largest);
  Json failures = Json::array();
  u64 pairs = 0;
  for (unsigned a : proper) {
    for (unsigned b : proper) {
      ++pairs;
      if (!(lhs > rhs(a, b))) failures.push_back({{"a", a}, {"b", b}});
    }
  }
  const bool literal_holds = lhs > literal;
  Json payload{{"largest_proper_divisor", largest},
               {"lhs", lhs},
               {"literal_rhs", static_cast<u64>(literal)},
               {"literal_holds", literal_holds},
               {"pairs_checked", pairs},
               {"pair_failures", failures}};
  return finish(claims::divisor_inequality, Json{{"q", q}, {"n", n}},
                literal_holds && failures.empty(), std::move(payload), clock);
}

VerificationReport verify_trace_separation(const FieldSpec& field, const Deadline& deadline) {
  Stopwatch clock;
  require_within_sweep_bound(field.modulus(), "trace-separation");
  const u64 modulus = field.modulus();
  const auto classes = kernels::trace_classes(field);
  deadline.check("trace-separation");
  const auto prims = primitive_elements(field);
  const auto regular = enumerate_orbits(field, OrbitFilter::regular);

  // class vectors, bucketed by hash then compared exactly
  std::map<std::vector<std::uint32_t>, u64> seen;
  for (std::size_t i = 0; i < regular.size(); ++i) {
    tick(deadline, i, "trace-separation");
    const u64 k = regular[i].canonical();
    std::vector<std::uint32_t> vec(prims.size());
    for (std::size_t j = 0; j < prims.size(); ++j) vec[j] = classes[mulmod(k, prims[j], modulus)];
    auto [it, inserted] = seen.emplace(std::move(vec), k);
    if (!inserted) {
      Json payload{{"regular_orbits", regular.size()},
                   {"primitive_elements", prims.size()},
                   {"counterexample", {{"orbit_a", it->second}, {"orbit_b", k}}}};
      return finish(claims::trace_separation, field_point(field), false, std::move(payload), clock);
    }
  }

  // Separating set: primitive m, ascending, kept whenever it refines the
  // partition of regular orbits by trace values seen so far.
  std::vector<u64> separating;
  std::vector<std::vector<std::uint32_t>> restricted(regular.size());
  auto distinct_count = [&]() {
    std::vector<std::vector<std::uint32_t>> sorted = restricted;
    std::sort(sorted.begin(), sorted.end());
    return static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
  };
  std::size_t blocks = regular.empty() ? 0 : 1;
  for (u64 m : prims) {
    if (blocks == regular.size()) break;
    deadline.check("trace-separation");
    for (std::size_t i = 0; i < regular.size(); ++i) {
      restricted[i].push_back(classes[mulmod(regular[i].canonical(), m, modulus)]);
    }
    const std::size_t refined = distinct_count();
    if (refined > blocks) {
      separating.push_back(m);
      blocks = refined;
    } else {
      for (auto& r : restricted) r.pop_back();
    }
  }
  std::uint32_t distinct_values = 0;
  for (auto c : classes) distinct_values = std::max(distinct_values, c + 1);
  Json payload{{"regular_orbits", regular.size()},
               {"primitive_elements", prims.size()},
               {"distinct_trace_values", distinct_values},
               {"separating_elements", separating}};
  return finish(claims::trace_separation, field_point(field), true, std::move(payload), clock);
}

CoverSearch search_regular_cover(const FieldSpec& context, const CharOrbit& alpha, unsigned a,
                                 const Deadline& deadline) {
  if (a == 0) throw ParameterError("a must be positive");
  if (!(alpha.field() == context)) throw ParameterError("alpha lives over a different field");
  if (is_regular(alpha)) throw ParameterError("search_regular_cover needs a non-regular alpha");
  FieldSpec big = [&] {
    try {
      return FieldSpec(context.q(), a * context.n());
    } catch (const OverflowError&) {
      throw ResourceError("q^(a n') - 1 does not fit in 64 bits");
    }
  }();
  const u64 big_m = big.modulus();
  const u64 alpha_star = norm_inflate(big, context.n(), alpha.canonical());
  const unsigned d_alpha = stabilizer_degree(context, alpha.canonical());
  const u64 stabilizer_field_order = context.subfield_order(d_alpha);

  CoverSearch result;
  for (u64 ell : prime_divisors(big_m)) {
    if (ell == context.p() || stabilizer_field_order % ell == 0) {
      result.primes_skipped.push_back(ell);
      continue;
    }
    const EllSplit split(big, ell);
    const u64 coset = split.primary_order();
    const u64 limit = std::min(coset, sweep_bound());
    const u64 step = split.regular_order();  // generates the ell-primary subgroup
    u64 beta = alpha_star;
    for (u64 t = 0; t < limit; ++t) {
      tick(deadline, t, "regular-cover");
      if (is_regular(big, beta)) {
        result.cover = RegularCover{ell, beta, alpha_star};
        return result;
      }
      beta = addmod(beta, step, big_m);
    }
    (limit < coset ? result.primes_truncated : result.primes_tried).push_back(ell);
  }
  return result;
}

bool recheck_regular_cover(const FieldSpec& context, u64 alpha, unsigned a,
                           const RegularCover& cover) {
  const u64 q = context.q();
  const unsigned big_degree = a * context.n();
  const u64 big_m = checked_pow(q, big_degree) - 1;
  const u64 ell = cover.ell;
  if (!trial_division_prime(ell) || ell == context.p() || big_m % ell != 0) return false;

  // the norm F_{q^{a n'}} -> F_{q^{n'}} raises to 1 + Q + ... + Q^{a-1}, Q = q^{n'}
  const u64 big_q = checked_pow(q, context.n());
  u64 norm_exponent = 0, power = 1;
  for (unsigned i = 0; i < a; ++i) {
    norm_exponent += power;
    power *= big_q;
  }
  if (mulmod(alpha % context.modulus(), norm_exponent, big_m) != cover.alpha_star) return false;

  const unsigned d_alpha = walk_orbit_size(alpha, q, context.modulus());
  if ((checked_pow(q, d_alpha) - 1) % ell == 0) return false;
  if (walk_orbit_size(cover.beta, q, big_m) != big_degree) return false;

  // beta = alpha* + (beta - alpha*) with alpha* of order prime to ell and the
  // difference of ell-power order; such a splitting is unique.
  if (gcd(additive_order(cover.alpha_star, big_m), ell) != 1) return false;
  return ell_power(additive_order(submod(cover.beta, cover.alpha_star, big_m), big_m), ell);
}

VerificationReport verify_regular_cover(const FieldSpec& context, unsigned a,
                                        std::optional<u64> alpha, const Deadline& deadline) {
  Stopwatch clock;
  Json point = field_point(context);
  point["a"] = a;
  std::vector<u64> targets;
  if (alpha) {
    point["alpha"] = *alpha;
    targets.push_back(orbit_min(context, *alpha));
    if (is_regular(context, targets.front())) {
      throw ParameterError("alpha = " + std::to_string(*alpha) + " is regular");
    }
  } else {
    for (const auto& orbit : enumerate_orbits(context, OrbitFilter::nonregular)) {
      targets.push_back(orbit.canonical());
    }
  }

  Json covers = Json::array(), failures = Json::array();
  bool hard_failure = false;
  for (u64 k : targets) {
    deadline.check("regular-cover");
    const CoverSearch search = search_regular_cover(context, orbit_of(context, k), a, deadline);
    if (search.cover) {
      const bool ok = recheck_regular_cover(context, k, a, *search.cover);
      hard_failure = hard_failure || !ok;
      Json entry{{"alpha", k},
                 {"ell", search.cover->ell},
                 {"beta", search.cover->beta},
                 {"alpha_star", search.cover->alpha_star},
                 {"recheck", ok}};
      (ok ? covers : failures).push_back(std::move(entry));
    } else {
      // an unexhausted coset is not evidence of absence
      hard_failure = hard_failure || search.primes_truncated.empty();
      failures.push_back({{"alpha", k},
                          {"primes_tried", search.primes_tried},
                          {"primes_skipped", search.primes_skipped},
                          {"primes_truncated", search.primes_truncated}});
    }
  }
  const bool ok = failures.empty();
  Json payload{{"nonregular_orbits", targets.size()}, {"covers", std::move(covers)},
               {"failures", std::move(failures)}};
  VerificationReport report = finish(claims::regular_cover, point, ok, std::move(payload), clock);
  if (!ok && !hard_failure) {
    report.status = Status::inconclusive;
    report.payload["reason"] = "truncated";
  }
  return report;
}

VerificationReport verify_reduction_commutation(const FieldSpec& field, u64 ell,
                                                const Deadline& deadline) {
  Stopwatch clock;
  require_within_sweep_bound(field.modulus(), "reduction-commutation");
  const EllSplit split(field, ell);
  const u64 m = field.modulus();
  Json point = field_point(field);
  point["ell"] = ell;
  auto fail = [&](Json counterexample) {
    return finish(claims::reduction_commutation, point, false,
                  Json{{"counterexample", std::move(counterexample)}}, clock);
  };

  for (u64 k = 0; k < m; ++k) {
    tick(deadline, k, "reduction-commutation");
    const u64 lhs = split.regular_part(mulmod(k, field.q(), m));
    const u64 rhs = mulmod(split.regular_part(k), field.q(), m);
    if (lhs != rhs) return fail({{"check", "frobenius"}, {"k", k}, {"lhs", lhs}, {"rhs", rhs}});
  }

  const u64 base_order = field.q() - 1;
  const bool full = twist_sweep_is_full(m, base_order > 1 ? base_order - 1 : 0);
  u64 twists = 0;
  for (u64 s = 1; s < base_order && (full || s == 1); ++s) {
    const u64 shift = norm_inflate(field, 1, s);
    const u64 reduced_shift = split.regular_part(shift);
    for (u64 k = 0; k < m; ++k) {
      tick(deadline, k, "reduction-commutation");
      const u64 reduce_then_twist = addmod(split.regular_part(k), reduced_shift, m);
      const u64 twist_then_reduce = split.regular_part(addmod(k, shift, m));
      if (orbit_min(field, reduce_then_twist) != orbit_min(field, twist_then_reduce)) {
        return fail({{"check", "twist"}, {"k", k}, {"s", s}});
      }
      ++twists;
    }
  }

  u64 inflations = 0;
  for (unsigned d : field.degree_divisors()) {
    const FieldSpec sub = field.subfield(d);
    const EllSplit sub_split(sub, ell);
    for (u64 j = 0; j < sub.modulus(); ++j) {
      tick(deadline, j, "reduction-commutation");
      const u64 lhs = split.regular_part(norm_inflate(field, d, j));
      const u64 rhs = norm_inflate(field, d, sub_split.regular_part(j));
      if (lhs != rhs) return fail({{"check", "inflation"}, {"d", d}, {"j", j}});
      ++inflations;
    }
  }
  Json payload{{"labels", m},
               {"twist_mode", full ? "all" : "generator"},
               {"twists_checked", twists},
               {"inflations_checked", inflations}};
  return finish(claims::reduction_commutation, point, true, std::move(payload), clock);
}

VerificationReport verify_xi_rigidity(const FieldSpec& field, const std::vector<u64>& ells,
                                      const Deadline& deadline) {
  Stopwatch clock;
  require_within_sweep_bound(field.modulus(), "xi-rigidity");
  const u64 m = field.modulus();
  Json point = field_point(field);
  point["ells"] = ells;
  std::vector<EllSplit> splits;
  for (u64 ell : ells) splits.emplace_back(field, ell);
  auto fail = [&](Json counterexample) {
    return finish(claims::xi_rigidity, point, false, Json{{"counterexample", std::move(counterexample)}},
                  clock);
  };

  // (i) rigidity
  Json witnesses = Json::array();
  for (u64 s : nontrivial_base_twists(field, 0)) {
    const auto hit = find_moved_orbit(field, 0, norm_inflate(field, 1, s), deadline);
    if (!hit) return fail({{"check", "rigidity"}, {"s", s}});
    witnesses.push_back({{"s", s}, {"orbit", hit->first}, {"moved_to", hit->second}});
  }

  const auto labels = kernels::orbit_labels(field);
  const auto degrees = kernels::stabilizer_degrees(field);
  const auto reps = orbit_representatives(labels);
  const u64 base_order = field.q() - 1;
  const bool full = twist_sweep_is_full(reps.size(), base_order > 1 ? base_order - 1 : 0,
                                        1 + ells.size());
  u64 steps = 0;
  for (u64 s = 1; s < base_order && (full || s == 1); ++s) {
    const u64 shift = norm_inflate(field, 1, s);
    // (ii) orbit sizes
    for (u64 k : reps) {
      tick(deadline, ++steps, "xi-rigidity");
      if (degrees[addmod(k, shift, m)] != degrees[k]) {
        return fail({{"check", "parametric-degree"}, {"s", s}, {"orbit", k}});
      }
    }
    // (iii) equality of ell-regular parts, both directions
    for (const EllSplit& split : splits) {
      std::unordered_map<u64, u64> forward, backward;
      for (u64 k : reps) {
        tick(deadline, ++steps, "xi-rigidity");
        const u64 before = labels[split.regular_part(k)];
        const u64 after = labels[split.regular_part(addmod(k, shift, m))];
        auto [f, f_new] = forward.emplace(before, after);
        auto [b, b_new] = backward.emplace(after, before);
        if (f->second != after || b->second != before) {
          return fail({{"check", "ell-regular-part"}, {"ell", split.ell()}, {"s", s}, {"orbit", k}});
        }
      }
    }
  }
  Json payload{{"witnesses", std::move(witnesses)},
               {"orbits", reps.size()},
               {"twist_mode", full ? "all" : "generator"}};
  return finish(claims::xi_rigidity, point, true, std::move(payload), clock);
}

VerificationReport verify_ell_decomposition(const FieldSpec& field, u64 ell, const Deadline& deadline) {
  Stopwatch clock;
  require_within_sweep_bound(field.modulus(), "ell-decomposition");
  const EllSplit split(field, ell);
  const u64 m = field.modulus();
  Json point = field_point(field);
  point["ell"] = ell;
  const auto tally = kernels::ell_split_tally(field, ell);
  deadline.check("ell-decomposition");
  for (u64 k = 0; k < m; ++k) {
    tick(deadline, k, "ell-decomposition");
    const u64 reg = split.regular_part(k);
    const u64 prim = split.primary_part(k);
    const bool ok = tally.count[k] == 1 && tally.regular[k] == reg && addmod(reg, prim, m) == k &&
                    gcd(additive_order(reg, m), ell) == 1 && ell_power(additive_order(prim, m), ell);
    if (!ok) {
      return finish(claims::ell_decomposition, point, false,
                    Json{{"counterexample",
                          {{"k", k}, {"regular", reg}, {"primary", prim}, {"splittings", tally.count[k]}}}},
                    clock);
    }
  }
  Json payload{{"labels", m}, {"primary_order", split.primary_order()},
               {"regular_order", split.regular_order()}};
  return finish(claims::ell_decomposition, point, true, std::move(payload), clock);
}

VerificationReport verify_twist_invariance(const FieldSpec& field, const Deadline& deadline) {
  Stopwatch clock;
  require_within_sweep_bound(field.modulus(), "twist-invariance");
  const auto labels = kernels::orbit_labels(field);
  const auto reps = orbit_representatives(labels);
  auto fail = [&](Json counterexample) {
    return finish(claims::twist_invariance, field_point(field), false,
                  Json{{"counterexample", std::move(counterexample)}}, clock);
  };

  // the field as the level zero context of a tame, totally unramified endo-class
  const EndoClassDescriptor trivial{field.p(), field.q(), 1, 1, 1, 0};
  const u64 base_order = field.q() - 1;
  const bool full = twist_sweep_is_full(reps.size(), base_order > 1 ? base_order - 1 : 0);
  u64 steps = 0;
  for (u64 k : reps) {
    const SimpleInertialTriple t(field.n(), trivial, LiftIndex{0}, k);
    for (u64 s = 1; s < base_order && (full || s == 1); ++s) {
      tick(deadline, ++steps, "twist-invariance");
      const CharOrbit twisted = beta_twist_level_zero(t.orbit(), s);
      const SimpleInertialTriple tt = beta_twist(t, s);
      if (twisted.size() != t.orbit().size() || !(tt.orbit() == twisted) ||
          multiplicity(tt) != multiplicity(t) || parametric_degree(tt) != parametric_degree(t)) {
        return fail({{"check", "beta-twist"}, {"orbit", k}, {"s", s}});
      }
    }
  }

  // p^r for r below the order of p modulo M covers every distinct twist
  const unsigned p_order = prime_power_decomposition(field.q()).second * field.n();
  for (unsigned r = 0; r < p_order; ++r) {
    const u64 wild = checked_pow(field.p(), r);
    const EndoClassDescriptor endo{field.p(), field.q(), static_cast<unsigned>(wild),
                                   static_cast<unsigned>(wild), 1, r};
    const bool triple_fits = static_cast<u64>(wild) * field.n() < (u64{1} << 31);
    for (u64 k : reps) {
      tick(deadline, ++steps, "twist-invariance");
      const CharOrbit orbit = orbit_of(field, k);
      const CharOrbit twisted = level_zero_twist(endo, orbit);
      if (twisted.size() != orbit.size() || !(level_zero_untwist(endo, twisted) == orbit)) {
        return fail({{"check", "level-zero-twist"}, {"orbit", k}, {"r", r}});
      }
      if (triple_fits) {
        const unsigned n = static_cast<unsigned>(wild) * field.n();
        const SimpleInertialTriple before(n, endo, LiftIndex{0}, k);
        const SimpleInertialTriple after(n, endo, LiftIndex{0}, twisted.canonical());
        if (multiplicity(before) != multiplicity(after)) {
          return fail({{"check", "level-zero-multiplicity"}, {"orbit", k}, {"r", r}});
        }
      }
    }
  }
  Json payload{{"orbits", reps.size()}, {"twist_mode", full ? "all" : "generator"},
               {"wild_twists", p_order}};
  return finish(claims::twist_invariance, field_point(field), true, std::move(payload), clock);
}

bool recheck_report(const VerificationReport& report) {
  if (report.status == Status::inconclusive) return true;
  const Json& point = report.point;
  const Json& payload = report.payload;
  const bool passed = report.status == Status::pass;

  if (report.claim == claims::fixing_character) {
    const FieldSpec field(point["q"].get<u64>(), point["n"].get<unsigned>());
    const u64 characteristic = point["char"].get<u64>();
    const auto twists = nontrivial_base_twists(field, characteristic);
    const std::size_t covered = payload["witnesses"].size();
    for (const Json& w : payload["witnesses"]) {
      const u64 k = w["orbit"].get<u64>();
      const u64 moved = w["moved_to"].get<u64>();
      const u64 shift = twist_shift(field, characteristic, w["s"].get<u64>());
      if (orbit_min(field, k) != k || moved == k) return false;
      if (orbit_min(field, addmod(k, shift, field.modulus())) != moved) return false;
      if (characteristic == 0 && !is_regular(field, k)) return false;
      if (characteristic != 0 && !has_regular_extension(orbit_of(field, k), characteristic)) {
        return false;
      }
    }
    if (passed) return covered == twists.size();
    const u64 shift = payload["counterexample"]["shift"].get<u64>();
    return !find_moved_orbit(field, characteristic, shift, {}).has_value();
  }

  if (report.claim == claims::divisor_inequality) {
    const u64 q = point["q"].get<u64>();
    const unsigned n = point["n"].get<unsigned>();
    const unsigned d = payload["largest_proper_divisor"].get<unsigned>();
    if (n % d != 0 || d == n) return false;
    const u64 lhs = checked_pow(q, n) - 1;
    const auto rhs = static_cast<unsigned __int128>(checked_pow(q, d) - 1) * (checked_pow(q, d) - 1);
    return passed == (lhs > rhs && payload["pair_failures"].empty());
  }

  if (report.claim == claims::trace_separation) {
    const FieldSpec field(point["q"].get<u64>(), point["n"].get<unsigned>());
    const auto regular = enumerate_orbits(field, OrbitFilter::regular);
    if (passed) {
      const auto separating = payload["separating_elements"].get<std::vector<u64>>();
      std::map<std::vector<std::vector<i64>>, u64> seen;
      for (const auto& orbit : regular) {
        std::vector<std::vector<i64>> signature;
        for (u64 m : separating) {
          if (!is_primitive_element(field, m)) return false;
          signature.push_back(exact_trace_signature(field, orbit.canonical(), m));
        }
        if (!seen.emplace(std::move(signature), orbit.canonical()).second) return false;
      }
      return true;
    }
    const u64 a = payload["counterexample"]["orbit_a"].get<u64>();
    const u64 b = payload["counterexample"]["orbit_b"].get<u64>();
    for (u64 m : primitive_elements(field)) {
      if (exact_trace_signature(field, a, m) != exact_trace_signature(field, b, m)) return false;
    }
    return a != b;
  }

  if (report.claim == claims::regular_cover) {
    const FieldSpec context(point["q"].get<u64>(), point["n"].get<unsigned>());
    const unsigned a = point["a"].get<unsigned>();
    for (const Json& c : payload["covers"]) {
      const RegularCover cover{c["ell"].get<u64>(), c["beta"].get<u64>(), c["alpha_star"].get<u64>()};
      if (!recheck_regular_cover(context, c["alpha"].get<u64>(), a, cover)) return false;
    }
    return passed == payload["failures"].empty() &&
           payload["covers"].size() + payload["failures"].size() ==
               payload["nonregular_orbits"].get<std::size_t>();
  }

  // Universal sweeps carry no certificate shorter than the sweep itself; recompute.
  const FieldSpec field(point["q"].get<u64>(), point["n"].get<unsigned>());
  VerificationReport again;
  if (report.claim == claims::reduction_commutation) {
    again = verify_reduction_commutation(field, point["ell"].get<u64>());
  } else if (report.claim == claims::xi_rigidity) {
    again = verify_xi_rigidity(field, point["ells"].get<std::vector<u64>>());
  } else if (report.claim == claims::ell_decomposition) {
    again = verify_ell_decomposition(field, point["ell"].get<u64>());
  } else if (report.claim == claims::twist_invariance) {
    again = verify_twist_invariance(field);
  } else {
    throw ParameterError("unknown claim '" + report.claim + "'");
  }
  return again.status == report.status && again.payload == report.payload;
}

std::vector<VerificationReport> run_grid(const std::vector<GridTask>& tasks,
                                         std::optional<std::chrono::milliseconds> per_point_cap) {
  std::vector<VerificationReport> reports(tasks.size());
  const std::int64_t count = static_cast<std::int64_t>(tasks.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    const GridTask& task = tasks[i];
    Stopwatch clock;
    auto inconclusive = [&](std::string_view reason, const std::string& detail) {
      reports[i] = {task.claim, task.point, Status::inconclusive,
                    Json{{"reason", reason}, {"detail", detail}}, clock.elapsed_ms()};
    };
    try {
      const Deadline deadline = per_point_cap ? Deadline(*per_point_cap) : Deadline();
      reports[i] = task.run(deadline);
    } catch (const TimeoutError& err) {
      inconclusive("timeout", err.what());
    } catch (const ResourceError& err) {
      inconclusive("resource", err.what());
    } catch (const OverflowError& err) {
      inconclusive("resource", err.what());
    } catch (const ParameterError& err) {
      inconclusive("parameter", err.what());
    } catch (const std::exception& err) {
      // exceptions must not escape the parallel region
      inconclusive("error", err.what());
    }
  }
  return reports;
}

Json report_to_json(const VerificationReport& report, bool with_timing) {
  Json out{{"claim", report.claim},
           {"point", report.point},
           {"status", to_string(report.status)},
           {"payload", report.payload}};
  if (with_timing) out["elapsed_ms"] = report.elapsed_ms;
  return out;
}

std::string reports_to_tsv(const std::vector<VerificationReport>& reports, bool with_timing) {
  std::ostringstream out;
  out << "claim\tpoint\tstatus\tpayload";
  if (with_timing) out << "\telapsed_ms";
  out << '\n';
  for (const auto& report : reports) {
    out << report.claim << '\t' << report.point.dump() << '\t' << to_string(report.status) << '\t'
        << report.payload.dump();
    if (with_timing) out << '\t' << report.elapsed_ms;
    out << '\n';
  }
  return out.str();
}

}  // namespace levelzero
