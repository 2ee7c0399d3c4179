#include "cli.hpp"

#include <algorithm>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "levelzero/character_lattice.hpp"
#include "levelzero/errors.hpp"
#include "levelzero/green_james.hpp"
#include "levelzero/inertial.hpp"
#include "levelzero/limits.hpp"
#include "levelzero/verifier.hpp"

namespace levelzero::cli {

namespace {

using Json = nlohmann::ordered_json;

enum class Format { json, tsv };

struct Output {
  std::ostream& out;
  Format format = Format::json;

  void rows(const std::vector<Json>& records) const {
    if (format == Format::json) {
      for (const auto& r : records) out << r.dump() << '\n';
      return;
    }
    if (records.empty()) return;
    bool first = true;
    for (const auto& item : records.front().items()) {
      out << (first ? "" : "\t") << item.key();
      first = false;
    }
    out << '\n';
    for (const auto& r : records) {
      first = true;
      for (const auto& item : r.items()) {
        out << (first ? "" : "\t") << cell(item.value());
        first = false;
      }
      out << '\n';
    }
  }

  static std::string cell(const Json& value) {
    if (value.is_string()) return value.get<std::string>();
    return value.dump();
  }
};

std::string approx_string(std::complex<double> z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
  return buf;
}

Json orbit_json(const CharOrbit& orbit) {
  return Json{{"canonical", orbit.canonical()}, {"members", orbit.members()}, {"size", orbit.size()}};
}

Json support_json(const SupportMultiset& support) {
  Json entries = Json::array();
  for (const auto& entry : support) {
    entries.push_back({{"d", entry.degree},
                       {"orbit", entry.orbit.canonical()},
                       {"members", entry.orbit.members()},
                       {"multiplicity", entry.multiplicity}});
  }
  return entries;
}

Json triple_json(const SimpleInertialTriple& t) { return Json::parse(serialize_triple(t)); }

// Options naming a triple, either field by field or as a serialized record.
struct TripleArgs {
  std::string record;
  unsigned n = 0;
  u64 p = 0;
  u64 q = 0;
  unsigned delta = 1, e = 1, f = 1, r = 0;
  unsigned lift = 0;
  u64 k = 0;
  std::string side = "GL";
  u64 characteristic = 0;

  void attach(CLI::App* cmd, const std::string& prefix = "") {
    cmd->add_option("--" + prefix + "record", record, "serialized triple record (JSON)");
    cmd->add_option("--" + prefix + "n", n, "ambient dimension");
    cmd->add_option("--" + prefix + "p", p, "residue characteristic (derived from q if omitted)");
    cmd->add_option("--" + prefix + "q", q, "cardinality of the residue field of F");
    cmd->add_option("--" + prefix + "delta", delta, "degree of the endo-class");
    cmd->add_option("--" + prefix + "e", e, "ramification index");
    cmd->add_option("--" + prefix + "f", f, "residue degree");
    cmd->add_option("--" + prefix + "r", r, "wild exponent");
    cmd->add_option("--" + prefix + "lift", lift, "lift index in Z/f");
    cmd->add_option("--" + prefix + "k", k, "level zero label");
    cmd->add_option("--" + prefix + "side", side, "GL or Galois");
    cmd->add_option("--" + prefix + "char", characteristic, "coefficient characteristic");
  }

  EndoClassDescriptor descriptor() const {
    const u64 prime = p != 0 ? p : (q >= 2 ? prime_power_decomposition(q).first : 0);
    return {prime, q, delta, e, f, r};
  }

  SimpleInertialTriple build() const {
    if (!record.empty()) return parse_triple(record);
    if (n == 0 || q == 0) throw ParameterError("a triple needs --n and --q (or --record)");
    return SimpleInertialTriple(n, descriptor(), LiftIndex{lift}, k, parse_side(side), characteristic);
  }
};

struct VerifyArgs {
  std::optional<u64> q;
  std::optional<u64> q_max;
  std::optional<unsigned> n;
  std::optional<unsigned> n_max;
  std::vector<u64> ells;
  std::optional<u64> characteristic;
  unsigned a = 7;
  std::optional<u64> alpha;
  std::optional<long long> timeout_ms;
  bool timing = false;
};

std::vector<u64> grid_qs(const VerifyArgs& args) {
  if (args.q) return {*args.q};
  if (args.q_max) return prime_powers_up_to(*args.q_max);
  throw ParameterError("give --q or --q-max");
}

std::vector<unsigned> grid_ns(const VerifyArgs& args) {
  if (args.n) return {*args.n};
  if (args.n_max) {
    std::vector<unsigned> ns;
    for (unsigned n = 1; n <= *args.n_max; ++n) ns.push_back(n);
    return ns;
  }
  throw ParameterError("give --n or --n-max");
}

std::vector<u64> ells_for(const FieldSpec& field, const VerifyArgs& args) {
  if (!args.ells.empty()) return args.ells;
  std::vector<u64> ells;
  for (u64 ell : prime_divisors(field.modulus() == 0 ? 1 : field.modulus())) {
    if (ell != field.p()) ells.push_back(ell);
  }
  return ells;
}

std::vector<GridTask> build_tasks(std::string_view claim, const VerifyArgs& args) {
  std::vector<GridTask> tasks;
  const bool grid = !args.q || !args.n;
  for (u64 q : grid_qs(args)) {
    for (unsigned n : grid_ns(args)) {
      Json point{{"q", q}, {"n", n}};
      // q^n - 1 must at least fit the integer model; larger points are reported as resource hits
      std::optional<FieldSpec> field;
      try {
        field.emplace(q, n);
      } catch (const OverflowError&) {
        tasks.push_back({std::string(claim), point, [](const Deadline&) -> VerificationReport {
                           throw ResourceError("q^n - 1 does not fit in 64 bits");
                         }});
        continue;
      }
      if (grid && field->modulus() > sweep_bound()) continue;
      const FieldSpec fs = *field;

      if (claim == claims::divisor_inequality) {
        if (n <= 1) {
          if (!grid) throw ParameterError("divisor-inequality needs n > 1");
          continue;
        }
        tasks.push_back({std::string(claim), point,
                         [q, n](const Deadline&) { return verify_divisor_inequality(q, n); }});
      } else if (claim == claims::fixing_character) {
        std::vector<u64> chars;
        if (args.characteristic) {
          chars.push_back(*args.characteristic);
        } else {
          chars.push_back(0);
          for (u64 ell : ells_for(fs, args)) chars.push_back(ell);
        }
        for (u64 c : chars) {
          Json pt = point;
          pt["char"] = c;
          tasks.push_back({std::string(claim), pt, [fs, c](const Deadline& d) {
                             return verify_fixing_character(fs, c, d);
                           }});
        }
      } else if (claim == claims::trace_separation) {
        tasks.push_back({std::string(claim), point,
                         [fs](const Deadline& d) { return verify_trace_separation(fs, d); }});
      } else if (claim == claims::regular_cover) {
        Json pt = point;
        pt["a"] = args.a;
        const unsigned a = args.a;
        const auto alpha = args.alpha;
        tasks.push_back({std::string(claim), pt, [fs, a, alpha](const Deadline& d) {
                           return verify_regular_cover(fs, a, alpha, d);
                         }});
      } else if (claim == claims::reduction_commutation || claim == claims::ell_decomposition) {
        for (u64 ell : ells_for(fs, args)) {
          Json pt = point;
          pt["ell"] = ell;
          const bool reduction = claim == claims::reduction_commutation;
          tasks.push_back({std::string(claim), pt, [fs, ell, reduction](const Deadline& d) {
                             return reduction ? verify_reduction_commutation(fs, ell, d)
                                              : verify_ell_decomposition(fs, ell, d);
                           }});
        }
      } else if (claim == claims::xi_rigidity) {
        const auto ells = ells_for(fs, args);
        Json pt = point;
        pt["ells"] = ells;
        tasks.push_back({std::string(claim), pt, [fs, ells](const Deadline& d) {
                           return verify_xi_rigidity(fs, ells, d);
                         }});
      } else if (claim == claims::twist_invariance) {
        tasks.push_back({std::string(claim), point,
                         [fs](const Deadline& d) { return verify_twist_invariance(fs, d); }});
      } else {
        throw ParameterError("unknown claim '" + std::string(claim) + "'");
      }
    }
  }
  return tasks;
}

int verify_exit_code(const std::vector<VerificationReport>& reports) {
  bool fail = false, resource = false, inconclusive = false;
  for (const auto& report : reports) {
    if (report.status == Status::fail) fail = true;
    if (report.status == Status::inconclusive) {
      if (report.payload.value("reason", "") == "resource") {
        resource = true;
      } else {
        inconclusive = true;
      }
    }
  }
  if (fail) return kExitVerificationFailed;
  if (resource) return kExitResource;
  if (inconclusive) return kExitInconclusive;
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite combinatorics of level zero maps for simple inertial classes of GL_n"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format_name = "json";
  std::optional<u64> sweep_override;
  app.add_option("--format", format_name, "output format")
      ->check(CLI::IsMember({"json", "tsv"}))
      ->capture_default_str();
  app.add_option("--sweep-bound", sweep_override,
                 "exhaustive sweep bound (default 2^21, or LEVEL_ZERO_SWEEP_BOUND)");

  std::function<int(const Output&)> action;

  // orbits
  u64 q = 0;
  unsigned n = 0;
  u64 k = 0, m = 0, ell = 0;
  std::optional<u64> m_opt;
  std::string filter = "all";
  auto* orbits = app.add_subcommand("orbits", "Galois orbits of characters of F_{q^n}^x");
  orbits->add_option("--q", q)->required();
  orbits->add_option("--n", n)->required();
  orbits->add_option("--filter", filter)->check(CLI::IsMember({"all", "regular", "nonregular"}));
  orbits->callback([&] {
    action = [&](const Output& o) {
      const FieldSpec field(q, n);
      const OrbitFilter f = filter == "regular"      ? OrbitFilter::regular
                            : filter == "nonregular" ? OrbitFilter::nonregular
                                                     : OrbitFilter::all;
      std::vector<Json> rows;
      for (const auto& orbit : enumerate_orbits(field, f)) {
        const Descent descent = regular_descent(field, orbit.canonical());
        rows.push_back({{"canonical", orbit.canonical()},
                        {"members", orbit.members()},
                        {"size", orbit.size()},
                        {"regular", is_regular(orbit)},
                        {"descent_degree", descent.degree},
                        {"descent_label", descent.label}});
      }
      o.rows(rows);
      return kExitOk;
    };
  });

  // trace
  auto* trace = app.add_subcommand("trace", "exact trace of sigma[chi] at primitive elements");
  trace->add_option("--q", q)->required();
  trace->add_option("--n", n)->required();
  trace->add_option("--k", k, "character label (regular)")->required();
  trace->add_option("--m", m_opt, "exponent of the elliptic element (default: all primitive)");
  trace->callback([&] {
    action = [&](const Output& o) {
      const FieldSpec field(q, n);
      const CuspidalToken token = green_rep(field, orbit_of(field, k));
      std::vector<u64> ms = m_opt ? std::vector<u64>{*m_opt} : primitive_elements(field);
      std::vector<Json> rows;
      for (u64 mm : ms) {
        const CyclotomicValue value = green_trace(token, mm);
        rows.push_back({{"orbit", token.orbit().canonical()},
                        {"m", mm},
                        {"modulus", value.modulus()},
                        {"coefficients", value.coefficients()},
                        {"approximate_value", approx_string(value.approximate())}});
      }
      o.rows(rows);
      return kExitOk;
    };
  });

  // reduce / support
  auto* reduce = app.add_subcommand("reduce", "reduction mod ell of sigma[chi]");
  auto* support = app.add_subcommand("support", "supercuspidal support of the reduction mod ell");
  for (auto* cmd : {reduce, support}) {
    cmd->add_option("--q", q)->required();
    cmd->add_option("--n", n)->required();
    cmd->add_option("--k", k, "character label (regular)")->required();
    cmd->add_option("--ell", ell)->required();
  }
  reduce->callback([&] {
    action = [&](const Output& o) {
      const FieldSpec field(q, n);
      const CuspidalToken token = green_rep(field, orbit_of(field, k));
      const CuspidalToken reduced = reduce_mod_ell(token, ell);
      const auto all_tokens = enumerate_cuspidal_tokens(field, ell);
      const auto supercuspidal_count =
          std::count_if(all_tokens.begin(), all_tokens.end(), [](const auto& t) { return is_supercuspidal(t); });
      o.rows({Json{{"q", q},
                   {"n", n},
                   {"ell", ell},
                   {"orbit", token.orbit().canonical()},
                   {"reduced_orbit", reduced.orbit().canonical()},
                   {"reduced_members", reduced.orbit().members()},
                   {"supercuspidal", is_supercuspidal(reduced)},
                   {"support", support_json(cuspidal_support_mod_ell(token, ell))},
                   {"cuspidal_tokens", all_tokens.size()},
                   {"supercuspidal_tokens", supercuspidal_count}}});
      return kExitOk;
    };
  });
  support->callback([&] {
    action = [&](const Output& o) {
      const FieldSpec field(q, n);
      const CuspidalToken token = green_rep(field, orbit_of(field, k));
      std::vector<Json> rows;
      for (const Json& entry : support_json(cuspidal_support_mod_ell(token, ell))) rows.push_back(entry);
      o.rows(rows);
      return kExitOk;
    };
  });

  // triple
  TripleArgs targs, other;
  bool inverse = false;
  auto* triple = app.add_subcommand("triple", "simple inertial triples (endo-class, lift, orbit)");
  triple->require_subcommand(1);
  auto* canonicalize = triple->add_subcommand("canonicalize", "presentation with lift 0");
  auto* equal = triple->add_subcommand("equal", "whether two triples present the same class");
  auto* fiber = triple->add_subcommand("fiber", "all presentations of the class");
  auto* rec = triple->add_subcommand("rec", "GL side to Galois side");
  auto* treduce = triple->add_subcommand("reduce", "reduce the level zero orbit mod ell");
  for (auto* cmd : {canonicalize, equal, fiber, rec, treduce}) targs.attach(cmd);
  other.attach(equal, "other-");
  rec->add_flag("--inverse", inverse, "Galois side back to GL side");
  treduce->add_option("--ell", ell)->required();
  auto emit_triples = [](const Output& o, const std::vector<SimpleInertialTriple>& ts) {
    std::vector<Json> rows;
    for (const auto& t : ts) rows.push_back(triple_json(t));
    o.rows(rows);
    return kExitOk;
  };
  canonicalize->callback([&] {
    action = [&](const Output& o) { return emit_triples(o, {canonical_triple(targs.build())}); };
  });
  fiber->callback([&] {
    action = [&](const Output& o) { return emit_triples(o, equivalent_presentations(targs.build())); };
  });
  rec->callback([&] {
    action = [&](const Output& o) {
      const auto t = targs.build();
      return emit_triples(o, {inverse ? rec_inverse(t) : rec_triple(t)});
    };
  });
  treduce->callback([&] {
    action = [&](const Output& o) { return emit_triples(o, {reduce_triple_mod_ell(targs.build(), ell)}); };
  });
  equal->callback([&] {
    action = [&](const Output& o) {
      const auto a = targs.build();
      // unspecified fields of the second triple default to the first one's
      TripleArgs b = other;
      if (b.record.empty()) {
        const auto& endo = a.endo_class();
        if (b.n == 0) b.n = a.n();
        if (b.q == 0) {
          b.q = endo.q;
          b.p = endo.p;
          if (equal->count("--other-delta") == 0) b.delta = endo.delta;
          if (equal->count("--other-e") == 0) b.e = endo.e;
          if (equal->count("--other-f") == 0) b.f = endo.f;
          if (equal->count("--other-r") == 0) b.r = endo.r;
        }
        if (equal->count("--other-lift") == 0) b.lift = a.lift().value;
        if (equal->count("--other-k") == 0) b.k = a.orbit().canonical();
        if (equal->count("--other-side") == 0) b.side = std::string(to_string(a.side()));
        if (equal->count("--other-char") == 0) b.characteristic = a.characteristic();
      }
      const auto bt = b.build();
      o.rows({Json{{"equal", triples_equal(a, bt)},
                   {"first_canonical", Json::parse(serialize_triple(canonical_triple(a)))},
                   {"second_canonical", Json::parse(serialize_triple(canonical_triple(bt)))}}});
      return kExitOk;
    };
  });

  // beta
  TripleArgs bargs;
  bool eps1 = false;
  u64 s = 0;
  auto* beta = app.add_subcommand("beta", "beta-extension twist bookkeeping");
  beta->require_subcommand(1);
  auto* eps_gal = beta->add_subcommand("epsilon-gal", "label of the quadratic character eps_Gal");
  auto* canon = beta->add_subcommand("canonical-label", "twist of the canonical beta-extension");
  auto* btwist = beta->add_subcommand("twist", "effect of a beta twist on a level zero orbit");
  for (auto* cmd : {eps_gal, canon}) {
    cmd->add_option("--p", bargs.p);
    cmd->add_option("--q", bargs.q)->required();
    cmd->add_option("--delta", bargs.delta)->required();
    cmd->add_option("--e", bargs.e)->required();
    cmd->add_option("--f", bargs.f)->required();
    cmd->add_option("--r", bargs.r)->required();
  }
  canon->add_flag("--eps1", eps1, "the symplectic sign character is nontrivial");
  btwist->add_option("--q", q, "cardinality of the residue field of E (q^f)")->required();
  btwist->add_option("--n", n, "degree n/delta of the level zero field")->required();
  btwist->add_option("--k", k)->required();
  btwist->add_option("--s", s, "label of the twisting character mod q - 1")->required();
  eps_gal->callback([&] {
    action = [&](const Output& o) {
      const auto endo = bargs.descriptor();
      o.rows({Json{{"epsilon_gal", epsilon_gal(endo)},
                   {"order", endo.residue_cardinality() - 1},
                   {"tame_degree", endo.tame_degree()}}});
      return kExitOk;
    };
  });
  canon->callback([&] {
    action = [&](const Output& o) {
      const auto label = canonical_beta_label(bargs.descriptor(), eps1);
      o.rows({Json{{"twist", label.twist},
                   {"order", label.endo.residue_cardinality() - 1},
                   {"eps1", label.eps1_flag}}});
      return kExitOk;
    };
  });
  btwist->callback([&] {
    action = [&](const Output& o) {
      const FieldSpec context(q, n);
      const CharOrbit before = orbit_of(context, k);
      const CharOrbit after = beta_twist_level_zero(before, s);
      o.rows({Json{{"orbit", orbit_json(before)}, {"twisted", orbit_json(after)}}});
      return kExitOk;
    };
  });

  // verify
  VerifyArgs vargs;
  std::string claim;
  auto* verify = app.add_subcommand("verify", "brute-force verification grids");
  verify->add_option("claim", claim, "claim id")
      ->required()
      ->check(CLI::IsMember({std::string(claims::fixing_character), std::string(claims::divisor_inequality),
                             std::string(claims::trace_separation), std::string(claims::regular_cover),
                             std::string(claims::reduction_commutation), std::string(claims::xi_rigidity),
                             std::string(claims::ell_decomposition), std::string(claims::twist_invariance)}));
  verify->add_option("--q", vargs.q, "single q");
  verify->add_option("--q-max", vargs.q_max, "all prime powers up to this bound");
  verify->add_option("--n", vargs.n, "single n");
  verify->add_option("--n-max", vargs.n_max, "all n from 1 to this bound");
  verify->add_option("--ell", vargs.ells, "primes ell (default: every ell | q^n - 1, ell != p)");
  verify->add_option("--char", vargs.characteristic, "coefficient characteristic for fixing-character");
  verify->add_option("--a", vargs.a, "inflation degree for regular-cover")->capture_default_str();
  verify->add_option("--k", vargs.alpha, "single non-regular alpha for regular-cover");
  verify->add_option("--timeout-ms", vargs.timeout_ms, "per-point time cap");
  verify->add_flag("--timing", vargs.timing, "include elapsed times (output no longer reproducible)");
  verify->callback([&] {
    action = [&](const Output& o) {
      const auto tasks = build_tasks(claim, vargs);
      std::optional<std::chrono::milliseconds> cap;
      if (vargs.timeout_ms) cap = std::chrono::milliseconds(*vargs.timeout_ms);
      const auto reports = run_grid(tasks, cap);
      if (o.format == Format::tsv) {
        o.out << reports_to_tsv(reports, vargs.timing);
      } else {
        for (const auto& report : reports) o.out << report_to_json(report, vargs.timing).dump() << '\n';
      }
      return verify_exit_code(reports);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sweep_override) {
      set_sweep_bound(*sweep_override);
    } else if (const char* env = std::getenv("LEVEL_ZERO_SWEEP_BOUND")) {
      char* end = nullptr;
      const u64 bound = std::strtoull(env, &end, 10);
      if (end == env || *end != '\0') {
        throw ParameterError(std::string("LEVEL_ZERO_SWEEP_BOUND is not a number: ") + env);
      }
      set_sweep_bound(bound);
    } else {
      set_sweep_bound(kDefaultSweepBound);
    }
    const Output output{out, format_name == "tsv" ? Format::tsv : Format::json};
    return action(output);
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceError& e) {
    err << "resource bound: " << e.what() << '\n';
    return kExitResource;
  } catch (const OverflowError& e) {
    err << "resource bound: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace levelzero::cli
