// Acceptance suite: one PASS/FAIL line per criterion, with the measured
// runtime against its pinned limit. Exit status is nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "json.hpp"
#include "levelzero/character_lattice.hpp"
#include "levelzero/green_james.hpp"
#include "levelzero/inertial.hpp"
#include "levelzero/verifier.hpp"
#include "triple_gen.hpp"

using namespace levelzero;

namespace {

constexpr u64 kGridBound = 10000;         // M <= 10^4
constexpr u64 kCoverContextBound = 256;   // Q^{n'} - 1 <= 256
constexpr unsigned kCoverDegree = 7;      // a
constexpr auto kCoverPointCap = std::chrono::seconds(60);
constexpr int kTorsorTriples = 1000;
constexpr int kSerializationTriples = 10000;

struct Outcome {
  bool ok;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string title;
  double limit_s;  // 0: no runtime limit
  std::function<Outcome()> run;
};

// Fields (q, n) with q^n - 1 <= bound; q ranges over `qs` or every prime power.
std::vector<FieldSpec> fields_up_to(u64 bound, std::vector<u64> qs = {}, unsigned n_max = 64) {
  if (qs.empty()) qs = prime_powers_up_to(bound + 1);
  std::vector<FieldSpec> result;
  for (u64 q : qs) {
    u64 size = q;
    for (unsigned n = 1; n <= n_max && size - 1 <= bound; ++n, size *= q) result.emplace_back(q, n);
  }
  return result;
}

std::vector<u64> ells_of(const FieldSpec& field) {
  std::vector<u64> result;
  if (field.modulus() == 1) return result;
  for (u64 ell : prime_divisors(field.modulus())) {
    if (ell != field.p()) result.push_back(ell);
  }
  return result;
}

Json point_of(const FieldSpec& field) { return Json{{"q", field.q()}, {"n", field.n()}}; }

// Runs the grid and requires every report to pass and to survive the recheck.
Outcome all_pass(const std::vector<GridTask>& tasks,
                 std::optional<std::chrono::milliseconds> cap = std::nullopt) {
  const auto reports = run_grid(tasks, cap);
  std::map<std::string, int> tally;
  std::string first_bad;
  for (const auto& report : reports) {
    const bool rechecked = recheck_report(report);
    ++tally[std::string(to_string(report.status))];
    if (!rechecked) ++tally["recheck-failed"];
    if ((report.status != Status::pass || !rechecked) && first_bad.empty()) {
      first_bad = report_to_json(report).dump();
    }
  }
  std::ostringstream detail;
  detail << reports.size() << " points";
  for (const auto& [key, count] : tally) detail << ", " << key << "=" << count;
  if (!first_bad.empty()) detail << "; first: " << first_bad;
  return {first_bad.empty(), detail.str()};
}

const std::vector<u64> kSmallQs{2, 3, 4, 5, 7, 8, 9};

Outcome gl2_f3_example() {
  const char* argv[] = {"levelzero", "reduce", "--q", "3", "--n", "2", "--k", "1", "--ell", "2"};
  std::ostringstream out, err;
  const int code = cli::run(10, argv, out, err);
  if (code != cli::kExitOk) return {false, "exit " + std::to_string(code) + ": " + err.str()};
  const auto row = nlohmann::json::parse(out.str());
  const auto expected_support = nlohmann::json::parse(R"([{"d":1,"orbit":0,"members":[0],"multiplicity":2}])");
  const bool ok = row["supercuspidal_tokens"] == 0 && row["cuspidal_tokens"] == 1 &&
                  row["supercuspidal"] == false && row["reduced_members"] == nlohmann::json::array({0}) &&
                  row["support"] == expected_support;
  return {ok, row.dump()};
}

Outcome trace_separation() {
  std::vector<GridTask> tasks;
  for (const auto& field : fields_up_to(kGridBound, kSmallQs, 4)) {
    tasks.push_back({"trace-separation", point_of(field),
                     [field](const Deadline& d) { return verify_trace_separation(field, d); }});
  }
  return all_pass(tasks);
}

Outcome fixing_character() {
  std::vector<GridTask> tasks;
  for (const auto& field : fields_up_to(kGridBound, kSmallQs, 4)) {
    std::vector<u64> chars{0};
    for (u64 ell : ells_of(field)) chars.push_back(ell);
    for (u64 c : chars) {
      Json point = point_of(field);
      point["char"] = c;
      tasks.push_back({"fixing-character", point,
                       [field, c](const Deadline& d) { return verify_fixing_character(field, c, d); }});
    }
  }
  return all_pass(tasks);
}

Outcome regular_cover() {
  std::vector<GridTask> tasks;
  for (const auto& context : fields_up_to(kCoverContextBound)) {
    Json point = point_of(context);
    point["a"] = kCoverDegree;
    tasks.push_back({"regular-cover", point,
                     [context](const Deadline& d) { return verify_regular_cover(context, kCoverDegree, std::nullopt, d); }});
  }
  auto outcome = all_pass(tasks, kCoverPointCap);
  return outcome;
}

Outcome ell_decomposition() {
  std::vector<GridTask> tasks;
  for (const auto& field : fields_up_to(kGridBound)) {
    for (u64 ell : ells_of(field)) {
      Json point = point_of(field);
      point["ell"] = ell;
      tasks.push_back({"ell-decomposition", point,
                       [field, ell](const Deadline& d) { return verify_ell_decomposition(field, ell, d); }});
    }
  }
  return all_pass(tasks);
}

Outcome torsor_laws() {
  std::mt19937_64 rng(0x5eed);
  int checked = 0;
  for (int i = 0; i < kTorsorTriples; ++i) {
    const auto drawn = testgen::random_triple(rng);
    const auto t = drawn.side() == Side::GL ? drawn : rec_inverse(drawn);
    const unsigned f = t.endo_class().f;
    const std::string where = serialize_triple(t);
    auto fail = [&](const std::string& what) { return Outcome{false, what + " at " + where}; };

    const unsigned s1 = rng() % (3 * f), s2 = rng() % (3 * f);
    if (!(change_lift(change_lift(t, s1), s2) == change_lift(t, (s1 + s2) % f))) return fail("composition");
    if (!(change_lift(t, f) == t)) return fail("f-periodicity");

    const auto presentations = equivalent_presentations(t);
    if (presentations.size() != f) return fail("presentation count");
    for (std::size_t a = 0; a < presentations.size(); ++a) {
      if (!(canonical_triple(presentations[a]) == canonical_triple(t))) return fail("canonical constancy");
      for (std::size_t b = 0; b < a; ++b) {
        if (presentations[a] == presentations[b]) return fail("repeated presentation");
      }
    }

    // rec commutes with every operation
    const auto g = rec_triple(t);
    if (!(rec_inverse(g) == t)) return fail("rec inverse");
    if (!(rec_triple(change_lift(t, s1)) == change_lift(g, s1))) return fail("rec/change_lift");
    if (!(rec_triple(canonical_triple(t)) == canonical_triple(g))) return fail("rec/canonical");
    const auto gp = equivalent_presentations(g);
    for (std::size_t a = 0; a < presentations.size(); ++a) {
      if (!(rec_triple(presentations[a]) == gp[a])) return fail("rec/presentations");
    }
    if (multiplicity(g) != multiplicity(t) || parametric_degree(g) != parametric_degree(t)) {
      return fail("rec/multiplicity");
    }
    const u64 residue = t.endo_class().residue_cardinality() - 1;
    const u64 s = residue == 1 ? 0 : rng() % residue;
    if (!(rec_triple(beta_twist(t, s)) == beta_twist(g, s))) return fail("rec/beta_twist");
    if (!(level_zero_twist(t.endo_class(), t.orbit()) == level_zero_twist(g.endo_class(), g.orbit()))) {
      return fail("rec/level_zero_twist");
    }
    for (u64 ell : ells_of(t.orbit().field())) {
      if (!(rec_triple(reduce_triple_mod_ell(t, ell)) == reduce_triple_mod_ell(g, ell))) return fail("rec/reduce");
    }
    if (is_regular(t.orbit())) {
      const FieldSpec field = t.orbit().field();
      if (field.subfield_order(1) <= 64 && field.n() <= 3) {
        if (!(rec_triple(inflate_simple(t, 2)) == inflate_simple(g, 2))) return fail("rec/inflate");
      }
    }
    if (!triples_equal(g, change_lift(g, s2))) return fail("rec/equality");
    ++checked;
  }
  return {true, std::to_string(checked) + " triples"};
}

Outcome reduction_commutation() {
  std::vector<GridTask> tasks;
  for (const auto& field : fields_up_to(kGridBound)) {
    for (u64 ell : ells_of(field)) {
      Json point = point_of(field);
      point["ell"] = ell;
      tasks.push_back({"reduction-commutation", point,
                       [field, ell](const Deadline& d) { return verify_reduction_commutation(field, ell, d); }});
    }
  }
  return all_pass(tasks);
}

Outcome twist_invariance() {
  std::vector<GridTask> tasks;
  for (const auto& field : fields_up_to(kGridBound)) {
    tasks.push_back({"twist-invariance", point_of(field),
                     [field](const Deadline& d) { return verify_twist_invariance(field, d); }});
  }
  return all_pass(tasks);
}

Outcome serialization() {
  std::mt19937_64 rng(0xfeed);
  static constexpr u64 ells[] = {0, 0, 2, 3, 5, 7};
  for (int i = 0; i < kSerializationTriples; ++i) {
    const auto t = testgen::random_triple(rng, ells[rng() % 6]);
    const std::string text = serialize_triple(t);
    const auto back = parse_triple(text);
    if (!(back == t) || serialize_triple(back) != text) return {false, "round trip differs: " + text};
  }
  return {true, std::to_string(kSerializationTriples) + " records"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"AC1", "GL2(F3) mod 2: one cuspidal, no supercuspidal, support 1x1", 1.0, gl2_f3_example},
      {"AC2", "trace separation, q in {2..9}, n <= 4, M <= 10^4", 60.0, trace_separation},
      {"AC3", "fixing character, char 0 and every ell | M", 120.0, fixing_character},
      {"AC4", "regular cover, a = 7, contexts Q^n' - 1 <= 256", 0.0, regular_cover},
      {"AC5", "ell-decomposition, all M <= 10^4", 60.0, ell_decomposition},
      {"AC6", "lift torsor, normal form and rec commutation, 10^3 triples", 10.0, torsor_laws},
      {"AC7", "reduction commutation, all M <= 10^4", 60.0, reduction_commutation},
      {"AC8", "twist invariance, all M <= 10^4", 30.0, twist_invariance},
      {"AC9", "serialization round trip, 10^4 triples", 0.0, serialization},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& err) {
      outcome = {false, std::string("exception: ") + err.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = criterion.limit_s == 0.0 || seconds < criterion.limit_s;
    const bool ok = outcome.ok && in_time;
    if (!ok) ++failures;
    std::printf("%s %s  %s  [%.2f s", ok ? "PASS" : "FAIL", criterion.id.c_str(), criterion.title.c_str(), seconds);
    if (criterion.limit_s > 0.0) std::printf(" / limit %.0f s", criterion.limit_s);
    std::printf("]  %s%s\n", in_time ? "" : "OVER TIME LIMIT; ", outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
