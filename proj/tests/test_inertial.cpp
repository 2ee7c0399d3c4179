#include <random>
#include <set>

#include "doctest.h"
#include "levelzero/errors.hpp"
#include "levelzero/inertial.hpp"
#include "oracles.hpp"
#include "triple_gen.hpp"

using namespace levelzero;

namespace {

const EndoClassDescriptor kTrivial3{3, 3, 1, 1, 1, 0};
const EndoClassDescriptor kUnramified2{2, 2, 2, 1, 2, 0};  // delta = f = 2 over F_2
const EndoClassDescriptor kWild3{3, 3, 3, 3, 1, 1};

}  // namespace

TEST_CASE("descriptor validation") {
  CHECK(kWild3.wild_dimension() == 3);
  CHECK(kWild3.tame_degree() == 1);
  CHECK(kUnramified2.residue_cardinality() == 4);
  CHECK_THROWS_AS((EndoClassDescriptor{4, 4, 1, 1, 1, 0}.validate()), ParameterError);
  CHECK_THROWS_AS((EndoClassDescriptor{2, 3, 1, 1, 1, 0}.validate()), ParameterError);
  CHECK_THROWS_AS((EndoClassDescriptor{2, 2, 2, 1, 1, 0}.validate()), ParameterError);
  CHECK_THROWS_AS((EndoClassDescriptor{3, 3, 2, 2, 1, 1}.validate()), ParameterError);
  CHECK_NOTHROW(kWild3.validate());
}

TEST_CASE("residue_context") {
  CHECK(residue_context(kUnramified2, 4) == FieldSpec(4, 2));
  CHECK(residue_context(kUnramified2, 4).modulus() == 15);
  CHECK(residue_context(kTrivial3, 2) == FieldSpec(3, 2));
  CHECK_THROWS_AS(residue_context(EndoClassDescriptor{2, 2, 3, 3, 1, 0}, 4), ParameterError);
}

TEST_CASE("level_zero_twist") {
  const FieldSpec field = residue_context(kWild3, 6);
  REQUIRE(field.modulus() == 8);
  REQUIRE(*oracle::inverse(3, 8) == 3);
  CHECK(level_zero_twist(kWild3, orbit_of(field, 1)).members() == std::vector<u64>{1, 3});
  // 2 * 3 = 6, which lies in the orbit {2, 6} of 2
  const auto twisted = level_zero_twist(kWild3, orbit_of(field, 2));
  CHECK(twisted.contains(6));
  CHECK(twisted.members() == std::vector<u64>{2, 6});
  CHECK(level_zero_twist(kTrivial3, orbit_of(FieldSpec(3, 2), 5)) == orbit_of(FieldSpec(3, 2), 5));

  // bijection preserving sizes, inverted by the untwist
  const EndoClassDescriptor wild2{2, 2, 2, 2, 1, 1};
  const FieldSpec ctx = residue_context(wild2, 8);
  std::set<u64> images;
  for (const auto& orbit : enumerate_orbits(ctx)) {
    const auto image = level_zero_twist(wild2, orbit);
    CHECK(image.size() == orbit.size());
    CHECK(level_zero_untwist(wild2, image) == orbit);
    CHECK(image.contains(orbit.canonical() * *oracle::inverse(2, ctx.modulus()) % ctx.modulus()));
    images.insert(image.canonical());
  }
  CHECK(images.size() == enumerate_orbits(ctx).size());
}

TEST_CASE("lift torsor") {
  const SimpleInertialTriple t(2, kUnramified2, LiftIndex{0}, 1);
  REQUIRE(t.orbit().field().modulus() == 3);
  const auto moved = change_lift(t, 1);
  CHECK(moved.lift() == LiftIndex{1});
  CHECK(moved.orbit().members() == std::vector<u64>{2});
  CHECK(change_lift(t, 0) == t);
  CHECK(change_lift(t, 2) == t);

  const auto all = equivalent_presentations(t);
  REQUIRE(all.size() == 2);
  CHECK(all[0] == t);
  CHECK(all[1] == moved);
  const auto fixed = equivalent_presentations(SimpleInertialTriple(2, kUnramified2, LiftIndex{0}, 0));
  REQUIRE(fixed.size() == 2);
  CHECK(fixed[0].orbit().canonical() == 0);
  CHECK(fixed[1].orbit().canonical() == 0);
  CHECK(fixed[1].lift() == LiftIndex{1});
  CHECK(equivalent_presentations(SimpleInertialTriple(2, kTrivial3, LiftIndex{0}, 1)).size() == 1);

  CHECK(canonical_triple(moved) == t);
  CHECK(canonical_triple(t) == t);
  const SimpleInertialTriple trivial_lift1(2, kUnramified2, LiftIndex{1}, 0);
  CHECK(canonical_triple(trivial_lift1) == SimpleInertialTriple(2, kUnramified2, LiftIndex{0}, 0));

  CHECK(triples_equal(t, moved));
  CHECK_FALSE(triples_equal(SimpleInertialTriple(2, kTrivial3, LiftIndex{0}, 1),
                            SimpleInertialTriple(2, kTrivial3, LiftIndex{0}, 2)));
  const EndoClassDescriptor wild2{2, 2, 2, 2, 1, 1}, tame2{2, 2, 2, 2, 1, 0};
  CHECK_FALSE(triples_equal(SimpleInertialTriple(2, wild2, LiftIndex{0}, 0),
                            SimpleInertialTriple(2, tame2, LiftIndex{0}, 0)));
  CHECK_THROWS_AS(triples_equal(t, rec_triple(t)), ParameterError);
}

TEST_CASE("multiplicity and inflation") {
  const SimpleInertialTriple t(4, kUnramified2, LiftIndex{0}, 5);
  REQUIRE(t.orbit().members() == oracle::orbit(4, 15, 5));
  CHECK(multiplicity(t) == 2);
  CHECK(parametric_degree(t) == 1);
  CHECK(multiplicity(SimpleInertialTriple(2, kTrivial3, LiftIndex{0}, 1)) == 1);
  CHECK(multiplicity(SimpleInertialTriple(2, kTrivial3, LiftIndex{0}, 0)) == 2);

  const EndoClassDescriptor trivial2{2, 2, 1, 1, 1, 0};
  const SimpleInertialTriple gl1(1, trivial2, LiftIndex{0}, 0);
  CHECK(inflate_simple(gl1, 1) == gl1);
  const auto doubled = inflate_simple(gl1, 2);
  CHECK(doubled.orbit().field().modulus() == 3);
  CHECK(doubled.orbit().canonical() == 0);
  CHECK(multiplicity(doubled) == 2);

  const auto inflated = inflate_simple(SimpleInertialTriple(2, kUnramified2, LiftIndex{0}, 1), 2);
  CHECK(inflated.n() == 4);
  CHECK(inflated.orbit().canonical() == 5);
  CHECK(multiplicity(inflated) == 2);
  CHECK_THROWS_AS(inflate_simple(SimpleInertialTriple(2, kTrivial3, LiftIndex{0}, 0), 2), ParameterError);
}

TEST_CASE("beta twists and canonical labels") {
  const FieldSpec field(3, 2);
  CHECK(beta_twist_level_zero(orbit_of(field, 1), 0) == orbit_of(field, 1));
  CHECK(beta_twist_level_zero(orbit_of(field, 1), 1).members() == std::vector<u64>{5, 7});
  CHECK(beta_twist_level_zero(beta_twist_level_zero(orbit_of(field, 3), 1), 1) == orbit_of(field, 3));

  CHECK(epsilon_gal(EndoClassDescriptor{2, 2, 2, 1, 2, 0}) == 0);
  CHECK(epsilon_gal(EndoClassDescriptor{3, 3, 2, 1, 2, 0}) == (9 - 1) / 2);
  CHECK(epsilon_gal(kWild3) == 0);

  CHECK(canonical_beta_label(EndoClassDescriptor{2, 2, 2, 1, 2, 0}, false).twist == 0);
  const EndoClassDescriptor ramified3{3, 3, 2, 2, 1, 0};
  CHECK(canonical_beta_label(ramified3, false).twist == 1);
  CHECK(canonical_beta_label(ramified3, true).twist == 0);
  CHECK(canonical_beta_label(kWild3, true).twist == 1);
  CHECK(canonical_beta_label(kWild3, true).eps1_flag);
  CHECK_THROWS_AS(canonical_beta_label(EndoClassDescriptor{2, 2, 1, 1, 1, 0}, true), ParameterError);
}

TEST_CASE("rec and reduction") {
  const SimpleInertialTriple t(2, kTrivial3, LiftIndex{0}, 1);
  const auto galois = rec_triple(t);
  CHECK(galois.side() == Side::Galois);
  CHECK(galois.orbit() == t.orbit());
  CHECK(rec_inverse(galois) == t);
  CHECK_THROWS_AS(rec_triple(galois), ParameterError);
  CHECK_THROWS_AS(rec_inverse(t), ParameterError);

  const auto reduced = reduce_triple_mod_ell(t, 2);
  CHECK(reduced.orbit().members() == std::vector<u64>{0});
  CHECK(reduced.characteristic() == 2);
  CHECK(reduce_triple_mod_ell(t, 5).orbit() == t.orbit());
  CHECK(reduce_triple_mod_ell(reduced, 2) == reduced);
  CHECK_THROWS_AS(reduce_triple_mod_ell(t, 3), ParameterError);
  CHECK_THROWS_AS(SimpleInertialTriple(2, kTrivial3, LiftIndex{0}, 1, Side::GL, 2), ParameterError);
}

TEST_CASE("serialization") {
  const SimpleInertialTriple t(4, kUnramified2, LiftIndex{1}, 5, Side::Galois);
  const std::string text = serialize_triple(t);
  CHECK(text ==
        R"({"n":4,"p":2,"q":2,"delta":2,"e":1,"f":2,"r":0,"lift":1,"orbit_canonical":5,"side":"Galois","char":0})");
  CHECK(parse_triple(text) == t);
  CHECK_THROWS_AS(parse_triple("{"), ParameterError);
  CHECK_THROWS_AS(parse_triple("[1,2]"), ParameterError);
  CHECK_THROWS_AS(parse_triple(R"({"n":2,"p":3,"q":3,"delta":1,"e":1,"f":1,"r":0,"lift":0,"orbit_canonical":3,"side":"GL","char":0})"),
                  ParameterError);
  CHECK_THROWS_AS(parse_triple(R"({"n":-2,"p":3,"q":3,"delta":1,"e":1,"f":1,"r":0,"lift":0,"orbit_canonical":1,"side":"GL","char":0})"),
                  ParameterError);
  CHECK_THROWS_AS(parse_triple(R"({"n":2,"p":3,"q":3,"delta":1,"e":1,"f":1,"r":0,"lift":0,"orbit_canonical":1,"side":"weil","char":0})"),
                  ParameterError);
  CHECK_THROWS_AS(parse_triple(R"({"n":2,"p":3,"q":3,"delta":1,"e":1,"f":1,"r":0,"lift":0,"orbit_canonical":1,"side":"GL"})"),
                  ParameterError);
}

TEST_CASE("triple properties on random inputs") {
  std::mt19937_64 rng(424242);
  for (int trial = 0; trial < 400; ++trial) {
    const auto t = testgen::random_triple(rng);
    const unsigned f = t.endo_class().f;
    const FieldSpec field = t.orbit().field();
    const u64 m = field.modulus();
    CAPTURE(serialize_triple(t));

    const unsigned s1 = rng() % (2 * f), s2 = rng() % (2 * f);
    CHECK(change_lift(change_lift(t, s1), s2) == change_lift(t, (s1 + s2) % f));
    CHECK(change_lift(t, f) == t);
    // change_lift acts by k -> q^shift k, checked by a Frobenius walk
    const auto shifted = change_lift(t, s1);
    u64 k = t.orbit().canonical();
    for (unsigned i = 0; i < s1; ++i) k = k * t.endo_class().q % m;
    CHECK(shifted.orbit().members() == oracle::orbit(field.q(), m, k));

    const auto presentations = equivalent_presentations(t);
    CHECK(presentations.size() == f);
    for (const auto& other : presentations) {
      CHECK(canonical_triple(other) == canonical_triple(t));
      CHECK(triples_equal(other, t));
    }

    CHECK(multiplicity(t) * parametric_degree(t) == t.n() / t.endo_class().delta);
    const u64 s = rng() % (t.endo_class().residue_cardinality() - 1 == 0 ? 1 : t.endo_class().residue_cardinality() - 1);
    CHECK(multiplicity(beta_twist(t, s)) == multiplicity(t));

    CHECK(parse_triple(serialize_triple(t)) == t);

    if (t.side() == Side::GL) {
      CHECK(rec_triple(change_lift(t, s1)) == change_lift(rec_triple(t), s1));
      CHECK(rec_triple(beta_twist(t, s)) == beta_twist(rec_triple(t), s));
    }

    for (u64 ell : prime_divisors(m == 1 ? 2 : m)) {
      if (ell == t.endo_class().p) continue;
      const auto reduced = reduce_triple_mod_ell(t, ell);
      CHECK(reduce_triple_mod_ell(change_lift(t, s1), ell) == change_lift(reduced, s1));
      CHECK(reduce_triple_mod_ell(beta_twist(t, s), ell) == beta_twist(reduced, s));
      CHECK(reduce_triple_mod_ell(reduced, ell) == reduced);
      const auto splits = oracle::ell_splittings(m, t.orbit().canonical(), ell);
      CHECK(reduced.orbit().contains(splits.front().first));
    }
  }
}

TEST_CASE("inflation properties") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto endo = testgen::random_descriptor(rng);
    const u64 base = endo.residue_cardinality();
    unsigned d = 1 + rng() % 2;
    unsigned mult = 1 + rng() % 3;
    if (oracle::ipow(base, d * mult) - 1 > 4096) continue;
    const FieldSpec small = residue_context(endo, endo.delta * d);
    const auto regular = enumerate_orbits(small, OrbitFilter::regular);
    if (regular.empty()) continue;
    const SimpleInertialTriple t0(endo.delta * d, endo, LiftIndex{0}, regular[rng() % regular.size()].canonical());
    const auto inflated = inflate_simple(t0, mult);
    CHECK(multiplicity(inflated) == mult);
    CHECK(rec_triple(inflated) == inflate_simple(rec_triple(t0), mult));
    for (u64 ell : prime_divisors(small.modulus() == 1 ? 2 : small.modulus())) {
      if (ell == endo.p) continue;
      const auto reduced0 = reduce_triple_mod_ell(t0, ell);
      if (!is_regular(reduced0.orbit())) continue;
      CHECK(reduce_triple_mod_ell(inflated, ell) == inflate_simple(reduced0, mult));
    }
  }
}
