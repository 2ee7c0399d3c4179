#include "levelzero/inertial.hpp"

#include <limits>
#include <string>

#include "json.hpp"
#include "levelzero/errors.hpp"

namespace levelzero {

void EndoClassDescriptor::validate() const {
  // q = p^a with p prime already forces p to be prime
  if (!is_prime_power(q) || prime_power_decomposition(q).first != p) {
    if (!is_prime(p)) throw ParameterError("p = " + std::to_string(p) + " is not prime");
    throw ParameterError("q = " + std::to_string(q) + " is not a power of p = " + std::to_string(p));
  }
  if (delta == 0 || e == 0 || f == 0) throw ParameterError("delta, e, f must be positive");
  if (static_cast<u64>(e) * f != delta) {
    throw ParameterError("e * f = " + std::to_string(static_cast<u64>(e) * f) +
                         " differs from delta = " + std::to_string(delta));
  }
  if (delta % wild_dimension() != 0) {
    throw ParameterError("p^r = " + std::to_string(wild_dimension()) + " does not divide delta = " +
                         std::to_string(delta));
  }
}

u64 EndoClassDescriptor::wild_dimension() const {
  try {
    return checked_pow(p, r);
  } catch (const OverflowError&) {
    throw ParameterError("p^r overflows");
  }
}

unsigned EndoClassDescriptor::tame_degree() const {
  return static_cast<unsigned>(delta / wild_dimension());
}

u64 EndoClassDescriptor::residue_cardinality() const { return checked_pow(q, f); }

std::string_view to_string(Side side) { return side == Side::GL ? "GL" : "Galois"; }

Side parse_side(std::string_view text) {
  if (text == "GL") return Side::GL;
  if (text == "Galois") return Side::Galois;
  throw ParameterError("unknown side '" + std::string(text) + "'");
}

FieldSpec residue_context(const EndoClassDescriptor& endo, unsigned n) {
  endo.validate();
  if (n == 0 || n % endo.delta != 0) {
    throw ParameterError("delta = " + std::to_string(endo.delta) + " does not divide n = " +
                         std::to_string(n));
  }
  return FieldSpec(endo.residue_cardinality(), n / endo.delta);
}

SimpleInertialTriple::SimpleInertialTriple(unsigned n, const EndoClassDescriptor& endo,
                                           LiftIndex lift, u64 k, Side side, u64 characteristic)
    : n_(n),
      endo_(endo),
      lift_(lift),
      orbit_(orbit_of(residue_context(endo, n), k)),
      side_(side),
      characteristic_(characteristic) {
  if (lift.value >= endo.f) {
    throw ParameterError("lift " + std::to_string(lift.value) + " is not a residue mod f = " +
                         std::to_string(endo.f));
  }
  if (characteristic != 0) {
    const EllSplit split(orbit_.field(), characteristic);
    if (!split.is_ell_regular(orbit_.canonical())) {
      throw ParameterError("characteristic-" + std::to_string(characteristic) +
                           " triple needs an ell-regular orbit");
    }
  }
}

bool SimpleInertialTriple::operator==(const SimpleInertialTriple& other) const {
  return n_ == other.n_ && endo_ == other.endo_ && lift_ == other.lift_ &&
         orbit_ == other.orbit_ && side_ == other.side_ &&
         characteristic_ == other.characteristic_;
}

namespace {

SimpleInertialTriple with_orbit(const SimpleInertialTriple& t, LiftIndex lift, u64 k) {
  return SimpleInertialTriple(t.n(), t.endo_class(), lift, k, t.side(), t.characteristic());
}

}  // namespace

CharOrbit level_zero_twist(const EndoClassDescriptor& endo, const CharOrbit& orbit) {
  const u64 m = orbit.field().modulus();
  const u64 inverse = invmod(endo.wild_dimension() % m, m);
  return orbit_of(orbit.field(), mulmod(orbit.canonical(), inverse, m));
}

CharOrbit level_zero_untwist(const EndoClassDescriptor& endo, const CharOrbit& orbit) {
  const u64 m = orbit.field().modulus();
  return orbit_of(orbit.field(), mulmod(orbit.canonical(), endo.wild_dimension() % m, m));
}

SimpleInertialTriple change_lift(const SimpleInertialTriple& t, unsigned shift) {
  const unsigned f = t.endo_class().f;
  const FieldSpec& context = t.orbit().field();
  const u64 m = context.modulus();
  // Frobenius of the base residue field q, not of the context base q^f
  const u64 k = mulmod(t.orbit().canonical(), powmod(t.endo_class().q, shift % f, m), m);
  return with_orbit(t, LiftIndex{(t.lift().value + shift) % f}, k);
}

std::vector<SimpleInertialTriple> equivalent_presentations(const SimpleInertialTriple& t) {
  std::vector<SimpleInertialTriple> result;
  const SimpleInertialTriple base = canonical_triple(t);
  for (unsigned s = 0; s < t.endo_class().f; ++s) result.push_back(change_lift(base, s));
  return result;
}

SimpleInertialTriple canonical_triple(const SimpleInertialTriple& t) {
  const unsigned f = t.endo_class().f;
  return change_lift(t, (f - t.lift().value) % f);
}

bool triples_equal(const SimpleInertialTriple& a, const SimpleInertialTriple& b) {
  if (a.side() != b.side()) throw ParameterError("triples_equal compares triples on the same side");
  return a.n() == b.n() && a.endo_class() == b.endo_class() &&
         a.characteristic() == b.characteristic() && canonical_triple(a) == canonical_triple(b);
}

unsigned parametric_degree(const SimpleInertialTriple& t) {
  return static_cast<unsigned>(t.orbit().size());
}

unsigned multiplicity(const SimpleInertialTriple& t) {
  return t.orbit().field().n() / parametric_degree(t);
}

SimpleInertialTriple inflate_simple(const SimpleInertialTriple& t0, unsigned m) {
  if (m == 0) throw ParameterError("multiplicity must be positive");
  if (!is_regular(t0.orbit())) throw ParameterError("inflate_simple needs a supercuspidal (regular) triple");
  const unsigned n = t0.n() * m;
  const FieldSpec large = residue_context(t0.endo_class(), n);
  const unsigned d = t0.orbit().field().n();
  const u64 k = norm_inflate(large, d, t0.orbit().canonical());
  return SimpleInertialTriple(n, t0.endo_class(), t0.lift(), k, t0.side(), t0.characteristic());
}

CharOrbit beta_twist_level_zero(const CharOrbit& orbit, u64 s) {
  const FieldSpec& context = orbit.field();
  const u64 shift = norm_inflate(context, 1, s % context.subfield_order(1));
  return orbit_of(context, submod(orbit.canonical(), shift, context.modulus()));
}

SimpleInertialTriple beta_twist(const SimpleInertialTriple& t, u64 s) {
  const FieldSpec& context = t.orbit().field();
  u64 shift = norm_inflate(context, 1, s % context.subfield_order(1));
  if (t.characteristic() != 0) shift = EllSplit(context, t.characteristic()).regular_part(shift);
  return with_orbit(t, t.lift(), submod(t.orbit().canonical(), shift, context.modulus()));
}

u64 epsilon_gal(const EndoClassDescriptor& endo) {
  endo.validate();
  if (endo.p == 2 || endo.tame_degree() % 2 != 0) return 0;
  return (endo.residue_cardinality() - 1) / 2;
}

BetaExtensionLabel canonical_beta_label(const EndoClassDescriptor& endo, bool eps1_flag) {
  const u64 order = endo.residue_cardinality() - 1;
  u64 twist = epsilon_gal(endo);
  if (eps1_flag) {
    if (order % 2 != 0) {
      throw ParameterError("q^f is even, so the residue field has no quadratic character");
    }
    twist = addmod(twist, order / 2, order);
  }
  return {endo, order == 1 ? 0 : twist % order, eps1_flag};
}

SimpleInertialTriple rec_triple(const SimpleInertialTriple& t) {
  if (t.side() != Side::GL) throw ParameterError("rec_triple expects a GL-side triple");
  return SimpleInertialTriple(t.n(), t.endo_class(), t.lift(), t.orbit().canonical(), Side::Galois,
                              t.characteristic());
}

SimpleInertialTriple rec_inverse(const SimpleInertialTriple& t) {
  if (t.side() != Side::Galois) throw ParameterError("rec_inverse expects a Galois-side triple");
  return SimpleInertialTriple(t.n(), t.endo_class(), t.lift(), t.orbit().canonical(), Side::GL,
                              t.characteristic());
}

SimpleInertialTriple reduce_triple_mod_ell(const SimpleInertialTriple& t, u64 ell) {
  if (ell == t.endo_class().p) throw ParameterError("ell must differ from p");
  if (t.characteristic() != 0 && t.characteristic() != ell) {
    throw ParameterError("triple already has characteristic " + std::to_string(t.characteristic()));
  }
  const EllSplit split(t.orbit().field(), ell);
  return SimpleInertialTriple(t.n(), t.endo_class(), t.lift(),
                              split.regular_part(t.orbit().canonical()), t.side(), ell);
}

std::string serialize_triple(const SimpleInertialTriple& t) {
  nlohmann::ordered_json record;
  const auto& endo = t.endo_class();
  record["n"] = t.n();
  record["p"] = endo.p;
  record["q"] = endo.q;
  record["delta"] = endo.delta;
  record["e"] = endo.e;
  record["f"] = endo.f;
  record["r"] = endo.r;
  record["lift"] = t.lift().value;
  record["orbit_canonical"] = t.orbit().canonical();
  record["side"] = to_string(t.side());
  record["char"] = t.characteristic();
  return record.dump();
}

namespace {

template <typename T>
T unsigned_field(const nlohmann::json& record, const char* key) {
  const auto& value = record.at(key);
  if (!value.is_number_unsigned() ||
      value.get<std::uint64_t>() > std::numeric_limits<T>::max()) {
    throw ParameterError(std::string("triple field '") + key + "' must be a non-negative integer in range");
  }
  return static_cast<T>(value.get<std::uint64_t>());
}

}  // namespace

SimpleInertialTriple parse_triple(std::string_view text) {
  nlohmann::json record;
  try {
    record = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& err) {
    throw ParameterError(std::string("malformed triple record: ") + err.what());
  }
  try {
    if (!record.is_object()) throw ParameterError("triple record must be a JSON object");
    const EndoClassDescriptor endo{
        unsigned_field<u64>(record, "p"),          unsigned_field<u64>(record, "q"),
        unsigned_field<unsigned>(record, "delta"), unsigned_field<unsigned>(record, "e"),
        unsigned_field<unsigned>(record, "f"),     unsigned_field<unsigned>(record, "r")};
    const u64 canonical = unsigned_field<u64>(record, "orbit_canonical");
    SimpleInertialTriple triple(unsigned_field<unsigned>(record, "n"), endo,
                                LiftIndex{unsigned_field<unsigned>(record, "lift")}, canonical,
                                parse_side(record.at("side").get<std::string>()),
                                unsigned_field<u64>(record, "char"));
    if (triple.orbit().canonical() != canonical) {
      throw ParameterError("orbit_canonical " + std::to_string(canonical) +
                           " is not the minimal member of its orbit");
    }
    return triple;
  } catch (const nlohmann::json::exception& err) {
    throw ParameterError(std::string("malformed triple record: ") + err.what());
  }
}

}  // namespace levelzero
