#include "dpgw/genus1.hpp"

#include <charconv>
#include <string>

namespace dpgw {

std::int64_t aut_order(AutPreset preset) {
  switch (preset) {
    case AutPreset::generic:
      return 2;
    case AutPreset::j1728:
      return 4;
    case AutPreset::j0:
      return 6;
  }
  throw ValidationError("unknown automorphism preset");
}

std::int64_t aut_order(std::int64_t explicit_order) {
  if (explicit_order < 1)
    throw ValidationError("automorphism order must be at least 1, got " + std::to_string(explicit_order));
  return explicit_order;
}

std::int64_t parse_aut(std::string_view text) {
  if (text == "generic") return aut_order(AutPreset::generic);
  if (text == "j1728") return aut_order(AutPreset::j1728);
  if (text == "j0") return aut_order(AutPreset::j0);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw ValidationError("--aut expects generic, j1728, j0 or a positive integer, got \"" + std::string(text) + "\"");
  return aut_order(v);
}

Integer correction_term(const SurfaceModel& s, const CurveClass& beta, const Integer& n0_val) {
  return (c1_pairing(s, beta) - 2) * n0_val;
}

Integer rt1(const SurfaceModel& s, const CurveClass& beta, const Integer& n0_val) {
  return intersect(s, beta, beta) * n0_val;
}

Integer rt1_via_pairing(const SurfaceModel& s, const CurveClass& beta, const Integer& n0_val) {
  return pairing_sum_identity(s, beta) * n0_val;
}

Integer rt0_with_divisors(const SurfaceModel& s, const CurveClass& beta, const CurveClass& ei,
                          const CurveClass& ej, const Integer& n0_val) {
  return n0_val * intersect(s, beta, ei) * intersect(s, beta, ej);
}

bool GenusOneReport::identity_holds() const { return Rational(rt1) == aut_order * n1j + Rational(correction); }

GenusOneReport genus_one_report(const SurfaceModel& s, const CurveClass& beta, std::int64_t aut,
                                const Integer& n0_val) {
  aut = aut_order(aut);
  GenusOneReport r;
  r.beta = beta;
  r.delta = delta(s, beta);
  r.genus = arithmetic_genus(s, beta);
  r.n0 = n0_val;
  r.correction = correction_term(s, beta, n0_val);
  r.rt1 = rt1(s, beta, n0_val);
  r.aut_order = aut;
  r.n1j = Rational(2 * r.genus * n0_val, Integer(aut));
  if (!r.identity_holds())
    throw ConsistencyError("RT1 != |Aut| n1j + CR for " + format_class(s, beta) + " on " + s.id());
  return r;
}

N1jResult n1j(const SurfaceModel& s, const CurveClass& beta, std::int64_t aut, MemoTable& memo) {
  GenusOneReport r = genus_one_report(s, beta, aut, n0(s, beta, memo));
  Rational v = r.n1j;
  return {std::move(v), std::move(r)};
}

bool decomposition_identity_check(const SurfaceModel& s, const CurveClass& beta, std::int64_t aut,
                                  MemoTable& memo) {
  const Integer n = n0(s, beta, memo);
  const Rational value(2 * Integer(arithmetic_genus(s, beta)) * n, Integer(aut_order(aut)));
  return Rational(rt1(s, beta, n)) == aut * value + Rational(correction_term(s, beta, n));
}

}  // namespace dpgw
