#ifndef DPGW_GENUS1_HPP
#define DPGW_GENUS1_HPP

// Genus-one curves with fixed j-invariant:
//   n1j = 2 g_beta n0 / |Aut|,
// assembled from RT1 = (beta.beta) n0 and CR = (c1.beta - 2) n0 through
// RT1 = |Aut| n1j + CR.

#include <cstdint>
#include <string_view>

#include "dpgw/gw0.hpp"
#include "dpgw/integer.hpp"
#include "dpgw/lattice.hpp"

namespace dpgw {

enum class AutPreset { generic, j1728, j0 };

/// Automorphisms of a pointed genus-one curve: 2, 4 (j = 1728), 6 (j = 0).
std::int64_t aut_order(AutPreset preset);
/// Passes an explicit order through; throws ValidationError if it is < 1.
std::int64_t aut_order(std::int64_t explicit_order);
/// "generic", "j1728", "j0" or a positive integer.
std::int64_t parse_aut(std::string_view text);

Integer correction_term(const SurfaceModel& s, const CurveClass& beta, const Integer& n0_val);
Integer rt1(const SurfaceModel& s, const CurveClass& beta, const Integer& n0_val);
/// Same number by the full-basis reduction sum g^{ij} RT0(e_i, e_j).
Integer rt1_via_pairing(const SurfaceModel& s, const CurveClass& beta, const Integer& n0_val);
/// RT0 with two divisor insertions: n0 (beta.ei)(beta.ej).
Integer rt0_with_divisors(const SurfaceModel& s, const CurveClass& beta, const CurveClass& ei,
                          const CurveClass& ej, const Integer& n0_val);

struct GenusOneReport {
  CurveClass beta;
  std::int64_t delta = 0;
  Integer genus;
  Integer n0;
  Integer correction;
  Integer rt1;
  std::int64_t aut_order = 2;
  Rational n1j;

  bool n1j_is_integral() const { return is_integral(n1j); }
  /// rt1 == aut * n1j + correction, exactly.
  bool identity_holds() const;
};

/// Builds the report from a known n0. Throws ConsistencyError if the
/// decomposition identity fails.
GenusOneReport genus_one_report(const SurfaceModel& s, const CurveClass& beta, std::int64_t aut,
                                const Integer& n0_val);

struct N1jResult {
  Rational value;
  GenusOneReport report;
};

/// n0 from the memo (serial evaluator), then the report.
N1jResult n1j(const SurfaceModel& s, const CurveClass& beta, std::int64_t aut, MemoTable& memo);

bool decomposition_identity_check(const SurfaceModel& s, const CurveClass& beta, std::int64_t aut,
                                  MemoTable& memo);

}  // namespace dpgw

#endif  // DPGW_GENUS1_HPP
