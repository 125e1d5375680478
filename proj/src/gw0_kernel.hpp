#ifndef DPGW_GW0_KERNEL_HPP
#define DPGW_GW0_KERNEL_HPP

// Per-class evaluation shared by the serial and the OpenMP evaluators. The
// kernel never touches a MemoTable directly: it asks a lookup for the counts
// of the parts it needs. Which parts it asks for depends on lattice data only,
// so a Recipe can be built before any of them is known.

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "dpgw/gw0.hpp"
#include "dpgw/integer.hpp"
#include "dpgw/lattice.hpp"

namespace dpgw::detail {

/// n_0 of a candidate class.
using Lookup = std::function<Integer(const CurveClass&)>;

/// One term of a WDVV sum: coefficient * n(part1) * n(part2).
struct Term {
  CurveClass part1;
  CurveClass part2;
  Integer coefficient;
};

// With `symmetric` set, splits that differ by a permutation of exceptional
// classes fixing beta and the divisors are merged into one term scaled by the
// orbit size. That relies on n_0 being permutation invariant, so the raw key
// mode (which exists to test the invariance) runs unmerged.

/// Nonzero-coefficient terms of the point-insertion relation for divisors a, b.
std::vector<Term> point_terms(const SurfaceModel& s, const CurveClass& beta, const CurveClass& a,
                              const CurveClass& b, bool symmetric);

/// Nonzero-coefficient terms of the four-divisor relation, together with the
/// coefficient of n_beta on the other side.
struct DivisorTerms {
  Integer coefficient;
  std::vector<Term> terms;
};
DivisorTerms divisor_terms(const SurfaceModel& s, const CurveClass& beta, const CurveClass& a,
                           const CurveClass& b, const CurveClass& c, const CurveClass& d, bool symmetric);

Integer sum_terms(const std::vector<Term>& terms, const Lookup& lookup);

/// Deterministic choice of (X, X, Y, Y) with a nonzero left-hand coefficient.
/// Throws ConsistencyError if none exists in the pool.
std::array<CurveClass, 4> low_delta_divisors(const SurfaceModel& s, const CurveClass& beta);

/// The class reached by turning one multiplicity-1 point into a point
/// condition, or nullopt if no multiplicity equals 1.
std::optional<CurveClass> point_reduction(const SurfaceModel& s, const CurveClass& beta);

Integer divide_exact(const Integer& num, const Integer& den, const SurfaceModel& s, const CurveClass& beta);

/// How n_0 of one key follows from other counts: a known value, a WDVV sum
/// divided by `divisor`, or the count of one reduced class.
struct Recipe {
  std::optional<Integer> value;
  std::vector<Term> terms;
  Integer divisor;
  std::optional<CurveClass> reduced;

  /// The (unnormalized) classes apply() looks up.
  std::vector<CurveClass> dependencies() const;
};

Recipe recipe(const SurfaceModel& s, const CurveClass& key, bool symmetric);

Integer apply(const Recipe& r, const SurfaceModel& s, const CurveClass& key, const Lookup& lookup);

/// apply(recipe(...)).
Integer evaluate(const SurfaceModel& s, const CurveClass& key, const Lookup& lookup, bool symmetric);

}  // namespace dpgw::detail

#endif  // DPGW_GW0_KERNEL_HPP
