#ifndef DPGW_GW0_HPP
#define DPGW_GW0_HPP

// Genus-0 counts n_0(beta): the number of rational curves in class beta
// through c1.beta - 1 general points, computed by WDVV recursion.
//
// Two evaluators share one per-class kernel:
//   n0()          serial reference, memoized depth-first recursion;
//   n0_parallel() collects the dependency closure, then evaluates it level by
//                 level with OpenMP. Same values, bit for bit.

#include <atomic>
#include <cstdint>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dpgw/integer.hpp"
#include "dpgw/lattice.hpp"

namespace dpgw {

enum class KeyMode {
  weyl,  // keys are Weyl normal forms
  raw,   // keys are the classes as given; used to test the invariances
};

/// Memoized genus-0 counts for one surface. Readers may run concurrently;
/// writers take an exclusive lock. A stored value never changes.
class MemoTable {
 public:
  explicit MemoTable(const SurfaceModel& s, KeyMode mode = KeyMode::weyl);

  MemoTable(const MemoTable& other);
  MemoTable& operator=(const MemoTable& other);

  const std::string& surface_id() const noexcept { return surface_id_; }
  KeyMode mode() const noexcept { return mode_; }

  /// The key under which beta is stored: its normal form in weyl mode.
  CurveClass key_for(const SurfaceModel& s, const CurveClass& beta) const;

  std::optional<Integer> find(const CurveClass& key) const;
  bool contains(const CurveClass& key) const;

  /// Throws ConsistencyError for negative values or for a key that already
  /// holds a different value.
  void insert(const CurveClass& key, Integer value);

  std::size_t size() const;
  std::uint64_t hits() const noexcept { return hits_.load(); }
  std::uint64_t misses() const noexcept { return misses_.load(); }

  /// All entries, ascending by key.
  std::vector<std::pair<CurveClass, Integer>> entries() const;

  friend bool operator==(const MemoTable& a, const MemoTable& b);

 private:
  std::string surface_id_;
  KeyMode mode_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<CurveClass, Integer, CurveClassHash> values_;
  mutable std::atomic<std::uint64_t> hits_{0};
  mutable std::atomic<std::uint64_t> misses_{0};
};

/// Seed values for classes below the point-recursion guard (delta <= 2).
/// Genus 0: 1 if the normal form is a line, a ruling, or an exceptional
/// curve, otherwise 0. Returns nullopt when the recursion applies, which for
/// delta <= 2 means a class of positive genus (see low_delta route below).
std::optional<Integer> base_case(const SurfaceModel& s, const CurveClass& beta);

/// Right-hand side of the point-insertion WDVV relation
///   (A.B) n_beta = sum_{beta1+beta2=beta} n1 n2 (beta1.beta2)(B.beta2)
///                  [ (A.beta1) C(delta-3, delta1-1) - (A.beta2) C(delta-3, delta1-2) ].
/// Requires delta(beta) >= 3.
Integer wdvv_rhs(const SurfaceModel& s, const CurveClass& beta, const CurveClass& a, const CurveClass& b,
                 MemoTable& memo);

/// The four-divisor WDVV relation, valid for delta(beta) >= 1:
///   coefficient * n_beta = rhs.
struct DivisorRelation {
  Integer coefficient;
  Integer rhs;
};
DivisorRelation divisor_wdvv(const SurfaceModel& s, const CurveClass& beta, const CurveClass& a,
                             const CurveClass& b, const CurveClass& c, const CurveClass& d, MemoTable& memo);

/// The divisor pair used by n0: L, L on blowups (A.B = 1), F1, F2 on the quadric.
std::pair<CurveClass, CurveClass> default_divisor_pair(const SurfaceModel& s);

/// Serial reference evaluator.
Integer n0(const SurfaceModel& s, const CurveClass& beta, MemoTable& memo);

/// OpenMP evaluator. Fills memo with the same values n0() would.
Integer n0_parallel(const SurfaceModel& s, const CurveClass& beta, MemoTable& memo);
std::vector<Integer> n0_parallel(const SurfaceModel& s, std::span<const CurveClass> classes, MemoTable& memo);

/// Kontsevich's recursion for plane curves, independent of the lattice code:
///   N_d = sum_{d1+d2=d} N_d1 N_d2 [d1^2 d2^2 C(3d-4, 3d1-2) - d1^3 d2 C(3d-4, 3d1-1)].
Integer kontsevich_p2(std::int64_t d);

/// True iff every pair gives the same n_beta as n0(). Each pair needs A.B != 0.
bool consistency_check(const SurfaceModel& s, const CurveClass& beta,
                       std::span<const std::pair<CurveClass, CurveClass>> pairs, MemoTable& memo);

}  // namespace dpgw

#endif  // DPGW_GW0_HPP
