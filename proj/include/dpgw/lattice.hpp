#ifndef DPGW_LATTICE_HPP
#define DPGW_LATTICE_HPP

// Intersection lattices of del Pezzo surfaces: P^2 blown up at k <= 8 general
// points, and P^1 x P^1.
//
// Blowup classes use coordinates (d; m_1, ..., m_k) for d*L - sum m_i*E_i, so
// the exceptional curve E_i itself is (0; ..., -1, ...). Quadric classes are
// bidegrees (a, b) = a*F_1 + b*F_2.

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dpgw/errors.hpp"
#include "dpgw/integer.hpp"

namespace dpgw {

/// An element of H_2(X, Z) as an integer coordinate vector. Fixed capacity,
/// stored inline; unused slots are kept at zero so the defaulted comparison is
/// lexicographic on the coordinates.
class CurveClass {
 public:
  static constexpr std::size_t max_rank = 9;

  CurveClass() = default;
  explicit CurveClass(std::size_t rank);
  CurveClass(std::initializer_list<std::int64_t> coords);
  explicit CurveClass(std::span<const std::int64_t> coords);

  std::size_t rank() const noexcept { return rank_; }
  std::int64_t operator[](std::size_t i) const noexcept { return coords_[i]; }
  std::int64_t& operator[](std::size_t i) noexcept { return coords_[i]; }
  std::span<const std::int64_t> coords() const noexcept { return {coords_.data(), rank_}; }
  std::span<std::int64_t> coords() noexcept { return {coords_.data(), rank_}; }

  bool is_zero() const noexcept;

  CurveClass& operator+=(const CurveClass& other);
  CurveClass& operator-=(const CurveClass& other);
  friend CurveClass operator+(CurveClass a, const CurveClass& b) { return a += b; }
  friend CurveClass operator-(CurveClass a, const CurveClass& b) { return a -= b; }
  CurveClass operator-() const;
  friend CurveClass operator*(std::int64_t s, CurveClass a);

  friend bool operator==(const CurveClass&, const CurveClass&) = default;
  friend auto operator<=>(const CurveClass&, const CurveClass&) = default;

 private:
  std::array<std::int64_t, max_rank> coords_{};
  std::uint8_t rank_ = 0;
};

struct CurveClassHash {
  std::size_t operator()(const CurveClass& c) const noexcept;
};

enum class SurfaceKind { p2_blowup, quadric };

/// One element of the ordered H^* basis {1, divisors..., pt}.
struct BasisElement {
  std::string label;
  int degree;  // real cohomological degree: 0, 2 or 4
};

class SurfaceModel {
 public:
  SurfaceKind kind() const noexcept { return kind_; }
  /// Number of blown-up points; 0 for the quadric.
  int blowups() const noexcept { return blowups_; }
  std::size_t rank() const noexcept { return rank_; }

  /// Intersection form on the H_2 basis.
  std::int64_t form(std::size_t i, std::size_t j) const { return pairing_[i * rank_ + j]; }
  const CurveClass& c1() const noexcept { return c1_; }

  const std::vector<BasisElement>& cohomology_basis() const noexcept { return basis_; }
  /// Pairing on the full H^* basis; zero whenever degrees do not sum to 4.
  const std::vector<std::vector<std::int64_t>>& full_pairing() const noexcept { return full_; }
  const std::vector<std::vector<Rational>>& inverse_pairing() const noexcept { return inverse_; }

  /// "p2xK" or "quadric".
  std::string id() const;

  CurveClass zero() const { return CurveClass(rank_); }
  /// L = (1; 0, ..., 0). Blowups only.
  CurveClass line() const;
  /// E_i = (0; ..., -1, ...), i is 1-based. Blowups only.
  CurveClass exceptional(std::size_t i) const;

  friend bool operator==(const SurfaceModel& a, const SurfaceModel& b) {
    return a.kind_ == b.kind_ && a.blowups_ == b.blowups_;
  }

 private:
  friend SurfaceModel make_surface(SurfaceKind kind, int k);

  SurfaceKind kind_ = SurfaceKind::p2_blowup;
  int blowups_ = 0;
  std::size_t rank_ = 0;
  std::vector<std::int64_t> pairing_;
  CurveClass c1_;
  std::vector<BasisElement> basis_;
  std::vector<std::vector<std::int64_t>> full_;
  std::vector<std::vector<Rational>> inverse_;
};

/// Throws ValidationError unless 0 <= k <= 8 (k is ignored for the quadric).
SurfaceModel make_surface(SurfaceKind kind, int k = 0);

/// Accepts "p2", "p2xK" and "quadric".
SurfaceModel parse_surface(std::string_view text);

/// "d;m1,...,mk" for blowups ("3;" when k = 0), "a,b" for the quadric.
std::string format_class(const SurfaceModel& s, const CurveClass& beta);
CurveClass parse_class(const SurfaceModel& s, std::string_view text);

std::int64_t intersect(const SurfaceModel& s, const CurveClass& a, const CurveClass& b);
std::int64_t c1_pairing(const SurfaceModel& s, const CurveClass& beta);

/// Number of point conditions, c1.beta - 1. Negative means no valid count.
std::int64_t delta(const SurfaceModel& s, const CurveClass& beta);

/// (beta.beta - c1.beta + 2) / 2. Throws ConsistencyError on an odd numerator.
std::int64_t arithmetic_genus(const SurfaceModel& s, const CurveClass& beta);

/// Quadratic Cremona move on the first three points. Requires k >= 3.
CurveClass cremona_once(const SurfaceModel& s, const CurveClass& beta);

/// Canonical Weyl-orbit representative: multiplicities sorted descending with
/// Cremona moves applied while m1 + m2 + m3 > d; bidegree sorted a >= b.
CurveClass weyl_normalize(const SurfaceModel& s, const CurveClass& beta);

/// True iff beta lies in the cone of classes that can carry a nonzero
/// genus-0 count.
bool candidate_filter(const SurfaceModel& s, const CurveClass& beta);

/// Ordered splits beta = beta1 + beta2 with both parts nonzero candidates,
/// lexicographically ascending in beta1.
std::vector<std::pair<CurveClass, CurveClass>> decompositions(const SurfaceModel& s,
                                                              const CurveClass& beta);

/// Visits the same splits as decompositions() without materializing them.
void for_each_decomposition(const SurfaceModel& s, const CurveClass& beta,
                            const std::function<void(const CurveClass&, const CurveClass&)>& visit);

/// One split per orbit of the permutations of E_1..E_k that fix beta and every
/// class in `fixed`, with the orbit size as weight. Adjacent equal positions
/// form the permuted blocks, which covers sorted classes completely.
void for_each_decomposition_orbit(const SurfaceModel& s, const CurveClass& beta,
                                  std::span<const CurveClass> fixed,
                                  const std::function<void(const CurveClass&, const CurveClass&, std::int64_t)>& visit);

/// sum_{i,j} g^{ij} (beta.e_i)(beta.e_j) over the full H^* basis, with
/// beta.e = 0 for the degree 0 and 4 basis elements.
Integer pairing_sum_identity(const SurfaceModel& s, const CurveClass& beta);

/// The data of the dimension condition for a genus-g moduli space with k
/// marked constraints alpha_i and l unmarked constraints gamma_j. Degrees are
/// homology degrees (a point has degree 0).
struct DimensionQuery {
  int genus = 0;
  int half_dim = 2;
  std::vector<int> alpha_degs;
  std::vector<int> gamma_degs;
  CurveClass beta;
};

/// Evaluates sum (2m - deg alpha_i) + sum (2m - 2 - deg gamma_j)
///        == 2m(1 - g) + 2 c1.beta.
/// Throws ValidationError on malformed degrees or k + 2g < 3.
bool dimension_check(const DimensionQuery& q, const SurfaceModel& s);

/// Genus one, one marked point, delta - 1 unmarked points.
DimensionQuery genus_one_point_query(const SurfaceModel& s, const CurveClass& beta);

enum class Enumeration { sorted, all };

/// Every class passing candidate_filter with c1.beta <= max_c1, ascending.
/// With Enumeration::sorted only multiplicity-sorted representatives
/// (a >= b on the quadric) are listed.
std::vector<CurveClass> candidate_classes(const SurfaceModel& s, std::int64_t max_c1,
                                          Enumeration mode = Enumeration::all);

}  // namespace dpgw

template <>
struct std::hash<dpgw::CurveClass> : dpgw::CurveClassHash {};

#endif  // DPGW_LATTICE_HPP
