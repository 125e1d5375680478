#include "dpgw/lattice.hpp"

#include <charconv>
#include <limits>
#include <numeric>

namespace dpgw {

namespace {

void check_rank(std::size_t rank) {
  if (rank > CurveClass::max_rank)
    throw DimensionError("class rank " + std::to_string(rank) + " exceeds " +
                         std::to_string(CurveClass::max_rank));
}

void require_rank(const SurfaceModel& s, const CurveClass& c) {
  if (c.rank() != s.rank())
    throw DimensionError("class of rank " + std::to_string(c.rank()) + " used on surface " + s.id() +
                         " of rank " + std::to_string(s.rank()));
}

// Gauss-Jordan over the rationals; the matrices here are at most 11 x 11.
std::vector<std::vector<Rational>> invert(const std::vector<std::vector<std::int64_t>>& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
    a[i][n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw ConsistencyError("singular cohomology pairing");
    std::swap(a[pivot], a[col]);
    const Rational p = a[col][col];
    for (auto& x : a[col]) x /= p;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t j = 0; j < 2 * n; ++j) a[r][j] -= f * a[col][j];
    }
  }
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
  return inv;
}

bool is_exceptional_coords(const CurveClass& beta) {
  if (beta[0] != 0) return false;
  int minus_ones = 0;
  for (std::size_t i = 1; i < beta.rank(); ++i) {
    if (beta[i] == -1)
      ++minus_ones;
    else if (beta[i] != 0)
      return false;
  }
  return minus_ones == 1;
}

// Smallest sum of squares of `slots` nonnegative integers adding up to total.
std::int64_t min_square_sum(std::int64_t total, std::int64_t slots) {
  if (total <= 0) return 0;
  if (slots <= 0) return std::numeric_limits<std::int64_t>::max() / 4;
  const std::int64_t q = total / slots, rem = total % slots;
  return rem * (q + 1) * (q + 1) + (slots - rem) * q * q;
}

void sort_multiplicities(CurveClass& beta) {
  auto c = beta.coords();
  std::sort(c.begin() + 1, c.end(), std::greater<>());
}

std::int64_t parse_int(std::string_view tok, std::string_view whole) {
  std::int64_t v = 0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  // from_chars accepts a leading '-' but not '+', which is what we want.
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (tok.empty() || ec != std::errc() || ptr != last)
    throw ValidationError("malformed class string \"" + std::string(whole) + "\"");
  return v;
}

std::vector<std::int64_t> parse_list(std::string_view list, std::string_view whole) {
  std::vector<std::int64_t> out;
  if (list.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = list.find(',', start);
    out.push_back(parse_int(list.substr(start, comma - start), whole));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// CurveClass

CurveClass::CurveClass(std::size_t rank) : rank_(static_cast<std::uint8_t>(rank)) { check_rank(rank); }

CurveClass::CurveClass(std::initializer_list<std::int64_t> coords)
    : CurveClass(std::span<const std::int64_t>(coords.begin(), coords.size())) {}

CurveClass::CurveClass(std::span<const std::int64_t> coords) : rank_(static_cast<std::uint8_t>(coords.size())) {
  check_rank(coords.size());
  std::copy(coords.begin(), coords.end(), coords_.begin());
}

bool CurveClass::is_zero() const noexcept {
  return std::all_of(coords_.begin(), coords_.begin() + rank_, [](std::int64_t v) { return v == 0; });
}

CurveClass& CurveClass::operator+=(const CurveClass& other) {
  if (other.rank_ != rank_) throw DimensionError("adding classes of different rank");
  for (std::size_t i = 0; i < rank_; ++i) coords_[i] += other.coords_[i];
  return *this;
}

CurveClass& CurveClass::operator-=(const CurveClass& other) {
  if (other.rank_ != rank_) throw DimensionError("subtracting classes of different rank");
  for (std::size_t i = 0; i < rank_; ++i) coords_[i] -= other.coords_[i];
  return *this;
}

CurveClass CurveClass::operator-() const {
  CurveClass r = *this;
  for (std::size_t i = 0; i < rank_; ++i) r.coords_[i] = -r.coords_[i];
  return r;
}

CurveClass operator*(std::int64_t s, CurveClass a) {
  for (auto& v : a.coords()) v *= s;
  return a;
}

std::size_t CurveClassHash::operator()(const CurveClass& c) const noexcept {
  std::size_t h = c.rank();
  for (std::int64_t v : c.coords()) h = h * 1000003u ^ static_cast<std::size_t>(v + 0x9e3779b9);
  return h;
}

// ---------------------------------------------------------------------------
// SurfaceModel

SurfaceModel make_surface(SurfaceKind kind, int k) {
  SurfaceModel s;
  s.kind_ = kind;
  if (kind == SurfaceKind::p2_blowup) {
    if (k < 0 || k > 8)
      throw ValidationError("P^2 blown up at " + std::to_string(k) +
                            " points is not a del-Pezzo surface (need 0 <= k <= 8)");
    s.blowups_ = k;
    s.rank_ = static_cast<std::size_t>(k) + 1;
    s.pairing_.assign(s.rank_ * s.rank_, 0);
    s.pairing_[0] = 1;
    for (std::size_t i = 1; i < s.rank_; ++i) s.pairing_[i * s.rank_ + i] = -1;
    s.c1_ = CurveClass(s.rank_);
    s.c1_[0] = 3;
    for (std::size_t i = 1; i < s.rank_; ++i) s.c1_[i] = 1;
  } else {
    s.blowups_ = 0;
    s.rank_ = 2;
    s.pairing_ = {0, 1, 1, 0};
    s.c1_ = CurveClass{2, 2};
  }

  s.basis_.push_back({"1", 0});
  if (kind == SurfaceKind::p2_blowup) {
    s.basis_.push_back({"L", 2});
    for (int i = 1; i <= s.blowups_; ++i) s.basis_.push_back({"E" + std::to_string(i), 2});
  } else {
    s.basis_.push_back({"F1", 2});
    s.basis_.push_back({"F2", 2});
  }
  s.basis_.push_back({"pt", 4});

  // The divisor basis above is L, E_1, ..., E_k (resp. F_1, F_2); its Gram
  // matrix coincides with the coordinate form since E_i = -(unit vector).
  const std::size_t n = s.rank_ + 2;
  s.full_.assign(n, std::vector<std::int64_t>(n, 0));
  s.full_[0][n - 1] = 1;
  s.full_[n - 1][0] = 1;
  for (std::size_t i = 0; i < s.rank_; ++i)
    for (std::size_t j = 0; j < s.rank_; ++j) s.full_[i + 1][j + 1] = s.form(i, j);
  s.inverse_ = invert(s.full_);
  return s;
}

SurfaceModel parse_surface(std::string_view text) {
  if (text == "quadric") return make_surface(SurfaceKind::quadric);
  if (text == "p2") return make_surface(SurfaceKind::p2_blowup, 0);
  if (text.starts_with("p2x")) {
    const std::string_view digits = text.substr(3);
    int k = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (!digits.empty() && ec == std::errc() && ptr == digits.data() + digits.size())
      return make_surface(SurfaceKind::p2_blowup, k);
  }
  throw ValidationError("unknown surface \"" + std::string(text) + "\" (expected p2, p2xK or quadric)");
}

std::string SurfaceModel::id() const {
  if (kind_ == SurfaceKind::quadric) return "quadric";
  return "p2x" + std::to_string(blowups_);
}

CurveClass SurfaceModel::line() const {
  if (kind_ != SurfaceKind::p2_blowup) throw ValidationError("the quadric has no line class");
  CurveClass l(rank_);
  l[0] = 1;
  return l;
}

CurveClass SurfaceModel::exceptional(std::size_t i) const {
  if (kind_ != SurfaceKind::p2_blowup || i < 1 || i >= rank_)
    throw ValidationError("no exceptional class E" + std::to_string(i) + " on " + id());
  CurveClass e(rank_);
  e[i] = -1;
  return e;
}

// ---------------------------------------------------------------------------
// Class strings

std::string format_class(const SurfaceModel& s, const CurveClass& beta) {
  require_rank(s, beta);
  std::string out;
  if (s.kind() == SurfaceKind::quadric) return std::to_string(beta[0]) + "," + std::to_string(beta[1]);
  out = std::to_string(beta[0]) + ";";
  for (std::size_t i = 1; i < beta.rank(); ++i) {
    if (i > 1) out += ',';
    out += std::to_string(beta[i]);
  }
  return out;
}

CurveClass parse_class(const SurfaceModel& s, std::string_view text) {
  std::vector<std::int64_t> coords;
  if (s.kind() == SurfaceKind::quadric) {
    if (text.find(';') != std::string_view::npos)
      throw ValidationError("quadric classes are written \"a,b\", got \"" + std::string(text) + "\"");
    coords = parse_list(text, text);
    if (text.empty()) coords.clear();
  } else {
    const std::size_t semi = text.find(';');
    if (semi == std::string_view::npos || text.find(';', semi + 1) != std::string_view::npos)
      throw ValidationError("blowup classes are written \"d;m1,...,mk\", got \"" + std::string(text) + "\"");
    coords.push_back(parse_int(text.substr(0, semi), text));
    for (std::int64_t m : parse_list(text.substr(semi + 1), text)) coords.push_back(m);
  }
  if (coords.size() != s.rank())
    throw DimensionError("class \"" + std::string(text) + "\" has " + std::to_string(coords.size()) +
                         " coordinates; surface " + s.id() + " needs " + std::to_string(s.rank()));
  return CurveClass(std::span<const std::int64_t>(coords));
}

// ---------------------------------------------------------------------------
// Intersection arithmetic

std::int64_t intersect(const SurfaceModel& s, const CurveClass& a, const CurveClass& b) {
  require_rank(s, a);
  require_rank(s, b);
  if (s.kind() == SurfaceKind::quadric) return a[0] * b[1] + a[1] * b[0];
  std::int64_t v = a[0] * b[0];
  for (std::size_t i = 1; i < a.rank(); ++i) v -= a[i] * b[i];
  return v;
}

std::int64_t c1_pairing(const SurfaceModel& s, const CurveClass& beta) { return intersect(s, s.c1(), beta); }

std::int64_t delta(const SurfaceModel& s, const CurveClass& beta) { return c1_pairing(s, beta) - 1; }

std::int64_t arithmetic_genus(const SurfaceModel& s, const CurveClass& beta) {
  const std::int64_t num = intersect(s, beta, beta) - c1_pairing(s, beta) + 2;
  if (num % 2 != 0)
    throw ConsistencyError("odd genus numerator for class " + format_class(s, beta) + " on " + s.id());
  return num / 2;
}

Integer pairing_sum_identity(const SurfaceModel& s, const CurveClass& beta) {
  require_rank(s, beta);
  const auto& basis = s.cohomology_basis();
  const std::size_t n = basis.size();
  std::vector<std::int64_t> v(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (basis[i].degree != 2) continue;
    CurveClass e(s.rank());
    if (s.kind() == SurfaceKind::p2_blowup)
      e = i == 1 ? s.line() : s.exceptional(i - 1);
    else
      e[i - 1] = 1;
    v[i] = intersect(s, beta, e);
  }
  Rational sum = 0;
  const auto& inv = s.inverse_pairing();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (v[i] != 0 && v[j] != 0) sum += inv[i][j] * v[i] * v[j];
  if (!is_integral(sum)) throw ConsistencyError("non-integral pairing sum for " + format_class(s, beta));
  return boost::multiprecision::numerator(sum);
}

// ---------------------------------------------------------------------------
// Weyl moves

CurveClass cremona_once(const SurfaceModel& s, const CurveClass& beta) {
  require_rank(s, beta);
  if (s.kind() != SurfaceKind::p2_blowup || s.blowups() < 3)
    throw ValidationError("Cremona moves need at least three blown-up points; surface is " + s.id());
  const std::int64_t d = beta[0], m1 = beta[1], m2 = beta[2], m3 = beta[3];
  CurveClass out = beta;
  out[0] = 2 * d - m1 - m2 - m3;
  out[1] = d - m2 - m3;
  out[2] = d - m1 - m3;
  out[3] = d - m1 - m2;
  return out;
}

CurveClass weyl_normalize(const SurfaceModel& s, const CurveClass& beta) {
  require_rank(s, beta);
  CurveClass out = beta;
  if (s.kind() == SurfaceKind::quadric) {
    if (out[0] < out[1]) std::swap(out[0], out[1]);
    return out;
  }
  // d strictly drops with every move and the orbit is finite for k <= 8.
  for (int guard = 0; guard < 100000; ++guard) {
    sort_multiplicities(out);
    if (s.blowups() < 3 || out[1] + out[2] + out[3] <= out[0]) return out;
    out = cremona_once(s, out);
  }
  throw ConsistencyError("Weyl normalization did not terminate for " + format_class(s, beta));
}

// ---------------------------------------------------------------------------
// Candidate cone and splittings

bool candidate_filter(const SurfaceModel& s, const CurveClass& beta) {
  require_rank(s, beta);
  if (s.kind() == SurfaceKind::quadric) {
    if (beta[0] < 0 || beta[1] < 0 || beta.is_zero()) return false;
  } else {
    const std::int64_t d = beta[0];
    if (d == 0) return is_exceptional_coords(beta);
    if (d < 0) return false;
    for (std::size_t i = 1; i < beta.rank(); ++i)
      if (beta[i] < 0 || beta[i] > d) return false;
  }
  return delta(s, beta) >= 0 && arithmetic_genus(s, beta) >= 0;
}

namespace {

using WeightedVisit = std::function<void(const CurveClass&, const CurveClass&, std::int64_t)>;

// Splits of beta with multiplicities non-increasing inside each block of
// positions (block_start[i] marks the first position of a block). Each split
// is reported with the number of block-wise rearrangements of its first part.
void decompose(const SurfaceModel& s, const CurveClass& beta, const std::vector<bool>& block_start,
               const WeightedVisit& visit) {
  const auto emit = [&](const CurveClass& b1, std::int64_t weight) {
    const CurveClass b2 = beta - b1;
    if (b1.is_zero() || b2.is_zero()) return;
    if (candidate_filter(s, b1) && candidate_filter(s, b2)) visit(b1, b2, weight);
  };

  if (s.kind() == SurfaceKind::quadric) {
    for (std::int64_t a = 0; a <= beta[0]; ++a)
      for (std::int64_t b = 0; b <= beta[1]; ++b) emit(CurveClass{a, b}, 1);
    return;
  }

  const std::int64_t d = beta[0];
  const std::size_t k = static_cast<std::size_t>(s.blowups());
  const std::int64_t c1_total = c1_pairing(s, beta);
  if (d < 0) return;

  std::vector<std::int64_t> block_size(k + 2, 0);
  for (std::size_t i = 1, first = 1; i <= k; ++i) {
    if (block_start[i]) first = i;
    ++block_size[first];
  }

  // Exceptional parts on either side.
  // (E_j, E_i) is reached from the first emit already.
  for (std::size_t i = 1; i <= k; ++i) {
    if (!block_start[i]) continue;
    emit(s.exceptional(i), block_size[i]);
    const CurveClass rest = beta - s.exceptional(i);
    if (!is_exceptional_coords(rest)) emit(rest, block_size[i]);
  }

  static constexpr std::array<std::int64_t, 9> factorial{1, 1, 2, 6, 24, 120, 720, 5040, 40320};
  const auto orbit_size = [&](const CurveClass& b1) {
    std::int64_t w = 1;
    for (std::size_t i = 1; i <= k; ++i) {
      if (!block_start[i]) continue;
      w *= factorial[static_cast<std::size_t>(block_size[i])];
      std::size_t j = i;
      const std::size_t stop = i + static_cast<std::size_t>(block_size[i]);
      while (j < stop) {
        std::size_t run = 1;
        while (j + run < stop && b1[j + run] == b1[j]) ++run;
        w /= factorial[run];
        j += run;
      }
    }
    return w;
  };

  // Both parts with positive degree. Multiplicities are boxed by
  // 0 <= a_i <= d1 and 0 <= m_i - a_i <= d2, c1 is at least 1 on each side,
  // and genus >= 0 on each side caps the sums of squares:
  //   sum a^2 <= d1^2 - 3 d1 + sum a + 2,  likewise for b = m - a.
  // Partial assignments are cut with the evenly-spread lower bound on the
  // squares still to come.
  CurveClass b1(s.rank());
  std::vector<std::int64_t> lo(k + 2, 0), hi(k + 2, 0), suffix_lo(k + 2, 0), suffix_hi(k + 2, 0),
      suffix_m(k + 2, 0);
  for (std::size_t i = k; i >= 1; --i) suffix_m[i] = suffix_m[i + 1] + beta[i];
  const std::int64_t m_total = suffix_m[1];
  for (std::int64_t d1 = 1; d1 < d; ++d1) {
    const std::int64_t d2 = d - d1;
    bool empty = false;
    for (std::size_t i = 1; i <= k; ++i) {
      lo[i] = std::max<std::int64_t>(0, beta[i] - d2);
      hi[i] = std::min<std::int64_t>(d1, beta[i]);
      if (lo[i] > hi[i]) empty = true;
    }
    if (empty) continue;
    for (std::size_t i = k; i >= 1; --i) {
      suffix_lo[i] = suffix_lo[i + 1] + lo[i];
      suffix_hi[i] = suffix_hi[i + 1] + hi[i];
    }
    // c1(b1) = 3 d1 - sum a in [1, c1_total - 1].
    const std::int64_t sum_min = 3 * d1 - c1_total + 1;
    const std::int64_t sum_max = 3 * d1 - 1;
    if (suffix_lo[1] > sum_max || suffix_hi[1] < sum_min) continue;
    const std::int64_t base1 = d1 * d1 - 3 * d1 + 2;
    const std::int64_t base2 = d2 * d2 - 3 * d2 + 2;
    b1[0] = d1;

    const std::function<void(std::size_t, std::int64_t, std::int64_t, std::int64_t)> fill =
        [&](std::size_t i, std::int64_t partial, std::int64_t sq1, std::int64_t sq2) {
          if (i > k) {
            emit(b1, orbit_size(b1));
            return;
          }
          const std::int64_t rest = static_cast<std::int64_t>(k - i);
          const std::int64_t top = block_start[i] ? hi[i] : std::min(hi[i], b1[i - 1]);
          for (std::int64_t a = lo[i]; a <= top; ++a) {
            const std::int64_t p = partial + a;
            const std::int64_t r_lo = std::max(suffix_lo[i + 1], sum_min - p);
            const std::int64_t r_hi = std::min(suffix_hi[i + 1], sum_max - p);
            if (r_lo > r_hi) {
              if (p + suffix_lo[i + 1] > sum_max) break;
              continue;
            }
            const std::int64_t b = beta[i] - a;
            const std::int64_t s1 = sq1 + a * a;
            const std::int64_t s2 = sq2 + b * b;
            if (s1 + min_square_sum(r_lo, rest) > base1 + p + r_hi) continue;
            if (s2 + min_square_sum(suffix_m[i + 1] - r_hi, rest) > base2 + (m_total - p - r_lo)) continue;
            b1[i] = a;
            fill(i + 1, p, s1, s2);
          }
        };
    fill(1, 0, 0, 0);
  }
}

}  // namespace

void for_each_decomposition(const SurfaceModel& s, const CurveClass& beta,
                            const std::function<void(const CurveClass&, const CurveClass&)>& visit) {
  require_rank(s, beta);
  decompose(s, beta, std::vector<bool>(s.rank() + 1, true),
            [&](const CurveClass& b1, const CurveClass& b2, std::int64_t) { visit(b1, b2); });
}

void for_each_decomposition_orbit(const SurfaceModel& s, const CurveClass& beta,
                                  std::span<const CurveClass> fixed,
                                  const std::function<void(const CurveClass&, const CurveClass&, std::int64_t)>& visit) {
  require_rank(s, beta);
  for (const CurveClass& f : fixed) require_rank(s, f);
  std::vector<bool> block_start(s.rank() + 1, true);
  if (s.kind() == SurfaceKind::p2_blowup)
    for (std::size_t i = 2; i < s.rank(); ++i) {
      bool same = beta[i] == beta[i - 1];
      for (const CurveClass& f : fixed) same = same && f[i] == f[i - 1];
      block_start[i] = !same;
    }
  decompose(s, beta, block_start, visit);
}

std::vector<std::pair<CurveClass, CurveClass>> decompositions(const SurfaceModel& s, const CurveClass& beta) {
  std::vector<std::pair<CurveClass, CurveClass>> out;
  for_each_decomposition(s, beta, [&](const CurveClass& a, const CurveClass& b) { out.emplace_back(a, b); });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Dimension condition

bool dimension_check(const DimensionQuery& q, const SurfaceModel& s) {
  require_rank(s, q.beta);
  if (q.half_dim != 2) throw ValidationError("surfaces have half real dimension 2");
  if (q.genus < 0) throw ValidationError("negative genus");
  const auto valid = [](int deg) { return deg == 0 || deg == 2 || deg == 4; };
  if (!std::all_of(q.alpha_degs.begin(), q.alpha_degs.end(), valid) ||
      !std::all_of(q.gamma_degs.begin(), q.gamma_degs.end(), valid))
    throw ValidationError("constraint degrees must be 0, 2 or 4");
  if (static_cast<std::int64_t>(q.alpha_degs.size()) + 2 * q.genus < 3)
    throw ValidationError("need k + 2g >= 3 marked points");

  const std::int64_t m = q.half_dim;
  std::int64_t lhs = 0;
  for (int deg : q.alpha_degs) lhs += 2 * m - deg;
  for (int deg : q.gamma_degs) lhs += 2 * m - 2 - deg;
  const std::int64_t rhs = 2 * m * (1 - q.genus) + 2 * c1_pairing(s, q.beta);
  return lhs == rhs;
}

DimensionQuery genus_one_point_query(const SurfaceModel& s, const CurveClass& beta) {
  const std::int64_t pts = delta(s, beta);
  if (pts < 1)
    throw ValidationError("class " + format_class(s, beta) + " has delta = " + std::to_string(pts) +
                          "; the genus-one point query needs at least one point");
  DimensionQuery q;
  q.genus = 1;
  q.half_dim = 2;
  q.alpha_degs = {0};
  q.gamma_degs.assign(static_cast<std::size_t>(pts - 1), 0);
  q.beta = beta;
  return q;
}

// ---------------------------------------------------------------------------
// Enumeration

std::vector<CurveClass> candidate_classes(const SurfaceModel& s, std::int64_t max_c1, Enumeration mode) {
  std::vector<CurveClass> out;
  if (max_c1 < 1) return out;

  if (s.kind() == SurfaceKind::quadric) {
    for (std::int64_t a = 0; 2 * a <= max_c1; ++a)
      for (std::int64_t b = 0; 2 * (a + b) <= max_c1; ++b) {
        if (mode == Enumeration::sorted && a < b) continue;
        const CurveClass c{a, b};
        if (candidate_filter(s, c)) out.push_back(c);
      }
    std::sort(out.begin(), out.end());
    return out;
  }

  const std::size_t k = static_cast<std::size_t>(s.blowups());
  if (k == 0) {
    for (std::int64_t d = 1; 3 * d <= max_c1; ++d) out.push_back(CurveClass{d});
    return out;
  }

  // Exceptional curves E_i have c1 = 1.
  if (mode == Enumeration::all) {
    for (std::size_t i = 1; i <= k; ++i) out.push_back(s.exceptional(i));
  } else {
    out.push_back(s.exceptional(k));
  }

  // For d >= 1 we need sum m = 3d - c and sum m^2 <= d^2 - c + 2 (genus >= 0).
  // Spreading the multiplicities evenly bounds d by roughly 6 c for k <= 8.
  const std::int64_t ki = static_cast<std::int64_t>(k);
  CurveClass beta(s.rank());
  std::vector<CurveClass> sorted_forms;
  for (std::int64_t d = 1; d <= 6 * max_c1 + 6; ++d) {
    beta[0] = d;
    for (std::int64_t c = 1; c <= max_c1; ++c) {
      const std::int64_t sum = 3 * d - c;
      const std::int64_t sq_budget = d * d - c + 2;
      if (sum < 0 || sum > ki * d || sq_budget < 0) continue;
      if (ki * sq_budget < sum * sum) continue;  // Cauchy-Schwarz
      const std::function<void(std::size_t, std::int64_t, std::int64_t, std::int64_t)> fill =
          [&](std::size_t i, std::int64_t cap, std::int64_t left, std::int64_t sq_left) {
            if (i > k) {
              if (left == 0) sorted_forms.push_back(beta);
              return;
            }
            const std::int64_t slots = ki - static_cast<std::int64_t>(i) + 1;
            for (std::int64_t m = std::min(cap, left); m >= 0; --m) {
              if (m * slots < left) break;
              const std::int64_t rest = left - m;
              if (m * m > sq_left) continue;
              // Minimum sum of squares for the rest, spread evenly over slots - 1.
              if (slots > 1) {
                const std::int64_t r = slots - 1;
                const std::int64_t q = rest / r, rem = rest % r;
                if (m * m + rem * (q + 1) * (q + 1) + (r - rem) * q * q > sq_left) continue;
              }
              beta[i] = m;
              fill(i + 1, m, rest, sq_left - m * m);
            }
            beta[i] = 0;
          };
      fill(1, d, sum, sq_budget);
    }
  }

  for (const CurveClass& f : sorted_forms) {
    if (!candidate_filter(s, f)) continue;
    if (mode == Enumeration::sorted) {
      out.push_back(f);
      continue;
    }
    CurveClass p = f;
    auto c = p.coords();
    std::sort(c.begin() + 1, c.end());
    do {
      out.push_back(p);
    } while (std::next_permutation(c.begin() + 1, c.end()));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace dpgw
