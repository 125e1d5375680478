#include "dpgw/gw0.hpp"

#include <algorithm>
#include <mutex>

#include "gw0_kernel.hpp"

namespace dpgw {

namespace {

void require_surface(const SurfaceModel& s, const MemoTable& memo) {
  if (s.id() != memo.surface_id())
    throw ValidationError("memo table belongs to " + memo.surface_id() + ", not " + s.id());
}

}  // namespace

// ---------------------------------------------------------------------------
// MemoTable

MemoTable::MemoTable(const SurfaceModel& s, KeyMode mode) : surface_id_(s.id()), mode_(mode) {}

MemoTable::MemoTable(const MemoTable& other) : surface_id_(other.surface_id_), mode_(other.mode_) {
  std::shared_lock lock(other.mutex_);
  values_ = other.values_;
  hits_ = other.hits_.load();
  misses_ = other.misses_.load();
}

MemoTable& MemoTable::operator=(const MemoTable& other) {
  if (this == &other) return *this;
  std::unique_lock mine(mutex_, std::defer_lock);
  std::shared_lock theirs(other.mutex_, std::defer_lock);
  std::lock(mine, theirs);
  surface_id_ = other.surface_id_;
  mode_ = other.mode_;
  values_ = other.values_;
  hits_ = other.hits_.load();
  misses_ = other.misses_.load();
  return *this;
}

CurveClass MemoTable::key_for(const SurfaceModel& s, const CurveClass& beta) const {
  return mode_ == KeyMode::weyl ? weyl_normalize(s, beta) : beta;
}

std::optional<Integer> MemoTable::find(const CurveClass& key) const {
  std::shared_lock lock(mutex_);
  auto it = values_.find(key);
  if (it == values_.end()) {
    ++misses_;
    return std::nullopt;
  }
  ++hits_;
  return it->second;
}

bool MemoTable::contains(const CurveClass& key) const {
  std::shared_lock lock(mutex_);
  return values_.contains(key);
}

void MemoTable::insert(const CurveClass& key, Integer value) {
  if (value < 0) throw ConsistencyError("negative count " + value.str() + " offered to the memo table");
  std::unique_lock lock(mutex_);
  auto [it, inserted] = values_.try_emplace(key, std::move(value));
  if (!inserted && it->second != value)
    throw ConsistencyError("memo entry changed: " + it->second.str() + " vs " + value.str());
}

std::size_t MemoTable::size() const {
  std::shared_lock lock(mutex_);
  return values_.size();
}

std::vector<std::pair<CurveClass, Integer>> MemoTable::entries() const {
  std::vector<std::pair<CurveClass, Integer>> out;
  {
    std::shared_lock lock(mutex_);
    out.assign(values_.begin(), values_.end());
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

bool operator==(const MemoTable& a, const MemoTable& b) {
  if (&a == &b) return true;
  if (a.surface_id_ != b.surface_id_ || a.mode_ != b.mode_) return false;
  std::shared_lock la(a.mutex_, std::defer_lock);
  std::shared_lock lb(b.mutex_, std::defer_lock);
  std::lock(la, lb);
  return a.values_ == b.values_;
}

// ---------------------------------------------------------------------------
// Serial reference

Integer n0(const SurfaceModel& s, const CurveClass& beta, MemoTable& memo) {
  require_surface(s, memo);
  if (!candidate_filter(s, beta)) return 0;
  const CurveClass key = memo.key_for(s, beta);
  if (auto hit = memo.find(key)) return *hit;
  Integer value = detail::evaluate(s, key, [&](const CurveClass& part) { return n0(s, part, memo); },
                                  memo.mode() == KeyMode::weyl);
  memo.insert(key, value);
  return value;
}

Integer wdvv_rhs(const SurfaceModel& s, const CurveClass& beta, const CurveClass& a, const CurveClass& b,
                 MemoTable& memo) {
  require_surface(s, memo);
  return detail::sum_terms(detail::point_terms(s, beta, a, b, memo.mode() == KeyMode::weyl),
                           [&](const CurveClass& part) { return n0(s, part, memo); });
}

DivisorRelation divisor_wdvv(const SurfaceModel& s, const CurveClass& beta, const CurveClass& a,
                             const CurveClass& b, const CurveClass& c, const CurveClass& d, MemoTable& memo) {
  require_surface(s, memo);
  detail::DivisorTerms rel = detail::divisor_terms(s, beta, a, b, c, d, memo.mode() == KeyMode::weyl);
  Integer rhs = detail::sum_terms(rel.terms, [&](const CurveClass& part) { return n0(s, part, memo); });
  return {std::move(rel.coefficient), std::move(rhs)};
}

bool consistency_check(const SurfaceModel& s, const CurveClass& beta,
                       std::span<const std::pair<CurveClass, CurveClass>> pairs, MemoTable& memo) {
  const Integer expected = n0(s, beta, memo);
  for (const auto& [a, b] : pairs) {
    const std::int64_t ab = intersect(s, a, b);
    if (ab == 0)
      throw ValidationError("divisor pair " + format_class(s, a) + " / " + format_class(s, b) + " has A.B = 0");
    const Integer rhs = wdvv_rhs(s, beta, a, b, memo);
    if (rhs % ab != 0 || rhs / ab != expected) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Plane-curve oracle

namespace {

Integer choose(std::int64_t n, std::int64_t r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  Integer c = 1;
  for (std::int64_t i = 1; i <= r; ++i) c = c * (n - r + i) / i;
  return c;
}

}  // namespace

Integer kontsevich_p2(std::int64_t d) {
  if (d <= 0) throw ValidationError("plane curve degree must be positive, got " + std::to_string(d));
  std::vector<Integer> n(static_cast<std::size_t>(d) + 1, 0);
  n[1] = 1;
  for (std::int64_t e = 2; e <= d; ++e) {
    Integer sum = 0;
    for (std::int64_t d1 = 1; d1 < e; ++d1) {
      const std::int64_t d2 = e - d1;
      sum += n[d1] * n[d2] *
             (Integer(d1 * d1 * d2 * d2) * choose(3 * e - 4, 3 * d1 - 2) -
              Integer(d1 * d1 * d1 * d2) * choose(3 * e - 4, 3 * d1 - 1));
    }
    n[e] = sum;
  }
  return n[d];
}

}  // namespace dpgw
