#include "dpgw/verify.hpp"

#include <algorithm>
#include <random>

#include "dpgw/errors.hpp"
#include "dpgw/genus1.hpp"
#include "dpgw/gw0.hpp"
#include "dpgw/lattice.hpp"

namespace dpgw {

namespace {

constexpr std::size_t max_messages = 20;

std::vector<SurfaceModel> blowups(int lo, int hi) {
  std::vector<SurfaceModel> out;
  for (int k = lo; k <= hi; ++k) out.push_back(make_surface(SurfaceKind::p2_blowup, k));
  return out;
}

std::vector<CurveClass> divisor_pool(const SurfaceModel& s) {
  if (s.kind() == SurfaceKind::quadric)
    return {CurveClass{1, 0}, CurveClass{0, 1}, CurveClass{1, 1}, CurveClass{2, 1}, CurveClass{1, 2}};
  std::vector<CurveClass> pool{s.line()};
  const int k = s.blowups();
  for (int i = 1; i <= std::min(k, 2); ++i) pool.push_back(s.exceptional(static_cast<std::size_t>(i)));
  if (k >= 1) pool.push_back(s.line() - s.exceptional(1));  // (1;1,0,...)
  if (k >= 2) pool.push_back(2 * s.line() - s.exceptional(1) - s.exceptional(2));
  pool.push_back(s.c1());
  return pool;
}

std::string where(const SurfaceModel& s, const CurveClass& c) { return s.id() + " " + format_class(s, c); }

SuiteResult p2_oracle(const SuiteOptions& o) {
  SuiteResult r;
  r.name = "p2-oracle";
  const SurfaceModel p2 = make_surface(SurfaceKind::p2_blowup, 0);
  MemoTable memo(p2);
  for (std::int64_t d = 1; d <= o.p2_max_degree; ++d) {
    const Integer got = n0(p2, CurveClass{d}, memo);
    const Integer want = kontsevich_p2(d);
    r.record(got == want, "d=" + std::to_string(d) + ": recursion " + got.str() + " vs oracle " + want.str());
  }
  return r;
}

SuiteResult wdvv_pairs(const SuiteOptions& o) {
  SuiteResult r;
  r.name = "wdvv-pairs";
  std::vector<SurfaceModel> surfaces = blowups(0, 4);
  surfaces.push_back(make_surface(SurfaceKind::quadric));
  for (const SurfaceModel& s : surfaces) {
    MemoTable memo(s);
    const std::vector<CurveClass> pool = divisor_pool(s);
    std::vector<std::pair<CurveClass, CurveClass>> pairs;
    for (const CurveClass& a : pool)
      for (const CurveClass& b : pool)
        if (intersect(s, a, b) != 0) pairs.emplace_back(a, b);
    for (const CurveClass& beta : candidate_classes(s, o.wdvv_max_c1, Enumeration::sorted)) {
      if (delta(s, beta) < 3) continue;
      r.record(consistency_check(s, beta, pairs, memo), where(s, beta) + ": divisor pairs disagree");
    }
  }
  return r;
}

// Raw-mode recursion never merges permuted splits, so these suites keep the
// degree small.
std::vector<CurveClass> invariance_pool(const SurfaceModel& s, const SuiteOptions& o) {
  std::vector<CurveClass> out;
  for (const CurveClass& beta : candidate_classes(s, o.invariance_max_c1, Enumeration::sorted))
    if (beta[0] <= o.invariance_max_degree) out.push_back(beta);
  return out;
}

SuiteResult blowdown(const SuiteOptions& o) {
  SuiteResult r;
  r.name = "blowdown";
  for (int k = 1; k <= 8; ++k) {
    const SurfaceModel small = make_surface(SurfaceKind::p2_blowup, k - 1);
    const SurfaceModel big = make_surface(SurfaceKind::p2_blowup, k);
    MemoTable small_memo(small, KeyMode::raw), big_memo(big, KeyMode::raw);
    for (const CurveClass& beta : invariance_pool(small, o)) {
      if (beta[0] == 0) continue;  // exceptional classes do not extend by a zero
      CurveClass padded(big.rank());
      std::copy(beta.coords().begin(), beta.coords().end(), padded.coords().begin());
      const Integer base = n0(small, beta, small_memo);
      r.record(base == n0(big, padded, big_memo), where(big, padded) + ": blowdown changes n0");
      // A multiplicity-one point is a point condition.
      padded[big.rank() - 1] = 1;
      if (candidate_filter(big, padded))
        r.record(base == n0(big, padded, big_memo), where(big, padded) + ": point condition changes n0");
    }
  }
  return r;
}

SuiteResult weyl(const SuiteOptions& o) {
  SuiteResult r;
  r.name = "weyl";
  std::mt19937_64 rng(o.seed);
  for (const SurfaceModel& s : blowups(2, 8)) {
    MemoTable raw(s, KeyMode::raw), normal(s, KeyMode::weyl);
    for (const CurveClass& beta : invariance_pool(s, o)) {
      const Integer base = n0(s, beta, raw);
      r.record(n0(s, beta, normal) == base, where(s, beta) + ": normal-form lookup disagrees with raw recursion");
      CurveClass shuffled = beta;
      std::shuffle(shuffled.coords().begin() + 1, shuffled.coords().end(), rng);
      r.record(n0(s, shuffled, raw) == base, where(s, beta) + ": permutation changes n0");
      if (s.blowups() >= 3) {
        const CurveClass moved = cremona_once(s, beta);
        r.record(n0(s, moved, raw) == base, where(s, beta) + ": Cremona move changes n0");
      }
    }
  }
  return r;
}

SuiteResult quadric_bl2(const SuiteOptions& o) {
  SuiteResult r;
  r.name = "quadric-bl2";
  const SurfaceModel q = make_surface(SurfaceKind::quadric);
  const SurfaceModel bl2 = make_surface(SurfaceKind::p2_blowup, 2);
  MemoTable qm(q), bm(bl2);
  for (std::int64_t a = 0; a <= o.quadric_max_sum; ++a)
    for (std::int64_t b = 0; a + b <= o.quadric_max_sum; ++b) {
      if (a == 0 && b == 0) continue;
      const Integer lhs = n0(q, CurveClass{a, b}, qm);
      const Integer rhs = n0(bl2, CurveClass{a + b, a, b}, bm);
      r.record(lhs == rhs, "(" + std::to_string(a) + "," + std::to_string(b) + "): quadric " + lhs.str() +
                               " vs Bl2 " + rhs.str());
    }
  return r;
}

SuiteResult pipeline_identity(const SuiteOptions& o) {
  SuiteResult r;
  r.name = "pipeline-identity";
  std::mt19937_64 rng(o.seed);
  std::vector<SurfaceModel> surfaces = blowups(0, 8);
  surfaces.push_back(make_surface(SurfaceKind::quadric));
  std::vector<MemoTable> memos;
  std::vector<std::vector<CurveClass>> pools;
  for (const SurfaceModel& s : surfaces) {
    memos.emplace_back(s);
    pools.push_back(candidate_classes(s, o.pipeline_max_c1, Enumeration::sorted));
  }
  const std::int64_t auts[] = {2, 4, 6};
  for (std::size_t i = 0; i < o.pipeline_samples; ++i) {
    const std::size_t si = i % surfaces.size();
    const SurfaceModel& s = surfaces[si];
    const auto& pool = pools[si];
    CurveClass beta = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
    if (s.kind() == SurfaceKind::p2_blowup)
      std::shuffle(beta.coords().begin() + 1, beta.coords().end(), rng);
    const std::int64_t aut = auts[std::uniform_int_distribution<int>(0, 2)(rng)];
    const Integer n = n0(s, beta, memos[si]);
    r.record(decomposition_identity_check(s, beta, aut, memos[si]),
             where(s, beta) + ": RT1 != aut n1j + CR (aut " + std::to_string(aut) + ")");
    r.record(rt1(s, beta, n) == rt1_via_pairing(s, beta, n), where(s, beta) + ": pairing reduction differs");
  }
  return r;
}

}  // namespace

void SuiteResult::record(bool ok, const std::string& what) {
  ++checks;
  if (ok) return;
  ++failures;
  if (messages.size() < max_messages) messages.push_back(what);
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"p2-oracle", "wdvv-pairs", "blowdown",
                                              "weyl",      "quadric-bl2", "pipeline-identity"};
  return names;
}

SuiteResult run_verify_suite(std::string_view name, const SuiteOptions& options) {
  if (name == "p2-oracle") return p2_oracle(options);
  if (name == "wdvv-pairs") return wdvv_pairs(options);
  if (name == "blowdown") return blowdown(options);
  if (name == "weyl") return weyl(options);
  if (name == "quadric-bl2") return quadric_bl2(options);
  if (name == "pipeline-identity") return pipeline_identity(options);
  throw ValidationError("unknown verify suite \"" + std::string(name) + "\"");
}

}  // namespace dpgw
