#include <omp.h>

#include <array>
#include <functional>
#include <random>
#include <set>

#include "doctest.h"
#include "dpgw/gw0.hpp"
#include "gw0_kernel.hpp"
#include "support.hpp"

using namespace dpgw;
using dpgw::testing::all_surfaces;
using dpgw::testing::random_candidate;

namespace {

const SurfaceModel P2 = make_surface(SurfaceKind::p2_blowup, 0);
const SurfaceModel Q = make_surface(SurfaceKind::quadric);

SurfaceModel bl(int k) { return make_surface(SurfaceKind::p2_blowup, k); }

Integer count(const SurfaceModel& s, const char* text) {
  MemoTable memo(s);
  return n0(s, parse_class(s, text), memo);
}

}  // namespace

TEST_SUITE("seeds") {
  TEST_CASE("examples") {
    CHECK(base_case(bl(1), CurveClass{0, -1}) == Integer(1));
    CHECK(base_case(P2, CurveClass{1}) == Integer(1));
    CHECK(base_case(bl(5), CurveClass{2, 1, 1, 1, 1, 1}) == Integer(1));
    CHECK(base_case(bl(2), CurveClass{1, 1, 1}) == Integer(1));
    CHECK(base_case(Q, CurveClass{1, 0}) == Integer(1));
    CHECK(base_case(Q, CurveClass{0, 1}) == Integer(1));
    CHECK_FALSE(base_case(P2, CurveClass{2}).has_value());  // delta 5
    CHECK_FALSE(base_case(bl(8), CurveClass{3, 1, 1, 1, 1, 1, 1, 1, 1}).has_value());  // genus 1
    CHECK(base_case(bl(1), CurveClass{2, 2}) == Integer(0));  // outside the filter
  }

  // Below the point guard the seed list and the four-divisor relation are
  // independent routes; they must agree on every class with c1 <= 3.
  TEST_CASE("seed list is complete below the point guard") {
    for (const SurfaceModel& s : all_surfaces()) {
      MemoTable memo(s);
      std::set<CurveClass> normal_forms;
      for (const CurveClass& beta : candidate_classes(s, 3, Enumeration::all)) {
        if (arithmetic_genus(s, beta) != 0) continue;
        CAPTURE(s.id());
        CAPTURE(format_class(s, beta));
        const auto seed = base_case(s, beta);
        REQUIRE(seed.has_value());
        normal_forms.insert(weyl_normalize(s, beta));
        if (delta(s, beta) == 0) {
          // (-1)-curves: self-intersection -1 and c1 = 1
          CHECK(intersect(s, beta, beta) == -1);
          CHECK(*seed == 1);
          continue;
        }
        std::array<CurveClass, 4> q;
        try {
          q = detail::low_delta_divisors(s, beta);
        } catch (const ConsistencyError&) {
          // Only the line of P^2, the rulings of the quadric and the fibre
          // L - E1 of Bl1 have no isolating quadruple: the lattice is too small.
          const CurveClass n = weyl_normalize(s, beta);
          CHECK((n == CurveClass{1} || n == CurveClass{1, 0} || (s.blowups() == 1 && n == CurveClass{1, 1})));
          CHECK(*seed == 1);
          continue;
        }
        const DivisorRelation rel = divisor_wdvv(s, beta, q[0], q[1], q[2], q[3], memo);
        REQUIRE(rel.coefficient != 0);
        CHECK(rel.rhs % rel.coefficient == 0);
        CHECK(rel.rhs / rel.coefficient == *seed);
      }
      CHECK_FALSE(normal_forms.empty());
    }
  }

  TEST_CASE("line counts: (-1)-curves on Bl6, Bl7, Bl8") {
    const std::pair<int, std::size_t> expected[] = {{6, 27}, {7, 56}, {8, 240}};
    for (const auto& [k, lines] : expected) {
      const SurfaceModel s = bl(k);
      MemoTable memo(s);
      std::size_t found = 0;
      for (const CurveClass& beta : candidate_classes(s, 1, Enumeration::all))
        if (intersect(s, beta, beta) == -1 && n0(s, beta, memo) == 1) ++found;
      CHECK(found == lines);
    }
  }
}

TEST_SUITE("relations") {
  TEST_CASE("point relation examples") {
    MemoTable qm(Q), pm(P2);
    CHECK(wdvv_rhs(Q, CurveClass{1, 1}, CurveClass{1, 0}, CurveClass{0, 1}, qm) == 1);
    CHECK(wdvv_rhs(P2, CurveClass{2}, CurveClass{1}, CurveClass{1}, pm) == 1);
    CHECK(wdvv_rhs(P2, CurveClass{3}, CurveClass{1}, CurveClass{1}, pm) == 12);
    CHECK_THROWS_AS(wdvv_rhs(P2, CurveClass{1}, CurveClass{1}, CurveClass{1}, pm), ValidationError);
  }

  TEST_CASE("pruned classes get no contribution from the relation") {
    MemoTable memo(bl(1));
    CHECK(wdvv_rhs(bl(1), CurveClass{2, 2}, bl(1).line(), bl(1).line(), memo) == 0);

    // Every negative-genus class in the multiplicity box with delta >= 3.
    for (int k = 1; k <= 4; ++k) {
      const SurfaceModel s = bl(k);
      MemoTable m(s);
      std::size_t tried = 0;
      for (std::int64_t d = 1; d <= 5; ++d) {
        CurveClass beta(s.rank());
        beta[0] = d;
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
          if (i == s.rank()) {
            if (delta(s, beta) >= 3 && arithmetic_genus(s, beta) < 0) {
              ++tried;
              CAPTURE(format_class(s, beta));
              CHECK(wdvv_rhs(s, beta, s.line(), s.line(), m) == 0);
            }
            return;
          }
          for (std::int64_t v = 0; v <= d; ++v) {
            beta[i] = v;
            rec(i + 1);
          }
        };
        rec(1);
      }
      CHECK(tried > 0);
    }
  }

  TEST_CASE("consistency examples") {
    MemoTable pm(P2), bm(bl(2)), qm(Q);
    const std::vector<std::pair<CurveClass, CurveClass>> p2_pairs{{CurveClass{1}, CurveClass{1}}};
    CHECK(consistency_check(P2, CurveClass{3}, p2_pairs, pm));
    const std::vector<std::pair<CurveClass, CurveClass>> bl2_pairs{{CurveClass{1, 0, 0}, CurveClass{1, 0, 0}},
                                                                    {CurveClass{1, 0, 0}, CurveClass{1, 1, 0}}};
    CHECK(consistency_check(bl(2), CurveClass{3, 1, 1}, bl2_pairs, bm));
    const std::vector<std::pair<CurveClass, CurveClass>> q_pairs{{CurveClass{1, 0}, CurveClass{0, 1}},
                                                                  {CurveClass{1, 1}, CurveClass{1, 1}}};
    CHECK(consistency_check(Q, CurveClass{2, 2}, q_pairs, qm));
    const std::vector<std::pair<CurveClass, CurveClass>> bad{{CurveClass{1, 0}, CurveClass{1, 0}}};
    CHECK_THROWS_AS(consistency_check(Q, CurveClass{2, 2}, bad, qm), ValidationError);
  }

  TEST_CASE("random divisor pairs agree") {
    std::mt19937_64 rng(dpgw::testing::default_seed + 10);
    std::vector<SurfaceModel> surfaces{P2, bl(1), bl(2), bl(3), bl(4), bl(5), Q};
    for (const SurfaceModel& s : surfaces) {
      MemoTable memo(s);
      for (int i = 0; i < 15; ++i) {
        const CurveClass beta = random_candidate(s, rng, 5);
        if (delta(s, beta) < 3) continue;
        std::vector<std::pair<CurveClass, CurveClass>> pairs;
        while (pairs.size() < 3) {
          const CurveClass a = dpgw::testing::random_class(s, rng, 2);
          const CurveClass b = dpgw::testing::random_class(s, rng, 2);
          if (intersect(s, a, b) != 0) pairs.emplace_back(a, b);
        }
        CAPTURE(format_class(s, beta));
        CHECK(consistency_check(s, beta, pairs, memo));
      }
    }
  }

  TEST_CASE("four-divisor relation agrees with the point relation") {
    std::mt19937_64 rng(dpgw::testing::default_seed + 11);
    for (const SurfaceModel& s : {P2, bl(2), bl(4), Q}) {
      MemoTable memo(s);
      for (int i = 0; i < 15; ++i) {
        const CurveClass beta = random_candidate(s, rng, 4);
        if (delta(s, beta) < 1) continue;
        const CurveClass a = dpgw::testing::random_class(s, rng, 2);
        const CurveClass b = dpgw::testing::random_class(s, rng, 2);
        const CurveClass c = dpgw::testing::random_class(s, rng, 2);
        const CurveClass d = dpgw::testing::random_class(s, rng, 2);
        const DivisorRelation rel = divisor_wdvv(s, beta, a, b, c, d, memo);
        CAPTURE(format_class(s, beta));
        CHECK(rel.coefficient * n0(s, beta, memo) == rel.rhs);
      }
    }
  }
}

TEST_SUITE("counts") {
  TEST_CASE("plane curves") {
    CHECK(count(P2, "1;") == 1);
    CHECK(count(P2, "2;") == 1);
    CHECK(count(P2, "3;") == 12);
    CHECK(count(P2, "4;") == 620);
    CHECK(count(P2, "5;") == 87304);
    CHECK(count(P2, "6;") == Integer("26312976"));
    CHECK(count(P2, "7;") == Integer("14616808192"));
    CHECK(count(P2, "8;") == Integer("13525751027392"));
  }

  TEST_CASE("oracle") {
    CHECK(kontsevich_p2(1) == 1);
    CHECK(kontsevich_p2(2) == 1);
    CHECK(kontsevich_p2(3) == 12);
    CHECK_THROWS_AS(kontsevich_p2(0), ValidationError);
    CHECK_THROWS_AS(kontsevich_p2(-2), ValidationError);
    MemoTable memo(P2);
    for (std::int64_t d = 1; d <= 12; ++d) CHECK(n0(P2, CurveClass{d}, memo) == kontsevich_p2(d));
  }

  TEST_CASE("blowups and the quadric") {
    CHECK(count(bl(2), "1;1,1") == 1);
    CHECK(count(bl(1), "3;1") == 12);
    CHECK(count(bl(1), "2;2") == 0);
    CHECK(count(bl(8), "3;1,1,1,1,1,1,1,1") == 12);
    CHECK(count(bl(8), "6;2,2,2,2,2,2,2,2") == 90);
    CHECK(count(bl(8), "4;2,1,1,1,1,1,1,0") == 96);
    CHECK(count(Q, "1,1") == 1);
    CHECK(count(Q, "2,2") == 12);
    CHECK(count(Q, "2,3") == 96);
    CHECK(count(Q, "3,3") == 3510);
    CHECK(count(Q, "2,0") == 0);
    CHECK(count(P2, "0;") == 0);
    CHECK(count(bl(3), "-1;0,0,0") == 0);
  }

  TEST_CASE("counts are nonnegative and keys are normal forms") {
    for (const SurfaceModel& s : all_surfaces()) {
      MemoTable memo(s);
      for (const CurveClass& beta : candidate_classes(s, 8, Enumeration::sorted)) CHECK(n0(s, beta, memo) >= 0);
      for (const auto& [key, value] : memo.entries()) {
        CHECK(weyl_normalize(s, key) == key);
        CHECK(value >= 0);
      }
    }
  }
}

TEST_SUITE("invariance, unnormalized recursion") {
  TEST_CASE("permutations and Cremona moves") {
    std::mt19937_64 rng(dpgw::testing::default_seed + 12);
    for (int k = 2; k <= 8; ++k) {
      const SurfaceModel s = bl(k);
      MemoTable raw(s, KeyMode::raw), normal(s);
      for (int i = 0; i < 20; ++i) {
        const CurveClass beta = random_candidate(s, rng, 6);
        CAPTURE(format_class(s, beta));
        const Integer base = n0(s, beta, raw);
        CHECK(base == n0(s, beta, normal));
        CHECK(n0(s, dpgw::testing::shuffled(beta, rng), raw) == base);
        if (k >= 3) CHECK(n0(s, cremona_once(s, beta), raw) == base);
      }
      for (const auto& [key, value] : raw.entries()) CHECK(value == n0(s, key, normal));
    }
  }

  TEST_CASE("blowdown of a trailing zero") {
    std::mt19937_64 rng(dpgw::testing::default_seed + 13);
    for (int k = 1; k <= 8; ++k) {
      const SurfaceModel small = bl(k - 1), big = bl(k);
      MemoTable sm(small, KeyMode::raw), bm(big, KeyMode::raw);
      for (int i = 0; i < 20; ++i) {
        const CurveClass beta = random_candidate(small, rng, 6);
        if (beta[0] == 0) continue;
        CurveClass padded(big.rank());
        std::copy(beta.coords().begin(), beta.coords().end(), padded.coords().begin());
        CHECK(n0(small, beta, sm) == n0(big, padded, bm));
      }
    }
  }

  TEST_CASE("quadric and Bl2") {
    MemoTable qm(Q), bm(bl(2));
    for (std::int64_t a = 0; a <= 8; ++a)
      for (std::int64_t b = 0; a + b <= 8; ++b) {
        if (a == 0 && b == 0) continue;
        CAPTURE(a);
        CAPTURE(b);
        CHECK(n0(Q, CurveClass{a, b}, qm) == n0(bl(2), CurveClass{a + b, a, b}, bm));
      }
  }
}

TEST_SUITE("evaluators") {
  TEST_CASE("parallel evaluation fills the same table as the serial one") {
    for (const SurfaceModel& s : {P2, bl(3), bl(6), bl(8), Q}) {
      const auto classes = candidate_classes(s, 10, Enumeration::sorted);
      MemoTable serial(s);
      std::vector<Integer> expected;
      for (const CurveClass& c : classes) expected.push_back(n0(s, c, serial));
      for (int threads : {1, 2, 4}) {
        omp_set_num_threads(threads);
        MemoTable parallel(s);
        CHECK(n0_parallel(s, classes, parallel) == expected);
        CHECK(parallel == serial);
      }
    }
    omp_set_num_threads(1);
    MemoTable raw_serial(bl(4), KeyMode::raw), raw_parallel(bl(4), KeyMode::raw);
    const auto classes = candidate_classes(bl(4), 8, Enumeration::all);
    for (const CurveClass& c : classes) n0(bl(4), c, raw_serial);
    n0_parallel(bl(4), classes, raw_parallel);
    CHECK(raw_parallel == raw_serial);
  }

  TEST_CASE("parallel evaluation reuses a partly filled table") {
    MemoTable partial(P2), full(P2);
    n0(P2, CurveClass{4}, partial);
    CHECK(n0_parallel(P2, CurveClass{7}, partial) == n0(P2, CurveClass{7}, full));
    CHECK(partial == full);
  }
}

TEST_SUITE("memo table") {
  TEST_CASE("insert rules") {
    MemoTable memo(P2);
    memo.insert(CurveClass{3}, 12);
    CHECK_NOTHROW(memo.insert(CurveClass{3}, 12));
    CHECK_THROWS_AS(memo.insert(CurveClass{3}, 13), ConsistencyError);
    CHECK_THROWS_AS(memo.insert(CurveClass{4}, -1), ConsistencyError);
    CHECK(memo.size() == 1);
    CHECK(memo.find(CurveClass{3}) == Integer(12));
    CHECK_FALSE(memo.find(CurveClass{5}).has_value());
    CHECK(memo.hits() == 1);
    CHECK(memo.misses() == 1);
  }

  TEST_CASE("keys") {
    MemoTable weyl(bl(3)), raw(bl(3), KeyMode::raw);
    CHECK(weyl.key_for(bl(3), CurveClass{1, 1, 1, 0}) == CurveClass{0, 0, 0, -1});
    CHECK(raw.key_for(bl(3), CurveClass{1, 1, 1, 0}) == CurveClass{1, 1, 1, 0});
    CHECK(weyl.surface_id() == "p2x3");
  }

  TEST_CASE("surface mismatch") {
    MemoTable memo(P2);
    CHECK_THROWS_AS(n0(bl(1), CurveClass{1, 0}, memo), ValidationError);
    CHECK_THROWS_AS(n0_parallel(bl(1), CurveClass{1, 0}, memo), ValidationError);
  }

  TEST_CASE("copies compare equal") {
    MemoTable memo(Q);
    n0(Q, CurveClass{3, 2}, memo);
    MemoTable copy = memo;
    CHECK(copy == memo);
    copy.insert(CurveClass{9, 9}, 0);
    CHECK_FALSE(copy == memo);
  }
}
