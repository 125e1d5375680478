#include <random>

#include "doctest.h"
#include "dpgw/genus1.hpp"
#include "support.hpp"

using namespace dpgw;
using dpgw::testing::all_surfaces;

namespace {

const SurfaceModel P2 = make_surface(SurfaceKind::p2_blowup, 0);
const SurfaceModel Q = make_surface(SurfaceKind::quadric);

SurfaceModel bl(int k) { return make_surface(SurfaceKind::p2_blowup, k); }

}  // namespace

TEST_CASE("correction term") {
  CHECK(correction_term(P2, CurveClass{3}, 12) == 84);
  CHECK(correction_term(P2, CurveClass{1}, 1) == 1);
  CHECK(correction_term(bl(8), CurveClass{3, 1, 1, 1, 1, 1, 1, 1, 1}, 12) == -12);
}

TEST_CASE("RT1 and its pairing reduction") {
  CHECK(rt1(P2, CurveClass{3}, 12) == 108);
  CHECK(rt1(P2, CurveClass{1}, 1) == 1);
  CHECK(rt1(Q, CurveClass{1, 1}, 1) == 2);
  CHECK(rt1_via_pairing(P2, CurveClass{3}, 12) == 108);
  CHECK(rt1_via_pairing(bl(2), CurveClass{1, 1, 1}, 1) == -1);
  CHECK(rt1_via_pairing(Q, CurveClass{2, 0}, 0) == 0);
}

TEST_CASE("RT0 with two divisors") {
  CHECK(rt0_with_divisors(P2, CurveClass{3}, CurveClass{1}, CurveClass{1}, 12) == 108);
  CHECK(rt0_with_divisors(bl(3), CurveClass{4, 2, 1, 0}, CurveClass{1, 0, 0, 0}, CurveClass{1, 0, 0, 0}, 0) == 0);
  CHECK(rt0_with_divisors(bl(1), CurveClass{1, 1}, CurveClass{1, 0}, CurveClass{0, -1}, 1) == 1);
}

TEST_CASE("automorphism orders") {
  CHECK(aut_order(AutPreset::generic) == 2);
  CHECK(aut_order(AutPreset::j1728) == 4);
  CHECK(aut_order(AutPreset::j0) == 6);
  CHECK(aut_order(2) == 2);
  CHECK(aut_order(7) == 7);
  CHECK_THROWS_AS(aut_order(0), ValidationError);
  CHECK_THROWS_AS(aut_order(-4), ValidationError);
  CHECK(parse_aut("generic") == 2);
  CHECK(parse_aut("j1728") == 4);
  CHECK(parse_aut("j0") == 6);
  CHECK(parse_aut("3") == 3);
  CHECK_THROWS_AS(parse_aut("0"), ValidationError);
  CHECK_THROWS_AS(parse_aut(""), ValidationError);
  CHECK_THROWS_AS(parse_aut("2x"), ValidationError);
  CHECK_THROWS_AS(parse_aut("J0"), ValidationError);
}

TEST_CASE("fixed-j counts") {
  MemoTable p2(P2);
  CHECK(n1j(P2, CurveClass{3}, 2, p2).value == 12);
  CHECK(n1j(P2, CurveClass{4}, 2, p2).value == 1860);
  CHECK(n1j(P2, CurveClass{3}, 4, p2).value == 6);
  CHECK(n1j(P2, CurveClass{3}, 6, p2).value == 4);
  // 2 * 3 * 620 / 4 = 930, 2 * 3 * 620 / 6 = 620
  CHECK(n1j(P2, CurveClass{4}, 4, p2).value == 930);
  CHECK(n1j(P2, CurveClass{4}, 6, p2).value == 620);
  MemoTable b1(bl(1));
  for (std::int64_t aut : {1, 2, 4, 6}) CHECK(n1j(bl(1), CurveClass{0, -1}, aut, b1).value == 0);
  CHECK_THROWS_AS(n1j(P2, CurveClass{3}, 0, p2), ValidationError);
}

TEST_CASE("non-integral values are kept exact") {
  // Quadric (2,2): g = 1, n0 = 12, 2 * 12 / 5 = 24/5.
  MemoTable q(Q);
  const N1jResult r = n1j(Q, CurveClass{2, 2}, 5, q);
  CHECK(r.value == Rational(24, 5));
  CHECK_FALSE(r.report.n1j_is_integral());
  CHECK(to_string(r.value) == "24/5");
  CHECK(r.report.identity_holds());
}

TEST_CASE("report fields") {
  MemoTable p2(P2);
  const GenusOneReport r = n1j(P2, CurveClass{3}, 2, p2).report;
  CHECK(r.beta == CurveClass{3});
  CHECK(r.delta == 8);
  CHECK(r.genus == 1);
  CHECK(r.n0 == 12);
  CHECK(r.correction == 84);
  CHECK(r.rt1 == 108);
  CHECK(r.aut_order == 2);
  CHECK(r.n1j == 12);
  CHECK(r.n1j_is_integral());
  CHECK(r.identity_holds());
  GenusOneReport broken = r;
  broken.rt1 += 1;
  CHECK_FALSE(broken.identity_holds());
}

TEST_CASE("decomposition identity examples") {
  MemoTable p2(P2), q(Q);
  CHECK(decomposition_identity_check(P2, CurveClass{3}, 2, p2));
  CHECK(decomposition_identity_check(P2, CurveClass{1}, 2, p2));
  CHECK(decomposition_identity_check(Q, CurveClass{2, 0}, 4, q));
}

TEST_CASE("identity, pairing reduction, integrality and sign on random classes") {
  std::mt19937_64 rng(dpgw::testing::default_seed + 20);
  for (const SurfaceModel& s : all_surfaces()) {
    MemoTable memo(s);
    for (int i = 0; i < 30; ++i) {
      const CurveClass beta = dpgw::testing::random_candidate(s, rng, s.rank() > 6 ? 5 : 7);
      const std::int64_t aut = std::uniform_int_distribution<std::int64_t>(1, 8)(rng);
      CAPTURE(s.id());
      CAPTURE(format_class(s, beta));
      CAPTURE(aut);
      CHECK(decomposition_identity_check(s, beta, aut, memo));
      const N1jResult r = n1j(s, beta, aut, memo);
      CHECK(r.report.identity_holds());
      CHECK(r.value >= 0);
      if (r.report.genus == 0) CHECK(r.value == 0);
      CHECK(rt1(s, beta, r.report.n0) == rt1_via_pairing(s, beta, r.report.n0));
      // The lattice form is its own inverse in these bases, so
      // sum_ij form(i,j) RT0(e_i, e_j) is the divisor part of the reduction.
      Integer reduced = 0;
      for (std::size_t x = 0; x < s.rank(); ++x)
        for (std::size_t y = 0; y < s.rank(); ++y) {
          CurveClass ex(s.rank()), ey(s.rank());
          ex[x] = 1;
          ey[y] = 1;
          reduced += s.form(x, y) * rt0_with_divisors(s, beta, ex, ey, r.report.n0);
        }
      CHECK(reduced == r.report.rt1);
      CHECK(is_integral(n1j(s, beta, 2, memo).value));
    }
  }
}
