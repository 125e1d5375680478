#ifndef DPGW_TESTS_SUPPORT_HPP
#define DPGW_TESTS_SUPPORT_HPP

// Seeded generators for the property tests.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "dpgw/lattice.hpp"

namespace dpgw::testing {

inline constexpr std::uint64_t default_seed = 0x5eed2026;

inline std::vector<SurfaceModel> all_surfaces() {
  std::vector<SurfaceModel> out;
  for (int k = 0; k <= 8; ++k) out.push_back(make_surface(SurfaceKind::p2_blowup, k));
  out.push_back(make_surface(SurfaceKind::quadric));
  return out;
}

/// Any integer class with entries in [-bound, bound].
inline CurveClass random_class(const SurfaceModel& s, std::mt19937_64& rng, std::int64_t bound = 6) {
  std::uniform_int_distribution<std::int64_t> dist(-bound, bound);
  CurveClass c(s.rank());
  for (std::size_t i = 0; i < s.rank(); ++i) c[i] = dist(rng);
  return c;
}

/// A class passing candidate_filter with degree (or a + b) at most max_degree.
/// Rejection sampling over the multiplicity box.
inline CurveClass random_candidate(const SurfaceModel& s, std::mt19937_64& rng, std::int64_t max_degree = 6) {
  for (;;) {
    CurveClass c(s.rank());
    if (s.kind() == SurfaceKind::quadric) {
      c[0] = std::uniform_int_distribution<std::int64_t>(0, max_degree)(rng);
      c[1] = std::uniform_int_distribution<std::int64_t>(0, max_degree - c[0])(rng);
    } else {
      c[0] = std::uniform_int_distribution<std::int64_t>(0, max_degree)(rng);
      if (c[0] == 0) {
        if (s.blowups() == 0) continue;
        c[std::uniform_int_distribution<std::size_t>(1, s.rank() - 1)(rng)] = -1;
      } else {
        for (std::size_t i = 1; i < s.rank(); ++i) c[i] = std::uniform_int_distribution<std::int64_t>(0, c[0])(rng);
      }
    }
    if (candidate_filter(s, c)) return c;
  }
}

inline CurveClass shuffled(const CurveClass& beta, std::mt19937_64& rng) {
  CurveClass out = beta;
  if (out.rank() > 2) std::shuffle(out.coords().begin() + 1, out.coords().end(), rng);
  return out;
}

}  // namespace dpgw::testing

#endif  // DPGW_TESTS_SUPPORT_HPP
