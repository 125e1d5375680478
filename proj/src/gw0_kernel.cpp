#include "gw0_kernel.hpp"

#include <array>
#include <span>

namespace dpgw::detail {

namespace {

bool is_seed(const SurfaceModel& s, const CurveClass& normal) {
  if (s.kind() == SurfaceKind::quadric) return normal == CurveClass{1, 0};
  const std::int64_t d = normal[0];
  std::int64_t ones = 0, minus_ones = 0, others = 0;
  for (std::size_t i = 1; i < normal.rank(); ++i) {
    if (normal[i] == 1)
      ++ones;
    else if (normal[i] == -1)
      ++minus_ones;
    else if (normal[i] != 0)
      ++others;
  }
  if (others != 0) return false;
  if (d == 0) return ones == 0 && minus_ones == 1;       // E_i
  if (d == 1) return minus_ones == 0 && ones <= 2;       // L, L - E_i, L - E_i - E_j
  return false;
}

using SplitVisit = std::function<void(const CurveClass&, const CurveClass&, std::int64_t)>;

void for_each_split(const SurfaceModel& s, const CurveClass& beta, std::span<const CurveClass> fixed,
                    bool symmetric, const SplitVisit& visit) {
  if (symmetric) {
    for_each_decomposition_orbit(s, beta, fixed, visit);
  } else {
    for_each_decomposition(s, beta, [&](const CurveClass& b1, const CurveClass& b2) { visit(b1, b2, 1); });
  }
}

}  // namespace

std::vector<Term> point_terms(const SurfaceModel& s, const CurveClass& beta, const CurveClass& a,
                              const CurveClass& b, bool symmetric) {
  const std::int64_t dl = delta(s, beta);
  if (dl < 3)
    throw ValidationError("the point relation needs delta >= 3; " + format_class(s, beta) + " has delta " +
                          std::to_string(dl));
  const std::vector<Integer> row = binomial_row(dl - 3);
  std::vector<Term> terms;
  const std::array<CurveClass, 2> fixed{a, b};
  for_each_split(s, beta, fixed, symmetric, [&](const CurveClass& b1, const CurveClass& b2, std::int64_t orbit) {
    const std::int64_t w = intersect(s, b1, b2) * intersect(s, b, b2) * orbit;
    if (w == 0) return;
    const std::int64_t d1 = delta(s, b1);
    Integer coef = intersect(s, a, b1) * binomial_at(row, d1 - 1) - intersect(s, a, b2) * binomial_at(row, d1 - 2);
    if (coef == 0) return;
    coef *= w;
    terms.push_back({b1, b2, std::move(coef)});
  });
  return terms;
}

DivisorTerms divisor_terms(const SurfaceModel& s, const CurveClass& beta, const CurveClass& a,
                           const CurveClass& b, const CurveClass& c, const CurveClass& d, bool symmetric) {
  const std::int64_t dl = delta(s, beta);
  if (dl < 1)
    throw ValidationError("the divisor relation needs delta >= 1; " + format_class(s, beta) + " has delta " +
                          std::to_string(dl));
  const auto dot = [&](const CurveClass& x, const CurveClass& y) { return intersect(s, x, y); };
  DivisorTerms out;
  out.coefficient = Integer(dot(a, b)) * dot(c, beta) * dot(d, beta) + Integer(dot(c, d)) * dot(a, beta) * dot(b, beta) -
                    Integer(dot(a, c)) * dot(b, beta) * dot(d, beta) - Integer(dot(b, d)) * dot(a, beta) * dot(c, beta);
  const std::vector<Integer> row = binomial_row(dl - 1);
  const std::array<CurveClass, 4> fixed{a, b, c, d};
  for_each_split(s, beta, fixed, symmetric, [&](const CurveClass& b1, const CurveClass& b2, std::int64_t orbit) {
    const std::int64_t w = dot(b1, b2) * dot(a, b1) * orbit;
    if (w == 0) return;
    const Integer& choose = binomial_at(row, delta(s, b1));
    if (choose == 0) return;
    Integer coef = Integer(dot(c, b1)) * dot(b, b2) * dot(d, b2) - Integer(dot(b, b1)) * dot(c, b2) * dot(d, b2);
    if (coef == 0) return;
    coef *= w;
    coef *= choose;
    out.terms.push_back({b1, b2, std::move(coef)});
  });
  return out;
}

Integer sum_terms(const std::vector<Term>& terms, const Lookup& lookup) {
  Integer sum = 0;
  for (const Term& t : terms) {
    const Integer n1 = lookup(t.part1);
    const Integer n2 = lookup(t.part2);
    sum += t.coefficient * n1 * n2;
  }
  return sum;
}

std::array<CurveClass, 4> low_delta_divisors(const SurfaceModel& s, const CurveClass& beta) {
  std::vector<CurveClass> pool;
  if (s.kind() == SurfaceKind::quadric) {
    pool = {CurveClass{1, 0}, CurveClass{0, 1}};
  } else {
    pool.push_back(s.line());
    for (std::size_t i = 1; i < s.rank(); ++i) pool.push_back(s.exceptional(i));
  }
  pool.push_back(beta);
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = i + 1; j < pool.size(); ++j) {
      const CurveClass& x = pool[i];
      const CurveClass& y = pool[j];
      const std::int64_t xb = intersect(s, x, beta), yb = intersect(s, y, beta);
      const Integer coef = Integer(intersect(s, x, x)) * yb * yb + Integer(intersect(s, y, y)) * xb * xb -
                           Integer(2 * intersect(s, x, y)) * xb * yb;
      if (coef != 0) return {x, x, y, y};
    }
  throw ConsistencyError("no divisor quadruple isolates n0 for " + format_class(s, beta) + " on " + s.id());
}

std::optional<CurveClass> point_reduction(const SurfaceModel& s, const CurveClass& beta) {
  if (s.kind() != SurfaceKind::p2_blowup) return std::nullopt;
  for (std::size_t i = beta.rank(); i-- > 1;) {
    if (beta[i] == 1) {
      CurveClass out = beta;
      out[i] = 0;
      return out;
    }
  }
  return std::nullopt;
}

Integer divide_exact(const Integer& num, const Integer& den, const SurfaceModel& s, const CurveClass& beta) {
  if (den == 0 || num % den != 0)
    throw ConsistencyError("WDVV sum " + num.str() + " not divisible by " + den.str() + " for " +
                           format_class(s, beta) + " on " + s.id());
  return num / den;
}

Recipe recipe(const SurfaceModel& s, const CurveClass& key, bool symmetric) {
  Recipe r;
  if (!candidate_filter(s, key)) {
    r.value = 0;
    return r;
  }
  if (auto seed = base_case(s, key)) {
    r.value = *seed;
    return r;
  }
  const std::int64_t dl = delta(s, key);
  if (dl >= 3) {
    const auto [a, b] = default_divisor_pair(s);
    r.terms = point_terms(s, key, a, b, symmetric);
    r.divisor = intersect(s, a, b);
  } else if (dl >= 1) {
    const auto q = low_delta_divisors(s, key);
    DivisorTerms rel = divisor_terms(s, key, q[0], q[1], q[2], q[3], symmetric);
    r.terms = std::move(rel.terms);
    r.divisor = std::move(rel.coefficient);
  } else {
    r.reduced = point_reduction(s, key);
    if (!r.reduced)
      throw ConsistencyError("no reduction for delta-0 class " + format_class(s, key) + " on " + s.id());
  }
  return r;
}

std::vector<CurveClass> Recipe::dependencies() const {
  std::vector<CurveClass> out;
  if (value) return out;
  if (reduced) {
    out.push_back(*reduced);
    return out;
  }
  out.reserve(2 * terms.size());
  for (const Term& t : terms) {
    out.push_back(t.part1);
    out.push_back(t.part2);
  }
  return out;
}

Integer apply(const Recipe& r, const SurfaceModel& s, const CurveClass& key, const Lookup& lookup) {
  if (r.value) return *r.value;
  Integer value = r.reduced ? lookup(*r.reduced) : divide_exact(sum_terms(r.terms, lookup), r.divisor, s, key);
  if (value < 0)
    throw ConsistencyError("negative genus-0 count " + value.str() + " for " + format_class(s, key) + " on " + s.id());
  return value;
}

Integer evaluate(const SurfaceModel& s, const CurveClass& key, const Lookup& lookup, bool symmetric) {
  return apply(recipe(s, key, symmetric), s, key, lookup);
}

}  // namespace dpgw::detail

namespace dpgw {

std::optional<Integer> base_case(const SurfaceModel& s, const CurveClass& beta) {
  if (!candidate_filter(s, beta)) return Integer(0);
  if (delta(s, beta) >= 3) return std::nullopt;
  if (arithmetic_genus(s, beta) >= 1) return std::nullopt;
  return Integer(detail::is_seed(s, weyl_normalize(s, beta)) ? 1 : 0);
}

std::pair<CurveClass, CurveClass> default_divisor_pair(const SurfaceModel& s) {
  if (s.kind() == SurfaceKind::quadric) return {CurveClass{1, 0}, CurveClass{0, 1}};
  return {s.line(), s.line()};
}

}  // namespace dpgw
