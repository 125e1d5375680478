#ifndef DPGW_INTEGER_HPP
#define DPGW_INTEGER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace dpgw {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Integer& v) { return v.str(); }

/// "p/q" in lowest terms, or just "p" when the denominator is 1.
inline std::string to_string(const Rational& v) {
  const Integer num = boost::multiprecision::numerator(v);
  const Integer den = boost::multiprecision::denominator(v);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline bool is_integral(const Rational& v) {
  return boost::multiprecision::denominator(v) == 1;
}

/// Row n of Pascal's triangle, C(n, 0..n). Empty for n < 0.
inline std::vector<Integer> binomial_row(std::int64_t n) {
  std::vector<Integer> row;
  if (n < 0) return row;
  row.reserve(static_cast<std::size_t>(n) + 1);
  Integer c = 1;
  row.push_back(c);
  for (std::int64_t r = 1; r <= n; ++r) {
    c = c * (n - r + 1) / r;
    row.push_back(c);
  }
  return row;
}

/// C(n, r) looked up in a precomputed row; zero outside 0 <= r <= n.
inline const Integer& binomial_at(const std::vector<Integer>& row, std::int64_t r) {
  static const Integer zero = 0;
  if (r < 0 || r >= static_cast<std::int64_t>(row.size())) return zero;
  return row[static_cast<std::size_t>(r)];
}

}  // namespace dpgw

#endif  // DPGW_INTEGER_HPP
