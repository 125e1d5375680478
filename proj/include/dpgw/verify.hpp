#ifndef DPGW_VERIFY_HPP
#define DPGW_VERIFY_HPP

// Property suites behind `dpgw verify`. Each suite runs at a fixed desk-scale
// bound and reports how many individual checks it made.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dpgw {

struct SuiteOptions {
  std::uint64_t seed = 20261019;
  std::int64_t p2_max_degree = 10;
  std::int64_t wdvv_max_c1 = 12;            // Bl0..Bl4 and the quadric
  std::int64_t invariance_max_c1 = 10;      // permutations, Cremona, blowdown
  std::int64_t invariance_max_degree = 8;   // same suites, raw keys
  std::int64_t quadric_max_sum = 10;        // a + b
  std::size_t pipeline_samples = 200;
  std::int64_t pipeline_max_c1 = 12;
};

struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::vector<std::string> messages;  // one per failure, capped

  bool passed() const { return failures == 0 && checks > 0; }
  void record(bool ok, const std::string& what);
};

/// p2-oracle, wdvv-pairs, blowdown, weyl, quadric-bl2, pipeline-identity.
const std::vector<std::string>& suite_names();

/// Throws ValidationError for an unknown name.
SuiteResult run_verify_suite(std::string_view name, const SuiteOptions& options = {});

}  // namespace dpgw

#endif  // DPGW_VERIFY_HPP
