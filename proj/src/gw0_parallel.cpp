#include <algorithm>
#include <exception>
#include <functional>
#include <map>

#include <omp.h>

#include "dpgw/gw0.hpp"
#include "gw0_kernel.hpp"

namespace dpgw {

namespace {

// Longest dependency chain below each key that still has to be computed.
// Keys already in the memo sit at level -1. Chains are bounded by c1.beta.
class LevelPlan {
 public:
  LevelPlan(const SurfaceModel& s, const MemoTable& memo)
      : s_(s), memo_(memo), symmetric_(memo.mode() == KeyMode::weyl) {}

  int visit(const CurveClass& key) {
    if (memo_.contains(key)) return -1;
    if (auto it = level_.find(key); it != level_.end()) return it->second;
    detail::Recipe r = detail::recipe(s_, key, symmetric_);
    int lv = 0;
    for (const CurveClass& dep : r.dependencies()) {
      if (!candidate_filter(s_, dep)) continue;
      lv = std::max(lv, visit(memo_.key_for(s_, dep)) + 1);
    }
    level_.emplace(key, lv);
    recipes_.emplace(key, std::move(r));
    return lv;
  }

  /// Hands over the recipe of a planned key; each key is taken once.
  detail::Recipe take(const CurveClass& key) {
    auto node = recipes_.extract(key);
    return std::move(node.mapped());
  }

  std::vector<std::vector<CurveClass>> buckets() const {
    std::vector<std::vector<CurveClass>> out;
    for (const auto& [key, lv] : level_) {
      if (static_cast<std::size_t>(lv) >= out.size()) out.resize(static_cast<std::size_t>(lv) + 1);
      out[static_cast<std::size_t>(lv)].push_back(key);
    }
    for (auto& b : out) std::sort(b.begin(), b.end());
    return out;
  }

 private:
  const SurfaceModel& s_;
  const MemoTable& memo_;
  bool symmetric_;
  std::unordered_map<CurveClass, int, CurveClassHash> level_;
  std::unordered_map<CurveClass, detail::Recipe, CurveClassHash> recipes_;
};

}  // namespace

std::vector<Integer> n0_parallel(const SurfaceModel& s, std::span<const CurveClass> classes, MemoTable& memo) {
  if (s.id() != memo.surface_id())
    throw ValidationError("memo table belongs to " + memo.surface_id() + ", not " + s.id());

  LevelPlan plan(s, memo);
  for (const CurveClass& c : classes)
    if (candidate_filter(s, c)) plan.visit(memo.key_for(s, c));

  const detail::Lookup lookup = [&](const CurveClass& part) -> Integer {
    if (!candidate_filter(s, part)) return 0;
    auto v = memo.find(memo.key_for(s, part));
    if (!v) throw ConsistencyError("dependency " + format_class(s, part) + " evaluated out of order");
    return *v;
  };

  // Every key in a bucket depends only on lower buckets, so a bucket is a
  // read-only pass over the memo followed by a serial insert.
  for (const std::vector<CurveClass>& bucket : plan.buckets()) {
    const std::int64_t n = static_cast<std::int64_t>(bucket.size());
    std::vector<detail::Recipe> recipes;
    recipes.reserve(bucket.size());
    for (const CurveClass& key : bucket) recipes.push_back(plan.take(key));
    std::vector<Integer> values(bucket.size());
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i) {
      try {
        const auto j = static_cast<std::size_t>(i);
        values[j] = detail::apply(recipes[j], s, bucket[j], lookup);
      } catch (...) {
#pragma omp critical(dpgw_n0_error)
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
    for (std::size_t i = 0; i < bucket.size(); ++i) memo.insert(bucket[i], std::move(values[i]));
  }

  std::vector<Integer> out;
  out.reserve(classes.size());
  for (const CurveClass& c : classes) out.push_back(candidate_filter(s, c) ? lookup(c) : Integer(0));
  return out;
}

Integer n0_parallel(const SurfaceModel& s, const CurveClass& beta, MemoTable& memo) {
  return n0_parallel(s, std::span<const CurveClass>(&beta, 1), memo).front();
}

}  // namespace dpgw
