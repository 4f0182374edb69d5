#pragma once

#include <cstddef>
#include <vector>

namespace tightproj {

/// Half-open interval [lo, hi).
struct Interval {
  double lo;
  double hi;

  double length() const noexcept { return hi > lo ? hi - lo : 0.0; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of half-open intervals, kept sorted, disjoint and with
/// touching pieces merged. Empty intervals are dropped.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> parts);

  const std::vector<Interval>& parts() const noexcept { return parts_; }
  bool empty() const noexcept { return parts_.empty(); }
  double measure() const;

  IntervalSet unite(const IntervalSet& other) const;
  IntervalSet intersect(const IntervalSet& other) const;
  bool intersects(const IntervalSet& other) const { return !intersect(other).empty(); }

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<Interval> parts_;
};

}  // namespace tightproj
