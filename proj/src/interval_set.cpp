#include "tightproj/interval_set.hpp"

#include <algorithm>
#include <cmath>

#include "tightproj/error.hpp"

namespace tightproj {

IntervalSet::IntervalSet(std::vector<Interval> parts) {
  for (const Interval& iv : parts) {
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi)) {
      throw Error(ErrorKind::invalid_input, "interval set: non-finite endpoint");
    }
  }
  std::erase_if(parts, [](const Interval& iv) { return !(iv.hi > iv.lo); });
  std::sort(parts.begin(), parts.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const Interval& iv : parts) {
    if (!parts_.empty() && iv.lo <= parts_.back().hi) {
      parts_.back().hi = std::max(parts_.back().hi, iv.hi);
    } else {
      parts_.push_back(iv);
    }
  }
}

double IntervalSet::measure() const {
  double m = 0.0;
  for (const Interval& iv : parts_) m += iv.length();
  return m;
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  std::vector<Interval> all = parts_;
  all.insert(all.end(), other.parts_.begin(), other.parts_.end());
  return IntervalSet(std::move(all));
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
  std::vector<Interval> out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < parts_.size() && j < other.parts_.size()) {
    const double lo = std::max(parts_[i].lo, other.parts_[j].lo);
    const double hi = std::min(parts_[i].hi, other.parts_[j].hi);
    if (hi > lo) out.push_back({lo, hi});
    if (parts_[i].hi < other.parts_[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return IntervalSet(std::move(out));
}

}  // namespace tightproj
