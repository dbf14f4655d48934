#pragma once

#include "ttstat/rational.hpp"

namespace ttstat {

// Closed interval [lo, hi].
template <Scalar T>
struct Interval {
  T lo;
  T hi;

  bool contains(const T& x) const { return lo <= x && x <= hi; }

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
};

}  // namespace ttstat
