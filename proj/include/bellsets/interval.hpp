#pragma once

#include "bellsets/scalar.hpp"

namespace bellsets {

/// Absolute slack applied to membership comparisons whenever any operand is
/// in float mode. Exact-mode comparisons take no slack.
inline constexpr double kBoundaryTolerance = 1e-9;

/// Closed real interval [lo, hi]. Empty intervals are unrepresentable:
/// construction rejects lo > hi. Endpoints keep the numeric mode they were
/// constructed with (exact rational or double).
class Interval {
  public:
    Interval(Scalar lo, Scalar hi);

    static Interval make(Scalar lo, Scalar hi) { return Interval(std::move(lo), std::move(hi)); }

    const Scalar& lo() const { return lo_; }
    const Scalar& hi() const { return hi_; }

    Scalar length() const { return hi_ - lo_; }

    bool exact() const { return lo_.exact() && hi_.exact(); }

    /// Inclusive membership; float mode admits kBoundaryTolerance slack.
    bool contains(const Scalar& x) const;

  private:
    Scalar lo_;
    Scalar hi_;
};

/// Moore product: [min, max] over the four endpoint products.
Interval product(const Interval& a, const Interval& b);

bool operator==(const Interval& a, const Interval& b);

}  // namespace bellsets
