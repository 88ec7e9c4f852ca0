#pragma once

#include "bellsets/interval.hpp"
#include "bellsets/scalar.hpp"

#include <cstdint>

namespace bellsets::ch74 {

/// The six numbers of the Clauser-Horne 1974 theorem, subject to
/// 0 <= x1,x2 <= x_max and 0 <= y1,y2 <= y_max.
struct CH74Instance {
    Scalar x1;
    Scalar x2;
    Scalar y1;
    Scalar y2;
    Scalar x_max;
    Scalar y_max;

    /// Throws InvariantViolation when a bound chain fails.
    void validate() const;
};

/// Descriptor of the value set chi: f-values constrained to [-XY, 0].
class ChiSpec {
  public:
    ChiSpec(Scalar x_bound, Scalar y_bound);

    const Scalar& x_bound() const { return x_bound_; }
    const Scalar& y_bound() const { return y_bound_; }

    /// [-XY, 0]
    Interval value_range() const;

  private:
    Scalar x_bound_;
    Scalar y_bound_;
};

/// f = x1*y1 - x1*y2 + x2*y1 + x2*y2 - Y*x2 - X*y1. Validates the instance.
Scalar f_value(const CH74Instance& inst);

struct BoundsVerdict {
    Scalar f;
    Scalar lower;        // -XY
    Scalar upper;        // 0
    Scalar slack_lower;  // f - lower, >= 0 when the lower bound holds
    Scalar slack_upper;  // upper - f, >= 0 when the upper bound holds
    bool holds = false;
};

BoundsVerdict check_bounds(const CH74Instance& inst);

struct TheoremReport {
    std::uint64_t trials = 0;
    std::uint64_t violations = 0;
    Rational min_f;
    Rational max_f;
    // Corner pass at x_max = y_max = 1: f over the 16 assignments with each
    // coordinate at 0 or its bound.
    Rational corner_min;
    Rational corner_max;
    bool corner_min_attained = false;  // corner_min == -1
    bool corner_max_attained = false;  // corner_max == 0
    std::uint64_t seed = 0;
};

/// Samples `trials` admissible instances (bounds uniform on (0,1], coordinates
/// uniform within bounds), evaluates f in exact rational arithmetic, and
/// counts violations of -XY <= f <= 0. Trial i draws from a splitmix64 stream
/// seeded by subseed(seed, "ch74_trial", i), so partitioning trials across
/// workers cannot change the report.
TheoremReport verify_theorem(std::uint64_t trials, std::uint64_t seed);

/// Membership of v in the value range [-XY, 0].
bool chi_contains(const ChiSpec& spec, const Scalar& v);

}  // namespace bellsets::ch74
