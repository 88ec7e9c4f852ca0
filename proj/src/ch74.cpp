#include "bellsets/ch74.hpp"

#include "bellsets/errors.hpp"
#include "bellsets/rng.hpp"

namespace bellsets::ch74 {

namespace {

void check_chain(const Scalar& value, const Scalar& bound, const char* name) {
    if (value < Scalar(0) || value > bound) {
        throw InvariantViolation(std::string("CH74 bound chain failed: 0 <= ") + name + " <= bound, got " +
                                 value.str() + " with bound " + bound.str());
    }
}

}  // namespace

void CH74Instance::validate() const {
    check_chain(x1, x_max, "x1");
    check_chain(x2, x_max, "x2");
    check_chain(y1, y_max, "y1");
    check_chain(y2, y_max, "y2");
}

ChiSpec::ChiSpec(Scalar x_bound, Scalar y_bound) : x_bound_(std::move(x_bound)), y_bound_(std::move(y_bound)) {
    if (!(x_bound_ > Scalar(0)) || !(y_bound_ > Scalar(0))) {
        throw InvariantViolation("ChiSpec requires X > 0 and Y > 0");
    }
}

Interval ChiSpec::value_range() const {
    return Interval(-(x_bound_ * y_bound_), Scalar(0));
}

Scalar f_value(const CH74Instance& inst) {
    inst.validate();
    return inst.x1 * inst.y1 - inst.x1 * inst.y2 + inst.x2 * inst.y1 + inst.x2 * inst.y2 -
           inst.y_max * inst.x2 - inst.x_max * inst.y1;
}

BoundsVerdict check_bounds(const CH74Instance& inst) {
    BoundsVerdict verdict;
    verdict.f = f_value(inst);
    verdict.lower = -(inst.x_max * inst.y_max);
    verdict.upper = Scalar(0);
    verdict.slack_lower = verdict.f - verdict.lower;
    verdict.slack_upper = verdict.upper - verdict.f;
    verdict.holds = verdict.slack_lower >= Scalar(0) && verdict.slack_upper >= Scalar(0);
    return verdict;
}

TheoremReport verify_theorem(std::uint64_t trials, std::uint64_t seed) {
    if (trials < 1) throw InvariantViolation("verify_theorem requires trials >= 1");

    TheoremReport report;
    report.trials = trials;
    report.seed = seed;

    bool first = true;
    for (std::uint64_t i = 0; i < trials; ++i) {
        rng::SplitMix64 stream(rng::subseed(seed, "ch74_trial", i));
        // Bounds on (0, 1]; 1 - u is exact for dyadic u in [0, 1).
        Rational x_max = rational_from_double(1.0 - stream.unit());
        Rational y_max = rational_from_double(1.0 - stream.unit());
        Rational x1 = rational_from_double(stream.unit()) * x_max;
        Rational x2 = rational_from_double(stream.unit()) * x_max;
        Rational y1 = rational_from_double(stream.unit()) * y_max;
        Rational y2 = rational_from_double(stream.unit()) * y_max;

        Rational f = x1 * y1 - x1 * y2 + x2 * y1 + x2 * y2 - y_max * x2 - x_max * y1;
        if (f > 0 || f < -(x_max * y_max)) ++report.violations;

        if (first || f < report.min_f) report.min_f = f;
        if (first || f > report.max_f) report.max_f = f;
        first = false;
    }

    // Corner pass at unit bounds: every coordinate at 0 or its bound.
    bool corner_first = true;
    for (int mask = 0; mask < 16; ++mask) {
        Rational x1 = (mask & 1) ? 1 : 0;
        Rational x2 = (mask & 2) ? 1 : 0;
        Rational y1 = (mask & 4) ? 1 : 0;
        Rational y2 = (mask & 8) ? 1 : 0;
        Rational f = x1 * y1 - x1 * y2 + x2 * y1 + x2 * y2 - x2 - y1;
        if (corner_first || f < report.corner_min) report.corner_min = f;
        if (corner_first || f > report.corner_max) report.corner_max = f;
        corner_first = false;
    }
    report.corner_min_attained = report.corner_min == -1;
    report.corner_max_attained = report.corner_max == 0;
    return report;
}

bool chi_contains(const ChiSpec& spec, const Scalar& v) {
    return spec.value_range().contains(v);
}

}  // namespace bellsets::ch74
