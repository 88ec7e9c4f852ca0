#include "bellsets/interval.hpp"

#include "bellsets/errors.hpp"

#include <algorithm>

namespace bellsets {

Interval::Interval(Scalar lo, Scalar hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (!lo_.finite() || !hi_.finite()) {
        throw NonFiniteError("interval endpoints must be finite");
    }
    if (lo_ > hi_) {
        throw OrderingError("interval endpoints out of order: lo " + lo_.str() + " > hi " + hi_.str());
    }
}

bool Interval::contains(const Scalar& x) const {
    if (exact() && x.exact()) {
        return lo_ <= x && x <= hi_;
    }
    double v = x.to_double();
    return v >= lo_.to_double() - kBoundaryTolerance && v <= hi_.to_double() + kBoundaryTolerance;
}

Interval product(const Interval& a, const Interval& b) {
    Scalar products[4] = {
        a.lo() * b.lo(),
        a.lo() * b.hi(),
        a.hi() * b.lo(),
        a.hi() * b.hi(),
    };
    Scalar lo = products[0];
    Scalar hi = products[0];
    for (int i = 1; i < 4; ++i) {
        if (products[i] < lo) lo = products[i];
        if (products[i] > hi) hi = products[i];
    }
    return Interval(std::move(lo), std::move(hi));
}

bool operator==(const Interval& a, const Interval& b) {
    return a.lo() == b.lo() && a.hi() == b.hi();
}

}  // namespace bellsets
