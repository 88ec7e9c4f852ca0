#include "bellsets/metaset.hpp"

#include "bellsets/errors.hpp"
#include "bellsets/rng.hpp"
#include "bellsets/uncertainty.hpp"

#include <cmath>

namespace bellsets::metaset {

namespace {

// Rational square root when one exists.
std::optional<Rational> exact_sqrt(const Rational& value) {
    BigInt num = numerator(value);
    BigInt den = denominator(value);
    BigInt num_root = sqrt(num);
    BigInt den_root = sqrt(den);
    if (num_root * num_root == num && den_root * den_root == den) {
        return Rational(num_root, den_root);
    }
    return std::nullopt;
}

}  // namespace

std::pair<Scalar, Scalar> decompose(const Scalar& z_width) {
    if (!z_width.finite()) throw NonFiniteError("decompose requires a finite Z");
    int sign = z_width.compare(Scalar(0));
    if (sign < 0) throw InvariantViolation("decompose requires Z >= 0");
    if (sign == 0) throw EmptyChiError("empty chi: Z = 0 admits no positive bounds");

    if (z_width.exact()) {
        if (auto root = exact_sqrt(z_width.rational())) {
            return {Scalar(*root), Scalar(*root)};
        }
    }
    double root = std::sqrt(z_width.to_double());
    return {Scalar(root), Scalar(root)};
}

InclusionReport subset_check(const ch74::ChiSpec& chi, const Scalar& z_width) {
    if (!z_width.finite()) throw NonFiniteError("subset_check requires a finite Z");
    if (z_width < Scalar(0)) throw InvariantViolation("subset_check requires Z >= 0");

    Scalar xy = chi.x_bound() * chi.y_bound();
    InclusionReport report{chi,
                           z_width,
                           chi.value_range(),
                           Interval(-z_width, Scalar(0)),
                           false,
                           std::nullopt,
                           0,
                           0};

    const bool all_exact = xy.exact() && z_width.exact();
    int relation = z_width.compare(xy);
    if (!all_exact) {
        // Boundary-tolerant in float mode, like every membership comparison.
        double gap = z_width.to_double() - xy.to_double();
        relation = gap > kBoundaryTolerance ? 1 : (gap < -kBoundaryTolerance ? -1 : 0);
    }

    report.holds = relation >= 0;
    if (relation != 0) {
        // Midpoint of (-XY, -Z): inside the wider range, outside the narrower.
        report.witness = -(xy + z_width) / Scalar(2);
    }
    return report;
}

InclusionReport sampled_subset_check(const ch74::ChiSpec& chi, const quantum::HermitianOperator& a,
                                     const quantum::HermitianOperator& b, const quantum::StateVector& psi,
                                     std::uint64_t trials, std::uint64_t seed) {
    if (trials < 1) throw InvariantViolation("sampled_subset_check requires trials >= 1");

    Scalar z_width(uncertainty::z_bound(quantum::commutator(a, b), psi));
    InclusionReport report = subset_check(chi, z_width);
    report.samples_checked = trials;

    std::optional<Scalar> first_escape;
    for (std::uint64_t i = 0; i < trials; ++i) {
        rng::SplitMix64 stream(rng::subseed(seed, "inclusion_trial", i));
        ch74::CH74Instance inst;
        inst.x_max = chi.x_bound();
        inst.y_max = chi.y_bound();
        inst.x1 = Scalar(rational_from_double(stream.unit())) * inst.x_max;
        inst.x2 = Scalar(rational_from_double(stream.unit())) * inst.x_max;
        inst.y1 = Scalar(rational_from_double(stream.unit())) * inst.y_max;
        inst.y2 = Scalar(rational_from_double(stream.unit())) * inst.y_max;

        Scalar f = ch74::f_value(inst);
        if (!report.psi_range.contains(f)) {
            ++report.escapes;
            if (!first_escape) first_escape = f;
        }
    }

    if (report.escapes > 0) {
        report.holds = false;
        report.witness = first_escape;
    }
    return report;
}

}  // namespace bellsets::metaset
