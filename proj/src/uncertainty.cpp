#include "bellsets/uncertainty.hpp"

#include "bellsets/errors.hpp"

#include <cmath>

namespace bellsets::uncertainty {

PsiSpec::PsiSpec(Scalar z_max, Scalar width) : z_max_(std::move(z_max)), width_(std::move(width)) {
    if (!z_max_.finite() || !width_.finite()) throw NonFiniteError("PsiSpec fields must be finite");
    if (width_ < Scalar(0)) {
        throw InvariantViolation("PsiSpec width Z must be >= 0, got " + width_.str());
    }
}

Interval PsiSpec::window() const {
    return Interval(z_max_ - width_, z_max_);
}

Interval PsiSpec::value_range() const {
    return Interval(-width_, Scalar(0));
}

double z_bound(const Eigen::MatrixXcd& c_op, const quantum::StateVector& psi) {
    if (c_op.rows() != c_op.cols()) throw DimensionMismatch("z_bound: matrix must be square");
    if (c_op.rows() != psi.dim()) {
        throw DimensionMismatch("z_bound: operator dimension " + std::to_string(c_op.rows()) +
                                " does not match state dimension " + std::to_string(psi.dim()));
    }
    std::complex<double> expect = psi.vector().dot(c_op * psi.vector());
    return 0.5 * std::abs(expect);
}

UncertaintyVerdict check_uncertainty(const quantum::HermitianOperator& a, const quantum::HermitianOperator& b,
                                     const quantum::StateVector& psi) {
    UncertaintyVerdict verdict;
    verdict.lhs = quantum::spread(a, psi) * quantum::spread(b, psi);
    verdict.rhs = z_bound(quantum::commutator(a, b), psi);
    verdict.slack = verdict.lhs - verdict.rhs;
    verdict.holds = verdict.lhs >= verdict.rhs - kRobertsonTolerance;
    return verdict;
}

Scalar psi_f(const Scalar& z, const PsiSpec& spec) {
    return z - spec.z_max();
}

bool psi_contains(const PsiSpec& spec, const Scalar& z) {
    return spec.value_range().contains(psi_f(z, spec));
}

PsiSpec psi_from_operators(const quantum::HermitianOperator& a, const quantum::HermitianOperator& b,
                           const quantum::StateVector& psi) {
    double mean_a = quantum::expectation(a, psi);
    double spread_a = quantum::spread(a, psi);
    double mean_b = quantum::expectation(b, psi);
    double spread_b = quantum::spread(b, psi);

    Interval delta_a(Scalar(mean_a - spread_a), Scalar(mean_a + spread_a));
    Interval delta_b(Scalar(mean_b - spread_b), Scalar(mean_b + spread_b));
    Interval moore = product(delta_a, delta_b);

    return PsiSpec(moore.hi(), Scalar(z_bound(quantum::commutator(a, b), psi)));
}

}  // namespace bellsets::uncertainty
