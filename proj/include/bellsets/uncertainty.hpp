#pragma once

#include "bellsets/interval.hpp"
#include "bellsets/quantum.hpp"
#include "bellsets/scalar.hpp"

namespace bellsets::uncertainty {

inline constexpr double kRobertsonTolerance = 1e-9;

/// Descriptor of the set Psi: membership window [z_max - Z, z_max] on z,
/// equivalently f(z) = z - z_max constrained to [-Z, 0]. The width Z is half
/// the modulus of a commutator expectation, hence >= 0.
class PsiSpec {
  public:
    PsiSpec(Scalar z_max, Scalar width);

    const Scalar& z_max() const { return z_max_; }
    /// Z, the window width.
    const Scalar& width() const { return width_; }

    /// [z_max - Z, z_max]
    Interval window() const;

    /// [-Z, 0], the constraint range of f(z).
    Interval value_range() const;

  private:
    Scalar z_max_;
    Scalar width_;
};

/// Z = |<psi|C|psi>| / 2. C may be any complex matrix; for C = [A, B] the
/// expectation is purely imaginary and the modulus handles it.
double z_bound(const Eigen::MatrixXcd& c_op, const quantum::StateVector& psi);

struct UncertaintyVerdict {
    double lhs = 0;    // spread(A) * spread(B)
    double rhs = 0;    // z_bound([A, B])
    double slack = 0;  // lhs - rhs
    bool holds = false;
};

/// The generalized relation spread(A) * spread(B) >= |<[A,B]>| / 2 on a
/// common state, with kRobertsonTolerance slack.
UncertaintyVerdict check_uncertainty(const quantum::HermitianOperator& a, const quantum::HermitianOperator& b,
                                     const quantum::StateVector& psi);

/// f(z) = z - z_max.
Scalar psi_f(const Scalar& z, const PsiSpec& spec);

/// True iff -Z <= f(z) <= 0. z itself ranges over all reals; the window is
/// enforced solely through f.
bool psi_contains(const PsiSpec& spec, const Scalar& z);

/// Realizes the spreads as centered intervals <A> +/- spread(A), forms their
/// Moore product, and reads z_max from the product's upper endpoint; the
/// width is z_bound of the commutator.
PsiSpec psi_from_operators(const quantum::HermitianOperator& a, const quantum::HermitianOperator& b,
                           const quantum::StateVector& psi);

}  // namespace bellsets::uncertainty
