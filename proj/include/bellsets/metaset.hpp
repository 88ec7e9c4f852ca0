#pragma once

#include "bellsets/ch74.hpp"
#include "bellsets/interval.hpp"
#include "bellsets/quantum.hpp"
#include "bellsets/scalar.hpp"

#include <cstdint>
#include <optional>
#include <utility>

namespace bellsets::metaset {

struct InclusionReport {
    ch74::ChiSpec chi;
    Scalar z_width;      // Z = |<C>| / 2
    Interval chi_range;  // [-XY, 0]
    Interval psi_range;  // [-Z, 0]
    bool holds = false;
    /// Strict inclusion: an element of psi_range outside chi_range.
    /// Failure: an element of chi_range outside psi_range. Absent when the
    /// ranges coincide.
    std::optional<Scalar> witness;
    std::uint64_t samples_checked = 0;
    std::uint64_t escapes = 0;
};

/// Canonical split X = Y = sqrt(Z), so XY = Z (exact when Z is an exact
/// rational with a rational square root). Z = 0 has no positive-bound chi
/// descriptor and raises EmptyChiError.
std::pair<Scalar, Scalar> decompose(const Scalar& z_width);

/// Value-range inclusion [-XY, 0] vs [-Z, 0]: holds iff Z >= XY. Analytic;
/// samples_checked stays 0.
InclusionReport subset_check(const ch74::ChiSpec& chi, const Scalar& z_width);

/// Z from the operators, then `trials` sampled CH74 instances at chi's
/// bounds: every f-value must stay in [-Z, 0] when the analytic check holds;
/// any sampled escape is recorded and becomes the witness.
InclusionReport sampled_subset_check(const ch74::ChiSpec& chi, const quantum::HermitianOperator& a,
                                     const quantum::HermitianOperator& b, const quantum::StateVector& psi,
                                     std::uint64_t trials, std::uint64_t seed);

}  // namespace bellsets::metaset
