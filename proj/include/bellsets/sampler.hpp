#pragma once

#include "bellsets/polytope.hpp"
#include "bellsets/quantum.hpp"
#include "bellsets/scalar.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bellsets::sampler {

/// Latent joint distribution over the 2^n truth assignments. Weights are
/// exact nonnegative rationals summing to exactly 1.
struct JointDistribution {
    int n = 0;
    std::vector<std::pair<std::uint32_t, Rational>> weights;  // sorted by assignment

    void validate() const;

    static JointDistribution uniform(int n);
    static JointDistribution point_mass(int n, std::uint32_t assignment);
    static JointDistribution from_weights(int n, std::vector<std::pair<std::uint32_t, Rational>> weights);
};

/// One independent distribution per observable: each single over {0,1}, each
/// pair over {0,1}^2. No cross-pair consistency is required; that is the
/// point of multi-sample estimation.
struct PairwiseSource {
    std::vector<Scalar> single_up;                 // P(event = 1), one per event
    std::vector<std::array<Scalar, 4>> pair_probs;  // per pair: P(00), P(01), P(10), P(11)

    void validate(const polytope::Scenario& s) const;

    /// Singlet statistics: joint up-up (1 - cos(a - b)) / 4, marginals 1/2.
    /// Detector angle per event, CH-scenario shaped.
    static PairwiseSource singlet(const polytope::Scenario& s, const quantum::MeasurementAngles& angles);

    /// Consistent marginals of one latent joint.
    static PairwiseSource marginals_of(const JointDistribution& d, const polytope::Scenario& s);

    /// Deterministic copies of a single assignment.
    static PairwiseSource point_mass(const polytope::Scenario& s, std::uint32_t assignment);
};

/// Relative frequencies as exact rationals (counts over the recorded sample
/// size), plus the reproducibility metadata.
struct FrequencyVector {
    polytope::CorrelationVector vec;
    std::uint64_t sample_size = 0;
    std::uint64_t seed = 0;
    std::string generator;
};

struct SingleSampleResult {
    FrequencyVector freq;
    polytope::MembershipVerdict verdict;
};

/// Draws `size` full assignments from d and computes every single and pair
/// frequency from that one sample. The verdict must be Inside: a single
/// sample is a rational convex mixture of vertices by construction.
SingleSampleResult single_sample_run(const JointDistribution& d, const polytope::Scenario& s,
                                     std::uint64_t size, std::uint64_t seed);

struct MultiSampleResult {
    FrequencyVector freq;
    polytope::MembershipVerdict verdict;
    /// CH combination when the scenario is the CH one.
    std::optional<Scalar> ch_value;
    /// Labeled facet residuals (negative = violated): the full CH facet list
    /// for the CH scenario, per-pair closed-form conditions otherwise.
    std::vector<std::pair<std::string, Scalar>> facet_residuals;
};

/// Estimates each observable on its own sample (sub-seeded per component) and
/// assembles the vector; such vectors may leave the polytope.
MultiSampleResult multi_sample_run(const PairwiseSource& src, const polytope::Scenario& s,
                                   std::uint64_t size_per_pair, std::uint64_t seed);

struct SampledUncertaintyVerdict {
    double lhs = 0;        // spread(A) * spread(B), estimated
    double rhs = 0;        // |<[A,B]>| / 2, estimated
    double se_lhs = 0;     // propagated standard error of lhs
    double se_rhs = 0;
    double band = 0;       // 3 * combined standard error
    bool holds = false;    // lhs >= rhs - band
    std::uint64_t sample_size = 0;
};

/// Estimates the two spreads and the commutator expectation from three
/// independent eigenvalue samples (Born weights). Reports the band-adjusted
/// relation; it never hard-codes an expected violation.
SampledUncertaintyVerdict uncertainty_multi_sample(const quantum::HermitianOperator& a,
                                                   const quantum::HermitianOperator& b,
                                                   const quantum::StateVector& psi, std::uint64_t size,
                                                   std::uint64_t seed);

/// The analytic singlet correlation vector for the CH scenario at the given
/// angles (float mode).
polytope::CorrelationVector singlet_correlation_vector(const quantum::MeasurementAngles& angles);

}  // namespace bellsets::sampler
