#pragma once

#include <Eigen/Dense>

#include <complex>

namespace bellsets::quantum {

inline constexpr int kMaxDim = 16;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kImagResidueTolerance = 1e-9;

/// Square complex matrix validated to be Hermitian within kHermitianTolerance.
class HermitianOperator {
  public:
    explicit HermitianOperator(Eigen::MatrixXcd entries);

    int dim() const { return static_cast<int>(entries_.rows()); }
    const Eigen::MatrixXcd& matrix() const { return entries_; }

  private:
    Eigen::MatrixXcd entries_;
};

/// Complex vector validated to unit norm within kNormTolerance.
class StateVector {
  public:
    explicit StateVector(Eigen::VectorXcd amplitudes);

    /// Scales the input to unit norm first (zero vectors rejected).
    static StateVector normalized(Eigen::VectorXcd amplitudes);

    int dim() const { return static_cast<int>(amplitudes_.rows()); }
    const Eigen::VectorXcd& vector() const { return amplitudes_; }

  private:
    Eigen::VectorXcd amplitudes_;
};

HermitianOperator sigma_x();
HermitianOperator sigma_y();
HermitianOperator sigma_z();
HermitianOperator identity(int dim);

/// <psi|op|psi>. The imaginary residue must stay under kImagResidueTolerance
/// and is discarded.
double expectation(const HermitianOperator& op, const StateVector& psi);

/// Standard deviation sqrt(<A^2> - <A>^2); tiny negative radicands (rounding)
/// clamp to zero, anything below -1e-12 is an internal-consistency error.
double spread(const HermitianOperator& op, const StateVector& psi);

/// AB - BA; generally anti-Hermitian, returned as a plain complex matrix.
Eigen::MatrixXcd commutator(const HermitianOperator& a, const HermitianOperator& b);

/// Probability that both detectors fire "up" on the two-qubit singlet when
/// the measurement axes are separated by theta: (1 - cos theta) / 4.
double singlet_joint_prob(double theta);

/// Single-detector marginal on the singlet: axis-independent 1/2.
inline constexpr double kSingletSingleProb = 0.5;

/// Detector settings in radians; construction reduces each to [0, 2*pi).
struct MeasurementAngles {
    double a1 = 0;
    double a2 = 0;
    double b1 = 0;
    double b2 = 0;

    MeasurementAngles() = default;
    MeasurementAngles(double a1_in, double a2_in, double b1_in, double b2_in);
};

/// CH combination on singlet statistics:
/// S = P(a1,b1) - P(a1,b2) + P(a2,b1) + P(a2,b2) - P(a2) - P(b1).
double ch_value(const MeasurementAngles& angles);

struct ChOptimum {
    MeasurementAngles angles;
    double value = 0;
};

/// Deterministic search: a coarse grid over the 4-torus followed by
/// step-halving coordinate descent for refine_iters rounds. The coarse grid
/// never exceeds 72 points per axis (finer requests are reached through the
/// refinement stage); grid ties resolve to the lexicographically smallest
/// angle tuple. No RNG anywhere.
ChOptimum maximize_ch(double grid_step, int refine_iters);

/// Same search on -S.
ChOptimum minimize_ch(double grid_step, int refine_iters);

}  // namespace bellsets::quantum
