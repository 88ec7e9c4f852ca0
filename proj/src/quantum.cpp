#include "bellsets/quantum.hpp"

#include "bellsets/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace bellsets::quantum {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double reduce_angle(double angle) {
    if (!std::isfinite(angle)) throw NonFiniteError("measurement angle must be finite");
    double reduced = std::fmod(angle, kTwoPi);
    if (reduced < 0) reduced += kTwoPi;
    if (reduced >= kTwoPi) reduced = 0;  // fmod rounding at the seam
    return reduced;
}

double expectation_raw(const Eigen::MatrixXcd& m, const Eigen::VectorXcd& v) {
    std::complex<double> value = v.dot(m * v);
    if (std::abs(value.imag()) >= kImagResidueTolerance) {
        throw Error("expectation of Hermitian operator has imaginary residue " + std::to_string(value.imag()));
    }
    return value.real();
}

void check_dims(int a, int b, const char* what) {
    if (a != b) {
        throw DimensionMismatch(std::string(what) + ": dimensions " + std::to_string(a) + " and " +
                                std::to_string(b) + " differ");
    }
}

}  // namespace

HermitianOperator::HermitianOperator(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) {
        throw DimensionMismatch("operator matrix must be square");
    }
    if (entries_.rows() < 1 || entries_.rows() > kMaxDim) {
        throw CapExceeded("operator dimension must be in [1, " + std::to_string(kMaxDim) + "]");
    }
    double asymmetry = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
    if (!(asymmetry <= kHermitianTolerance)) {
        throw InvariantViolation("matrix is not Hermitian: max |m - m^dagger| = " + std::to_string(asymmetry));
    }
}

StateVector::StateVector(Eigen::VectorXcd amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.rows() < 1 || amplitudes_.rows() > kMaxDim) {
        throw CapExceeded("state dimension must be in [1, " + std::to_string(kMaxDim) + "]");
    }
    double norm_sq = amplitudes_.squaredNorm();
    if (!std::isfinite(norm_sq)) throw NonFiniteError("state amplitudes must be finite");
    if (std::abs(norm_sq - 1.0) > kNormTolerance) {
        throw InvariantViolation("state is not normalized: |psi|^2 = " + std::to_string(norm_sq));
    }
}

StateVector StateVector::normalized(Eigen::VectorXcd amplitudes) {
    double norm = amplitudes.norm();
    if (!(norm > 0) || !std::isfinite(norm)) {
        throw InvariantViolation("cannot normalize a zero or non-finite vector");
    }
    return StateVector(amplitudes / norm);
}

HermitianOperator sigma_x() {
    Eigen::MatrixXcd m(2, 2);
    m << 0, 1, 1, 0;
    return HermitianOperator(m);
}

HermitianOperator sigma_y() {
    Eigen::MatrixXcd m(2, 2);
    m << std::complex<double>(0, 0), std::complex<double>(0, -1), std::complex<double>(0, 1),
        std::complex<double>(0, 0);
    return HermitianOperator(m);
}

HermitianOperator sigma_z() {
    Eigen::MatrixXcd m(2, 2);
    m << 1, 0, 0, -1;
    return HermitianOperator(m);
}

HermitianOperator identity(int dim) {
    if (dim < 1 || dim > kMaxDim) throw CapExceeded("identity dimension out of range");
    return HermitianOperator(Eigen::MatrixXcd::Identity(dim, dim));
}

double expectation(const HermitianOperator& op, const StateVector& psi) {
    check_dims(op.dim(), psi.dim(), "expectation");
    return expectation_raw(op.matrix(), psi.vector());
}

double spread(const HermitianOperator& op, const StateVector& psi) {
    check_dims(op.dim(), psi.dim(), "spread");
    double mean = expectation_raw(op.matrix(), psi.vector());
    // <A^2> - <A>^2 evaluated as |(A - <A>)psi|^2: identical value, no
    // cancellation on near-eigenstates.
    double variance = (op.matrix() * psi.vector() - mean * psi.vector()).squaredNorm();
    if (variance < -1e-12) {
        throw Error("negative variance " + std::to_string(variance) + " beyond tolerance");
    }
    return std::sqrt(std::max(variance, 0.0));
}

Eigen::MatrixXcd commutator(const HermitianOperator& a, const HermitianOperator& b) {
    check_dims(a.dim(), b.dim(), "commutator");
    return a.matrix() * b.matrix() - b.matrix() * a.matrix();
}

double singlet_joint_prob(double theta) {
    if (!std::isfinite(theta)) throw NonFiniteError("theta must be finite");
    return 0.25 * (1.0 - std::cos(theta));
}

MeasurementAngles::MeasurementAngles(double a1_in, double a2_in, double b1_in, double b2_in)
    : a1(reduce_angle(a1_in)), a2(reduce_angle(a2_in)), b1(reduce_angle(b1_in)), b2(reduce_angle(b2_in)) {}

double ch_value(const MeasurementAngles& angles) {
    return singlet_joint_prob(angles.a1 - angles.b1) - singlet_joint_prob(angles.a1 - angles.b2) +
           singlet_joint_prob(angles.a2 - angles.b1) + singlet_joint_prob(angles.a2 - angles.b2) -
           kSingletSingleProb - kSingletSingleProb;
}

namespace {

// sign = +1 maximizes S, -1 maximizes -S.
double objective(const std::array<double, 4>& x, double sign) {
    return sign * ch_value(MeasurementAngles(x[0], x[1], x[2], x[3]));
}

ChOptimum extremize(double grid_step, int refine_iters, double sign) {
    if (!(grid_step > 0) || !std::isfinite(grid_step)) {
        throw InvariantViolation("grid_step must be positive and finite");
    }
    if (refine_iters < 0) throw InvariantViolation("refine_iters must be >= 0");

    // The full 4-torus scan is capped at 72 points per axis; requests finer
    // than pi/36 are met by the refinement stage instead.
    int steps = static_cast<int>(std::llround(kTwoPi / grid_step));
    steps = std::clamp(steps, 1, 72);
    const double step = kTwoPi / steps;

    // S only reads cosines of grid-point differences, which land back on the
    // grid: one table serves the whole scan.
    std::vector<double> cos_table(static_cast<std::size_t>(steps));
    for (int k = 0; k < steps; ++k) cos_table[static_cast<std::size_t>(k)] = std::cos(step * k);
    auto cos_diff = [&](int i, int j) {
        int k = (i - j) % steps;
        if (k < 0) k += steps;
        return cos_table[static_cast<std::size_t>(k)];
    };

    std::array<int, 4> best_idx{0, 0, 0, 0};
    double best = -std::numeric_limits<double>::infinity();
    for (int i1 = 0; i1 < steps; ++i1) {
        for (int i2 = 0; i2 < steps; ++i2) {
            for (int j1 = 0; j1 < steps; ++j1) {
                const double c11 = cos_diff(i1, j1);
                const double c21 = cos_diff(i2, j1);
                for (int j2 = 0; j2 < steps; ++j2) {
                    const double bracket = c11 - cos_diff(i1, j2) + c21 + cos_diff(i2, j2);
                    const double value = sign * (-0.5 - 0.25 * bracket);
                    // Strict improvement only: lexicographic scan order makes
                    // ties resolve to the smallest angle tuple.
                    if (value > best) {
                        best = value;
                        best_idx = {i1, i2, j1, j2};
                    }
                }
            }
        }
    }

    std::array<double, 4> x{step * best_idx[0], step * best_idx[1], step * best_idx[2], step * best_idx[3]};
    best = objective(x, sign);

    double h = step;
    for (int iter = 0; iter < refine_iters; ++iter) {
        for (int coord = 0; coord < 4; ++coord) {
            const std::array<double, 4> offsets{-h, -0.5 * h, 0.5 * h, h};
            double best_delta = 0;
            double best_here = best;
            for (double delta : offsets) {
                std::array<double, 4> candidate = x;
                candidate[coord] += delta;
                double value = objective(candidate, sign);
                if (value > best_here) {
                    best_here = value;
                    best_delta = delta;
                }
            }
            if (best_delta != 0) {
                x[coord] += best_delta;
                best = best_here;
            }
        }
        h *= 0.5;
    }

    ChOptimum result;
    result.angles = MeasurementAngles(x[0], x[1], x[2], x[3]);
    result.value = sign * best;
    return result;
}

}  // namespace

ChOptimum maximize_ch(double grid_step, int refine_iters) {
    return extremize(grid_step, refine_iters, +1.0);
}

ChOptimum minimize_ch(double grid_step, int refine_iters) {
    return extremize(grid_step, refine_iters, -1.0);
}

}  // namespace bellsets::quantum
