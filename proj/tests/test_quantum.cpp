#include "bellsets/quantum.hpp"

#include "bellsets/errors.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <random>

namespace quantum = bellsets::quantum;
using quantum::HermitianOperator;
using quantum::StateVector;

namespace {

constexpr double kPi = std::numbers::pi;

StateVector up() {
    Eigen::VectorXcd v(2);
    v << 1, 0;
    return StateVector(v);
}

StateVector plus() {
    Eigen::VectorXcd v(2);
    v << 1, 1;
    return StateVector::normalized(v);
}

}  // namespace

TEST_CASE("validation rejects malformed operators and states") {
    Eigen::MatrixXcd not_hermitian(2, 2);
    not_hermitian << 0, 1, 2, 0;
    CHECK_THROWS_AS(HermitianOperator{not_hermitian}, bellsets::InvariantViolation);

    Eigen::MatrixXcd rectangular(2, 3);
    rectangular.setZero();
    CHECK_THROWS_AS(HermitianOperator{rectangular}, bellsets::DimensionMismatch);

    Eigen::VectorXcd unnormalized(2);
    unnormalized << 1, 1;
    CHECK_THROWS_AS(StateVector{unnormalized}, bellsets::InvariantViolation);

    Eigen::VectorXcd four(4);
    four << 1, 0, 0, 0;
    CHECK_THROWS_AS(quantum::expectation(quantum::sigma_x(), StateVector(four)), bellsets::DimensionMismatch);
}

TEST_CASE("expectation on eigenstates and against the hand-rolled oracle") {
    CHECK(quantum::expectation(quantum::sigma_z(), up()) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(quantum::expectation(quantum::sigma_x(), plus()) == doctest::Approx(1.0).epsilon(1e-12));

    oracle::CVector up_vec = {oracle::Complex(1), oracle::Complex(0)};
    double expected = oracle::expectation(oracle::pauli_x(), up_vec).real();
    REQUIRE(expected == doctest::Approx(0.0));
    CHECK(quantum::expectation(quantum::sigma_x(), up()) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("spread on eigenstates and against the oracle") {
    CHECK(quantum::spread(quantum::sigma_z(), up()) == doctest::Approx(0.0));
    CHECK(quantum::spread(quantum::sigma_x(), plus()) == doctest::Approx(0.0));

    // <sx^2> = 1, <sx> = 0 on |up>
    oracle::CVector up_vec = {oracle::Complex(1), oracle::Complex(0)};
    auto sq = oracle::matmul(oracle::pauli_x(), oracle::pauli_x());
    double second = oracle::expectation(sq, up_vec).real();
    double first = oracle::expectation(oracle::pauli_x(), up_vec).real();
    REQUIRE(std::sqrt(second - first * first) == doctest::Approx(1.0));
    CHECK(quantum::spread(quantum::sigma_x(), up()) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("commutators") {
    CHECK(quantum::commutator(quantum::sigma_x(), quantum::sigma_x()).cwiseAbs().maxCoeff() ==
          doctest::Approx(0.0));

    // [sx, sy] = 2i sz via hand multiplication
    auto lhs = quantum::commutator(quantum::sigma_x(), quantum::sigma_y());
    auto xy = oracle::matmul(oracle::pauli_x(), oracle::pauli_y());
    auto yx = oracle::matmul(oracle::pauli_y(), oracle::pauli_x());
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            oracle::Complex expected = xy[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -
                                       yx[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            CHECK(std::abs(lhs(r, c) - expected) < 1e-12);
        }
    }
    CHECK(std::abs(lhs(0, 0) - oracle::Complex(0, 2)) < 1e-12);
    CHECK(std::abs(lhs(1, 1) - oracle::Complex(0, -2)) < 1e-12);

    std::mt19937_64 engine(5);
    for (int trial = 0; trial < 200; ++trial) {
        HermitianOperator a{oracle::random_hermitian(engine, 3)};
        HermitianOperator b{oracle::random_hermitian(engine, 3)};
        Eigen::MatrixXcd anti = quantum::commutator(a, b) + quantum::commutator(b, a);
        REQUIRE(anti.cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("singlet joint probability, including the projector oracle") {
    CHECK(quantum::singlet_joint_prob(0) == doctest::Approx(0.0));
    CHECK(quantum::singlet_joint_prob(kPi) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(quantum::singlet_joint_prob(kPi / 2) ==
          doctest::Approx(oracle::singlet_joint_prob(kPi / 2, 0)).epsilon(1e-12));
    CHECK(quantum::singlet_joint_prob(kPi / 2) == doctest::Approx(0.25).epsilon(1e-12));

    std::mt19937_64 engine(17);
    auto unit = [&engine] { return static_cast<double>(engine() >> 11) * 0x1.0p-53; };
    for (int trial = 0; trial < 100; ++trial) {
        double a = 8 * unit() - 4;
        double b = 8 * unit() - 4;
        REQUIRE(quantum::singlet_joint_prob(a - b) == doctest::Approx(oracle::singlet_joint_prob(a, b)).epsilon(1e-10));
    }
}

TEST_CASE("anticorrelation sum rule") {
    std::mt19937_64 engine(23);
    auto unit = [&engine] { return static_cast<double>(engine() >> 11) * 0x1.0p-53; };
    for (int trial = 0; trial < 1000; ++trial) {
        double theta = 20 * unit() - 10;
        double total = quantum::singlet_joint_prob(theta) + quantum::singlet_joint_prob(kPi - theta);
        REQUIRE(total == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("ch_value on the worked angle sets") {
    CHECK(quantum::ch_value({1.0, 1.0, 1.0, 1.0}) == doctest::Approx(-1.0).epsilon(1e-12));

    const double optimum = (std::sqrt(2.0) - 1.0) / 2.0;
    CHECK(quantum::ch_value({0, -kPi / 2, 3 * kPi / 4, kPi / 4}) == doctest::Approx(optimum).epsilon(1e-12));

    // hand cosines: sqrt2/2, sqrt2/2, sqrt2/2, -sqrt2/2 through the closed form
    double s = quantum::ch_value({0, kPi / 2, kPi / 4, -kPi / 4});
    CHECK(s == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(s == doctest::Approx(oracle::ch_combination(0, kPi / 2, kPi / 4, -kPi / 4)).epsilon(1e-12));
}

TEST_CASE("maximize_ch reaches the quantum optimum") {
    const double expected = (std::sqrt(2.0) - 1.0) / 2.0;
    double oracle_max = oracle::ch_extremum(+1.0);
    REQUIRE(oracle_max == doctest::Approx(expected).epsilon(1e-9));

    auto optimum = quantum::maximize_ch(kPi / 360, 50);
    CHECK(optimum.value == doctest::Approx(oracle_max).epsilon(1e-6));
    CHECK(std::abs(optimum.value - expected) < 1e-6);
    CHECK(quantum::ch_value(optimum.angles) == doctest::Approx(optimum.value).epsilon(1e-12));
}

TEST_CASE("minimize_ch reaches the opposite bound") {
    const double expected = -(1.0 + std::sqrt(2.0)) / 2.0;
    double oracle_min = oracle::ch_extremum(-1.0);
    REQUIRE(oracle_min == doctest::Approx(expected).epsilon(1e-9));

    auto optimum = quantum::minimize_ch(kPi / 360, 50);
    CHECK(optimum.value == doctest::Approx(oracle_min).epsilon(1e-6));
    CHECK(std::abs(optimum.value - expected) < 1e-6);
}

TEST_CASE("coarse pass alone already shows a violation") {
    auto coarse = quantum::maximize_ch(kPi / 4, 0);
    CHECK(coarse.value >= 0.0);
}

TEST_CASE("grid ties resolve to the lexicographically smallest tuple") {
    auto first = quantum::maximize_ch(kPi / 18, 0);
    auto second = quantum::maximize_ch(kPi / 18, 0);
    CHECK(first.angles.a1 == second.angles.a1);
    CHECK(first.angles.a2 == second.angles.a2);
    CHECK(first.angles.b1 == second.angles.b1);
    CHECK(first.angles.b2 == second.angles.b2);
}

TEST_CASE("hermitian expectations stay real over random inputs") {
    std::mt19937_64 engine(31);
    for (int trial = 0; trial < 10000; ++trial) {
        int dim = 2 + static_cast<int>(engine() % 3);
        HermitianOperator op{oracle::random_hermitian(engine, dim)};
        StateVector psi{oracle::random_state(engine, dim)};
        // expectation() itself rejects imaginary residue >= 1e-9
        REQUIRE_NOTHROW(quantum::expectation(op, psi));
    }
}

TEST_CASE("spread vanishes exactly on eigenvectors and only there") {
    std::mt19937_64 engine(37);
    for (int trial = 0; trial < 300; ++trial) {
        int dim = 2 + static_cast<int>(engine() % 3);
        Eigen::MatrixXcd m = oracle::random_hermitian(engine, dim);
        HermitianOperator op{m};
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
        REQUIRE(solver.info() == Eigen::Success);

        StateVector eigenstate{solver.eigenvectors().col(0)};
        REQUIRE(quantum::spread(op, eigenstate) < 1e-9);

        double gap = solver.eigenvalues()(1) - solver.eigenvalues()(0);
        if (gap > 1e-3) {
            Eigen::VectorXcd mix =
                (solver.eigenvectors().col(0) + solver.eigenvectors().col(1)) / std::sqrt(2.0);
            REQUIRE(quantum::spread(op, StateVector::normalized(mix)) > 1e-9);
        }
    }
}

TEST_CASE("ch_value honors the quantum bounds over random angles") {
    std::mt19937_64 engine(41);
    auto unit = [&engine] { return static_cast<double>(engine() >> 11) * 0x1.0p-53; };
    const double upper = (std::sqrt(2.0) - 1.0) / 2.0 + 1e-9;
    const double lower = -(1.0 + std::sqrt(2.0)) / 2.0 - 1e-9;
    for (int trial = 0; trial < 100000; ++trial) {
        quantum::MeasurementAngles angles{20 * unit() - 10, 20 * unit() - 10, 20 * unit() - 10,
                                          20 * unit() - 10};
        double s = quantum::ch_value(angles);
        REQUIRE(s <= upper);
        REQUIRE(s >= lower);
    }
}

TEST_CASE("angles reduce to [0, 2pi)") {
    quantum::MeasurementAngles angles{-kPi / 2, 5 * kPi, 0, 2 * kPi};
    CHECK(angles.a1 == doctest::Approx(3 * kPi / 2));
    CHECK(angles.a2 == doctest::Approx(kPi));
    CHECK(angles.b1 == 0.0);
    CHECK(angles.b2 == 0.0);
}
