#include "bellsets/metaset.hpp"

#include "bellsets/errors.hpp"
#include "bellsets/interval.hpp"
#include "bellsets/uncertainty.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

namespace metaset = bellsets::metaset;
namespace quantum = bellsets::quantum;
using bellsets::Interval;
using bellsets::Rational;
using bellsets::Scalar;
using bellsets::ch74::ChiSpec;

namespace {

quantum::StateVector up() {
    Eigen::VectorXcd v(2);
    v << 1, 0;
    return quantum::StateVector(v);
}

quantum::StateVector plus() {
    Eigen::VectorXcd v(2);
    v << 1, 1;
    return quantum::StateVector::normalized(v);
}

}  // namespace

TEST_CASE("decompose splits Z into equal bounds") {
    auto [x1, y1] = metaset::decompose(Scalar(1));
    CHECK(x1 == Scalar(1));
    CHECK(y1 == Scalar(1));

    auto [x4, y4] = metaset::decompose(Scalar(4));
    CHECK(x4 == Scalar(2));
    CHECK(y4 == Scalar(2));

    CHECK_THROWS_AS(metaset::decompose(Scalar(0)), bellsets::EmptyChiError);
    CHECK_THROWS_AS(metaset::decompose(Scalar(-1)), bellsets::InvariantViolation);
}

TEST_CASE("decompose is exact on rational squares") {
    for (long num = 1; num <= 30; ++num) {
        for (long den = 1; den <= 7; ++den) {
            Rational root(num, den);
            Rational square = root * root;
            auto [x, y] = metaset::decompose(Scalar(square));
            REQUIRE(x.exact());
            REQUIRE((x * y).rational() == square);
            REQUIRE(x.rational() == root);
        }
    }
    // irrational root falls back to float mode
    auto [x, y] = metaset::decompose(Scalar(2));
    CHECK_FALSE(x.exact());
    CHECK(x.to_double() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("subset_check on the worked boundary cases") {
    ChiSpec unit{Scalar(1), Scalar(1)};

    auto equal = metaset::subset_check(unit, Scalar(1));
    CHECK(equal.holds);
    CHECK_FALSE(equal.witness.has_value());
    CHECK(equal.samples_checked == 0);

    auto strict = metaset::subset_check(unit, Scalar(2));
    CHECK(strict.holds);
    REQUIRE(strict.witness.has_value());
    CHECK(*strict.witness == Scalar(Rational(-3, 2)));
    CHECK(strict.psi_range.contains(*strict.witness));
    CHECK_FALSE(strict.chi_range.contains(*strict.witness));

    auto failing = metaset::subset_check(unit, Scalar(Rational(1, 2)));
    CHECK_FALSE(failing.holds);
    REQUIRE(failing.witness.has_value());
    CHECK(*failing.witness == Scalar(Rational(-3, 4)));
    CHECK(failing.chi_range.contains(*failing.witness));
    CHECK_FALSE(failing.psi_range.contains(*failing.witness));
}

TEST_CASE("sampled inclusion with Z = 1 from the Pauli commutator") {
    ChiSpec unit{Scalar(1), Scalar(1)};
    auto report = metaset::sampled_subset_check(unit, quantum::sigma_x(), quantum::sigma_y(), up(), 10000, 1);
    CHECK(report.holds);
    CHECK(report.escapes == 0);
    CHECK(report.samples_checked == 10000);
    CHECK(report.z_width.to_double() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("degenerate Z = 0 fails with a sampled witness") {
    ChiSpec unit{Scalar(1), Scalar(1)};
    auto report = metaset::sampled_subset_check(unit, quantum::sigma_x(), quantum::sigma_y(), plus(), 1000, 2);
    CHECK_FALSE(report.holds);
    CHECK(report.escapes > 0);
    REQUIRE(report.witness.has_value());
    CHECK(*report.witness < Scalar(0));
    CHECK(report.chi_range.contains(*report.witness));
    CHECK_FALSE(report.psi_range.contains(*report.witness));
}

TEST_CASE("strict inclusion with small chi bounds") {
    ChiSpec small{Scalar(Rational(1, 2)), Scalar(Rational(1, 2))};
    auto report = metaset::sampled_subset_check(small, quantum::sigma_x(), quantum::sigma_y(), up(), 1000, 3);
    CHECK(report.holds);
    CHECK(report.escapes == 0);
    REQUIRE(report.witness.has_value());
    CHECK(report.psi_range.contains(*report.witness));
    CHECK_FALSE(report.chi_range.contains(*report.witness));
}

TEST_CASE("holds iff Z >= XY over the rational grid, cross-validated") {
    for (int xi = 1; xi <= 20; ++xi) {
        for (int yi = 1; yi <= 20; ++yi) {
            for (int zi = 1; zi <= 20; ++zi) {
                Rational x(xi, 10), y(yi, 10), z(zi, 10);
                ChiSpec chi{Scalar(x), Scalar(y)};
                auto report = metaset::subset_check(chi, Scalar(z));
                bool expected = z >= x * y;
                REQUIRE(report.holds == expected);

                // direct endpoint containment in the value ranges
                Interval psi_range(Scalar(-z), Scalar(0));
                bool by_intervals =
                    psi_range.contains(Scalar(-(x * y))) && psi_range.contains(Scalar(0));
                REQUIRE(report.holds == by_intervals);
            }
        }
    }
}

TEST_CASE("whenever the analytic check holds the sampler finds no escape") {
    std::mt19937_64 engine(404);
    int holding = 0;
    for (int config = 0; config < 100; ++config) {
        // Z is pinned at 1 by (sigma_x, sigma_y, |up>); draw bounds with XY <= 1
        Rational x(1 + engine() % 100, 100);
        Rational y(1 + engine() % 100, 100);
        ChiSpec chi{Scalar(x), Scalar(y)};
        auto analytic = metaset::subset_check(chi, Scalar(1));
        auto sampled =
            metaset::sampled_subset_check(chi, quantum::sigma_x(), quantum::sigma_y(), up(), 200, engine());
        if (analytic.holds) {
            ++holding;
            REQUIRE(sampled.escapes == 0);
            REQUIRE(sampled.holds);
        } else {
            REQUIRE_FALSE(sampled.holds);
        }
    }
    CHECK(holding == 100);  // XY <= 1 for all draws above
}

TEST_CASE("consistency also holds for operator-derived Z away from 1") {
    std::mt19937_64 engine(808);
    auto unit = [&engine] { return static_cast<double>(engine() >> 11) * 0x1.0p-53; };
    int holding = 0;
    for (int config = 0; config < 100; ++config) {
        // rotate the state so Z = |<sz>| sweeps (0, 1]
        double theta = 0.45 * 3.141592653589793 * unit();
        Eigen::VectorXcd amp(2);
        amp << std::cos(theta / 2), std::sin(theta / 2);
        quantum::StateVector psi{amp};
        double z = bellsets::uncertainty::z_bound(quantum::commutator(quantum::sigma_x(), quantum::sigma_y()), psi);
        REQUIRE(z > 0.05);

        // rational bounds with XY strictly below Z (bounds need not be <= 1)
        Rational xy_cap = bellsets::rational_from_double(0.9 * z);
        Rational x(1 + engine() % 50, 100);
        Rational shrink(1 + engine() % 99, 100);
        Rational y = xy_cap * shrink / x;
        ChiSpec chi{Scalar(x), Scalar(y)};

        auto sampled = metaset::sampled_subset_check(chi, quantum::sigma_x(), quantum::sigma_y(), psi, 200,
                                                     engine());
        if (sampled.holds) ++holding;
        REQUIRE(sampled.escapes == 0);
        REQUIRE(sampled.holds);
    }
    CHECK(holding == 100);
}

TEST_CASE("inclusion report ranges are the value ranges") {
    ChiSpec chi{Scalar(Rational(1, 2)), Scalar(Rational(1, 3))};
    auto report = metaset::subset_check(chi, Scalar(Rational(2, 3)));
    CHECK(report.chi_range == Interval(Scalar(Rational(-1, 6)), Scalar(0)));
    CHECK(report.psi_range == Interval(Scalar(Rational(-2, 3)), Scalar(0)));
    CHECK(report.holds);
}
