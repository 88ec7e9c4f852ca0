#include "bellsets/interval.hpp"

#include "bellsets/errors.hpp"

#include <doctest.h>

#include <limits>
#include <random>

using bellsets::Interval;
using bellsets::Rational;
using bellsets::Scalar;

TEST_CASE("construction stores endpoints exactly") {
    Interval a(Scalar(1), Scalar(2));
    CHECK(a.lo() == Scalar(1));
    CHECK(a.hi() == Scalar(2));

    Interval point(Scalar(0), Scalar(0));
    CHECK(point.length() == Scalar(0));
}

TEST_CASE("construction rejects bad input") {
    CHECK_THROWS_AS(Interval(Scalar(2), Scalar(1)), bellsets::OrderingError);
    CHECK_THROWS_AS(Interval(Scalar(std::numeric_limits<double>::quiet_NaN()), Scalar(1.0)),
                    bellsets::NonFiniteError);
    CHECK_THROWS_AS(Interval(Scalar(0.0), Scalar(std::numeric_limits<double>::infinity())),
                    bellsets::NonFiniteError);
}

TEST_CASE("moore product on the worked cases") {
    CHECK(product(Interval(Scalar(1), Scalar(2)), Interval(Scalar(3), Scalar(4))) ==
          Interval(Scalar(3), Scalar(8)));
    CHECK(product(Interval(Scalar(-1), Scalar(2)), Interval(Scalar(-3), Scalar(4))) ==
          Interval(Scalar(-6), Scalar(8)));
    CHECK(product(Interval(Scalar(0), Scalar(0)), Interval(Scalar(-5), Scalar(7))) ==
          Interval(Scalar(0), Scalar(0)));
}

TEST_CASE("length") {
    CHECK(Interval(Scalar(3), Scalar(8)).length() == Scalar(5));
    CHECK(Interval(Scalar(0), Scalar(0)).length() == Scalar(0));
    CHECK(Interval(Scalar(-1), Scalar(1)).length() == Scalar(2));
}

TEST_CASE("contains is inclusive at boundaries") {
    Interval i(Scalar(-1), Scalar(0));
    CHECK(i.contains(Scalar(Rational(-1, 2))));
    CHECK(i.contains(Scalar(0)));
    CHECK(i.contains(Scalar(-1)));
    CHECK_FALSE(i.contains(Scalar(Rational(1, 10))));
}

TEST_CASE("exact mode takes no boundary slack, float mode takes 1e-9") {
    Interval exact(Scalar(0), Scalar(1));
    CHECK_FALSE(exact.contains(Scalar(Rational(1000000001, 1000000000))));

    Interval approx(Scalar(0.0), Scalar(1.0));
    CHECK(approx.contains(Scalar(1.0 + 5e-10)));
    CHECK_FALSE(approx.contains(Scalar(1.0 + 5e-9)));
    // mixed mode promotes to float comparisons
    CHECK(exact.contains(Scalar(1.0 + 5e-10)));
}

TEST_CASE("containment soundness over random draws") {
    std::mt19937_64 engine(20260809);
    auto unit = [&engine] { return static_cast<double>(engine() >> 11) * 0x1.0p-53; };

    for (int trial = 0; trial < 10000; ++trial) {
        const bool exact_mode = trial % 2 == 0;
        auto make_scalar = [&](double v) { return exact_mode ? Scalar(bellsets::rational_from_double(v)) : Scalar(v); };
        double a = 4 * unit() - 2;
        double b = 4 * unit() - 2;
        double c = 4 * unit() - 2;
        double d = 4 * unit() - 2;
        Interval i(make_scalar(std::min(a, b)), make_scalar(std::max(a, b)));
        Interval j(make_scalar(std::min(c, d)), make_scalar(std::max(c, d)));

        // interior points by convex combination
        double t = unit();
        double u = unit();
        Scalar x = i.lo() + make_scalar(t) * i.length();
        Scalar y = j.lo() + make_scalar(u) * j.length();
        CAPTURE(trial);
        REQUIRE(product(i, j).contains(x * y));
    }
}

TEST_CASE("product commutes exactly") {
    std::mt19937_64 engine(7);
    for (int trial = 0; trial < 2000; ++trial) {
        auto r = [&engine] { return Rational(static_cast<long>(engine() % 2001) - 1000, 997); };
        Rational a = r(), b = r(), c = r(), d = r();
        if (a > b) std::swap(a, b);
        if (c > d) std::swap(c, d);
        Interval i{Scalar(a), Scalar(b)};
        Interval j{Scalar(c), Scalar(d)};
        REQUIRE(product(i, j) == product(j, i));
    }
}

TEST_CASE("point intervals multiply to point products") {
    std::mt19937_64 engine(11);
    for (int trial = 0; trial < 500; ++trial) {
        Rational a(static_cast<long>(engine() % 4001) - 2000, 1009);
        Rational b(static_cast<long>(engine() % 4001) - 2000, 1013);
        Interval pa{Scalar(a), Scalar(a)};
        Interval pb{Scalar(b), Scalar(b)};
        Rational ab = a * b;
        REQUIRE(product(pa, pb) == Interval(Scalar(ab), Scalar(ab)));
    }
}
