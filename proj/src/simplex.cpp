#include "bellsets/simplex.hpp"

#include "bellsets/errors.hpp"

#include <cstddef>

namespace bellsets::lp {

FeasibilityResult solve_equality_feasibility(const std::vector<std::vector<Rational>>& a,
                                             const std::vector<Rational>& b, const Rational& tolerance) {
    const std::size_t m = a.size();
    if (b.size() != m) throw DimensionMismatch("simplex: rhs length does not match row count");
    const std::size_t k = m == 0 ? 0 : a[0].size();
    for (const auto& row : a) {
        if (row.size() != k) throw DimensionMismatch("simplex: ragged constraint matrix");
    }

    const std::size_t cols = k + m;  // structural + artificial
    // tableau[i] holds the row coefficients; rhs kept separately.
    std::vector<std::vector<Rational>> tableau(m, std::vector<Rational>(cols, Rational(0)));
    std::vector<Rational> rhs(m);
    std::vector<std::size_t> basis(m);

    for (std::size_t i = 0; i < m; ++i) {
        bool flip = b[i] < 0;
        for (std::size_t j = 0; j < k; ++j) tableau[i][j] = flip ? Rational(-a[i][j]) : a[i][j];
        rhs[i] = flip ? Rational(-b[i]) : b[i];
        tableau[i][k + i] = 1;
        basis[i] = k + i;
    }

    // Reduced costs for min sum(artificials): cost 1 on artificials, basis
    // starts all-artificial.
    std::vector<Rational> reduced(cols, Rational(0));
    for (std::size_t j = 0; j < k; ++j) {
        Rational sum = 0;
        for (std::size_t i = 0; i < m; ++i) sum += tableau[i][j];
        reduced[j] = -sum;
    }

    while (true) {
        // Bland: smallest-index column with negative reduced cost.
        std::size_t enter = cols;
        for (std::size_t j = 0; j < cols; ++j) {
            if (reduced[j] < 0) {
                enter = j;
                break;
            }
        }
        if (enter == cols) break;  // optimal

        std::size_t leave = m;
        Rational best_ratio = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (tableau[i][enter] <= 0) continue;
            Rational ratio = rhs[i] / tableau[i][enter];
            if (leave == m || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == m) {
            throw Error("phase-one simplex reported an unbounded direction");
        }

        // Gauss-Jordan pivot on (leave, enter).
        Rational pivot = tableau[leave][enter];
        for (std::size_t j = 0; j < cols; ++j) tableau[leave][j] /= pivot;
        rhs[leave] /= pivot;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave) continue;
            Rational factor = tableau[i][enter];
            if (factor == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) tableau[i][j] -= factor * tableau[leave][j];
            rhs[i] -= factor * rhs[leave];
        }
        Rational factor = reduced[enter];
        if (factor != 0) {
            for (std::size_t j = 0; j < cols; ++j) reduced[j] -= factor * tableau[leave][j];
        }
        basis[leave] = enter;
    }

    FeasibilityResult result;
    result.x.assign(k, Rational(0));
    result.infeasibility = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < k) {
            result.x[basis[i]] = rhs[i];
        } else {
            result.infeasibility += rhs[i];
        }
    }
    result.feasible = result.infeasibility <= tolerance;
    return result;
}

}  // namespace bellsets::lp
