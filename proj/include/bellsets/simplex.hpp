#pragma once

#include "bellsets/scalar.hpp"

#include <vector>

namespace bellsets::lp {

struct FeasibilityResult {
    bool feasible = false;
    /// Structural solution; meaningful as an exact witness when
    /// infeasibility == 0, as an approximate one when it is <= tolerance.
    std::vector<Rational> x;
    /// Phase-one optimum: the smallest total artificial mass, i.e. the
    /// minimal total equality violation reachable with x >= 0.
    Rational infeasibility;
};

/// Exact phase-one simplex for { A x = b, x >= 0 } over rationals, Bland's
/// rule throughout (no cycling). a is dense row-major, m x k.
FeasibilityResult solve_equality_feasibility(const std::vector<std::vector<Rational>>& a,
                                             const std::vector<Rational>& b, const Rational& tolerance);

}  // namespace bellsets::lp
