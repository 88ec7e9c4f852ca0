#pragma once

#include "bellsets/scalar.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace bellsets::polytope {

inline constexpr int kMaxEvents = 16;
inline constexpr double kMembershipTolerance = 1e-9;

/// Event/pair structure of a correlation-polytope scenario. Indices are
/// 0-based internally; rendered labels are 1-based (p1, p12, ...).
struct Scenario {
    int n = 0;
    std::vector<std::pair<int, int>> pairs;       // (i, j) with i < j
    std::vector<std::pair<int, int>> exclusions;  // events that cannot co-occur

    void validate() const;
    int dimension() const { return n + static_cast<int>(pairs.size()); }

    /// Four events a1, a2, b1, b2 with the four cross pairs
    /// (a1,b1), (a1,b2), (a2,b1), (a2,b2).
    static Scenario ch();
    /// Two events and their conjunction.
    static Scenario single_pair();
    /// Two mutually exclusive events, no pair term.
    static Scenario exclusive_pair();
};

/// Singles and pair joints, indexed to match Scenario.pairs. Entries are
/// probabilities in [0, 1]; all-exact input keeps every check exact.
struct CorrelationVector {
    std::vector<Scalar> singles;
    std::vector<Scalar> joints;

    bool exact() const;
    void validate(const Scenario& s) const;
};

/// 0/1 vertices derived from truth assignments; exclusion-violating
/// assignments are dropped.
struct VertexSet {
    Scenario scenario;
    std::vector<std::uint32_t> assignments;      // source truth assignment bitmask
    std::vector<std::vector<int>> vertices;      // d-dimensional 0/1 rows

    std::size_t size() const { return vertices.size(); }
};

VertexSet enumerate_vertices(const Scenario& s);

struct MembershipVerdict {
    bool inside = false;
    /// Convex weights over enumerate_vertices(s) order; a reproduction
    /// witness when inside.
    std::vector<Rational> witness;
    /// Minimal total equality violation from the exact LP; 0 when inside
    /// with exact input.
    Rational infeasibility;
};

/// LP feasibility: does some lambda >= 0 with sum 1 mix the vertices into p?
/// Exact over rationals; float input is converted exactly and certified
/// within kMembershipTolerance.
MembershipVerdict membership(const Scenario& s, const CorrelationVector& p);

/// Residuals of the four closed-form conditions for two events and one pair;
/// nonnegative residual means satisfied.
std::vector<std::pair<std::string, Scalar>> boole_conditions_n2(const CorrelationVector& p);

/// S = p(a1,b1) - p(a1,b2) + p(a2,b1) + p(a2,b2) - p(a2) - p(b1) on the CH
/// scenario; classical membership requires -1 <= S <= 0.
Scalar ch_facet_value(const CorrelationVector& q);

/// One facet inequality coeffs . x <= rhs with primitive integer
/// coefficients.
struct FacetInequality {
    std::vector<Rational> coeffs;
    Rational rhs;
    std::string label;
};

bool operator==(const FacetInequality& a, const FacetInequality& b);

/// rhs - coeffs . p ; negative means violated.
Scalar facet_residual(const FacetInequality& facet, const Scenario& s, const CorrelationVector& p);

/// All facets of conv(vertices) by exhaustive supporting-hyperplane search
/// over d-subsets. Requires a full-dimensional vertex set; desk scale only
/// (subset count capped).
std::vector<FacetInequality> enumerate_facets(const VertexSet& vertices);

/// Facets of the two-event exclusive scenario; exactly
/// { p1 >= 0, p2 >= 0, p1 + p2 <= 1 }.
std::vector<FacetInequality> exclusive_pair_facets();

/// The 24 facets of the CH correlation polytope, built from the per-pair
/// conditions plus the 8 CH orientations. enumerate_facets on the CH vertex
/// set reproduces this list exactly (tested).
const std::vector<FacetInequality>& ch_facet_list();

}  // namespace bellsets::polytope
