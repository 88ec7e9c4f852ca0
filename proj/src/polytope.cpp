#include "bellsets/polytope.hpp"

#include "bellsets/errors.hpp"
#include "bellsets/interval.hpp"
#include "bellsets/simplex.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace bellsets::polytope {

namespace {

void validate_pair_list(const std::vector<std::pair<int, int>>& list, int n, const char* what) {
    std::set<std::pair<int, int>> seen;
    for (auto [i, j] : list) {
        if (i < 0 || j < 0 || i >= n || j >= n) {
            throw InvariantViolation(std::string(what) + " index out of range");
        }
        if (i >= j) throw InvariantViolation(std::string(what) + " must be ordered i < j");
        if (!seen.insert({i, j}).second) throw InvariantViolation(std::string(what) + " contains duplicates");
    }
}

std::string single_name(int i) {
    return "p" + std::to_string(i + 1);
}

std::string joint_name(int i, int j) {
    if (i < 9 && j < 9) return "p" + std::to_string(i + 1) + std::to_string(j + 1);
    return "p(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

std::string coord_name(const Scenario& s, std::size_t coord) {
    if (coord < static_cast<std::size_t>(s.n)) return single_name(static_cast<int>(coord));
    auto [i, j] = s.pairs[coord - static_cast<std::size_t>(s.n)];
    return joint_name(i, j);
}

std::string render_term(const Rational& coeff, const std::string& name, bool first) {
    std::ostringstream out;
    Rational mag = coeff < 0 ? Rational(-coeff) : coeff;
    if (first) {
        if (coeff < 0) out << "-";
    } else {
        out << (coeff < 0 ? " - " : " + ");
    }
    if (mag != 1) out << format_rational(mag) << "*";
    out << name;
    return out.str();
}

std::string render_inequality(const Scenario& s, const std::vector<Rational>& coeffs, const Rational& rhs) {
    std::vector<std::size_t> nonzero;
    for (std::size_t c = 0; c < coeffs.size(); ++c) {
        if (coeffs[c] != 0) nonzero.push_back(c);
    }
    // a - b <= 0  ->  "a <= b"
    if (rhs == 0 && nonzero.size() == 2) {
        const Rational& c0 = coeffs[nonzero[0]];
        const Rational& c1 = coeffs[nonzero[1]];
        if (c0 == 1 && c1 == -1) return coord_name(s, nonzero[0]) + " <= " + coord_name(s, nonzero[1]);
        if (c0 == -1 && c1 == 1) return coord_name(s, nonzero[1]) + " <= " + coord_name(s, nonzero[0]);
    }
    // all-negative rows render as lower bounds: "p1 >= 0"
    bool all_negative = !nonzero.empty() &&
                        std::all_of(nonzero.begin(), nonzero.end(), [&](std::size_t c) { return coeffs[c] < 0; });
    if (all_negative) {
        std::ostringstream out;
        bool first = true;
        for (std::size_t c : nonzero) {
            out << render_term(Rational(-coeffs[c]), coord_name(s, c), first);
            first = false;
        }
        out << " >= " << format_rational(Rational(-rhs));
        return out.str();
    }
    std::ostringstream out;
    bool first = true;
    for (std::size_t c : nonzero) {
        out << render_term(coeffs[c], coord_name(s, c), first);
        first = false;
    }
    out << " <= " << format_rational(rhs);
    return out.str();
}

}  // namespace

void Scenario::validate() const {
    if (n < 1) throw InvariantViolation("scenario needs at least one event");
    if (n > kMaxEvents) throw CapExceeded("scenario exceeds the " + std::to_string(kMaxEvents) + "-event cap");
    validate_pair_list(pairs, n, "pair");
    validate_pair_list(exclusions, n, "exclusion");
}

Scenario Scenario::ch() {
    return Scenario{4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}, {}};
}

Scenario Scenario::single_pair() {
    return Scenario{2, {{0, 1}}, {}};
}

Scenario Scenario::exclusive_pair() {
    return Scenario{2, {}, {{0, 1}}};
}

bool CorrelationVector::exact() const {
    auto is_exact = [](const Scalar& v) { return v.exact(); };
    return std::all_of(singles.begin(), singles.end(), is_exact) &&
           std::all_of(joints.begin(), joints.end(), is_exact);
}

void CorrelationVector::validate(const Scenario& s) const {
    s.validate();
    if (singles.size() != static_cast<std::size_t>(s.n) || joints.size() != s.pairs.size()) {
        throw DimensionMismatch("correlation vector does not match scenario dimension");
    }
    Interval unit(Scalar(0), Scalar(1));
    for (const Scalar& v : singles) {
        if (!unit.contains(v)) throw InvariantViolation("single probability out of [0,1]: " + v.str());
    }
    for (const Scalar& v : joints) {
        if (!unit.contains(v)) throw InvariantViolation("joint probability out of [0,1]: " + v.str());
    }
}

VertexSet enumerate_vertices(const Scenario& s) {
    s.validate();
    VertexSet set;
    set.scenario = s;
    const int d = s.dimension();
    std::set<std::vector<int>> seen;
    for (std::uint32_t t = 0; t < (1u << s.n); ++t) {
        bool excluded = false;
        for (auto [i, j] : s.exclusions) {
            if ((t >> i & 1u) && (t >> j & 1u)) {
                excluded = true;
                break;
            }
        }
        if (excluded) continue;
        std::vector<int> v(static_cast<std::size_t>(d));
        for (int i = 0; i < s.n; ++i) v[static_cast<std::size_t>(i)] = static_cast<int>(t >> i & 1u);
        for (std::size_t k = 0; k < s.pairs.size(); ++k) {
            auto [i, j] = s.pairs[k];
            v[static_cast<std::size_t>(s.n) + k] = static_cast<int>((t >> i & 1u) & (t >> j & 1u));
        }
        if (seen.insert(v).second) {
            set.assignments.push_back(t);
            set.vertices.push_back(std::move(v));
        }
    }
    return set;
}

MembershipVerdict membership(const Scenario& s, const CorrelationVector& p) {
    p.validate(s);
    VertexSet vset = enumerate_vertices(s);
    const std::size_t d = static_cast<std::size_t>(s.dimension());
    const std::size_t count = vset.size();

    std::vector<std::vector<Rational>> rows(d + 1, std::vector<Rational>(count, Rational(0)));
    std::vector<Rational> rhs(d + 1);
    for (std::size_t v = 0; v < count; ++v) {
        for (std::size_t r = 0; r < d; ++r) rows[r][v] = vset.vertices[v][r];
        rows[d][v] = 1;
    }
    for (std::size_t r = 0; r < d; ++r) {
        const Scalar& value = r < static_cast<std::size_t>(s.n)
                                  ? p.singles[r]
                                  : p.joints[r - static_cast<std::size_t>(s.n)];
        rhs[r] = value.to_rational();
    }
    rhs[d] = 1;

    Rational tolerance = p.exact() ? Rational(0) : Rational(1, 1000000000);
    lp::FeasibilityResult lp = lp::solve_equality_feasibility(rows, rhs, tolerance);

    MembershipVerdict verdict;
    verdict.inside = lp.feasible;
    verdict.infeasibility = lp.infeasibility;
    if (lp.feasible) verdict.witness = std::move(lp.x);
    return verdict;
}

std::vector<std::pair<std::string, Scalar>> boole_conditions_n2(const CorrelationVector& p) {
    if (p.singles.size() != 2 || p.joints.size() != 1) {
        throw DimensionMismatch("boole_conditions_n2 expects two singles and one joint");
    }
    const Scalar& p1 = p.singles[0];
    const Scalar& p2 = p.singles[1];
    const Scalar& p12 = p.joints[0];
    return {
        {"p12 >= 0", p12},
        {"p1 - p12 >= 0", p1 - p12},
        {"p2 - p12 >= 0", p2 - p12},
        {"1 - p1 - p2 + p12 >= 0", Scalar(1) - p1 - p2 + p12},
    };
}

Scalar ch_facet_value(const CorrelationVector& q) {
    if (q.singles.size() != 4 || q.joints.size() != 4) {
        throw DimensionMismatch("ch_facet_value expects the 4-event, 4-pair CH scenario");
    }
    return q.joints[0] - q.joints[1] + q.joints[2] + q.joints[3] - q.singles[1] - q.singles[2];
}

bool operator==(const FacetInequality& a, const FacetInequality& b) {
    return a.coeffs == b.coeffs && a.rhs == b.rhs;
}

Scalar facet_residual(const FacetInequality& facet, const Scenario& s, const CorrelationVector& p) {
    p.validate(s);
    if (facet.coeffs.size() != static_cast<std::size_t>(s.dimension())) {
        throw DimensionMismatch("facet dimension does not match scenario");
    }
    Scalar lhs(0);
    for (std::size_t c = 0; c < facet.coeffs.size(); ++c) {
        const Scalar& value = c < static_cast<std::size_t>(s.n)
                                  ? p.singles[c]
                                  : p.joints[c - static_cast<std::size_t>(s.n)];
        lhs += Scalar(facet.coeffs[c]) * value;
    }
    return Scalar(facet.rhs) - lhs;
}

namespace {

// Primitive integer scaling: clear denominators, divide by the gcd.
void canonicalize(std::vector<Rational>& coeffs, Rational& rhs) {
    BigInt lcm = 1;
    auto fold_lcm = [&lcm](const Rational& r) {
        BigInt den = denominator(r);
        lcm = lcm / gcd(lcm, den) * den;
    };
    for (const Rational& c : coeffs) fold_lcm(c);
    fold_lcm(rhs);

    BigInt common = 0;
    auto fold_gcd = [&common](const Rational& r) { common = gcd(common, BigInt(numerator(r))); };
    for (Rational& c : coeffs) {
        c *= lcm;
        fold_gcd(c);
    }
    rhs *= lcm;
    fold_gcd(rhs);
    if (common == 0) return;
    for (Rational& c : coeffs) c /= common;
    rhs /= common;
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size();
    const std::size_t cols = m[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t sel = rows;
        for (std::size_t r = row; r < rows; ++r) {
            if (m[r][col] != 0) {
                sel = r;
                break;
            }
        }
        if (sel == rows) continue;
        std::swap(m[row], m[sel]);
        Rational pivot = m[row][col];
        for (std::size_t c = col; c < cols; ++c) m[row][c] /= pivot;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == row) continue;
            Rational factor = m[r][col];
            if (factor == 0) continue;
            for (std::size_t c = col; c < cols; ++c) m[r][c] -= factor * m[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t affine_rank(const std::vector<std::vector<int>>& vertices, std::size_t d) {
    if (vertices.size() < 2) return 0;
    std::vector<std::vector<Rational>> diffs;
    diffs.reserve(vertices.size() - 1);
    for (std::size_t v = 1; v < vertices.size(); ++v) {
        std::vector<Rational> row(d);
        for (std::size_t c = 0; c < d; ++c) row[c] = vertices[v][c] - vertices[0][c];
        diffs.push_back(std::move(row));
    }
    return rref(diffs).size();
}

}  // namespace

std::vector<FacetInequality> enumerate_facets(const VertexSet& vset) {
    const Scenario& s = vset.scenario;
    const std::size_t d = static_cast<std::size_t>(s.dimension());
    const std::size_t count = vset.size();
    if (count < d + 1) {
        throw InvariantViolation("facet enumeration needs at least d+1 vertices");
    }
    if (affine_rank(vset.vertices, d) != d) {
        throw InvariantViolation("facet enumeration requires a full-dimensional vertex set");
    }

    // Subset-count cap keeps this desk scale (the CH polytope is C(16,8)).
    double subsets = 1;
    for (std::size_t i = 0; i < d; ++i) subsets *= static_cast<double>(count - i) / static_cast<double>(i + 1);
    if (subsets > 2e6) throw CapExceeded("facet enumeration subset count exceeds desk-scale cap");

    std::set<std::pair<std::vector<Rational>, Rational>> found;

    auto next_combination = [count, d](std::vector<std::size_t>& pick) {
        std::size_t i = d;
        while (i > 0) {
            --i;
            if (pick[i] != i + count - d) {
                ++pick[i];
                for (std::size_t j = i + 1; j < d; ++j) pick[j] = pick[j - 1] + 1;
                return true;
            }
        }
        return false;
    };

    std::vector<std::size_t> pick(d);
    for (std::size_t i = 0; i < d; ++i) pick[i] = i;
    do {
        // Hyperplane through the d picked points: nullspace of [v | 1].
        std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d + 1));
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < d; ++c) m[r][c] = vset.vertices[pick[r]][c];
            m[r][d] = 1;
        }
        std::vector<std::size_t> pivots = rref(m);
        if (pivots.size() != d) continue;  // affinely dependent pick

        // Unique (up to scale) normal: free column gets 1, pivots read off.
        std::size_t free_col = d;
        std::vector<bool> is_pivot(d + 1, false);
        for (std::size_t c : pivots) is_pivot[c] = true;
        for (std::size_t c = 0; c <= d; ++c) {
            if (!is_pivot[c]) {
                free_col = c;
                break;
            }
        }
        std::vector<Rational> w(d + 1, Rational(0));
        w[free_col] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) w[pivots[r]] = -m[r][free_col];

        std::vector<Rational> coeffs(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(d));
        Rational rhs = -w[d];

        // Supporting side: all vertices on one side makes it a facet.
        bool has_neg = false;
        bool has_pos = false;
        for (const auto& vertex : vset.vertices) {
            Rational e = -rhs;
            for (std::size_t c = 0; c < d; ++c) {
                if (vertex[c] != 0) e += coeffs[c];
            }
            if (e > 0) has_pos = true;
            if (e < 0) has_neg = true;
            if (has_pos && has_neg) break;
        }
        if (has_pos == has_neg) continue;  // cuts through, or fully contained
        if (has_pos) {
            for (Rational& c : coeffs) c = -c;
            rhs = -rhs;
        }
        canonicalize(coeffs, rhs);
        found.emplace(std::move(coeffs), std::move(rhs));
    } while (next_combination(pick));

    std::vector<FacetInequality> facets;
    facets.reserve(found.size());
    for (const auto& [coeffs, rhs] : found) {
        FacetInequality f{coeffs, rhs, render_inequality(s, coeffs, rhs)};
        facets.push_back(std::move(f));
    }
    return facets;
}

std::vector<FacetInequality> exclusive_pair_facets() {
    return enumerate_facets(enumerate_vertices(Scenario::exclusive_pair()));
}

const std::vector<FacetInequality>& ch_facet_list() {
    static const std::vector<FacetInequality> facets = [] {
        const Scenario s = Scenario::ch();
        const std::size_t d = static_cast<std::size_t>(s.dimension());
        std::vector<FacetInequality> list;

        auto add = [&](std::vector<Rational> coeffs, Rational rhs) {
            canonicalize(coeffs, rhs);
            FacetInequality f{std::move(coeffs), std::move(rhs), {}};
            f.label = render_inequality(s, f.coeffs, f.rhs);
            list.push_back(std::move(f));
        };

        // Per-pair conditions (the n=2 Boole list lifted to each pair).
        for (std::size_t k = 0; k < s.pairs.size(); ++k) {
            auto [i, j] = s.pairs[k];
            std::size_t joint = static_cast<std::size_t>(s.n) + k;
            std::vector<Rational> c(d, Rational(0));
            c[joint] = -1;
            add(c, 0);  // p_ij >= 0
            std::fill(c.begin(), c.end(), Rational(0));
            c[joint] = 1;
            c[static_cast<std::size_t>(i)] = -1;
            add(c, 0);  // p_ij <= p_i
            std::fill(c.begin(), c.end(), Rational(0));
            c[joint] = 1;
            c[static_cast<std::size_t>(j)] = -1;
            add(c, 0);  // p_ij <= p_j
            std::fill(c.begin(), c.end(), Rational(0));
            c[static_cast<std::size_t>(i)] = 1;
            c[static_cast<std::size_t>(j)] = 1;
            c[joint] = -1;
            add(c, 1);  // p_i + p_j - p_ij <= 1
        }

        // The four CH orientations (relabelings of the S combination), each
        // with both bounds: S <= 0 and -S <= 1.
        // Coordinates: singles a1,a2,b1,b2 = 0..3; joints (a1b1)=4, (a1b2)=5,
        // (a2b1)=6, (a2b2)=7.
        struct Orientation {
            int plusminus[4];  // signs on joints 4..7 in order
            int single_a;      // single getting -1 among a's
            int single_b;      // single getting -1 among b's
        };
        const Orientation orientations[4] = {
            {{+1, -1, +1, +1}, 1, 2},  // identity
            {{+1, +1, +1, -1}, 0, 2},  // a1 <-> a2
            {{-1, +1, +1, +1}, 1, 3},  // b1 <-> b2
            {{+1, +1, -1, +1}, 0, 3},  // both swaps
        };
        for (const Orientation& o : orientations) {
            std::vector<Rational> c(d, Rational(0));
            for (int k = 0; k < 4; ++k) c[static_cast<std::size_t>(4 + k)] = o.plusminus[k];
            c[static_cast<std::size_t>(o.single_a)] = -1;
            c[static_cast<std::size_t>(o.single_b)] = -1;
            add(c, 0);  // S <= 0
            std::vector<Rational> neg(d);
            for (std::size_t idx = 0; idx < d; ++idx) neg[idx] = -c[idx];
            add(neg, 1);  // -S <= 1
        }
        return list;
    }();
    return facets;
}

}  // namespace bellsets::polytope
