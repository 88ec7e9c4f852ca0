#include "bellsets/sampler.hpp"

#include "bellsets/errors.hpp"
#include "bellsets/interval.hpp"
#include "bellsets/rng.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace bellsets::sampler {

namespace {

bool is_ch_scenario(const polytope::Scenario& s) {
    return s.n == 4 && s.pairs == std::vector<std::pair<int, int>>{{0, 2}, {0, 3}, {1, 2}, {1, 3}} &&
           s.exclusions.empty();
}

}  // namespace

void JointDistribution::validate() const {
    if (n < 1 || n > polytope::kMaxEvents) throw CapExceeded("joint distribution event count out of range");
    Rational total = 0;
    std::uint32_t previous = 0;
    bool first = true;
    for (const auto& [assignment, weight] : weights) {
        if (assignment >= (1u << n)) throw InvariantViolation("assignment outside {0,1}^n");
        if (!first && assignment <= previous) throw InvariantViolation("weights must be sorted by assignment");
        if (weight < 0) throw InvariantViolation("negative weight");
        total += weight;
        previous = assignment;
        first = false;
    }
    if (total != 1) throw InvariantViolation("weights must sum to exactly 1, got " + format_rational(total));
}

JointDistribution JointDistribution::uniform(int n) {
    JointDistribution d;
    d.n = n;
    if (n < 1 || n > polytope::kMaxEvents) throw CapExceeded("joint distribution event count out of range");
    const std::uint32_t cells = 1u << n;
    d.weights.reserve(cells);
    for (std::uint32_t t = 0; t < cells; ++t) d.weights.emplace_back(t, Rational(1, cells));
    d.validate();
    return d;
}

JointDistribution JointDistribution::point_mass(int n, std::uint32_t assignment) {
    JointDistribution d;
    d.n = n;
    d.weights.emplace_back(assignment, Rational(1));
    d.validate();
    return d;
}

JointDistribution JointDistribution::from_weights(int n, std::vector<std::pair<std::uint32_t, Rational>> weights) {
    JointDistribution d;
    d.n = n;
    d.weights = std::move(weights);
    std::sort(d.weights.begin(), d.weights.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    d.validate();
    return d;
}

void PairwiseSource::validate(const polytope::Scenario& s) const {
    s.validate();
    if (single_up.size() != static_cast<std::size_t>(s.n) || pair_probs.size() != s.pairs.size()) {
        throw DimensionMismatch("pairwise source does not match scenario");
    }
    Interval unit(Scalar(0), Scalar(1));
    for (const Scalar& p : single_up) {
        if (!unit.contains(p)) throw InvariantViolation("single probability out of [0,1]");
    }
    for (const auto& cell : pair_probs) {
        Scalar total(0);
        for (const Scalar& p : cell) {
            if (!unit.contains(p)) throw InvariantViolation("pair cell probability out of [0,1]");
            total += p;
        }
        if (total.exact()) {
            if (total.rational() != 1) throw InvariantViolation("pair distribution must sum to 1");
        } else if (std::abs(total.to_double() - 1.0) > 1e-9) {
            throw InvariantViolation("pair distribution must sum to 1");
        }
    }
}

PairwiseSource PairwiseSource::singlet(const polytope::Scenario& s, const quantum::MeasurementAngles& angles) {
    if (!is_ch_scenario(s)) throw InvariantViolation("singlet source requires the CH scenario");
    const double detector[4] = {angles.a1, angles.a2, angles.b1, angles.b2};
    PairwiseSource src;
    src.single_up.assign(4, Scalar(quantum::kSingletSingleProb));
    for (auto [i, j] : s.pairs) {
        double up_up = quantum::singlet_joint_prob(detector[i] - detector[j]);
        double up_down = 0.5 - up_up;
        // Singlet symmetry: P(00) = P(11), P(01) = P(10).
        src.pair_probs.push_back({Scalar(up_up), Scalar(up_down), Scalar(up_down), Scalar(up_up)});
    }
    src.validate(s);
    return src;
}

PairwiseSource PairwiseSource::marginals_of(const JointDistribution& d, const polytope::Scenario& s) {
    d.validate();
    if (d.n != s.n) throw DimensionMismatch("joint distribution does not match scenario");
    PairwiseSource src;
    for (int i = 0; i < s.n; ++i) {
        Rational up = 0;
        for (const auto& [t, w] : d.weights) {
            if (t >> i & 1u) up += w;
        }
        src.single_up.emplace_back(up);
    }
    for (auto [i, j] : s.pairs) {
        std::array<Rational, 4> cells{Rational(0), Rational(0), Rational(0), Rational(0)};
        for (const auto& [t, w] : d.weights) {
            unsigned idx = ((t >> i & 1u) << 1) | (t >> j & 1u);
            cells[idx] += w;
        }
        src.pair_probs.push_back({Scalar(cells[0]), Scalar(cells[1]), Scalar(cells[2]), Scalar(cells[3])});
    }
    src.validate(s);
    return src;
}

PairwiseSource PairwiseSource::point_mass(const polytope::Scenario& s, std::uint32_t assignment) {
    return marginals_of(JointDistribution::point_mass(s.n, assignment), s);
}

namespace {

std::vector<double> cumulative_of(const std::vector<std::pair<std::uint32_t, Rational>>& weights) {
    std::vector<double> cumulative;
    cumulative.reserve(weights.size());
    double acc = 0;
    for (const auto& [t, w] : weights) {
        acc += w.convert_to<double>();
        cumulative.push_back(acc);
    }
    return cumulative;
}

std::size_t draw_cell(const std::vector<double>& cumulative, double u) {
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) return cumulative.size() - 1;
    return static_cast<std::size_t>(it - cumulative.begin());
}

polytope::CorrelationVector vector_from_counts(const polytope::Scenario& s,
                                               const std::vector<std::uint64_t>& single_counts,
                                               const std::vector<std::uint64_t>& joint_counts,
                                               std::uint64_t size) {
    polytope::CorrelationVector vec;
    for (std::uint64_t c : single_counts) vec.singles.emplace_back(Rational(c, size));
    for (std::uint64_t c : joint_counts) vec.joints.emplace_back(Rational(c, size));
    vec.validate(s);
    return vec;
}

}  // namespace

SingleSampleResult single_sample_run(const JointDistribution& d, const polytope::Scenario& s,
                                     std::uint64_t size, std::uint64_t seed) {
    d.validate();
    s.validate();
    if (d.n != s.n) throw DimensionMismatch("joint distribution does not match scenario");
    if (size < 1) throw InvariantViolation("sample size must be >= 1");
    // Exclusions model impossible co-occurrence; a latent joint must respect
    // them or the drawn frequencies need not land in the polytope.
    for (const auto& [t, w] : d.weights) {
        if (w == 0) continue;
        for (auto [i, j] : s.exclusions) {
            if ((t >> i & 1u) && (t >> j & 1u)) {
                throw InvariantViolation("joint distribution puts weight on an excluded assignment");
            }
        }
    }

    std::mt19937_64 engine = rng::engine(seed, "single_sample");
    std::vector<double> cumulative = cumulative_of(d.weights);

    std::vector<std::uint64_t> single_counts(static_cast<std::size_t>(s.n), 0);
    std::vector<std::uint64_t> joint_counts(s.pairs.size(), 0);
    for (std::uint64_t draw = 0; draw < size; ++draw) {
        std::uint32_t t = d.weights[draw_cell(cumulative, rng::next_unit(engine))].first;
        for (int i = 0; i < s.n; ++i) {
            if (t >> i & 1u) ++single_counts[static_cast<std::size_t>(i)];
        }
        for (std::size_t k = 0; k < s.pairs.size(); ++k) {
            auto [i, j] = s.pairs[k];
            if ((t >> i & 1u) && (t >> j & 1u)) ++joint_counts[k];
        }
    }

    SingleSampleResult result;
    result.freq.vec = vector_from_counts(s, single_counts, joint_counts, size);
    result.freq.sample_size = size;
    result.freq.seed = seed;
    result.freq.generator = std::string(rng::kGeneratorName);
    result.verdict = polytope::membership(s, result.freq.vec);
    return result;
}

MultiSampleResult multi_sample_run(const PairwiseSource& src, const polytope::Scenario& s,
                                   std::uint64_t size_per_pair, std::uint64_t seed) {
    src.validate(s);
    if (size_per_pair < 1) throw InvariantViolation("sample size must be >= 1");

    std::vector<std::uint64_t> single_counts(static_cast<std::size_t>(s.n), 0);
    std::vector<std::uint64_t> joint_counts(s.pairs.size(), 0);

    // Every observable gets its own sample and its own sub-seeded stream.
    for (int i = 0; i < s.n; ++i) {
        std::mt19937_64 engine = rng::engine(seed, "single", static_cast<std::uint64_t>(i));
        const double up = src.single_up[static_cast<std::size_t>(i)].to_double();
        for (std::uint64_t draw = 0; draw < size_per_pair; ++draw) {
            if (rng::next_unit(engine) < up) ++single_counts[static_cast<std::size_t>(i)];
        }
    }
    for (std::size_t k = 0; k < s.pairs.size(); ++k) {
        std::mt19937_64 engine = rng::engine(seed, "pair", k);
        const auto& cell = src.pair_probs[k];
        const double c0 = cell[0].to_double();
        const double c1 = c0 + cell[1].to_double();
        const double c2 = c1 + cell[2].to_double();
        for (std::uint64_t draw = 0; draw < size_per_pair; ++draw) {
            double u = rng::next_unit(engine);
            if (u >= c2) ++joint_counts[k];  // cell 11
        }
    }

    MultiSampleResult result;
    result.freq.vec = vector_from_counts(s, single_counts, joint_counts, size_per_pair);
    result.freq.sample_size = size_per_pair;
    result.freq.seed = seed;
    result.freq.generator = std::string(rng::kGeneratorName);
    result.verdict = polytope::membership(s, result.freq.vec);

    if (is_ch_scenario(s)) {
        result.ch_value = polytope::ch_facet_value(result.freq.vec);
        for (const auto& facet : polytope::ch_facet_list()) {
            result.facet_residuals.emplace_back(facet.label, polytope::facet_residual(facet, s, result.freq.vec));
        }
    } else {
        for (std::size_t k = 0; k < s.pairs.size(); ++k) {
            auto [i, j] = s.pairs[k];
            const Scalar& pi = result.freq.vec.singles[static_cast<std::size_t>(i)];
            const Scalar& pj = result.freq.vec.singles[static_cast<std::size_t>(j)];
            const Scalar& pij = result.freq.vec.joints[k];
            std::string pair_tag = "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
            result.facet_residuals.emplace_back("joint " + pair_tag + " >= 0", pij);
            result.facet_residuals.emplace_back("joint " + pair_tag + " <= single " + std::to_string(i + 1),
                                                pi - pij);
            result.facet_residuals.emplace_back("joint " + pair_tag + " <= single " + std::to_string(j + 1),
                                                pj - pij);
            result.facet_residuals.emplace_back("inclusion-exclusion " + pair_tag,
                                                Scalar(1) - pi - pj + pij);
        }
    }
    return result;
}

namespace {

struct MomentEstimate {
    double mean = 0;
    double sd = 0;       // population-style standard deviation
    double se_mean = 0;
    double se_sd = 0;
    double spectral_range = 0;
};

/// Samples eigenvalues of op in state psi (Born weights) and reports moment
/// estimates. Standard errors carry a bounded-spectrum floor of
/// range / (2(N-1)) so degenerate small samples report wide bands rather
/// than fake certainty.
MomentEstimate sample_observable(const quantum::HermitianOperator& op, const quantum::StateVector& psi,
                                 std::uint64_t size, std::uint64_t seed, std::string_view label) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(op.matrix());
    if (solver.info() != Eigen::Success) throw Error("eigendecomposition failed");
    const Eigen::VectorXd values = solver.eigenvalues();
    const Eigen::MatrixXcd vectors = solver.eigenvectors();

    const int dim = op.dim();
    std::vector<double> cumulative(static_cast<std::size_t>(dim));
    double acc = 0;
    for (int k = 0; k < dim; ++k) {
        std::complex<double> amp = vectors.col(k).dot(psi.vector());
        acc += std::norm(amp);
        cumulative[static_cast<std::size_t>(k)] = acc;
    }

    std::vector<std::uint64_t> counts(static_cast<std::size_t>(dim), 0);
    std::mt19937_64 engine = rng::engine(seed, label);
    for (std::uint64_t draw = 0; draw < size; ++draw) {
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), rng::next_unit(engine));
        std::size_t cell = it == cumulative.end() ? cumulative.size() - 1
                                                  : static_cast<std::size_t>(it - cumulative.begin());
        ++counts[cell];
    }

    const double n = static_cast<double>(size);
    MomentEstimate est;
    for (int k = 0; k < dim; ++k) est.mean += values[k] * static_cast<double>(counts[static_cast<std::size_t>(k)]) / n;
    double m2c = 0;
    double m4c = 0;
    for (int k = 0; k < dim; ++k) {
        double dev = values[k] - est.mean;
        double frac = static_cast<double>(counts[static_cast<std::size_t>(k)]) / n;
        m2c += dev * dev * frac;
        m4c += dev * dev * dev * dev * frac;
    }
    est.sd = std::sqrt(std::max(m2c, 0.0));
    est.spectral_range = values.maxCoeff() - values.minCoeff();

    const double floor = size > 1 ? est.spectral_range / (2.0 * (n - 1.0)) : est.spectral_range;
    est.se_mean = std::max(est.sd / std::sqrt(n), floor);
    double var_of_variance = std::max(m4c - m2c * m2c, 0.0) / n;
    double delta_se = est.sd > 1e-12 ? std::sqrt(var_of_variance) / (2.0 * est.sd) : 0.0;
    est.se_sd = std::max(delta_se, floor);
    return est;
}

}  // namespace

SampledUncertaintyVerdict uncertainty_multi_sample(const quantum::HermitianOperator& a,
                                                   const quantum::HermitianOperator& b,
                                                   const quantum::StateVector& psi, std::uint64_t size,
                                                   std::uint64_t seed) {
    if (a.dim() != b.dim() || a.dim() != psi.dim()) {
        throw DimensionMismatch("uncertainty_multi_sample: dimensions do not match");
    }
    if (size < 2) throw InvariantViolation("uncertainty_multi_sample requires size >= 2");

    // i[A,B] is Hermitian; symmetrize away rounding before the eigensolve.
    Eigen::MatrixXcd herm_comm = std::complex<double>(0, 1) * quantum::commutator(a, b);
    herm_comm = 0.5 * (herm_comm + herm_comm.adjoint()).eval();

    MomentEstimate est_a = sample_observable(a, psi, size, seed, "spread_a");
    MomentEstimate est_b = sample_observable(b, psi, size, seed, "spread_b");
    MomentEstimate est_c =
        sample_observable(quantum::HermitianOperator(herm_comm), psi, size, seed, "commutator");

    SampledUncertaintyVerdict verdict;
    verdict.sample_size = size;
    verdict.lhs = est_a.sd * est_b.sd;
    verdict.rhs = 0.5 * std::abs(est_c.mean);
    verdict.se_lhs = std::hypot(est_b.sd * est_a.se_sd, est_a.sd * est_b.se_sd);
    verdict.se_rhs = 0.5 * est_c.se_mean;
    verdict.band = 3.0 * std::hypot(verdict.se_lhs, verdict.se_rhs);
    verdict.holds = verdict.lhs >= verdict.rhs - verdict.band;
    return verdict;
}

polytope::CorrelationVector singlet_correlation_vector(const quantum::MeasurementAngles& angles) {
    const polytope::Scenario s = polytope::Scenario::ch();
    const double detector[4] = {angles.a1, angles.a2, angles.b1, angles.b2};
    polytope::CorrelationVector vec;
    vec.singles.assign(4, Scalar(quantum::kSingletSingleProb));
    for (auto [i, j] : s.pairs) {
        vec.joints.emplace_back(quantum::singlet_joint_prob(detector[i] - detector[j]));
    }
    vec.validate(s);
    return vec;
}

}  // namespace bellsets::sampler
