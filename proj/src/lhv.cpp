#include "telebell/lhv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace telebell {

namespace {

// Index of `phase` (radians) in a degree grid, or throws.
std::size_t setting_index(double phase, const std::array<double, 2> &grid_deg, const char *side) {
    for (std::size_t k = 0; k < grid_deg.size(); ++k) {
        if (std::abs(phase - degrees_to_radians(grid_deg[k])) < 1e-9) {
            return k;
        }
    }
    throw std::invalid_argument(std::string("unknown ") + side + " setting: " + std::to_string(radians_to_degrees(phase)) +
                                " degrees");
}

}  // namespace

StrategyEnsemble::StrategyEnsemble(std::vector<std::pair<DeterministicStrategy, double>> members)
    : members_(std::move(members)) {
    double total = 0;
    for (const auto &[s, w] : members_) {
        if (!(w >= 0) || !std::isfinite(w)) {
            throw std::invalid_argument("ensemble weights must be finite and non-negative");
        }
        total += w;
    }
    if (std::abs(total - 1.0) > kTolerance) {
        throw std::invalid_argument("ensemble weights must sum to 1");
    }
}

SuperVector strategy_super_vector(const DeterministicStrategy &s) {
    SuperVector h;
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            const double bob = s.bob_answers[b].value();
            h[super_index(a, b)] = {bob * s.alice_answers[a].first.value(), bob * s.alice_answers[a].second.value()};
        }
    }
    return h;
}

std::vector<DeterministicStrategy> enumerate_strategies() {
    std::vector<DeterministicStrategy> out;
    out.reserve(64);
    const std::array<Sign, 2> signs{Sign(-1), Sign(1)};
    for (Sign b0 : signs) {
        for (Sign b1 : signs) {
            for (auto c0 : kBellOutcomes) {
                for (auto c1 : kBellOutcomes) {
                    out.push_back({{b0, b1}, {alice_value(c0), alice_value(c1)}});
                }
            }
        }
    }
    return out;
}

ExtremalBound lhv_extremal_bound(const SuperVector &v_qm) {
    const auto strategies = enumerate_strategies();
    ExtremalBound best{-std::numeric_limits<double>::infinity(), strategies.front(),
                       std::numeric_limits<double>::infinity()};
    for (const auto &s : strategies) {
        const double value = super_dot(v_qm, strategy_super_vector(s));
        if (value > best.max) {
            best.max = value;
            best.argmax = s;
        }
        best.min = std::min(best.min, value);
    }
    return best;
}

CorrelationVector ensemble_correlation(const StrategyEnsemble &e, double alice_phase, double bob_phase) {
    const std::size_t a = setting_index(alice_phase, kAlicePhasesDeg, "Alice");
    const std::size_t b = setting_index(bob_phase, kBobPhasesDeg, "Bob");
    CorrelationVector sum;
    for (const auto &[s, w] : e.members()) {
        sum = sum + strategy_super_vector(s)[super_index(a, b)] * w;
    }
    return sum;
}

SuperVector ensemble_super_vector(const StrategyEnsemble &e) {
    SuperVector v;
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            v[super_index(a, b)] = ensemble_correlation(
                e, degrees_to_radians(kAlicePhasesDeg[a]), degrees_to_radians(kBobPhasesDeg[b]));
        }
    }
    return v;
}

BellTestReport bell_test(const SuperVector &observed) {
    const SuperVector v_qm = build_quantum_super_vector();
    const ExtremalBound bound = lhv_extremal_bound(v_qm);
    const double q = super_dot(v_qm, observed);
    return {q, bound.max, bound.min, q > bound.max + kTolerance, q / bound.max, bound.argmax};
}

BellTestReport bell_test() {
    return bell_test(build_quantum_super_vector());
}

}  // namespace telebell
