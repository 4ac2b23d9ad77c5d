#include "telebell/teleport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace telebell {

namespace {

constexpr double kPi = std::numbers::pi;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Reduces an angle to (-pi, pi].
double wrap_phase(double phi) {
    double r = std::remainder(phi, 2 * kPi);
    if (r <= -kPi) {
        r += 2 * kPi;
    }
    return r;
}

// Both parameterizations are invariant (up to global phase) under
// beta -> beta + pi and under (beta, phi) -> (pi - beta, phi + pi).
std::pair<double, double> canonical_pair(double beta, double phi) {
    double b = std::fmod(beta, kPi);
    if (b < 0) {
        b += kPi;
    }
    if (b > kPi / 2) {
        b = kPi - b;
        phi += kPi;
    }
    return {b, wrap_phase(phi)};
}

JointDistribution simulate(const PreparationSettings &prep, const AnalyzerSettings &analyzer, bool bob_first) {
    const PureState psi = initial_state(prep);
    const ProjectiveBasis bell = bell_basis();
    const ProjectiveBasis bob = bob_basis(analyzer);
    const std::array<std::string, 2> alice_side{kLabelB, kLabelA};
    const std::array<std::string, 1> bob_side{kLabelC};

    JointDistribution dist;
    const auto &first_basis = bob_first ? bob : bell;
    const auto &second_basis = bob_first ? bell : bob;
    std::span<const std::string> first_labels = bob_first ? std::span<const std::string>(bob_side) : alice_side;
    std::span<const std::string> second_labels = bob_first ? std::span<const std::string>(alice_side) : bob_side;

    auto first = measure_probabilities(psi, first_basis, first_labels);
    for (std::size_t a = 0; a < first.size(); ++a) {
        if (!first[a].residual) {
            continue;
        }
        auto second = measure_probabilities(*first[a].residual, second_basis, second_labels);
        for (std::size_t b = 0; b < second.size(); ++b) {
            std::size_t c = bob_first ? b : a;
            std::size_t i = bob_first ? a : b;
            dist(kBellOutcomes[c], kBobOutcomes[i]) = first[a].probability * second[b].probability;
        }
    }
    return dist;
}

}  // namespace

PreparationSettings PreparationSettings::canonical() const {
    auto [b, p] = canonical_pair(beta, phi);
    return {b, p};
}

AnalyzerSettings AnalyzerSettings::canonical() const {
    auto [b, p] = canonical_pair(beta_prime, phi_prime);
    return {b, p};
}

std::string_view to_string(BellOutcome c) {
    switch (c) {
        case BellOutcome::k00:
            return "00";
        case BellOutcome::k01:
            return "01";
        case BellOutcome::k10:
            return "10";
        case BellOutcome::k11:
            return "11";
    }
    return "??";
}

std::string_view to_string(BobOutcome i) {
    return i == BobOutcome::k0 ? "0" : "1";
}

double JointDistribution::total() const {
    double s = 0;
    for (double p : p_) {
        s += p;
    }
    return s;
}

double JointDistribution::alice_marginal(BellOutcome c) const {
    return (*this)(c, BobOutcome::k0) + (*this)(c, BobOutcome::k1);
}

double JointDistribution::bob_marginal(BobOutcome i) const {
    double s = 0;
    for (auto c : kBellOutcomes) {
        s += (*this)(c, i);
    }
    return s;
}

double JointDistribution::max_abs_difference(const JointDistribution &other) const {
    double d = 0;
    for (std::size_t k = 0; k < p_.size(); ++k) {
        d = std::max(d, std::abs(p_[k] - other.p_[k]));
    }
    return d;
}

double JointDistribution::invariant_deviation() const {
    double d = std::abs(total() - 1.0);
    for (double p : p_) {
        if (!std::isfinite(p)) {
            return std::numeric_limits<double>::infinity();
        }
        d = std::max({d, -p, p - 1.0});
    }
    for (auto c : kBellOutcomes) {
        d = std::max(d, std::abs(alice_marginal(c) - 0.25));
    }
    return d;
}

PureState input_state(const PreparationSettings &prep, const std::string &label) {
    return PureState({label}, {std::sin(prep.beta), std::cos(prep.beta) * std::polar(1.0, prep.phi)});
}

PureState initial_state(const PreparationSettings &prep) {
    PureState epr({kLabelB, kLabelC}, {kInvSqrt2, 0.0, 0.0, kInvSqrt2});
    return tensor_product(input_state(prep), epr);
}

ProjectiveBasis bell_basis(const std::string &first, const std::string &second) {
    const double s = kInvSqrt2;
    // Index = 2*first + second; |X1> = 0, |X2> = 1.
    std::vector<PureState> states{
        PureState({first, second}, {s, 0.0, 0.0, s}),
        PureState({first, second}, {0.0, s, s, 0.0}),
        PureState({first, second}, {0.0, s, -s, 0.0}),
        PureState({first, second}, {s, 0.0, 0.0, -s}),
    };
    return ProjectiveBasis(std::move(states), {"00", "01", "10", "11"});
}

ProjectiveBasis bob_basis(const AnalyzerSettings &analyzer, const std::string &label) {
    const double c = std::cos(analyzer.beta_prime);
    const double s = std::sin(analyzer.beta_prime);
    const Amplitude phase = std::polar(1.0, analyzer.phi_prime);
    std::vector<PureState> states{
        PureState({label}, {c, s * phase}),
        PureState({label}, {-s, c * phase}),
    };
    return ProjectiveBasis(std::move(states), {"0", "1"});
}

JointDistribution joint_distribution_closed_form(const PreparationSettings &prep, const AnalyzerSettings &analyzer) {
    const double cc = std::cos(2 * prep.beta) * std::cos(2 * analyzer.beta_prime);
    const double ss = std::sin(2 * prep.beta) * std::sin(2 * analyzer.beta_prime);
    const double diff = std::cos(prep.phi - analyzer.phi_prime);
    const double sum = std::cos(prep.phi + analyzer.phi_prime);

    const std::array<double, 4> p0{
        (1 - cc + ss * diff) / 8,
        (1 + cc + ss * sum) / 8,
        (1 + cc - ss * sum) / 8,
        (1 - cc - ss * diff) / 8,
    };
    JointDistribution dist;
    for (auto c : kBellOutcomes) {
        dist(c, BobOutcome::k0) = p0[index_of(c)];
        dist(c, BobOutcome::k1) = 0.25 - p0[index_of(c)];
    }
    return dist;
}

JointDistribution joint_distribution_simulated(const PreparationSettings &prep, const AnalyzerSettings &analyzer) {
    return simulate(prep, analyzer, false);
}

JointDistribution joint_distribution_simulated_bob_first(
    const PreparationSettings &prep, const AnalyzerSettings &analyzer) {
    return simulate(prep, analyzer, true);
}

Matrix2 correction_unitary(BellOutcome c) {
    switch (c) {
        case BellOutcome::k00:
            return gates::identity();
        case BellOutcome::k01:
            return gates::bit_flip();
        case BellOutcome::k10:
            return multiply(gates::phase_flip(), gates::bit_flip());
        case BellOutcome::k11:
            return gates::phase_flip();
    }
    return gates::identity();
}

std::vector<TeleportationRecord> run_full_teleportation(const PreparationSettings &prep) {
    const PureState psi = initial_state(prep);
    const PureState target = input_state(prep, kLabelC);
    const std::array<std::string, 2> alice_side{kLabelB, kLabelA};

    std::vector<TeleportationRecord> records;
    auto outcomes = measure_probabilities(psi, bell_basis(), alice_side);
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
        const auto c = kBellOutcomes[k];
        double f = 0;
        if (outcomes[k].residual) {
            f = fidelity(target, apply_local_unitary(*outcomes[k].residual, correction_unitary(c), kLabelC));
        }
        records.push_back({c, outcomes[k].probability, f});
    }
    return records;
}

}  // namespace telebell
