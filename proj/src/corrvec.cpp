#include "telebell/corrvec.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace telebell {

Sign::Sign(int v) : v_(v) {
    if (v != 1 && v != -1) {
        throw std::invalid_argument("sign value must be -1 or +1, got " + std::to_string(v));
    }
}

OutcomeVector alice_value(BellOutcome c) {
    // Binary digits of c with 0 replaced by -1.
    const auto k = static_cast<int>(index_of(c));
    return {Sign((k & 2) ? 1 : -1), Sign((k & 1) ? 1 : -1)};
}

BobValue bob_value(BobOutcome i) {
    return Sign(i == BobOutcome::k1 ? 1 : -1);
}

namespace {

CorrelationVector weighted_sum(const JointDistribution &dist, int bob_sign) {
    CorrelationVector e;
    for (auto c : kBellOutcomes) {
        const OutcomeVector a = alice_value(c);
        for (auto i : kBobOutcomes) {
            const double w = dist(c, i) * bob_sign * bob_value(i).value();
            e.x += w * a.first.value();
            e.y += w * a.second.value();
        }
    }
    return e;
}

}  // namespace

CorrelationVector correlation_from_distribution(const JointDistribution &dist) {
    return weighted_sum(dist, 1);
}

CorrelationVector correlation_from_distribution_flipped(const JointDistribution &dist) {
    return weighted_sum(dist, -1);
}

CorrelationVector correlation_closed_form(const PreparationSettings &prep, const AnalyzerSettings &analyzer) {
    const double amp = std::sin(2 * prep.beta) * std::sin(2 * analyzer.beta_prime);
    return {amp * std::cos(prep.phi) * std::cos(analyzer.phi_prime),
            amp * std::sin(prep.phi) * std::sin(analyzer.phi_prime)};
}

double degrees_to_radians(double deg) {
    return deg * std::numbers::pi / 180.0;
}

double radians_to_degrees(double rad) {
    return rad * 180.0 / std::numbers::pi;
}

PreparationSettings preparation_at(double alice_phase_deg) {
    return {degrees_to_radians(45.0), degrees_to_radians(alice_phase_deg)};
}

AnalyzerSettings analyzer_at(double bob_phase_deg) {
    return {degrees_to_radians(45.0), degrees_to_radians(bob_phase_deg)};
}

SuperVector build_quantum_super_vector() {
    SuperVector v;
    for (std::size_t k = 0; k < kSuperVectorSettings.size(); ++k) {
        const auto &s = kSuperVectorSettings[k];
        v[k] = correlation_closed_form(preparation_at(s.alice_deg), analyzer_at(s.bob_deg));
    }
    return v;
}

double super_norm_sq(const SuperVector &v) {
    return super_dot(v, v);
}

double super_dot(const SuperVector &a, const SuperVector &b) {
    double s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        s += a[k].dot(b[k]);
    }
    return s;
}

SuperVector scaled(const SuperVector &v, double s) {
    SuperVector out;
    for (std::size_t k = 0; k < v.size(); ++k) {
        out[k] = v[k] * s;
    }
    return out;
}

double super_norm_sq(const GridSuperVector &v) {
    return super_dot(v, v);
}

double super_dot(const GridSuperVector &a, const GridSuperVector &b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("super-vectors differ in length");
    }
    double s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        s += a[k].dot(b[k]);
    }
    return s;
}

}  // namespace telebell
