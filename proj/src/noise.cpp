#include "telebell/noise.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace telebell {

Visibility::Visibility(double v) : v_(v) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument("visibility must lie in [0, 1], got " + std::to_string(v));
    }
}

JointDistribution noisy_joint_distribution(
    const PreparationSettings &prep, const AnalyzerSettings &analyzer, Visibility vis) {
    const double v = vis.value();
    JointDistribution dist = joint_distribution_closed_form(prep, analyzer);
    for (auto c : kBellOutcomes) {
        for (auto i : kBobOutcomes) {
            dist(c, i) = v * dist(c, i) + (1.0 - v) / 8.0;
        }
    }
    return dist;
}

BellTestReport bell_test_at(Visibility vis) {
    return bell_test(build_super_vector([vis](const PreparationSettings &p, const AnalyzerSettings &a) {
        return noisy_joint_distribution(p, a, vis);
    }));
}

double violation_threshold() {
    const BellTestReport full = bell_test_at(Visibility(1.0));
    return full.lhv_upper_bound / full.quantum_value;
}

}  // namespace telebell
