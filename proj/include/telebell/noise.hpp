// Visibility: isotropic admixture of white noise into the joint statistics,
// P_v(c, i) = v P(c, i) + (1 - v) / 8. It scales every correlation vector by v.

#pragma once

#include "telebell/lhv.hpp"
#include "telebell/teleport.hpp"

namespace telebell {

class Visibility {
  public:
    /// Throws std::invalid_argument outside [0, 1].
    explicit Visibility(double v);
    double value() const { return v_; }

  private:
    double v_;
};

JointDistribution noisy_joint_distribution(
    const PreparationSettings &prep, const AnalyzerSettings &analyzer, Visibility vis);

/// Bell test on the super-vector measured at visibility `vis`.
BellTestReport bell_test_at(Visibility vis);

/// Smallest visibility whose Bell value exceeds the LHV bound. The Bell value
/// is linear in v, so this is bound / value(1), both taken from bell_test_at.
double violation_threshold();

}  // namespace telebell
