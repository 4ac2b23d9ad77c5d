// Local hidden-variable models for the 2x2 phase-setting experiment.
//
// With two settings per side and finitely many outcomes, every hidden
// variable reduces to one of 64 deterministic response functions: Bob picks
// a sign for each of his two phases, Alice picks one of four outcome vectors
// for each of hers. A general model is a convex mixture of these.

#pragma once

#include <array>
#include <utility>
#include <vector>

#include "telebell/corrvec.hpp"

namespace telebell {

struct DeterministicStrategy {
    /// Indexed like kBobPhasesDeg: {-45, +45}.
    std::array<BobValue, 2> bob_answers;
    /// Indexed like kAlicePhasesDeg: {0, 90}.
    std::array<OutcomeVector, 2> alice_answers;

    friend bool operator==(const DeterministicStrategy &, const DeterministicStrategy &) = default;
};

class StrategyEnsemble {
  public:
    /// Throws std::invalid_argument on negative weights or if the weights
    /// do not sum to 1 within 1e-12.
    explicit StrategyEnsemble(std::vector<std::pair<DeterministicStrategy, double>> members);

    const std::vector<std::pair<DeterministicStrategy, double>> &members() const { return members_; }

  private:
    std::vector<std::pair<DeterministicStrategy, double>> members_;
};

struct BellTestReport {
    double quantum_value;
    double lhv_upper_bound;
    double lhv_lower_bound;
    bool violated;
    double violation_ratio;
    DeterministicStrategy argmax;
};

struct ExtremalBound {
    double max;
    DeterministicStrategy argmax;
    double min;
};

/// Entry (phi, phi') = I_B(phi') * A(phi).
SuperVector strategy_super_vector(const DeterministicStrategy &s);

/// All 64 strategies. Order: Bob's answers vary slowest, then Alice's answer
/// at 0 degrees, then at 90 degrees; signs and vectors run from -1 to +1 and
/// from outcome 00 to 11.
std::vector<DeterministicStrategy> enumerate_strategies();

/// Max and min of super_dot(v, H(lambda)) over all deterministic strategies.
/// Ties resolve to the first maximizer in enumeration order.
ExtremalBound lhv_extremal_bound(const SuperVector &v_qm);

/// Throws std::invalid_argument if the phases (radians) are not on the
/// standard grid.
CorrelationVector ensemble_correlation(const StrategyEnsemble &e, double alice_phase, double bob_phase);

SuperVector ensemble_super_vector(const StrategyEnsemble &e);

/// Compares super_dot(V_QM, observed) with the LHV bound on the same
/// scalar product.
BellTestReport bell_test(const SuperVector &observed);

/// Noiseless quantum prediction: observed = V_QM.
BellTestReport bell_test();

}  // namespace telebell
