// Entanglement swapping: D-A and B-C start as EPR pairs, Alice makes the Bell
// measurement on B,A, and the D-C pair is left entangled without any
// correction being applied. Each post-selected D-C state is tested with CHSH.

#pragma once

#include <array>
#include <vector>

#include "telebell/teleport.hpp"

namespace telebell {

inline const std::string kLabelD = "D";

/// Dichotomic analyzer angles (radians) of the form used for Bob's basis
/// with zero phase: a, a' on the first subsystem, b, b' on the second.
struct ChshAngles {
    double a = 0;
    double a_prime = 0;
    double b = 0;
    double b_prime = 0;
};

struct ChshOptimum {
    double value;
    ChshAngles angles;
    /// Largest CHSH value evaluated anywhere during the search.
    double search_peak;
};

struct SwapReport {
    std::array<double, 4> outcome_probabilities{};
    /// D-C states, labels {D, C}.
    std::vector<PureState> post_states;
    std::array<double, 4> chsh_values{};
    std::array<ChshAngles, 4> chsh_angles{};
    double search_peak = 0;
};

struct SubensembleResult {
    double probability;
    double chsh_max;
};

/// (|X1 Y1> + |X2 Y2>)/sqrt2
PureState epr_pair(const std::string &first, const std::string &second);

/// EPR(D,A) x EPR(B,C), labels D, A, B, C.
PureState swap_initial_state();

SwapReport run_swap();

/// Born-rule correlation <I(a) I(b)> with outcome values 0 -> -1, 1 -> +1.
double dichotomic_correlation(const PureState &pair, double a, double b);

/// S = E(a,b) - E(a,b') + E(a',b) + E(a',b'). Throws StateError unless the
/// state is a normalized two-qubit state.
double chsh_on_pair(const PureState &pair, const ChshAngles &angles);

/// Coarse 1-degree search followed by local refinement until the step falls
/// below 1e-10 rad.
ChshOptimum maximize_chsh(const PureState &pair);

SubensembleResult single_outcome_subensemble(BellOutcome outcome);

}  // namespace telebell
