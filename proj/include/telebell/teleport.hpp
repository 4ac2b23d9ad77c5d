// The channel-cut teleportation scenario.
//
// Alice's particle A is prepared as sin(beta)|A1> + cos(beta) e^{i phi}|A2>,
// B and C share (|B1 C1> + |B2 C2>)/sqrt(2). Alice performs a Bell-state
// measurement on B,A; Bob, who never learns its outcome, measures C in a
// dichotomic basis set by (beta', phi'). All angles are radians.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "telebell/qstate.hpp"

namespace telebell {

inline const std::string kLabelA = "A";
inline const std::string kLabelB = "B";
inline const std::string kLabelC = "C";

struct PreparationSettings {
    double beta = 0;
    double phi = 0;

    /// Equivalent settings (same state up to global phase) with
    /// beta in [0, pi/2] and phi in (-pi, pi].
    PreparationSettings canonical() const;
};

struct AnalyzerSettings {
    double beta_prime = 0;
    double phi_prime = 0;

    AnalyzerSettings canonical() const;
};

/// Bell-measurement result. The label is the binary expansion of the index.
enum class BellOutcome : std::uint8_t { k00 = 0, k01 = 1, k10 = 2, k11 = 3 };
enum class BobOutcome : std::uint8_t { k0 = 0, k1 = 1 };

inline constexpr std::array<BellOutcome, 4> kBellOutcomes{
    BellOutcome::k00, BellOutcome::k01, BellOutcome::k10, BellOutcome::k11};
inline constexpr std::array<BobOutcome, 2> kBobOutcomes{BobOutcome::k0, BobOutcome::k1};

std::string_view to_string(BellOutcome c);
std::string_view to_string(BobOutcome i);
inline std::size_t index_of(BellOutcome c) { return static_cast<std::size_t>(c); }
inline std::size_t index_of(BobOutcome i) { return static_cast<std::size_t>(i); }

/// The eight probabilities P(c, i).
class JointDistribution {
  public:
    JointDistribution() = default;
    explicit JointDistribution(const std::array<double, 8> &p) : p_(p) {}

    double operator()(BellOutcome c, BobOutcome i) const { return p_[slot(c, i)]; }
    double &operator()(BellOutcome c, BobOutcome i) { return p_[slot(c, i)]; }
    const std::array<double, 8> &values() const { return p_; }

    double total() const;
    double alice_marginal(BellOutcome c) const;
    double bob_marginal(BobOutcome i) const;
    double max_abs_difference(const JointDistribution &other) const;

    /// Largest violation of: entries in [0,1], total 1, Alice marginals 1/4.
    double invariant_deviation() const;

  private:
    static std::size_t slot(BellOutcome c, BobOutcome i) { return 2 * index_of(c) + index_of(i); }
    std::array<double, 8> p_{};
};

PureState initial_state(const PreparationSettings &prep);

/// Input state of particle A alone.
PureState input_state(const PreparationSettings &prep, const std::string &label = kLabelA);

/// The four Bell states on B (high bit) and A (low bit), in the order
/// 00, 01, 10, 11:
///   00 = (|B1 A1> + |B2 A2>)/sqrt2    01 = (|B1 A2> + |B2 A1>)/sqrt2
///   10 = (|B1 A2> - |B2 A1>)/sqrt2    11 = (|B1 A1> - |B2 A2>)/sqrt2
ProjectiveBasis bell_basis(const std::string &first = kLabelB, const std::string &second = kLabelA);

/// |0> = cos b'|C1> + sin b' e^{i p'}|C2>,  |1> = -sin b'|C1> + cos b' e^{i p'}|C2>.
ProjectiveBasis bob_basis(const AnalyzerSettings &analyzer, const std::string &label = kLabelC);

JointDistribution joint_distribution_closed_form(const PreparationSettings &prep, const AnalyzerSettings &analyzer);

/// Born-rule route: Bell measurement on B,A, then Bob's measurement on C.
JointDistribution joint_distribution_simulated(const PreparationSettings &prep, const AnalyzerSettings &analyzer);

/// Same statistics with Bob measuring first.
JointDistribution joint_distribution_simulated_bob_first(
    const PreparationSettings &prep, const AnalyzerSettings &analyzer);

/// Correction applied to C after Bell outcome c (up to global phase):
/// 00 -> I, 01 -> X, 10 -> ZX, 11 -> Z.
Matrix2 correction_unitary(BellOutcome c);

struct TeleportationRecord {
    BellOutcome outcome;
    double probability;
    double fidelity;
};

std::vector<TeleportationRecord> run_full_teleportation(const PreparationSettings &prep);

}  // namespace telebell
