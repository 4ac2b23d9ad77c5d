// Vector-valued correlation functions.
//
// Alice's Bell outcomes are valued as two-dimensional +/-1 vectors, Bob's
// outcomes as +/-1 numbers, and the correlation function is the average of
// their product. Evaluated on the 2x2 grid of phase settings it forms a
// "super-vector" of four 2-vectors.

#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "telebell/teleport.hpp"

namespace telebell {

/// A value that is exactly -1 or +1.
class Sign {
  public:
    /// Throws std::invalid_argument unless v is -1 or +1.
    explicit Sign(int v);
    int value() const { return v_; }
    Sign operator-() const { return Sign(-v_); }
    friend bool operator==(Sign, Sign) = default;

  private:
    int v_;
};

using BobValue = Sign;

struct OutcomeVector {
    Sign first;
    Sign second;
    friend bool operator==(const OutcomeVector &, const OutcomeVector &) = default;
};

struct CorrelationVector {
    double x = 0;
    double y = 0;

    CorrelationVector operator+(const CorrelationVector &o) const { return {x + o.x, y + o.y}; }
    CorrelationVector operator*(double s) const { return {x * s, y * s}; }
    double dot(const CorrelationVector &o) const { return x * o.x + y * o.y; }
    double norm_sq() const { return dot(*this); }
};

/// Setting pairs (phi, phi') in degrees, in super-vector order.
struct PhaseSetting {
    double alice_deg;
    double bob_deg;
};
inline constexpr std::array<double, 2> kAlicePhasesDeg{0.0, 90.0};
inline constexpr std::array<double, 2> kBobPhasesDeg{-45.0, 45.0};
inline constexpr std::array<PhaseSetting, 4> kSuperVectorSettings{{{0, -45}, {0, 45}, {90, -45}, {90, 45}}};

/// Entry k corresponds to Alice phase index k / 2 and Bob phase index k % 2.
inline constexpr std::size_t super_index(std::size_t alice, std::size_t bob) { return 2 * alice + bob; }

using SuperVector = std::array<CorrelationVector, 4>;

/// Super-vector over an arbitrary list of settings; used by grid scans.
using GridSuperVector = std::vector<CorrelationVector>;

/// 00 -> (-1,-1), 01 -> (-1,1), 10 -> (1,-1), 11 -> (1,1).
OutcomeVector alice_value(BellOutcome c);

/// 0 -> -1, 1 -> +1.
BobValue bob_value(BobOutcome i);

/// sum_c sum_i P(c,i) I_B(i) A(c)
CorrelationVector correlation_from_distribution(const JointDistribution &dist);

/// Same sum with every Bob value negated.
CorrelationVector correlation_from_distribution_flipped(const JointDistribution &dist);

/// sin 2b sin 2b' (cos phi cos phi', sin phi sin phi')
CorrelationVector correlation_closed_form(const PreparationSettings &prep, const AnalyzerSettings &analyzer);

/// beta = beta' = 45 degrees with the given phases (degrees).
PreparationSettings preparation_at(double alice_phase_deg);
AnalyzerSettings analyzer_at(double bob_phase_deg);

SuperVector build_quantum_super_vector();

/// Super-vector whose entries come from the given distribution source
/// evaluated at the four standard settings.
template <typename DistributionFn>
SuperVector build_super_vector(DistributionFn &&dist_at) {
    SuperVector v;
    for (std::size_t k = 0; k < kSuperVectorSettings.size(); ++k) {
        const auto &s = kSuperVectorSettings[k];
        v[k] = correlation_from_distribution(dist_at(preparation_at(s.alice_deg), analyzer_at(s.bob_deg)));
    }
    return v;
}

double super_norm_sq(const SuperVector &v);
double super_dot(const SuperVector &a, const SuperVector &b);
SuperVector scaled(const SuperVector &v, double s);

double super_norm_sq(const GridSuperVector &v);
/// Throws std::invalid_argument on length mismatch.
double super_dot(const GridSuperVector &a, const GridSuperVector &b);

double degrees_to_radians(double deg);
double radians_to_degrees(double rad);

}  // namespace telebell
