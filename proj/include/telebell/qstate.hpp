// Dense state-vector engine for systems of up to four labelled qubits.
//
// Tensor order follows the label list: the leftmost label is the most
// significant bit of the amplitude index. Computational |0>, |1> stand for the
// two orthogonal states |X1>, |X2> of a subsystem X.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace telebell {

using Amplitude = std::complex<double>;
using Matrix2 = std::array<std::array<Amplitude, 2>, 2>;

inline constexpr double kTolerance = 1e-12;
inline constexpr std::size_t kMaxQubits = 4;

/// Raised for label mismatches, dimension overflow, non-finite amplitudes,
/// non-orthonormal bases and non-unitary matrices.
class StateError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class PureState {
  public:
    /// Amplitudes are taken as given (no normalization). Throws StateError if
    /// the size is not 2^labels.size(), a label repeats, or an amplitude is
    /// not finite.
    PureState(std::vector<std::string> labels, std::vector<Amplitude> amplitudes);

    /// Computational basis state |index> on a single subsystem.
    static PureState basis(const std::string &label, std::size_t index);

    std::size_t num_qubits() const { return labels_.size(); }
    std::size_t dim() const { return amplitudes_.size(); }
    const std::vector<std::string> &labels() const { return labels_; }
    std::span<const Amplitude> amplitudes() const { return amplitudes_; }
    Amplitude operator[](std::size_t i) const { return amplitudes_[i]; }

    double norm_sq() const;
    PureState normalized() const;
    PureState scaled(Amplitude factor) const;

    /// Bit position (from the least significant end) of a label's qubit.
    std::size_t bit_of(const std::string &label) const;
    bool has_label(const std::string &label) const;

  private:
    std::vector<std::string> labels_;
    std::vector<Amplitude> amplitudes_;
};

class ProjectiveBasis {
  public:
    /// Validates that all states share one label list, are normalized and
    /// pairwise orthogonal within kTolerance, and that there are exactly
    /// 2^n of them.
    ProjectiveBasis(std::vector<PureState> states, std::vector<std::string> outcome_labels);

    const std::vector<PureState> &states() const { return states_; }
    const std::vector<std::string> &outcome_labels() const { return outcome_labels_; }
    const std::vector<std::string> &subsystem_labels() const { return states_.front().labels(); }
    std::size_t size() const { return states_.size(); }

  private:
    std::vector<PureState> states_;
    std::vector<std::string> outcome_labels_;
};

struct MeasurementOutcome {
    std::string label;
    double probability;
    /// Normalized projection onto (basis element) x (identity on the rest),
    /// in the measured state's label order. Empty when probability < 1e-14.
    std::optional<PureState> post_state;
    /// Normalized conditional state of the unmeasured subsystems. Empty when
    /// the outcome is null or nothing is left unmeasured.
    std::optional<PureState> residual;
};

PureState tensor_product(const PureState &a, const PureState &b);

/// <a|b>, conjugating the first argument.
Amplitude inner_product(const PureState &a, const PureState &b);

/// |<a|b>|^2
double fidelity(const PureState &a, const PureState &b);

/// Born-rule statistics of measuring `basis` on the subsystems in
/// `measured_labels`. The basis elements may list those subsystems in any
/// order; the set must match.
std::vector<MeasurementOutcome> measure_probabilities(
    const PureState &state, const ProjectiveBasis &basis, std::span<const std::string> measured_labels);

PureState apply_local_unitary(const PureState &state, const Matrix2 &u, const std::string &target_label);

/// Tr(rho^2) of the reduced state on `keep_labels`.
double reduced_purity(const PureState &state, std::span<const std::string> keep_labels);

bool is_unitary(const Matrix2 &u, double tol = kTolerance);
Matrix2 adjoint(const Matrix2 &u);
Matrix2 multiply(const Matrix2 &a, const Matrix2 &b);

namespace gates {
Matrix2 identity();
Matrix2 bit_flip();
Matrix2 phase_flip();
}  // namespace gates

}  // namespace telebell
