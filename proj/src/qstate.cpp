#include "telebell/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace telebell {

namespace {

// Gathers the bits of `index` at `bits` (most significant first) into a
// compact integer.
std::size_t gather_bits(std::size_t index, std::span<const std::size_t> bits) {
    std::size_t out = 0;
    for (std::size_t b : bits) {
        out = (out << 1) | ((index >> b) & 1U);
    }
    return out;
}

void require_finite(Amplitude a) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
        throw StateError("non-finite amplitude");
    }
}

}  // namespace

PureState::PureState(std::vector<std::string> labels, std::vector<Amplitude> amplitudes)
    : labels_(std::move(labels)), amplitudes_(std::move(amplitudes)) {
    if (labels_.empty() || labels_.size() > kMaxQubits) {
        throw StateError("qubit count must be in [1, 4], got " + std::to_string(labels_.size()));
    }
    if (amplitudes_.size() != (std::size_t{1} << labels_.size())) {
        throw StateError("amplitude count does not match 2^num_qubits");
    }
    std::unordered_set<std::string> seen;
    for (const auto &l : labels_) {
        if (!seen.insert(l).second) {
            throw StateError("duplicate subsystem label '" + l + "'");
        }
    }
    for (auto a : amplitudes_) {
        require_finite(a);
    }
}

PureState PureState::basis(const std::string &label, std::size_t index) {
    if (index > 1) {
        throw StateError("single-qubit basis index must be 0 or 1");
    }
    std::vector<Amplitude> amps(2);
    amps[index] = 1.0;
    return PureState({label}, std::move(amps));
}

double PureState::norm_sq() const {
    double s = 0;
    for (auto a : amplitudes_) {
        s += std::norm(a);
    }
    return s;
}

PureState PureState::normalized() const {
    double n = std::sqrt(norm_sq());
    if (n == 0) {
        throw StateError("cannot normalize the zero vector");
    }
    return scaled(1.0 / n);
}

PureState PureState::scaled(Amplitude factor) const {
    std::vector<Amplitude> amps(amplitudes_);
    for (auto &a : amps) {
        a *= factor;
    }
    return PureState(labels_, std::move(amps));
}

bool PureState::has_label(const std::string &label) const {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t PureState::bit_of(const std::string &label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        throw StateError("unknown subsystem label '" + label + "'");
    }
    return labels_.size() - 1 - static_cast<std::size_t>(it - labels_.begin());
}

ProjectiveBasis::ProjectiveBasis(std::vector<PureState> states, std::vector<std::string> outcome_labels)
    : states_(std::move(states)), outcome_labels_(std::move(outcome_labels)) {
    if (states_.empty()) {
        throw StateError("empty basis");
    }
    if (states_.size() != outcome_labels_.size()) {
        throw StateError("basis needs one outcome label per state");
    }
    const auto &labels = states_.front().labels();
    if (states_.size() != states_.front().dim()) {
        throw StateError("basis does not span its subspace: " + std::to_string(states_.size()) + " states for dimension " +
                         std::to_string(states_.front().dim()));
    }
    for (std::size_t i = 0; i < states_.size(); ++i) {
        if (states_[i].labels() != labels) {
            throw StateError("basis states disagree on subsystem labels");
        }
        for (std::size_t j = i; j < states_.size(); ++j) {
            double expected = i == j ? 1.0 : 0.0;
            if (std::abs(inner_product(states_[i], states_[j]) - expected) > kTolerance) {
                throw StateError("basis is not orthonormal");
            }
        }
    }
}

PureState tensor_product(const PureState &a, const PureState &b) {
    for (const auto &l : b.labels()) {
        if (a.has_label(l)) {
            throw StateError("label collision on '" + l + "'");
        }
    }
    if (a.num_qubits() + b.num_qubits() > kMaxQubits) {
        throw StateError("tensor product exceeds four qubits");
    }
    std::vector<std::string> labels(a.labels());
    labels.insert(labels.end(), b.labels().begin(), b.labels().end());
    std::vector<Amplitude> amps;
    amps.reserve(a.dim() * b.dim());
    for (auto x : a.amplitudes()) {
        for (auto y : b.amplitudes()) {
            amps.push_back(x * y);
        }
    }
    return PureState(std::move(labels), std::move(amps));
}

Amplitude inner_product(const PureState &a, const PureState &b) {
    if (a.labels() != b.labels()) {
        throw StateError("inner product needs identical label order");
    }
    Amplitude s = 0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

double fidelity(const PureState &a, const PureState &b) {
    return std::norm(inner_product(a, b));
}

std::vector<MeasurementOutcome> measure_probabilities(
    const PureState &state, const ProjectiveBasis &basis, std::span<const std::string> measured_labels) {
    const auto &basis_labels = basis.subsystem_labels();
    {
        std::vector<std::string> lhs(measured_labels.begin(), measured_labels.end());
        std::vector<std::string> rhs(basis_labels);
        std::sort(lhs.begin(), lhs.end());
        std::sort(rhs.begin(), rhs.end());
        if (lhs != rhs) {
            throw StateError("basis subsystems do not match the measured labels");
        }
    }
    if (std::abs(state.norm_sq() - 1.0) > kTolerance) {
        throw StateError("measured state is not normalized");
    }

    std::vector<std::size_t> measured_bits;
    for (const auto &l : basis_labels) {
        measured_bits.push_back(state.bit_of(l));
    }
    std::vector<std::string> rest_labels;
    std::vector<std::size_t> rest_bits;
    for (const auto &l : state.labels()) {
        if (std::find(basis_labels.begin(), basis_labels.end(), l) == basis_labels.end()) {
            rest_labels.push_back(l);
            rest_bits.push_back(state.bit_of(l));
        }
    }
    const std::size_t rest_dim = std::size_t{1} << rest_bits.size();

    std::vector<MeasurementOutcome> outcomes;
    outcomes.reserve(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const PureState &element = basis.states()[k];
        std::vector<Amplitude> projected(rest_dim);
        for (std::size_t idx = 0; idx < state.dim(); ++idx) {
            projected[gather_bits(idx, rest_bits)] += std::conj(element[gather_bits(idx, measured_bits)]) * state[idx];
        }
        double p = 0;
        for (auto a : projected) {
            p += std::norm(a);
        }
        if (p < 0) {
            if (p < -kTolerance) {
                throw StateError("negative probability");
            }
            p = 0;
        }

        MeasurementOutcome out{basis.outcome_labels()[k], p, std::nullopt, std::nullopt};
        if (p >= 1e-14) {
            double inv = 1.0 / std::sqrt(p);
            std::vector<Amplitude> post(state.dim());
            for (std::size_t idx = 0; idx < state.dim(); ++idx) {
                post[idx] = element[gather_bits(idx, measured_bits)] * projected[gather_bits(idx, rest_bits)] * inv;
            }
            out.post_state = PureState(state.labels(), std::move(post));
            if (!rest_labels.empty()) {
                for (auto &a : projected) {
                    a *= inv;
                }
                out.residual = PureState(rest_labels, std::move(projected));
            }
        }
        outcomes.push_back(std::move(out));
    }
    return outcomes;
}

PureState apply_local_unitary(const PureState &state, const Matrix2 &u, const std::string &target_label) {
    if (!is_unitary(u)) {
        throw StateError("matrix is not unitary");
    }
    const std::size_t bit = state.bit_of(target_label);
    const std::size_t mask = std::size_t{1} << bit;
    std::vector<Amplitude> out(state.dim());
    for (std::size_t idx = 0; idx < state.dim(); ++idx) {
        if (idx & mask) {
            continue;
        }
        Amplitude a0 = state[idx];
        Amplitude a1 = state[idx | mask];
        out[idx] = u[0][0] * a0 + u[0][1] * a1;
        out[idx | mask] = u[1][0] * a0 + u[1][1] * a1;
    }
    return PureState(state.labels(), std::move(out));
}

double reduced_purity(const PureState &state, std::span<const std::string> keep_labels) {
    std::vector<std::size_t> keep_bits;
    for (const auto &l : keep_labels) {
        keep_bits.push_back(state.bit_of(l));
    }
    std::vector<std::size_t> trace_bits;
    for (const auto &l : state.labels()) {
        if (std::find(keep_labels.begin(), keep_labels.end(), l) == keep_labels.end()) {
            trace_bits.push_back(state.bit_of(l));
        }
    }
    const std::size_t keep_dim = std::size_t{1} << keep_bits.size();
    const std::size_t trace_dim = std::size_t{1} << trace_bits.size();

    // psi[i][r]: amplitude with kept index i and traced index r.
    std::vector<Amplitude> psi(keep_dim * trace_dim);
    for (std::size_t idx = 0; idx < state.dim(); ++idx) {
        psi[gather_bits(idx, keep_bits) * trace_dim + gather_bits(idx, trace_bits)] = state[idx];
    }
    double purity = 0;
    for (std::size_t i = 0; i < keep_dim; ++i) {
        for (std::size_t j = 0; j < keep_dim; ++j) {
            Amplitude rho = 0;
            for (std::size_t r = 0; r < trace_dim; ++r) {
                rho += psi[i * trace_dim + r] * std::conj(psi[j * trace_dim + r]);
            }
            purity += std::norm(rho);
        }
    }
    return purity;
}

Matrix2 adjoint(const Matrix2 &u) {
    return {{{std::conj(u[0][0]), std::conj(u[1][0])}, {std::conj(u[0][1]), std::conj(u[1][1])}}};
}

Matrix2 multiply(const Matrix2 &a, const Matrix2 &b) {
    Matrix2 c{};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    return c;
}

bool is_unitary(const Matrix2 &u, double tol) {
    for (const auto &row : u) {
        for (auto a : row) {
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
                return false;
            }
        }
    }
    Matrix2 p = multiply(adjoint(u), u);
    return std::abs(p[0][0] - 1.0) <= tol && std::abs(p[1][1] - 1.0) <= tol && std::abs(p[0][1]) <= tol &&
           std::abs(p[1][0]) <= tol;
}

namespace gates {
Matrix2 identity() { return {{{1.0, 0.0}, {0.0, 1.0}}}; }
Matrix2 bit_flip() { return {{{0.0, 1.0}, {1.0, 0.0}}}; }
Matrix2 phase_flip() { return {{{1.0, 0.0}, {0.0, -1.0}}}; }
}  // namespace gates

}  // namespace telebell
