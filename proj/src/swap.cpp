#include "telebell/swap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace telebell {

namespace {

constexpr double kPi = std::numbers::pi;

void require_pair(const PureState &pair) {
    if (pair.num_qubits() != 2) {
        throw StateError("CHSH needs a two-qubit state");
    }
    if (std::abs(pair.norm_sq() - 1.0) > kTolerance) {
        throw StateError("CHSH state is not normalized");
    }
}

// E(a, b) is bilinear in n(a) = (cos 2a, sin 2a) and n(b); its coefficient
// matrix is read off from four Born-rule evaluations.
class CorrelationForm {
  public:
    explicit CorrelationForm(const PureState &pair) {
        const std::array<double, 2> axis{0.0, kPi / 4};
        for (int j = 0; j < 2; ++j) {
            for (int k = 0; k < 2; ++k) {
                t_[j][k] = dichotomic_correlation(pair, axis[j], axis[k]);
            }
        }
    }

    // u = T^T n_first
    std::array<double, 2> pull(const std::array<double, 2> &n) const {
        return {t_[0][0] * n[0] + t_[1][0] * n[1], t_[0][1] * n[0] + t_[1][1] * n[1]};
    }

    double chsh(const ChshAngles &g) const {
        auto na = unit(g.a), nap = unit(g.a_prime), nb = unit(g.b), nbp = unit(g.b_prime);
        auto u = pull({na[0] + nap[0], na[1] + nap[1]});
        auto w = pull({nap[0] - na[0], nap[1] - na[1]});
        return u[0] * nb[0] + u[1] * nb[1] + w[0] * nbp[0] + w[1] * nbp[1];
    }

    static std::array<double, 2> unit(double theta) { return {std::cos(2 * theta), std::sin(2 * theta)}; }

  private:
    std::array<std::array<double, 2>, 2> t_{};
};

}  // namespace

PureState epr_pair(const std::string &first, const std::string &second) {
    const double s = 1.0 / std::sqrt(2.0);
    return PureState({first, second}, {s, 0.0, 0.0, s});
}

PureState swap_initial_state() {
    return tensor_product(epr_pair(kLabelD, kLabelA), epr_pair(kLabelB, kLabelC));
}

double dichotomic_correlation(const PureState &pair, double a, double b) {
    require_pair(pair);
    const auto &first = pair.labels()[0];
    const auto &second = pair.labels()[1];
    const std::array<std::string, 1> first_side{first};
    const std::array<std::string, 1> second_side{second};
    const ProjectiveBasis basis_b = bob_basis({b, 0.0}, second);

    double e = 0;
    auto outer = measure_probabilities(pair, bob_basis({a, 0.0}, first), first_side);
    for (std::size_t i = 0; i < outer.size(); ++i) {
        if (!outer[i].residual) {
            continue;
        }
        const double vi = i == 0 ? -1.0 : 1.0;
        auto inner = measure_probabilities(*outer[i].residual, basis_b, second_side);
        for (std::size_t j = 0; j < inner.size(); ++j) {
            const double vj = j == 0 ? -1.0 : 1.0;
            e += outer[i].probability * inner[j].probability * vi * vj;
        }
    }
    return e;
}

double chsh_on_pair(const PureState &pair, const ChshAngles &g) {
    return dichotomic_correlation(pair, g.a, g.b) - dichotomic_correlation(pair, g.a, g.b_prime) +
           dichotomic_correlation(pair, g.a_prime, g.b) + dichotomic_correlation(pair, g.a_prime, g.b_prime);
}

ChshOptimum maximize_chsh(const PureState &pair) {
    require_pair(pair);
    const CorrelationForm form(pair);

    // Analyzer directions repeat with period pi in the angle.
    constexpr int kSteps = 180;
    std::array<std::array<double, 2>, kSteps> dirs;
    for (int k = 0; k < kSteps; ++k) {
        dirs[k] = CorrelationForm::unit(k * kPi / kSteps);
    }

    double peak = -std::numeric_limits<double>::infinity();
    ChshAngles best{};
    double best_value = peak;
    for (int ia = 0; ia < kSteps; ++ia) {
        for (int iap = 0; iap < kSteps; ++iap) {
            const auto &na = dirs[ia];
            const auto &nap = dirs[iap];
            const auto u = form.pull({na[0] + nap[0], na[1] + nap[1]});
            const auto w = form.pull({nap[0] - na[0], nap[1] - na[1]});
            // The b and b' terms separate.
            int ib = 0, ibp = 0;
            double sb = -std::numeric_limits<double>::infinity(), sbp = sb;
            for (int k = 0; k < kSteps; ++k) {
                const double x = u[0] * dirs[k][0] + u[1] * dirs[k][1];
                const double y = w[0] * dirs[k][0] + w[1] * dirs[k][1];
                if (x > sb) {
                    sb = x;
                    ib = k;
                }
                if (y > sbp) {
                    sbp = y;
                    ibp = k;
                }
            }
            const double s = sb + sbp;
            peak = std::max(peak, s);
            if (s > best_value) {
                best_value = s;
                best = {ia * kPi / kSteps, iap * kPi / kSteps, ib * kPi / kSteps, ibp * kPi / kSteps};
            }
        }
    }

    // Compass search around the grid optimum.
    double step = 0.5 * kPi / 180.0;
    while (step > 1e-10) {
        bool improved = false;
        for (int axis = 0; axis < 4; ++axis) {
            for (double dir : {1.0, -1.0}) {
                ChshAngles trial = best;
                double *angle[] = {&trial.a, &trial.a_prime, &trial.b, &trial.b_prime};
                *angle[axis] += dir * step;
                const double s = form.chsh(trial);
                peak = std::max(peak, s);
                if (s > best_value) {
                    best_value = s;
                    best = trial;
                    improved = true;
                }
            }
        }
        if (!improved) {
            step *= 0.5;
        }
    }

    for (double *angle : {&best.a, &best.a_prime, &best.b, &best.b_prime}) {
        *angle = std::fmod(*angle, kPi);
        if (*angle < 0) {
            *angle += kPi;
        }
    }
    const double value = chsh_on_pair(pair, best);
    return {value, best, std::max(peak, value)};
}

SwapReport run_swap() {
    const PureState psi = swap_initial_state();
    const std::array<std::string, 2> alice_side{kLabelB, kLabelA};
    auto outcomes = measure_probabilities(psi, bell_basis(kLabelB, kLabelA), alice_side);

    SwapReport report;
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
        report.outcome_probabilities[k] = outcomes[k].probability;
        // Every Bell outcome has probability 1/4 here, so the residual exists.
        const PureState &post = outcomes[k].residual.value();
        report.post_states.push_back(post);
        const ChshOptimum opt = maximize_chsh(post);
        report.chsh_values[k] = opt.value;
        report.chsh_angles[k] = opt.angles;
        report.search_peak = std::max(report.search_peak, opt.search_peak);
    }
    return report;
}

SubensembleResult single_outcome_subensemble(BellOutcome outcome) {
    const PureState psi = swap_initial_state();
    const std::array<std::string, 2> alice_side{kLabelB, kLabelA};
    auto outcomes = measure_probabilities(psi, bell_basis(kLabelB, kLabelA), alice_side);
    const auto &selected = outcomes[index_of(outcome)];
    return {selected.probability, maximize_chsh(selected.residual.value()).value};
}

}  // namespace telebell
