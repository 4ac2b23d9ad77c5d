#include "telebell/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "telebell/corrvec.hpp"
#include "telebell/lhv.hpp"
#include "telebell/noise.hpp"
#include "telebell/swap.hpp"
#include "telebell/teleport.hpp"

namespace telebell::cli {

namespace {

using Json = nlohmann::ordered_json;

class InvariantBreach : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    double beta_deg = 45;
    double phi_deg = 0;
    double beta_prime_deg = 45;
    double phi_prime_deg = 0;
    double visibility = 1;
    std::vector<std::string> grid;
    std::string format;
    std::string out_path;
};

constexpr double kCheckTolerance = 1e-12;
constexpr double kChshTolerance = 1e-6;

double rounded(double x) {
    return std::strtod(format_number(x).c_str(), nullptr);
}

Json num(double x) {
    return Json(rounded(x));
}

// Records a deviation in the checks block and fails if it exceeds `tol`.
void check(Json &checks, const std::string &name, double deviation, double tol = kCheckTolerance) {
    if (!(deviation <= tol)) {
        throw InvariantBreach(name + " = " + format_number(deviation) + " exceeds " + format_number(tol));
    }
    checks[name] = num(deviation);
}

Json header(const std::string &command) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["command"] = command;
    return j;
}

std::string dump(const Json &j) {
    return j.dump(2) + "\n";
}

PreparationSettings prep_of(const RunConfig &cfg) {
    return {degrees_to_radians(cfg.beta_deg), degrees_to_radians(cfg.phi_deg)};
}

AnalyzerSettings analyzer_of(const RunConfig &cfg) {
    return {degrees_to_radians(cfg.beta_prime_deg), degrees_to_radians(cfg.phi_prime_deg)};
}

JointDistribution mix(const JointDistribution &d, double v) {
    JointDistribution out = d;
    for (auto c : kBellOutcomes) {
        for (auto i : kBobOutcomes) {
            out(c, i) = v * d(c, i) + (1 - v) / 8;
        }
    }
    return out;
}

Json strategy_json(const DeterministicStrategy &s) {
    Json bob;
    for (std::size_t k = 0; k < 2; ++k) {
        bob[format_number(kBobPhasesDeg[k])] = s.bob_answers[k].value();
    }
    Json alice;
    for (std::size_t k = 0; k < 2; ++k) {
        alice[format_number(kAlicePhasesDeg[k])] =
            Json::array({s.alice_answers[k].first.value(), s.alice_answers[k].second.value()});
    }
    Json j;
    j["bob_answers"] = bob;
    j["alice_answers"] = alice;
    return j;
}

Json super_vector_json(const SuperVector &v) {
    Json arr = Json::array();
    for (std::size_t k = 0; k < v.size(); ++k) {
        Json e;
        e["phi"] = num(kSuperVectorSettings[k].alice_deg);
        e["phi_prime"] = num(kSuperVectorSettings[k].bob_deg);
        e["E"] = Json::array({num(v[k].x), num(v[k].y)});
        arr.push_back(e);
    }
    return arr;
}

std::string cmd_probs(const RunConfig &cfg) {
    const Visibility vis(cfg.visibility);
    const auto prep = prep_of(cfg);
    const auto analyzer = analyzer_of(cfg);
    const JointDistribution dist = noisy_joint_distribution(prep, analyzer, vis);
    const JointDistribution oracle = mix(joint_distribution_simulated(prep, analyzer), vis.value());

    Json checks;
    check(checks, "sum_deviation", std::abs(dist.total() - 1.0));
    double marginal = 0;
    for (auto c : kBellOutcomes) {
        marginal = std::max(marginal, std::abs(dist.alice_marginal(c) - 0.25));
    }
    check(checks, "max_marginal_deviation", marginal);
    check(checks, "oracle_max_deviation", dist.max_abs_difference(oracle));
    check(checks, "range_violation", std::max(0.0, dist.invariant_deviation() - marginal));

    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "bell,bob,probability\n";
        for (auto c : kBellOutcomes) {
            for (auto i : kBobOutcomes) {
                os << to_string(c) << ',' << to_string(i) << ',' << format_number(dist(c, i)) << '\n';
            }
        }
        return os.str();
    }

    Json j = header("probs");
    j["settings"] = {{"beta", num(cfg.beta_deg)},
                     {"phi", num(cfg.phi_deg)},
                     {"beta_prime", num(cfg.beta_prime_deg)},
                     {"phi_prime", num(cfg.phi_prime_deg)},
                     {"visibility", num(cfg.visibility)}};
    Json probs = Json::array();
    for (auto c : kBellOutcomes) {
        for (auto i : kBobOutcomes) {
            probs.push_back({{"bell", to_string(c)}, {"bob", to_string(i)}, {"probability", num(dist(c, i))}});
        }
    }
    j["probabilities"] = probs;
    j["checks"] = checks;
    return dump(j);
}

std::string cmd_bell_test(const RunConfig &cfg) {
    const Visibility vis(cfg.visibility);
    const BellTestReport report = bell_test_at(vis);
    const SuperVector v_qm = build_quantum_super_vector();
    const SuperVector simulated = build_super_vector(joint_distribution_simulated);
    const ExtremalBound bound = lhv_extremal_bound(v_qm);

    Json checks;
    double oracle = 0;
    for (std::size_t k = 0; k < v_qm.size(); ++k) {
        oracle = std::max({oracle, std::abs(v_qm[k].x - simulated[k].x), std::abs(v_qm[k].y - simulated[k].y)});
    }
    check(checks, "closed_form_oracle_deviation", oracle);
    check(checks, "bound_symmetry_deviation", std::abs(bound.max + bound.min));
    check(checks, "self_dot_deviation", std::abs(super_dot(v_qm, v_qm) - super_norm_sq(v_qm)));
    check(checks, "linearity_deviation", std::abs(report.quantum_value - vis.value() * super_norm_sq(v_qm)));

    Json j = header("bell-test");
    j["visibility"] = num(vis.value());
    j["quantum_value"] = num(report.quantum_value);
    j["quantum_norm_sq"] = num(super_norm_sq(v_qm));
    j["lhv_upper_bound"] = num(report.lhv_upper_bound);
    j["lhv_lower_bound"] = num(report.lhv_lower_bound);
    j["violated"] = report.violated;
    j["violation_ratio"] = num(report.violation_ratio);
    j["margin"] = num(report.quantum_value - report.lhv_upper_bound);
    j["strategy_count"] = enumerate_strategies().size();
    j["argmax"] = strategy_json(report.argmax);
    j["super_vector"] = super_vector_json(v_qm);
    j["checks"] = checks;
    return dump(j);
}

std::string cmd_scan(const RunConfig &cfg) {
    const Visibility vis(cfg.visibility);
    const std::array<std::string, 4> axes{"beta", "phi", "beta_prime", "phi_prime"};
    std::array<GridAxis, 4> grid{{{"beta", cfg.beta_deg, cfg.beta_deg, 1},
                                  {"phi", cfg.phi_deg, cfg.phi_deg, 1},
                                  {"beta_prime", cfg.beta_prime_deg, cfg.beta_prime_deg, 1},
                                  {"phi_prime", cfg.phi_prime_deg, cfg.phi_prime_deg, 1}}};
    std::array<bool, 4> seen{};
    for (const auto &text : cfg.grid) {
        GridAxis g = parse_grid_axis(text);
        auto pos = static_cast<std::size_t>(std::find(axes.begin(), axes.end(), g.axis) - axes.begin());
        if (seen[pos]) {
            throw std::invalid_argument("axis '" + g.axis + "' given twice");
        }
        seen[pos] = true;
        grid[pos] = g;
    }
    double rows = 1;
    for (const auto &g : grid) {
        rows *= static_cast<double>(g.count());
    }
    if (rows > static_cast<double>(kMaxScanRows)) {
        throw std::invalid_argument("grid has " + format_number(rows) + " rows, limit is 1000000");
    }

    auto value = [&](std::size_t axis, std::size_t k) { return grid[axis].start + static_cast<double>(k) * grid[axis].step; };

    std::ostringstream csv;
    csv << "beta,phi,beta_prime,phi_prime,E_x,E_y\n";
    Json json_rows = Json::array();
    GridSuperVector gsv;
    double deviation = 0;
    for (std::size_t i0 = 0; i0 < grid[0].count(); ++i0) {
        for (std::size_t i1 = 0; i1 < grid[1].count(); ++i1) {
            for (std::size_t i2 = 0; i2 < grid[2].count(); ++i2) {
                for (std::size_t i3 = 0; i3 < grid[3].count(); ++i3) {
                    const std::array<double, 4> deg{value(0, i0), value(1, i1), value(2, i2), value(3, i3)};
                    const PreparationSettings prep{degrees_to_radians(deg[0]), degrees_to_radians(deg[1])};
                    const AnalyzerSettings analyzer{degrees_to_radians(deg[2]), degrees_to_radians(deg[3])};
                    const CorrelationVector e = correlation_closed_form(prep, analyzer) * vis.value();
                    const CorrelationVector from_dist =
                        correlation_from_distribution(noisy_joint_distribution(prep, analyzer, vis));
                    deviation = std::max({deviation, std::abs(e.x - from_dist.x), std::abs(e.y - from_dist.y)});
                    gsv.push_back(e);
                    if (cfg.format == "csv") {
                        for (double d : deg) {
                            csv << format_number(d) << ',';
                        }
                        csv << format_number(e.x) << ',' << format_number(e.y) << '\n';
                    } else {
                        json_rows.push_back({{"beta", num(deg[0])},
                                             {"phi", num(deg[1])},
                                             {"beta_prime", num(deg[2])},
                                             {"phi_prime", num(deg[3])},
                                             {"E_x", num(e.x)},
                                             {"E_y", num(e.y)}});
                    }
                }
            }
        }
    }
    Json checks;
    check(checks, "formula_oracle_deviation", deviation);
    if (cfg.format == "csv") {
        return csv.str();
    }
    Json j = header("scan");
    j["visibility"] = num(vis.value());
    Json axes_json = Json::array();
    for (const auto &g : grid) {
        axes_json.push_back(
            {{"axis", g.axis}, {"start", num(g.start)}, {"stop", num(g.stop)}, {"step", num(g.step)}, {"count", g.count()}});
    }
    j["axes"] = axes_json;
    j["row_count"] = gsv.size();
    j["super_norm_sq"] = num(super_norm_sq(gsv));
    j["rows"] = json_rows;
    j["checks"] = checks;
    return dump(j);
}

std::string cmd_swap(const RunConfig &) {
    const SwapReport report = run_swap();
    const double tsirelson = 2 * std::numbers::sqrt2;
    const std::array<std::string, 1> keep_d{kLabelD};

    Json checks;
    double prob_dev = 0, purity_dev = 0, chsh_dev = 0;
    Json outcomes = Json::array();
    for (std::size_t k = 0; k < 4; ++k) {
        const double purity = reduced_purity(report.post_states[k], keep_d);
        prob_dev = std::max(prob_dev, std::abs(report.outcome_probabilities[k] - 0.25));
        purity_dev = std::max(purity_dev, std::abs(purity - 0.5));
        chsh_dev = std::max(chsh_dev, std::abs(report.chsh_values[k] - tsirelson));
        const auto &g = report.chsh_angles[k];
        outcomes.push_back({{"bell", to_string(kBellOutcomes[k])},
                            {"probability", num(report.outcome_probabilities[k])},
                            {"reduced_purity", num(purity)},
                            {"chsh", num(report.chsh_values[k])},
                            {"angles_deg",
                             {{"a", num(radians_to_degrees(g.a))},
                              {"a_prime", num(radians_to_degrees(g.a_prime))},
                              {"b", num(radians_to_degrees(g.b))},
                              {"b_prime", num(radians_to_degrees(g.b_prime))}}}});
    }
    check(checks, "max_probability_deviation", prob_dev);
    check(checks, "max_purity_deviation", purity_dev);
    check(checks, "max_chsh_deviation", chsh_dev, kChshTolerance);
    check(checks, "tsirelson_excess", std::max(0.0, report.search_peak - tsirelson), 1e-9);

    Json j = header("swap");
    j["tsirelson_bound"] = num(tsirelson);
    j["outcomes"] = outcomes;
    j["checks"] = checks;
    return dump(j);
}

std::string cmd_noise_threshold(const RunConfig &) {
    const double threshold = violation_threshold();
    const double exact = 1.0 / std::numbers::sqrt2;

    Json checks;
    check(checks, "threshold_deviation", std::abs(threshold - exact), 1e-9);

    auto verdict = [](double v) {
        const BellTestReport r = bell_test_at(Visibility(v));
        return Json{{"visibility", num(v)}, {"quantum_value", num(r.quantum_value)}, {"violated", r.violated}};
    };
    const Json below = verdict(threshold - 0.01);
    const Json above = verdict(threshold + 0.01);
    if (below["violated"].get<bool>() || !above["violated"].get<bool>()) {
        throw InvariantBreach("verdict does not flip at the threshold");
    }

    Json j = header("noise-threshold");
    j["threshold"] = num(threshold);
    j["lhv_upper_bound"] = num(bell_test().lhv_upper_bound);
    j["bracket"] = {{"below", below}, {"above", above}};
    Json verdicts = Json::array();
    for (double v : {0.65, 0.70, 0.72, 1.0}) {
        verdicts.push_back(verdict(v));
    }
    j["verdicts"] = verdicts;
    j["checks"] = checks;
    return dump(j);
}

std::string cmd_teleport_fidelity(const RunConfig &cfg) {
    const auto records = run_full_teleportation(prep_of(cfg));
    const std::array<const char *, 4> names{"I", "X", "ZX", "Z"};

    Json checks;
    double prob_dev = 0, fid_dev = 0;
    Json arr = Json::array();
    for (std::size_t k = 0; k < records.size(); ++k) {
        const auto &r = records[k];
        prob_dev = std::max(prob_dev, std::abs(r.probability - 0.25));
        fid_dev = std::max(fid_dev, std::abs(r.fidelity - 1.0));
        arr.push_back({{"bell", to_string(r.outcome)},
                       {"probability", num(r.probability)},
                       {"correction", names[k]},
                       {"fidelity", num(r.fidelity)}});
    }
    check(checks, "max_probability_deviation", prob_dev);
    check(checks, "max_fidelity_deviation", fid_dev);

    Json j = header("teleport-fidelity");
    j["settings"] = {{"beta", num(cfg.beta_deg)}, {"phi", num(cfg.phi_deg)}};
    j["records"] = arr;
    j["checks"] = checks;
    return dump(j);
}

void require_finite(double x, const char *name) {
    if (!std::isfinite(x)) {
        throw std::invalid_argument(std::string(name) + " must be finite");
    }
}

}  // namespace

std::size_t GridAxis::count() const {
    return static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
}

GridAxis parse_grid_axis(const std::string &text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
        throw std::invalid_argument("grid text must look like axis=start:stop:step, got '" + text + "'");
    }
    GridAxis g;
    g.axis = text.substr(0, eq);
    std::replace(g.axis.begin(), g.axis.end(), '-', '_');
    if (g.axis != "beta" && g.axis != "phi" && g.axis != "beta_prime" && g.axis != "phi_prime") {
        throw std::invalid_argument("unknown grid axis '" + g.axis + "'");
    }
    std::array<double, 3> parts{};
    std::size_t pos = eq + 1;
    for (std::size_t k = 0; k < 3; ++k) {
        const auto end = k < 2 ? text.find(':', pos) : text.size();
        if (end == std::string::npos) {
            throw std::invalid_argument("grid text needs start:stop:step, got '" + text + "'");
        }
        const std::string field = text.substr(pos, end - pos);
        char *tail = nullptr;
        parts[k] = std::strtod(field.c_str(), &tail);
        if (field.empty() || *tail != '\0' || !std::isfinite(parts[k])) {
            throw std::invalid_argument("bad number '" + field + "' in grid text");
        }
        pos = end + 1;
    }
    g.start = parts[0];
    g.stop = parts[1];
    g.step = parts[2];
    if (!(g.step > 0)) {
        throw std::invalid_argument("grid step must be positive");
    }
    if (g.stop < g.start) {
        throw std::invalid_argument("grid stop lies below start");
    }
    if ((g.stop - g.start) / g.step >= static_cast<double>(kMaxScanRows)) {
        throw std::invalid_argument("grid axis exceeds the row limit");
    }
    return g;
}

std::string format_number(double x) {
    if (x == 0) {
        x = 0;  // folds -0
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Bell-inequality analysis of channel-cut quantum teleportation", "telebell"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_prep = [&](CLI::App *sub) {
        sub->add_option("--beta", cfg.beta_deg, "Preparation angle beta (degrees)");
        sub->add_option("--phi", cfg.phi_deg, "Preparation phase phi (degrees)");
    };
    auto add_analyzer = [&](CLI::App *sub) {
        sub->add_option("--beta-prime", cfg.beta_prime_deg, "Bob's analyzer angle (degrees)");
        sub->add_option("--phi-prime", cfg.phi_prime_deg, "Bob's analyzer phase (degrees)");
    };
    auto add_visibility = [&](CLI::App *sub) {
        sub->add_option("--visibility", cfg.visibility, "Visibility in [0, 1]");
    };
    auto add_output = [&](CLI::App *sub, std::vector<std::string> formats) {
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember(formats));
        sub->add_option("--out", cfg.out_path, "Write output to this file instead of standard output");
    };

    auto *probs = app.add_subcommand("probs", "The eight joint probabilities P(c, i)");
    add_prep(probs);
    add_analyzer(probs);
    add_visibility(probs);
    add_output(probs, {"json", "csv"});

    auto *bell = app.add_subcommand("bell-test", "Quantum super-vector against the exhaustive LHV bound");
    add_visibility(bell);
    add_output(bell, {"json"});

    auto *scan = app.add_subcommand("scan", "Correlation vectors over a settings grid");
    add_prep(scan);
    add_analyzer(scan);
    add_visibility(scan);
    scan->add_option("--grid", cfg.grid, "axis=start:stop:step (degrees, stop inclusive); repeatable");
    add_output(scan, {"json", "csv"});

    auto *swap = app.add_subcommand("swap", "Entanglement swapping with CHSH on each post-selected pair");
    add_output(swap, {"json"});

    auto *noise = app.add_subcommand("noise-threshold", "Visibility threshold for the Bell violation");
    add_output(noise, {"json"});

    auto *tele = app.add_subcommand("teleport-fidelity", "Full protocol with corrections");
    add_prep(tele);
    add_output(tele, {"json"});

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "telebell: " << e.what() << "\n";
        return kExitUsage;
    }

    std::string payload;
    try {
        require_finite(cfg.beta_deg, "--beta");
        require_finite(cfg.phi_deg, "--phi");
        require_finite(cfg.beta_prime_deg, "--beta-prime");
        require_finite(cfg.phi_prime_deg, "--phi-prime");
        if (cfg.format.empty()) {
            cfg.format = scan->parsed() ? "csv" : "json";
        }
        if (probs->parsed()) {
            payload = cmd_probs(cfg);
        } else if (bell->parsed()) {
            payload = cmd_bell_test(cfg);
        } else if (scan->parsed()) {
            payload = cmd_scan(cfg);
        } else if (swap->parsed()) {
            payload = cmd_swap(cfg);
        } else if (noise->parsed()) {
            payload = cmd_noise_threshold(cfg);
        } else {
            payload = cmd_teleport_fidelity(cfg);
        }
    } catch (const InvariantBreach &e) {
        err << "telebell: invariant breach: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::invalid_argument &e) {
        err << "telebell: " << e.what() << "\n";
        return kExitUsage;
    }

    if (cfg.out_path.empty()) {
        out << payload;
        return kExitOk;
    }
    std::ofstream file(cfg.out_path, std::ios::binary);
    file << payload;
    if (!file) {
        err << "telebell: cannot write " << cfg.out_path << "\n";
        return kExitUsage;
    }
    return kExitOk;
}

}  // namespace telebell::cli
