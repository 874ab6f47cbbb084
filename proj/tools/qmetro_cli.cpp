// Copyright 2026 The qmetro Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Exit codes: 0 success, 1 computation or selftest
// failure, 2 usage error.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qmetro/qmetro.hpp"

namespace {

using namespace qmetro;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ProbeSpec parse_probe(const std::string& text) {
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
    try {
        if (kind == "pefs") {
            int m = 0, n = 0;
            if (std::sscanf(args.c_str(), "%d,%d", &m, &n) != 2) {
                throw UsageError("--probe: expected pefs:m,n");
            }
            return make_pefs(m, n);
        }
        if (kind == "noon") {
            int n = 0;
            if (std::sscanf(args.c_str(), "%d", &n) != 1) {
                throw UsageError("--probe: expected noon:N");
            }
            return make_noon(n);
        }
        if (kind == "snoon") {
            int ne = 0, no = 0;
            double p = 0.0;
            if (std::sscanf(args.c_str(), "%d,%d,%lf", &ne, &no, &p) != 3) {
                throw UsageError("--probe: expected snoon:Ne,No,p");
            }
            return make_superposed_noon(ne, no, p);
        }
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--probe: ") + e.what());
    }
    throw UsageError("--probe: unknown kind '" + kind + "' (pefs | noon | snoon)");
}

// Accepts plain radians or "pi" fractions: pi, pi/12, 3pi/4, -pi/6, 0.5pi.
double parse_phi(const std::string& text) {
    const auto pos = text.find("pi");
    if (pos == std::string::npos) {
        try {
            std::size_t used = 0;
            const double v = std::stod(text, &used);
            if (used != text.size()) {
                throw UsageError("--phi: trailing characters in '" + text + "'");
            }
            return v;
        } catch (const UsageError&) {
            throw;
        } catch (const std::exception&) {
            throw UsageError("--phi: cannot parse '" + text + "'");
        }
    }
    const std::string head = text.substr(0, pos);
    const std::string tail = text.substr(pos + 2);
    double coeff = 1.0;
    if (head == "-") {
        coeff = -1.0;
    } else if (!head.empty() && head != "+") {
        try {
            coeff = std::stod(head);
        } catch (const std::exception&) {
            throw UsageError("--phi: cannot parse coefficient in '" + text + "'");
        }
    }
    double denom = 1.0;
    if (!tail.empty()) {
        if (tail[0] != '/' || tail.size() < 2) {
            throw UsageError("--phi: expected pi/N in '" + text + "'");
        }
        try {
            denom = std::stod(tail.substr(1));
        } catch (const std::exception&) {
            throw UsageError("--phi: cannot parse denominator in '" + text + "'");
        }
        if (denom == 0.0) {
            throw UsageError("--phi: zero denominator");
        }
    }
    return coeff * std::numbers::pi / denom;
}

std::vector<double> parse_grid(const std::string& text) {
    double lo = 0.0, hi = 0.0, step = 0.0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3) {
        throw UsageError("--grid: expected lo:hi:step");
    }
    if (step <= 0.0 || hi < lo) {
        throw UsageError("--grid: requires step > 0 and hi >= lo");
    }
    std::vector<double> grid;
    for (int i = 0;; ++i) {
        const double v = lo + i * step;
        if (v > hi + 1e-12) {
            break;
        }
        grid.push_back(std::min(v, hi));
    }
    return grid;
}

Measurement parse_measurement(const std::string& token) {
    if (token == "dp") return Measurement::dp;
    if (token == "sp") return Measurement::sp;
    if (token == "dpnr") return Measurement::dpnr;
    if (token == "dh") return Measurement::dh;
    if (token == "qfi") return Measurement::qfi_bound;
    throw UsageError("--measure: unknown token '" + token + "' (dp | sp | dpnr | dh | qfi)");
}

std::vector<Measurement> parse_measurements(const std::string& list) {
    std::vector<Measurement> out;
    std::stringstream ss(list);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (!token.empty()) {
            out.push_back(parse_measurement(token));
        }
    }
    if (out.empty()) {
        throw UsageError("--measure: empty measurement list");
    }
    return out;
}

LossSpec build_loss(double eta, double eta_a, double eta_b, bool eta_set) {
    try {
        if (eta_set) {
            return make_loss(eta, eta);
        }
        return make_loss(eta_a, eta_b);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--eta: ") + e.what());
    }
}

void emit(const DataTable& table, const std::string& out_path, const std::string& format) {
    std::ostringstream body;
    if (format == "csv") {
        write_csv(body, table);
    } else if (format == "json") {
        write_json(body, table);
    } else {
        throw UsageError("--format: expected csv or json");
    }
    if (out_path.empty()) {
        std::cout << body.str();
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open output file '" + out_path + "'");
    }
    file << body.str();
}

std::string probe_label(const ProbeSpec& probe) {
    if (const auto* p = std::get_if<Pefs>(&probe)) {
        return "pefs:" + std::to_string(p->m) + "," + std::to_string(p->n);
    }
    if (const auto* p = std::get_if<Noon>(&probe)) {
        return "noon:" + std::to_string(p->photons);
    }
    const auto& sn = std::get<SuperposedNoon>(probe);
    return "snoon:" + std::to_string(sn.n_even) + "," + std::to_string(sn.n_odd) + "," +
           format_double(sn.weight_even);
}

// ---------------------------------------------------------------------------
// selftest: reduced-size oracle and inequality suites

int run_selftest() {
    struct Check {
        std::string name;
        bool ok = true;
        std::string detail;
    };
    std::vector<Check> checks;
    const auto record = [&checks](const std::string& name, bool ok,
                                  const std::string& detail = "") {
        checks.push_back({name, ok, detail});
    };

    // Pascal's rule on exact binomials.
    {
        bool ok = true;
        for (int n = 2; n <= 40 && ok; ++n) {
            for (int k = 1; k < n; ++k) {
                if (binom_exact(n, k) != binom_exact(n - 1, k - 1) + binom_exact(n - 1, k)) {
                    ok = false;
                    break;
                }
            }
        }
        record("pascal-rule", ok);
    }

    // Rotation-element row unitarity and the even/odd half-split identity.
    {
        bool ok = true;
        for (int two_j = 0; two_j <= 16 && ok; ++two_j) {
            for (int two_nu = -two_j; two_nu <= two_j; two_nu += 2) {
                double sum = 0.0;
                for (int two_mu = -two_j; two_mu <= two_j; two_mu += 2) {
                    const double d = wigner_d_half_pi(two_j, two_mu, two_nu);
                    sum += d * d;
                }
                if (std::abs(sum - 1.0) > 1e-12) {
                    ok = false;
                    break;
                }
            }
        }
        record("wigner-row-unitarity", ok);

        ok = true;
        for (int n = 1; n <= 8 && ok; ++n) {
            double even_sum = 0.0;
            for (int k = 0; k <= n; k += 2) {
                const double d = wigner_d_half_pi(n, 2 * k - n, n);
                even_sum += d * d;
            }
            if (std::abs(even_sum - 0.5) > 1e-12) {
                ok = false;
            }
        }
        record("wigner-parity-split", ok);
    }

    // Loss channel preserves the trace.
    {
        bool ok = true;
        const std::vector<std::pair<int, int>> probes = {{3, 1}, {4, 0}, {6, 0}, {5, 2}};
        const std::vector<LossSpec> losses = {make_loss(0.9, 0.8), make_loss(1.0, 0.7),
                                              make_loss(0.3, 1.0)};
        for (const auto& [m, n] : probes) {
            for (const auto& loss : losses) {
                const double tr = evolve_lossy(Pefs{m, n}, loss).trace();
                if (std::abs(tr - 1.0) > 1e-12) {
                    ok = false;
                }
            }
        }
        record("lossy-state-trace", ok);
    }

    // Direct-sum block form reassembles to the generic state.
    {
        const LossSpec loss = make_loss(0.85, 0.6);
        const LossyState a = evolve_lossy(Noon{5}, loss);
        const LossyState b = to_lossy_state(noon_direct_sum(5, loss), 5);
        bool ok = a.diagonals.size() == b.diagonals.size() &&
                  a.coherences.size() == b.coherences.size();
        for (std::size_t i = 0; ok && i < a.diagonals.size(); ++i) {
            ok = a.diagonals[i].first == b.diagonals[i].first &&
                 std::abs(a.diagonals[i].second - b.diagonals[i].second) < 1e-12;
        }
        record("noon-direct-sum-consistency", ok);
    }

    // Closed forms against the spectral-decomposition oracle.
    {
        const FisherResult closed = qfi_pefs_one_arm(3, 1, 0.85);
        const FisherResult brute = qfi_bruteforce(evolve_lossy(Pefs{3, 1}, make_loss(0.85, 1.0)), 0.3);
        record("one-arm-qfi-vs-bruteforce",
               std::abs(closed.value - brute.value) <= 1e-8 * (1.0 + closed.value),
               format_double(closed.value) + " vs " + format_double(brute.value));

        bool ok = true;
        const std::vector<std::tuple<int, int, double, double>> cases = {
            {3, 1, 0.8, 0.7}, {4, 2, 0.9, 0.6}, {5, 0, 0.75, 0.9}};
        for (const auto& [m, n, ea, eb] : cases) {
            const double bound = qfi_pefs_two_arm_bound(m, n, make_loss(ea, eb)).value;
            const double brute2 =
                qfi_bruteforce(evolve_lossy(Pefs{m, n}, make_loss(ea, eb)), 0.4).value;
            if (bound < brute2 - 1e-9) {
                ok = false;
            }
        }
        record("two-arm-bound-dominates", ok);

        const FisherResult noon_closed = qfi_noon(4, make_loss(0.8, 0.55));
        const FisherResult noon_brute =
            qfi_bruteforce(evolve_lossy(Noon{4}, make_loss(0.8, 0.55)), 0.25);
        record("noon-qfi-closed-vs-bruteforce",
               std::abs(noon_closed.value - noon_brute.value) <= 1e-9 * (1.0 + noon_closed.value));
    }

    // Joint-parity regrouped formula equals the four-outcome Fisher sum.
    {
        bool ok = true;
        for (const auto& probe : {Pefs{6, 0}, Pefs{10, 4}}) {
            for (int i = 0; i < 5; ++i) {
                const double phi = (i + 0.5) * std::numbers::pi / 30.0;
                const ParityExpectations ex = parity_expectations(probe, make_loss(0.9, 0.9), phi);
                const double a = cfi_dp(ex).value;
                const double b = cfi_discrete(dp_distribution(ex)).value;
                if (std::abs(a - b) > 1e-10) {
                    ok = false;
                }
            }
        }
        record("dp-closed-vs-distribution", ok);
    }

    // Photon-number closed form for the NOON probe.
    {
        bool ok = true;
        const LossSpec loss = make_loss(0.7, 0.95);
        const LossyState state = evolve_lossy(Noon{4}, loss);
        for (int i = 0; i < 5; ++i) {
            const double phi = (i + 0.5) * std::numbers::pi / 40.0;
            const double a = cfi_discrete(dpnr_distribution(state, phi)).value;
            const double b = cfi_noon_dpnr_closed(4, loss, phi).value;
            if (std::abs(a - b) > 1e-9) {
                ok = false;
            }
        }
        record("dpnr-noon-closed-vs-distribution", ok);
    }

    // Joint Fisher information dominates every marginal.
    {
        bool ok = true;
        std::mt19937 rng(12345);
        std::uniform_real_distribution<double> uni(0.05, 1.0);
        for (int trial = 0; trial < 20 && ok; ++trial) {
            OutcomeDistribution dist;
            double norm = 0.0;
            for (int a = 0; a < 4; ++a) {
                for (int b = 0; b < 5; ++b) {
                    dist.outcomes.push_back({{a, b}, uni(rng), uni(rng) - 0.5});
                    norm += dist.outcomes.back().prob;
                }
            }
            double dsum = 0.0;
            for (auto& o : dist.outcomes) {
                o.prob /= norm;
                dsum += o.dprob;
            }
            for (auto& o : dist.outcomes) {
                o.dprob -= o.prob * dsum;  // zero-sum derivative
            }
            const double joint = cfi_discrete(dist).value;
            for (Port port : {Port::c, Port::d}) {
                if (cfi_discrete(marginalize(dist, port)).value > joint + 1e-10) {
                    ok = false;
                }
            }
        }
        record("joint-dominates-marginal", ok);
    }

    // Parity expectations stay inside [-1, 1].
    {
        bool ok = true;
        std::mt19937 rng(777);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        std::uniform_int_distribution<int> mdist(1, 8);
        for (int trial = 0; trial < 100 && ok; ++trial) {
            const int m = mdist(rng);
            std::uniform_int_distribution<int> ndist(0, m - 1);
            const int n = ndist(rng);
            const ParityExpectations ex = parity_expectations(
                Pefs{m, n}, make_loss(uni(rng), uni(rng)), uni(rng) * std::numbers::pi);
            ok = std::abs(ex.exp_c) <= 1.0 + 1e-12 && std::abs(ex.exp_d) <= 1.0 + 1e-12 &&
                 std::abs(ex.exp_cd) <= 1.0 + 1e-12;
        }
        record("parity-expectation-bounds", ok);
    }

    // Homodyne density integrates to one; lossless value hits delta^2.
    {
        const LossyState state = evolve_lossy(Pefs{3, 1}, make_loss(0.85, 0.95));
        const QuadratureGrid grid = make_quadrature_grid(4);
        const double norm = dh_normalization(state, grid);
        record("homodyne-normalization", std::abs(norm - 1.0) <= 1e-8, format_double(norm));

        const LossyState pure = evolve_lossy(Pefs{3, 1}, make_loss(1.0, 1.0));
        const double f = cfi_dh(pure, 0.37, grid).value;
        record("homodyne-lossless-cfi", std::abs(f - 4.0) <= 1e-4 * 4.0, format_double(f));
    }

    int failures = 0;
    for (const auto& check : checks) {
        if (check.ok) {
            std::printf("[ok]   %s\n", check.name.c_str());
        } else {
            ++failures;
            std::printf("[FAIL] %s%s%s\n", check.name.c_str(), check.detail.empty() ? "" : ": ",
                        check.detail.c_str());
        }
    }
    std::printf("selftest: %zu/%zu checks passed\n", checks.size() - failures, checks.size());
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fisher-information toolkit for lossy two-mode interferometry"};
    app.require_subcommand(1);

    std::string probe_text, phi_text = "0", grid_text, out_path, format = "csv";
    std::string cfi_measure_text, sweep_measure_text;
    std::string figure_name, arms = "both";
    double eta = 1.0, eta_a = 1.0, eta_b = 1.0;
    bool eta_set = false;
    int reps = 1;

    const auto add_common = [&](CLI::App* cmd, bool need_probe) {
        auto* probe_opt = cmd->add_option("--probe", probe_text,
                                          "probe: pefs:m,n | noon:N | snoon:Ne,No,p");
        if (need_probe) {
            probe_opt->required();
        }
        cmd->add_option("--eta", eta, "transmissivity of both arms")
            ->each([&eta_set](const std::string&) { eta_set = true; });
        cmd->add_option("--eta-a", eta_a, "transmissivity of arm a");
        cmd->add_option("--eta-b", eta_b, "transmissivity of arm b");
        cmd->add_option("--reps", reps, "experiment repetitions");
        cmd->add_option("--out", out_path, "output file (default: stdout)");
        cmd->add_option("--format", format, "csv | json");
    };

    auto* qfi_cmd = app.add_subcommand("qfi", "quantum Fisher information and its bound");
    add_common(qfi_cmd, true);

    auto* cfi_cmd = app.add_subcommand("cfi", "classical Fisher information of measurements");
    add_common(cfi_cmd, true);
    cfi_cmd->add_option("--phi", phi_text, "phase (radians or pi fractions)")->required();
    cfi_cmd->add_option("--measure", cfi_measure_text, "comma list: dp,sp,dpnr,dh")
        ->default_val("dp,sp,dpnr,dh");

    auto* sweep_cmd = app.add_subcommand("sweep", "Fisher information over a transmissivity grid");
    add_common(sweep_cmd, true);
    sweep_cmd->add_option("--grid", grid_text, "eta grid lo:hi:step")->required();
    sweep_cmd->add_option("--phi", phi_text, "phase (radians or pi fractions)")->required();
    sweep_cmd->add_option("--measure", sweep_measure_text, "comma list: dp,sp,dpnr,dh,qfi")
        ->default_val("qfi,dp,dpnr");
    sweep_cmd->add_option("--arms", arms, "both | one (lossy arms)");

    auto* figure_cmd = app.add_subcommand("figure", "write a curated dataset");
    figure_cmd->add_option("name", figure_name, "fig2a | fig2b | fig3a | fig3b | fig5")
        ->required();
    figure_cmd->add_option("--out", out_path, "output file (default: stdout)");
    figure_cmd->add_option("--format", format, "csv | json");

    auto* hier_cmd = app.add_subcommand("hierarchy", "rank the three measurements by CFI");
    add_common(hier_cmd, true);
    hier_cmd->add_option("--phi", phi_text, "phase (radians or pi fractions)")->required();

    app.add_subcommand("selftest", "run the reduced oracle and inequality suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand("selftest")) {
            return run_selftest();
        }
        if (app.got_subcommand("figure")) {
            emit(figure_dataset(figure_name), out_path, format);
            return 0;
        }

        const ProbeSpec probe = parse_probe(probe_text);
        const LossSpec loss = build_loss(eta, eta_a, eta_b, eta_set);
        if (reps < 1) {
            throw UsageError("--reps: must be a positive integer");
        }

        if (app.got_subcommand("qfi")) {
            const FisherResult f =
                detail::evaluate_measurement(probe, loss, 0.0, Measurement::qfi_bound);
            DataTable table;
            table.metadata = {{"command", "qfi"}, {"reps", std::to_string(reps)},
                             {"version", kVersion}};
            table.columns = {"probe", "eta_a", "eta_b", "method", "fisher", "sensitivity"};
            table.rows.push_back({probe_label(probe), loss.eta_a, loss.eta_b,
                                  to_string(f.method), f.value, sensitivity(f, reps)});
            emit(table, out_path, format);
            return 0;
        }

        const double phi = parse_phi(phi_text);

        if (app.got_subcommand("cfi")) {
            const std::vector<Measurement> measures = parse_measurements(cfi_measure_text);
            DataTable table;
            table.metadata = {{"command", "cfi"},
                              {"probe", probe_label(probe)},
                              {"eta_a", format_double(loss.eta_a)},
                              {"eta_b", format_double(loss.eta_b)},
                              {"phi", format_double(phi)},
                              {"reps", std::to_string(reps)},
                              {"version", kVersion}};
            table.columns = {"measurement", "fisher", "sensitivity"};
            for (Measurement meas : measures) {
                const FisherResult f = detail::evaluate_measurement(probe, loss, phi, meas);
                table.rows.push_back({to_string(meas), f.value,
                                      f.value > 0.0 ? DataTable::Cell{sensitivity(f, reps)}
                                                    : DataTable::Cell{std::string("inf")}});
            }
            emit(table, out_path, format);
            return 0;
        }

        if (app.got_subcommand("sweep")) {
            SweepSpec spec;
            spec.probe = probe;
            spec.mode = arms == "one" ? LossMode::one_arm : LossMode::both_arms;
            if (arms != "one" && arms != "both") {
                throw UsageError("--arms: expected both or one");
            }
            spec.eta_grid = parse_grid(grid_text);
            spec.phi_grid = {phi};
            spec.measurements = parse_measurements(sweep_measure_text);
            spec.repetitions = reps;
            DataTable table;
            table.metadata = {{"command", "sweep"},
                              {"probe", probe_label(probe)},
                              {"arms", arms},
                              {"phi", format_double(phi)},
                              {"reps", std::to_string(reps)},
                              {"version", kVersion}};
            table.columns = {"eta", "phi", "measurement", "fisher", "sensitivity", "error"};
            for (const SweepRow& row : run_sweep(spec)) {
                table.rows.push_back({row.eta, row.phi, to_string(row.measurement), row.fisher,
                                      row.sens, row.error});
            }
            emit(table, out_path, format);
            return 0;
        }

        if (app.got_subcommand("hierarchy")) {
            const HierarchyReport report = hierarchy_report(probe, loss, phi);
            DataTable table;
            table.metadata = {{"command", "hierarchy"},
                              {"probe", probe_label(probe)},
                              {"eta_a", format_double(loss.eta_a)},
                              {"eta_b", format_double(loss.eta_b)},
                              {"phi", format_double(phi)},
                              {"dh_lt_dp_lt_dpnr", report.expected_order_holds ? "yes" : "no"},
                              {"version", kVersion}};
            table.columns = {"rank", "measurement", "fisher"};
            for (std::size_t i = 0; i < report.ranking.size(); ++i) {
                table.rows.push_back({static_cast<double>(i + 1),
                                      to_string(report.ranking[i].measurement),
                                      report.ranking[i].cfi});
            }
            emit(table, out_path, format);
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
