// Command-line front end. All numbers come from the C API; this file only formats them.

#include <cstdio>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ticsolve/ticsolve.h"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;

struct Options {
    std::string scenario;
    std::string csv;
    std::optional<size_t> oracle;
    std::optional<double> tol;
    std::string kind = "tic";
};

class Failure {
public:
    explicit Failure(tic_status s) : status(s) {}
    tic_status status;
};

void check(tic_status s) {
    if (s != TIC_OK) throw Failure(s);
}

int exit_code(tic_status s) {
    switch (s) {
        case TIC_ERR_VALIDATION:
        case TIC_ERR_INVALID_ARGUMENT:
        case TIC_ERR_IO:
        case TIC_ERR_ASSUMPTION:
            return kExitValidation;
        default:
            return kExitSolver;
    }
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

using Scenario = std::unique_ptr<tic_scenario, decltype(&tic_scenario_free)>;

Scenario load(const Options& o) {
    tic_scenario* raw = nullptr;
    check(tic_scenario_load(o.scenario.c_str(), &raw));
    Scenario sc(raw, &tic_scenario_free);
    for (size_t i = 0; i < tic_scenario_warning_count(sc.get()); ++i)
        std::fprintf(stderr, "warning: %s\n", tic_scenario_warning(sc.get(), i));
    return sc;
}

// Rows of already formatted cells, written with a header line.
class Csv {
public:
    explicit Csv(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

    void write(const std::string& path) const {
        if (path.empty()) return;
        std::FILE* f = path == "-" ? stdout : std::fopen(path.c_str(), "w");
        if (!f) {
            std::fprintf(stderr, "error: cannot write %s\n", path.c_str());
            throw Failure(TIC_ERR_IO);
        }
        for (const auto& row : rows_) {
            for (size_t i = 0; i < row.size(); ++i)
                std::fprintf(f, "%s%s", i ? "," : "", row[i].c_str());
            std::fputc('\n', f);
        }
        if (f != stdout) std::fclose(f);
    }

private:
    std::vector<std::vector<std::string>> rows_;
};

const char* const kCountry[2] = {"A", "B"};

void print_equilibrium(const tic_equilibrium& eq) {
    std::printf("%-8s %14s %14s\n", "", "A", "B");
    auto row = [](const char* label, const double* v) {
        std::printf("%-8s %14.9g %14.9g\n", label, v[0], v[1]);
    };
    row("Q_dom", eq.q_dom);
    row("Q_exp", eq.q_exp);
    row("X", eq.x);
    row("pi", eq.pi);
    std::printf("%-8s %14s %14s\n", "regime", tic_regime_name(eq.regime[0]),
                tic_regime_name(eq.regime[1]));
    row("tau_eff", eq.tau_eff);
    row("e_eff", eq.e_eff);
    row("D", eq.direct);
    row("E", eq.excess);
    std::printf("E_total  %.9g\nE_bar    %.9g\nD_free   %.9g\n", eq.excess_total,
                eq.conditional_excess, eq.free_trade_cost);
    std::printf("interior %s, consistent regimes %d\n", eq.interior ? "yes" : "no",
                eq.consistent_count);
    if (!eq.demand_covered)
        std::printf("warning: highest consumer price %.9g exceeds v\n", eq.max_consumer_price);
}

int cmd_solve(const Options& o) {
    auto sc = load(o);
    tic_equilibrium eq;
    check(tic_solve(sc.get(), &eq));
    print_equilibrium(eq);

    tic_scenario_info info;
    check(tic_scenario_get_info(sc.get(), &info));
    const size_t m = o.oracle.value_or(info.oracle_size);
    std::optional<tic_oracle_report> oracle;
    if (m > 0) {
        tic_oracle_report rep;
        const tic_status s = tic_oracle_compare(sc.get(), m, &rep);
        if (s == TIC_ERR_AUTARKY_ONLY) {
            std::printf("oracle (M=%zu): no clearing with positive trade\n", m);
        } else {
            check(s);
            oracle = rep;
            const double bound = o.tol.value_or(2.0 / static_cast<double>(m));
            std::printf("\noracle (M=%zu)\n", m);
            std::printf("%-8s %14s %14s %14s %14s\n", "", "A", "B", "dev A", "dev B");
            auto row = [](const char* label, const double* v, const double* d) {
                std::printf("%-8s %14.9g %14.9g %14.3e %14.3e\n", label, v[0], v[1], d[0], d[1]);
            };
            row("Q_dom", rep.q_dom, rep.dev_q_dom);
            row("Q_exp", rep.q_exp, rep.dev_q_exp);
            row("pi", rep.pi, rep.dev_pi);
            row("D", rep.direct, rep.dev_direct);
            std::printf("max quantity deviation %.3e (%s %.3e)\n", rep.max_quantity_dev,
                        rep.max_quantity_dev <= bound ? "within" : "ABOVE", bound);
        }
    }

    std::vector<std::string> header{"country", "q_dom", "q_exp", "x", "pi", "regime", "tau_eff",
                                    "e_eff", "direct", "excess", "conditional_excess"};
    if (oracle)
        for (const char* h : {"oracle_q_dom", "oracle_q_exp", "oracle_pi", "oracle_direct"})
            header.push_back(h);
    Csv csv(header);
    for (int k = 0; k < 2; ++k) {
        std::vector<std::string> r{kCountry[k],     num(eq.q_dom[k]),   num(eq.q_exp[k]),
                                   num(eq.x[k]),    num(eq.pi[k]),      tic_regime_name(eq.regime[k]),
                                   num(eq.tau_eff[k]), num(eq.e_eff[k]), num(eq.direct[k]),
                                   num(eq.excess[k]), num(eq.conditional_excess)};
        if (oracle) {
            r.push_back(num(oracle->q_dom[k]));
            r.push_back(num(oracle->q_exp[k]));
            r.push_back(num(oracle->pi[k]));
            r.push_back(num(oracle->direct[k]));
        }
        csv.add(std::move(r));
    }
    csv.write(o.csv);
    return 0;
}

int cmd_nash(const Options& o) {
    auto sc = load(o);
    tic_nash n;
    check(tic_nash_no_tic(sc.get(), &n));
    std::printf("%-8s %14s %14s\n", "", "A", "B");
    auto row = [](const char* label, const double* v) {
        std::printf("%-8s %14.9g %14.9g\n", label, v[0], v[1]);
    };
    row("tau", n.tau);
    row("e", n.e);
    row("X", n.x);
    row("D", n.direct);
    row("u", n.utility);
    std::printf("E_bar    %.9g\n", n.conditional_excess);
    if (n.corner) std::printf("A's instruments sit on a corner\n");

    Csv csv({"country", "tau", "e", "x", "direct", "utility", "conditional_excess", "corner"});
    for (int k = 0; k < 2; ++k)
        csv.add({kCountry[k], num(n.tau[k]), num(n.e[k]), num(n.x[k]), num(n.direct[k]),
                 num(n.utility[k]), num(n.conditional_excess), std::to_string(n.corner)});
    csv.write(o.csv);
    return 0;
}

int cmd_agreement(const Options& o) {
    auto sc = load(o);
    const tic_agreement_kind kind = o.kind == "tic" ? TIC_AGREEMENT_TIC : TIC_AGREEMENT_NO_TIC;
    tic_agreement_report r;
    check(tic_agreement(sc.get(), kind, &r));
    std::printf("%s agreement: X_bar_A %.9g, eta_A %.9g, phi_A %.9g, rate %.9g\n",
                o.kind.c_str(), r.target_a, r.eta_a, r.phi_a, r.rate);
    std::printf("tau      %14.9g %14.9g\ne        %14.9g %14.9g\n\n", r.tau[0], r.tau[1], r.e[0],
                r.e[1]);
    print_equilibrium(r.eq);
    if (r.has_welfare) {
        std::printf("\nu agreement %14.9g %14.9g\nu Nash      %14.9g %14.9g\n", r.utility[0],
                    r.utility[1], r.nash_utility[0], r.nash_utility[1]);
        std::printf("Pareto improving over Nash: %s\n", r.pareto_improving ? "yes" : "no");
    }

    Csv csv({"country", "kind", "target_a", "eta_a", "phi_a", "rate", "tau", "e", "q_dom", "q_exp",
             "x", "pi", "regime", "direct", "excess", "conditional_excess", "utility",
             "nash_utility"});
    for (int k = 0; k < 2; ++k)
        csv.add({kCountry[k], o.kind, num(r.target_a), num(r.eta_a), num(r.phi_a), num(r.rate),
                 num(r.tau[k]), num(r.e[k]), num(r.eq.q_dom[k]), num(r.eq.q_exp[k]), num(r.eq.x[k]),
                 num(r.eq.pi[k]), tic_regime_name(r.eq.regime[k]), num(r.eq.direct[k]),
                 num(r.eq.excess[k]), num(r.eq.conditional_excess),
                 r.has_welfare ? num(r.utility[k]) : "", r.has_welfare ? num(r.nash_utility[k]) : ""});
    csv.write(o.csv);
    return 0;
}

int cmd_thresholds(const Options& o) {
    auto sc = load(o);
    tic_thresholds t;
    check(tic_compute_thresholds(sc.get(), &t));
    std::printf("eta_A            %.9g\n", t.eta_a);
    std::printf("gamma TIC        %.9g\n", t.gamma_tic);
    std::printf("gamma No-TIC     %.9g\n", t.gamma_no_tic);
    std::printf("ratio            %.9g\n", t.ratio);
    std::printf("NTB No-TIC       %.9g\n", t.ntb_no_tic);
    if (t.has_slopes)
        std::printf("du/dbeta (TIC)   %.9g %.9g\n", t.ntb_slope_tic[0], t.ntb_slope_tic[1]);

    Csv csv({"eta_a", "gamma_tic", "gamma_no_tic", "ratio", "ntb_no_tic", "ntb_slope_A",
             "ntb_slope_B"});
    csv.add({num(t.eta_a), num(t.gamma_tic), num(t.gamma_no_tic), num(t.ratio), num(t.ntb_no_tic),
             t.has_slopes ? num(t.ntb_slope_tic[0]) : "", t.has_slopes ? num(t.ntb_slope_tic[1]) : ""});
    csv.write(o.csv);
    return 0;
}

int cmd_oligopoly(const Options& o) {
    auto sc = load(o);
    tic_scenario_info info;
    check(tic_scenario_get_info(sc.get(), &info));
    std::vector<int> firms(info.firm_count);
    check(tic_scenario_firms(sc.get(), firms.data(), firms.size()));

    Csv csv({"N", "q_exp", "q_dom", "pi", "per_firm", "conditional_excess", "gap",
             "iterated_q_exp", "iterations"});
    std::printf("%5s %14s %14s %14s %14s %9s\n", "N", "Q_exp_A", "Q_dom_A", "pi_A", "E_bar", "gap %");
    for (int n : firms) {
        tic_oligopoly_row r;
        check(tic_oligopoly(sc.get(), n, o.tol.value_or(1e-13), &r));
        std::printf("%5d %14.9g %14.9g %14.9g %14.9g %9.4f\n", n, r.q_exp, r.q_dom, r.pi,
                    r.conditional_excess, 100.0 * r.gap);
        csv.add({std::to_string(n), num(r.q_exp), num(r.q_dom), num(r.pi), num(r.per_firm),
                 num(r.conditional_excess), num(r.gap), num(r.iterated_q_exp),
                 std::to_string(r.iterations)});
    }
    csv.write(o.csv);
    return 0;
}

int cmd_sweep(const Options& o) {
    auto sc = load(o);
    tic_sweep* raw = nullptr;
    check(tic_sweep_run(sc.get(), &raw));
    std::unique_ptr<tic_sweep, decltype(&tic_sweep_free)> sweep(raw, &tic_sweep_free);
    tic_sweep_summary s;
    check(tic_sweep_get_summary(sweep.get(), &s));

    Csv csv({"e_B", "Q_dom_A", "Q_exp_A", "X_A", "Q_dom_B", "Q_exp_B", "X_B", "pi_A", "regime_A",
             "D_A", "D_B", "min_X_A", "floor"});
    for (size_t i = 0; i < s.rows; ++i) {
        tic_sweep_row r;
        check(tic_sweep_get_row(sweep.get(), i, &r));
        csv.add({num(r.e_b), num(r.q_dom[0]), num(r.q_exp[0]), num(r.x[0]), num(r.q_dom[1]),
                 num(r.q_exp[1]), num(r.x[1]), num(r.pi_a), tic_regime_name(r.regime_a),
                 num(r.direct[0]), num(r.direct[1]), num(r.min_x_a), num(r.floor)});
    }
    std::printf("rows %zu\nmin X_A %.9g\nfloor 1/eta_A %.9g (%s)\nD_A non-increasing: %s\n", s.rows,
                s.min_x_a, s.floor, s.floor_holds ? "holds" : "VIOLATED",
                s.cost_monotone ? "yes" : "no");
    csv.write(o.csv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-country import-certificate solver"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--scenario", o.scenario, "scenario file")->required();
        sub->add_option("--csv", o.csv, "write CSV here ('-' for stdout)");
        sub->add_option("--tol", o.tol, "tolerance for verification checks");
    };
    auto* solve = app.add_subcommand("solve", "equilibrium and costs for the scenario's policy");
    common(solve);
    solve->add_option("--oracle", o.oracle, "also run the discretized oracle with M markets")
        ->check(CLI::PositiveNumber);
    auto* nash = app.add_subcommand("nash", "tariff/subsidy Nash equilibrium without certificates");
    common(nash);
    auto* agreement = app.add_subcommand("agreement", "TIC or No-TIC agreement for the target");
    common(agreement);
    agreement->add_option("--kind", o.kind, "tic or no-tic")->check(CLI::IsMember({"tic", "no-tic"}));
    auto* thresholds = app.add_subcommand("thresholds", "deviation thresholds for eta_A");
    common(thresholds);
    auto* oligopoly = app.add_subcommand("oligopoly", "N-firm table under the TIC agreement");
    common(oligopoly);
    auto* sweep = app.add_subcommand("sweep", "B export-subsidy sweep");
    common(sweep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitValidation;
    }

    try {
        if (*solve) return cmd_solve(o);
        if (*nash) return cmd_nash(o);
        if (*agreement) return cmd_agreement(o);
        if (*thresholds) return cmd_thresholds(o);
        if (*oligopoly) return cmd_oligopoly(o);
        if (*sweep) return cmd_sweep(o);
    } catch (const Failure& f) {
        std::fprintf(stderr, "error (%s): %s\n", tic_status_name(f.status), tic_last_error());
        return exit_code(f.status);
    }
    return 0;
}
