#pragma once

// Command-line front end. cli_main is testable in-process: it never touches
// global streams and maps failures to exit codes 0 (ok), 1 (numeric failure),
// 2 (usage or configuration error).

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "config.hpp"
#include "correction.hpp"
#include "cq.hpp"
#include "fem1d.hpp"
#include "hadamard_ops.hpp"
#include "subdiffusion.hpp"

namespace hcq {

namespace cli_detail {

inline std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return std::string(buf);
}

inline std::string fmt_order(double x) { return std::isnan(x) ? "--" : fmt17(x); }

// Sink honoring output.path: "-" or empty writes to the session stream.
inline void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw ConfigError("config: cannot open output path '" + path + "'");
    f << text;
}

inline std::string csv_weights(int p, double alpha, int n) {
    CqWeights w = cq_weights(p, alpha, n);
    std::string line;
    for (std::size_t i = 0; i < w.omega.size(); ++i) {
        if (i) line += ',';
        line += fmt17(w.omega[i]);
    }
    line += '\n';
    return line;
}

inline std::string csv_correction_table(int p, double beta) {
    CorrectionTable tab = correction_table(p, beta);
    std::ostringstream os;
    os << "p,beta,j,n,d\n";
    // starting-value weights b_n are reported as the pseudo-row j = -1
    for (std::size_t n = 0; n < tab.b.size(); ++n)
        os << p << ',' << fmt17(beta) << ",-1," << (n + 1) << ',' << fmt17(tab.b[n]) << '\n';
    for (std::size_t j = 0; j < tab.d.size(); ++j)
        for (std::size_t n = 0; n < tab.d[j].size(); ++n)
            os << p << ',' << fmt17(beta) << ',' << j << ',' << (n + 1) << ','
               << fmt17(tab.d[j][n]) << '\n';
    return os.str();
}

inline std::string csv_truncation(double alpha, double sigma, int p, double a, double T,
                                  const std::vector<int>& N_list) {
    std::vector<TruncationRow> rows = truncation_study(alpha, sigma, p, a, T, N_list);
    std::ostringstream os;
    os << "N,tau_bar,error,order\n";
    for (const TruncationRow& r : rows)
        os << r.N << ',' << fmt17(r.tau_bar) << ',' << fmt17(r.error) << ','
           << fmt_order(r.order) << '\n';
    return os.str();
}

inline int run_solve(const RunConfig& cfg, std::ostream& out) {
    ProblemSpec spec = build_problem(cfg);
    FemSpaceT<long double> space =
        build_space_t<long double>(static_cast<long double>(cfg.L), cfg.M, cfg.k);
    int N = cfg.N_list.front();
    std::vector<std::vector<long double>> U = step_all_t<long double>(spec, cfg.p, N, space, cfg.corrected);
    double tau_bar = std::log(cfg.T / cfg.a) / N;
    std::ostringstream os;
    if (spec.u_exact) {
        double lT = std::log(cfg.T / cfg.a);
        long double err = l2_error_t<long double>(
            space, U.back(), [&](long double x) {
                return static_cast<long double>(spec.u_exact(static_cast<double>(x), lT));
            });
        os << "N,tau_bar,error\n"
           << N << ',' << fmt17(tau_bar) << ',' << fmt17(static_cast<double>(err)) << '\n';
    } else {
        os << "N,tau_bar\n" << N << ',' << fmt17(tau_bar) << '\n';
        os << "# no u_exact given; solution computed, nothing to compare against\n";
    }
    write_text(cfg.out_path, os.str(), out);
    return 0;
}

inline int run_convergence(const RunConfig& cfg, std::ostream& out) {
    if (cfg.u_exact.empty())
        throw ConfigError("config: convergence requires problem.u_exact");
    ProblemSpec spec = build_problem(cfg);
    FemSpaceT<long double> space =
        build_space_t<long double>(static_cast<long double>(cfg.L), cfg.M, cfg.k);
    std::vector<ConvergenceRow> cor =
        convergence_study_t<long double>(spec, cfg.p, space, cfg.N_list, true);
    std::vector<ConvergenceRow> unc =
        convergence_study_t<long double>(spec, cfg.p, space, cfg.N_list, false);
    std::ostringstream os;
    if (cfg.format == "csv") {
        os << "N,tau_bar,corrected_error,corrected_order,uncorrected_error,uncorrected_order\n";
        for (std::size_t i = 0; i < cor.size(); ++i)
            os << cor[i].N << ',' << fmt17(cor[i].tau_bar) << ',' << fmt17(cor[i].error) << ','
               << fmt_order(cor[i].order) << ',' << fmt17(unc[i].error) << ','
               << fmt_order(unc[i].order) << '\n';
    } else {
        char line[256];
        os << "p = " << cfg.p << ", alpha = " << cfg.alpha << ", beta = " << cfg.beta
           << ", M = " << cfg.M << ", k = " << cfg.k << '\n';
        std::snprintf(line, sizeof(line), "%6s  %-12s  %-12s %-7s  %-12s %-7s\n", "N",
                      "tau_bar", "corrected", "order", "standard", "order");
        os << line;
        for (std::size_t i = 0; i < cor.size(); ++i) {
            char co[16] = "--", uo[16] = "--";
            if (!std::isnan(cor[i].order)) std::snprintf(co, sizeof(co), "%.2f", cor[i].order);
            if (!std::isnan(unc[i].order)) std::snprintf(uo, sizeof(uo), "%.2f", unc[i].order);
            std::snprintf(line, sizeof(line), "%6d  %-12.6g  %-12.4e %-7s  %-12.4e %-7s\n",
                          cor[i].N, cor[i].tau_bar, cor[i].error, co, unc[i].error, uo);
            os << line;
        }
    }
    write_text(cfg.out_path, os.str(), out);
    return 0;
}

} // namespace cli_detail

inline int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Convolution quadrature for Hadamard fractional calculus"};
    app.require_subcommand(1);

    int w_p = 1, w_n = 0;
    double w_alpha = 0.0;
    CLI::App* weights = app.add_subcommand("weights", "print one row of CQ weights as CSV");
    weights->add_option("--p", w_p, "BDF order (1..6)")->required();
    weights->add_option("--alpha", w_alpha, "fractional order")->required();
    weights->add_option("--n", w_n, "last weight index")->required();

    int ct_p = 2;
    double ct_beta = 0.0;
    CLI::App* ctab = app.add_subcommand("correction-table", "print correction weights as CSV");
    ctab->add_option("--p", ct_p, "BDF order (1..6)")->required();
    ctab->add_option("--beta", ct_beta, "source singularity exponent in [0,1)");

    double tr_alpha = 0.5, tr_sigma = 1.0, tr_a = 1.0, tr_T = 2.0;
    int tr_p = 1;
    std::vector<int> tr_N;
    CLI::App* trunc = app.add_subcommand("truncation", "fractional-derivative convergence table");
    trunc->add_option("--alpha", tr_alpha, "fractional order")->required();
    trunc->add_option("--sigma", tr_sigma, "exponent of the log-power sample")->required();
    trunc->add_option("--p", tr_p, "BDF order (1..6)")->required();
    trunc->add_option("--a", tr_a, "left endpoint")->required();
    trunc->add_option("--T", tr_T, "right endpoint")->required();
    trunc->add_option("--N-list", tr_N, "comma-separated step counts")
        ->required()
        ->delimiter(',');

    std::string solve_cfg;
    CLI::App* solve = app.add_subcommand("solve", "run the fully discrete solver once");
    solve->add_option("--config", solve_cfg, "JSON configuration file")->required();

    std::string conv_cfg;
    CLI::App* conv = app.add_subcommand("convergence", "corrected vs standard scheme study");
    conv->add_option("--config", conv_cfg, "JSON configuration file")->required();

    std::vector<const char*> argv;
    argv.push_back("hadamard-cq");
    for (const std::string& s : args) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << app.help();
        return 2;
    }

    try {
        if (app.got_subcommand(weights)) {
            out << cli_detail::csv_weights(w_p, w_alpha, w_n);
        } else if (app.got_subcommand(ctab)) {
            out << cli_detail::csv_correction_table(ct_p, ct_beta);
        } else if (app.got_subcommand(trunc)) {
            out << cli_detail::csv_truncation(tr_alpha, tr_sigma, tr_p, tr_a, tr_T, tr_N);
        } else if (app.got_subcommand(solve)) {
            return cli_detail::run_solve(load_config(solve_cfg), out);
        } else if (app.got_subcommand(conv)) {
            return cli_detail::run_convergence(load_config(conv_cfg), out);
        }
        return 0;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace hcq
