#pragma once

// Hadamard fractional calculus on log-power functions: the exact power rule,
// the discrete CQ operator on the exponential mesh, and a fixed-time
// truncation-error study.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "cq.hpp"
#include "mesh.hpp"
#include "special_functions.hpp"

namespace hcq {

// u(t) = (log(t/a))^sigma.
struct LogPower {
    double sigma = 1.0;
    double a = 1.0;
};

// (Hadamard D^alpha u)(t) = Gamma(sigma+1)/Gamma(sigma+1-alpha) (log(t/a))^{sigma-alpha};
// alpha < 0 is the Hadamard integral, alpha in (0,1) the derivative.
inline double exact_hadamard(double alpha, const LogPower& u, double t) {
    if (!(u.sigma > 0.0)) throw std::domain_error("exact_hadamard: sigma must be positive");
    if (!(u.a > 0.0)) throw std::domain_error("exact_hadamard: a must be positive");
    if (!(t > u.a)) throw std::domain_error("exact_hadamard: t must exceed a");
    double s2 = u.sigma + 1.0 - alpha;
    if (s2 <= 0.0 && s2 == std::floor(s2))
        throw std::domain_error("exact_hadamard: Gamma(sigma+1-alpha) pole");
    long double lt = std::log(static_cast<long double>(t) / static_cast<long double>(u.a));
    long double val = detail::gamma_ld(static_cast<long double>(u.sigma) + 1.0L) /
                      detail::gamma_ld(static_cast<long double>(s2)) *
                      std::pow(lt, static_cast<long double>(u.sigma - alpha));
    return static_cast<double>(val);
}

// D_n = tau^{-alpha} sum_{k=0}^n omega_{n-k} u(t_k) for every n; direct O(N^2)
// summation, accumulated in long double.
inline std::vector<double> discrete_hadamard(double alpha, int p, const ExpMesh& mesh,
                                             const std::vector<double>& samples) {
    check_bdf_order(p);
    if (samples.size() != static_cast<std::size_t>(mesh.N) + 1)
        throw std::invalid_argument("discrete_hadamard: samples length must be N+1");
    std::vector<long double> w =
        cq_weights_t<long double>(p, static_cast<long double>(alpha), mesh.N);
    long double scale =
        std::pow(static_cast<long double>(mesh.tau_bar), -static_cast<long double>(alpha));
    std::vector<double> out(samples.size());
    for (int n = 0; n <= mesh.N; ++n) {
        long double acc = 0.0L;
        for (int k = 0; k <= n; ++k)
            acc += w[static_cast<std::size_t>(n - k)] *
                   static_cast<long double>(samples[static_cast<std::size_t>(k)]);
        out[static_cast<std::size_t>(n)] = static_cast<double>(scale * acc);
    }
    return out;
}

struct TruncationRow {
    int N = 0;
    double tau_bar = 0.0;
    double error = 0.0;
    double order = 0.0; // NaN on the first row
};

// Error of the discrete operator against the exact power rule at the fixed
// final time t_N = T; observed order from consecutive N by log ratio.
inline std::vector<TruncationRow> truncation_study(double alpha, double sigma, int p, double a,
                                                   double T, const std::vector<int>& N_list) {
    check_bdf_order(p);
    std::vector<TruncationRow> rows;
    LogPower u{sigma, a};
    double exact = exact_hadamard(alpha, u, T);
    for (std::size_t i = 0; i < N_list.size(); ++i) {
        int N = N_list[i];
        if (N < p) throw std::domain_error("truncation_study: each N must be >= p");
        ExpMesh mesh = build_mesh(a, T, N);
        std::vector<double> samples(static_cast<std::size_t>(N) + 1);
        for (int n = 0; n <= N; ++n)
            samples[static_cast<std::size_t>(n)] =
                std::pow(mesh.tbar[static_cast<std::size_t>(n)], sigma);
        std::vector<double> dh = discrete_hadamard(alpha, p, mesh, samples);
        TruncationRow r;
        r.N = N;
        r.tau_bar = mesh.tau_bar;
        r.error = std::fabs(dh[static_cast<std::size_t>(N)] - exact);
        if (i == 0) {
            r.order = std::nan("");
        } else {
            const TruncationRow& prev = rows.back();
            r.order = std::log(prev.error / r.error) /
                      std::log(static_cast<double>(N) / static_cast<double>(prev.N));
        }
        rows.push_back(r);
    }
    return rows;
}

} // namespace hcq
