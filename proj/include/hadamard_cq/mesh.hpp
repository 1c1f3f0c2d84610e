#pragma once

// Exponential-type time mesh t_n = a (T/a)^{n/N}, uniform in t_bar = log(t/a).

#include <cmath>
#include <stdexcept>
#include <vector>

namespace hcq {

struct ExpMesh {
    double a = 0.0;
    double T = 0.0;
    int N = 0;
    double tau_bar = 0.0;
    std::vector<double> t;    // nodes t[0..N]
    std::vector<double> tbar; // log_nodes tbar[n] = n * tau_bar
};

inline ExpMesh build_mesh(double a, double T, int N) {
    if (!(a > 0.0)) throw std::domain_error("build_mesh: a must be positive");
    if (!(T > a)) throw std::domain_error("build_mesh: T must exceed a");
    if (N < 1) throw std::domain_error("build_mesh: N must be at least 1");
    ExpMesh m;
    m.a = a;
    m.T = T;
    m.N = N;
    m.tau_bar = std::log(T / a) / static_cast<double>(N);
    m.t.resize(static_cast<std::size_t>(N) + 1);
    m.tbar.resize(static_cast<std::size_t>(N) + 1);
    for (int n = 0; n <= N; ++n) {
        m.tbar[static_cast<std::size_t>(n)] = static_cast<double>(n) * m.tau_bar;
        m.t[static_cast<std::size_t>(n)] = a * std::exp(m.tbar[static_cast<std::size_t>(n)]);
    }
    m.t[0] = a;
    m.t[static_cast<std::size_t>(N)] = T; // pin endpoints
    return m;
}

} // namespace hcq
