#pragma once

// Corrected fully discrete scheme for the Caputo-Hadamard subdiffusion
// equation: CQ (fractional BDF-p) in time on the exponential mesh, Lagrange
// FEM in space. Works on W = U - v_h with W^0 = 0; step n solves
//   (tau^{-alpha} omega_0 M + K) W^n = -K v_h + load(f(.,t_n))
//       + [n <= p-1, corrected] b_n (-K v_h + load f(.,a))
//       + sum_j d_{j,n} tau^{j+beta} load(delta_t^j g(.,a))
//       - tau^{-alpha} M sum_{k=1}^{n-1} omega_{n-k} W^k,
// and returns U^n = W^n + v_h.

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "correction.hpp"
#include "cq.hpp"
#include "fem1d.hpp"
#include "mesh.hpp"

namespace hcq {

struct ProblemSpec {
    double alpha = 0.5;
    double beta = 0.0;
    double a = 1.0;
    double T = 2.0;
    std::function<double(double)> v;                          // initial datum
    std::function<double(double)> v_prime;                    // v' for the Ritz projection
    std::function<double(double)> f_at_a;                     // f(., a)
    std::function<double(double, double)> g;                  // smooth factor g(x, lt)
    std::vector<std::function<double(double)>> delta_g_at_a;  // delta_t^j g(., a), j = 0..p-2
    std::function<double(double, double)> u_exact;            // optional
};

// Instrumentation: receives the correction contribution to the RHS of every
// step (a zero vector when the step carries no correction).
struct StepTrace {
    std::function<void(int n, const FemVector& correction_rhs)> on_correction;
};

template <class T>
std::vector<std::vector<T>> step_all_t(const ProblemSpec& spec, int p, int N,
                                       const FemSpaceT<T>& space, bool corrected,
                                       const StepTrace* trace = nullptr) {
    check_bdf_order(p);
    if (N < p) throw std::domain_error("step_all: N must be at least p");
    if (!(spec.alpha > 0.0 && spec.alpha < 1.0))
        throw std::domain_error("step_all: alpha must lie in (0,1)");
    if (spec.beta < 0.0 || spec.beta >= 1.0)
        throw std::domain_error("step_all: beta must lie in [0,1)");
    if (corrected && p >= 2 && spec.delta_g_at_a.size() < static_cast<std::size_t>(p - 1))
        throw std::invalid_argument(
            "step_all: corrected scheme needs delta_g_at_a entries for j = 0..p-2");

    ExpMesh mesh = build_mesh(spec.a, spec.T, N);
    T tau = static_cast<T>(mesh.tau_bar);
    std::vector<T> omega = cq_weights_t<T>(p, static_cast<T>(spec.alpha), N);
    T scale = std::pow(tau, static_cast<T>(-spec.alpha));
    T lambda = scale * omega[0];

    auto zero_fn = [](double) { return 0.0; };
    std::function<double(double)> v_fn = spec.v ? spec.v : zero_fn;
    std::function<double(double)> vp_fn = spec.v_prime ? spec.v_prime : zero_fn;
    std::function<double(double)> fa_fn = spec.f_at_a ? spec.f_at_a : zero_fn;

    std::vector<T> v_h = ritz_project_t(space, v_fn, vp_fn);
    std::vector<T> neg_K_vh = space.stiffness.mul(v_h);
    for (T& x : neg_K_vh) x = -x;
    std::vector<T> load_f_at_a = load_vector(space, fa_fn);

    CorrectionTable corr;
    std::vector<std::vector<T>> load_dg;
    if (corrected && p >= 2) {
        corr = correction_table(p, spec.beta);
        load_dg.resize(static_cast<std::size_t>(p - 1));
        for (int j = 0; j <= p - 2; ++j)
            load_dg[static_cast<std::size_t>(j)] =
                load_vector(space, spec.delta_g_at_a[static_cast<std::size_t>(j)]);
    }

    std::size_t nd = static_cast<std::size_t>(space.n_dof);
    std::vector<std::vector<T>> W(static_cast<std::size_t>(N) + 1,
                                  std::vector<T>(nd, T(0)));
    std::vector<T> rhs(nd), hist(nd), corr_rhs(nd);

    for (int n = 1; n <= N; ++n) {
        double lt_n = mesh.tbar[static_cast<std::size_t>(n)];
        std::vector<T> load_g = load_vector(
            space, [&](double x) { return spec.g ? spec.g(x, lt_n) : 0.0; });
        T ltb = std::pow(static_cast<T>(lt_n), static_cast<T>(spec.beta));
        for (std::size_t i = 0; i < nd; ++i)
            rhs[i] = neg_K_vh[i] + load_f_at_a[i] + ltb * load_g[i];

        std::fill(corr_rhs.begin(), corr_rhs.end(), T(0));
        if (corrected && p >= 2 && n <= p - 1) {
            T bn = static_cast<T>(corr.b[static_cast<std::size_t>(n - 1)]);
            for (std::size_t i = 0; i < nd; ++i)
                corr_rhs[i] += bn * (neg_K_vh[i] + load_f_at_a[i]);
            for (int j = 0; j <= p - 2; ++j) {
                T djn = static_cast<T>(
                    corr.d[static_cast<std::size_t>(j)][static_cast<std::size_t>(n - 1)]);
                T tpow = std::pow(tau, static_cast<T>(j) + static_cast<T>(spec.beta));
                for (std::size_t i = 0; i < nd; ++i)
                    corr_rhs[i] += djn * tpow * load_dg[static_cast<std::size_t>(j)][i];
            }
            for (std::size_t i = 0; i < nd; ++i) rhs[i] += corr_rhs[i];
        }
        if (trace && trace->on_correction) {
            FemVector cr(nd);
            for (std::size_t i = 0; i < nd; ++i) cr[i] = static_cast<double>(corr_rhs[i]);
            trace->on_correction(n, cr);
        }

        std::fill(hist.begin(), hist.end(), T(0));
        for (int k = 1; k <= n - 1; ++k) {
            T w = omega[static_cast<std::size_t>(n - k)];
            const std::vector<T>& Wk = W[static_cast<std::size_t>(k)];
            for (std::size_t i = 0; i < nd; ++i) hist[i] += w * Wk[i];
        }
        if (n > 1) {
            std::vector<T> Mh = space.mass.mul(hist);
            for (std::size_t i = 0; i < nd; ++i) rhs[i] -= scale * Mh[i];
        }
        W[static_cast<std::size_t>(n)] = solve_shifted(space, lambda, rhs);
    }

    for (int n = 0; n <= N; ++n)
        for (std::size_t i = 0; i < nd; ++i) W[static_cast<std::size_t>(n)][i] += v_h[i];
    return W; // now U[n] = W[n] + v_h
}

inline std::vector<FemVector> step_all(const ProblemSpec& spec, int p, int N,
                                       const FemSpace& space, bool corrected,
                                       const StepTrace* trace = nullptr) {
    return step_all_t<double>(spec, p, N, space, corrected, trace);
}

struct ConvergenceRow {
    int N = 0;
    double tau_bar = 0.0;
    double error = 0.0;
    double order = 0.0; // NaN on the first row
};

inline int worker_thread_count(std::size_t jobs) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("HADAMARD_CQ_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) hw = static_cast<unsigned>(v);
    }
    return static_cast<int>(std::min<std::size_t>(hw, jobs ? jobs : 1));
}

// Final-time L2 errors against u_exact(., log(T/a)) over a list of N; runs fan
// out across worker threads (HADAMARD_CQ_THREADS bounds the pool).
template <class T>
std::vector<ConvergenceRow> convergence_study_t(const ProblemSpec& spec, int p,
                                                const FemSpaceT<T>& space,
                                                const std::vector<int>& N_list, bool corrected) {
    if (!spec.u_exact)
        throw std::invalid_argument("convergence_study: u_exact is required");
    for (std::size_t i = 1; i < N_list.size(); ++i)
        if (N_list[i] <= N_list[i - 1])
            throw std::invalid_argument("convergence_study: N_list must be increasing");
    std::vector<ConvergenceRow> rows(N_list.size());
    double ltT = std::log(spec.T / spec.a);
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= N_list.size()) return;
            int N = N_list[i];
            auto U = step_all_t(spec, p, N, space, corrected);
            T err = l2_error_t(space, U[static_cast<std::size_t>(N)],
                               [&](double x) { return spec.u_exact(x, ltT); });
            rows[i].N = N;
            rows[i].tau_bar = std::log(spec.T / spec.a) / static_cast<double>(N);
            rows[i].error = static_cast<double>(err);
        }
    };
    int nthreads = worker_thread_count(N_list.size());
    if (nthreads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(work);
        for (std::thread& th : pool) th.join();
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == 0) {
            rows[i].order = std::nan("");
        } else {
            rows[i].order = std::log(rows[i - 1].error / rows[i].error) /
                            std::log(static_cast<double>(rows[i].N) /
                                     static_cast<double>(rows[i - 1].N));
        }
    }
    return rows;
}

inline std::vector<ConvergenceRow> convergence_study(const ProblemSpec& spec, int p,
                                                     const FemSpace& space,
                                                     const std::vector<int>& N_list,
                                                     bool corrected) {
    return convergence_study_t<double>(spec, p, space, N_list, corrected);
}

} // namespace hcq
