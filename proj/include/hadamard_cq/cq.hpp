#pragma once

// Convolution quadrature generating functions: the fractional BDF-p symbol
// psi_p(zeta) = sum_{j=1}^p (1-zeta)^j / j, its fractional powers (the CQ
// weights), the generalized Newton-Gregory symbol, and the consistency defect
// tau^{-alpha} psi_p(e^{-tau})^alpha - 1.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rational.hpp"
#include "series.hpp"

namespace hcq {

struct SymbolPolynomial {
    int p = 0;
    std::vector<Rational> coeffs; // coefficients of zeta^k, k = 0..p

    template <class T = double>
    std::vector<T> real_coeffs() const {
        std::vector<T> r(coeffs.size());
        for (std::size_t i = 0; i < coeffs.size(); ++i) r[i] = coeffs[i].to<T>();
        return r;
    }
};

inline void check_bdf_order(int p) {
    if (p < 1 || p > 6) throw std::domain_error("BDF order p must lie in [1, 6]");
}

inline SymbolPolynomial bdf_symbol(int p) {
    check_bdf_order(p);
    SymbolPolynomial s;
    s.p = p;
    s.coeffs.assign(static_cast<std::size_t>(p) + 1, Rational(0));
    for (int j = 1; j <= p; ++j) {
        // (1 - zeta)^j / j contributes C(j,k) (-1)^k / j to coefficient k.
        for (int k = 0; k <= j; ++k) {
            Rational term = binomial_rational(j, k) / Rational(j);
            if (k % 2 == 1) term = -term;
            s.coeffs[static_cast<std::size_t>(k)] += term;
        }
    }
    return s;
}

struct CqWeights {
    double alpha = 0.0;
    int p = 0;
    std::vector<double> omega; // omega[0..N]
};

template <class T>
std::vector<T> cq_weights_t(int p, T alpha, int N) {
    check_bdf_order(p);
    if (N < 0) throw std::domain_error("cq_weights: N must be nonnegative");
    return series_power_t<T>(bdf_symbol(p).real_coeffs<T>(), alpha, N);
}

inline CqWeights cq_weights(int p, double alpha, int N) {
    CqWeights w;
    w.alpha = alpha;
    w.p = p;
    w.omega = cq_weights_t<double>(p, alpha, N);
    return w;
}

// Generalized Newton-Gregory symbol (1-zeta)^alpha [gamma_0 + ... +
// gamma_{p-1} (1-zeta)^{p-1}], where the gamma_i expand (log zeta/(zeta-1))^alpha
// in powers of (1-zeta). With u = 1-zeta the base series is -log(1-u)/u =
// sum_k u^k/(k+1).
inline std::vector<double> ng_symbol(int p, double alpha, int N) {
    check_bdf_order(p);
    if (N < 0) throw std::domain_error("ng_symbol: N must be nonnegative");
    std::vector<double> base(static_cast<std::size_t>(p), 0.0);
    for (int k = 0; k < p; ++k) base[static_cast<std::size_t>(k)] = 1.0 / static_cast<double>(k + 1);
    std::vector<double> gam = series_power(base, alpha, p - 1);
    // Q(zeta) = sum_i gamma_i (1-zeta)^i, a polynomial of degree p-1 in zeta.
    std::vector<double> Q(static_cast<std::size_t>(p), 0.0);
    for (int i = 0; i < p; ++i)
        for (int k = 0; k <= i; ++k) {
            double term = gam[static_cast<std::size_t>(i)] *
                          binomial_rational(i, k).to_double();
            Q[static_cast<std::size_t>(k)] += (k % 2 == 1) ? -term : term;
        }
    std::vector<double> A = series_power({1.0, -1.0}, alpha, N); // (1-zeta)^alpha
    std::vector<double> out(static_cast<std::size_t>(N) + 1, 0.0);
    for (int n = 0; n <= N; ++n) {
        double s = 0.0;
        int kmax = std::min(n, p - 1);
        for (int k = 0; k <= kmax; ++k)
            s += Q[static_cast<std::size_t>(k)] * A[static_cast<std::size_t>(n - k)];
        out[static_cast<std::size_t>(n)] = s;
    }
    return out;
}

// E(tau) = |psi_p(e^{-tau})^alpha / tau^alpha - 1|, evaluated from the symbol
// itself. With u = 1 - e^{-tau} one has tau = sum_{j>=1} u^j/j, so
// psi_p - tau = -sum_{j>p} u^j/j exactly; this regrouping avoids the
// catastrophic cancellation of naive subtraction.
inline long double consistency_defect(int p, long double alpha, long double tau_bar) {
    check_bdf_order(p);
    long double u = -std::expm1(-tau_bar);
    long double uj = std::pow(u, static_cast<long double>(p));
    long double tail = 0.0L;
    for (int j = p + 1; j <= p + 200; ++j) {
        uj *= u;
        long double term = uj / static_cast<long double>(j);
        tail += term;
        if (term < 1e-24L * (tail + 1e-300L)) break;
    }
    long double delta = -tail / tau_bar; // psi/tau - 1
    return std::fabs(std::expm1(alpha * std::log1p(delta)));
}

} // namespace hcq
