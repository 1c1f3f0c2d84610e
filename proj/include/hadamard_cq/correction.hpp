#pragma once

// Startup correction coefficients b_n^{(p)}, d_{j,n}^{(p,beta)} and the symbol
// functions mu(zeta), beta_j(zeta) whose accuracy conditions
//   |mu(zeta) - 1|                                 <= C |1-zeta|^p
//   |beta_j(zeta) - Gamma(j+1+beta)/(j! psi^{j+1+beta})| <= C |1-zeta|^{p-j-1-beta}
// the property suite verifies. The beta = 0 path is exact rational arithmetic.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "cq.hpp"
#include "rational.hpp"
#include "special_functions.hpp"

namespace hcq {

namespace detail {

// Coefficient of u^k in (log(1-u))^m; exact.
inline Rational log_power_coeff(int m, int k) {
    if (m == 0) return (k == 0) ? Rational(1) : Rational(0);
    if (k < m) return Rational(0); // (log(1-u))^m has valuation m
    std::vector<Rational> cur(static_cast<std::size_t>(k) + 1, Rational(0));
    cur[0] = Rational(1);
    for (int rep = 0; rep < m; ++rep) {
        std::vector<Rational> next(static_cast<std::size_t>(k) + 1, Rational(0));
        for (int i = 0; i <= k; ++i) {
            if (cur[static_cast<std::size_t>(i)] == Rational(0)) continue;
            for (int q = 1; i + q <= k; ++q)
                next[static_cast<std::size_t>(i + q)] +=
                    cur[static_cast<std::size_t>(i)] * Rational(-1, q);
        }
        cur = std::move(next);
    }
    return cur[static_cast<std::size_t>(k)];
}

inline long double factorial_ld(int n) {
    long double f = 1.0L;
    for (int i = 2; i <= n; ++i) f *= static_cast<long double>(i);
    return f;
}

inline Rational factorial_rational(int n) {
    Rational f(1);
    for (int i = 2; i <= n; ++i) f *= Rational(i);
    return f;
}

inline long double c_coeff_ld(int j, int k, long double beta) {
    long double sum = 0.0L;
    long double mfact = 1.0L;
    for (int m = 0; m <= k; ++m) {
        if (m > 0) mfact *= static_cast<long double>(m);
        Rational L = log_power_coeff(m, k);
        if (L == Rational(0)) continue;
        long double s = -static_cast<long double>(j + m) - beta;
        sum += zeta_ld(s) * L.to_long_double() / mfact;
    }
    return sum / factorial_ld(j);
}

// Shared eta-recurrence / binomial-sum pipeline producing the zero-padded
// rectangle d[j][n-1] for j = 0..p-2, n = 1..p-1:
//   eta_{j,0} = -c_{j,0}; eta_{j,n} = eta_{j,n-1} - c_{j,n}   (n <= p-j-2)
//   d_{j,k+1} = (-1)^{k+1} sum_{n=k}^{p-j-2} C(n,k) (-eta_{j,n})
template <class F, class CFn>
std::vector<std::vector<F>> build_d_table(int p, CFn c_of) {
    std::vector<std::vector<F>> d;
    if (p < 2) return d;
    d.assign(static_cast<std::size_t>(p - 1),
             std::vector<F>(static_cast<std::size_t>(p - 1), F(0)));
    for (int j = 0; j <= p - 2; ++j) {
        int nmax = p - j - 2;
        std::vector<F> eta(static_cast<std::size_t>(nmax) + 1);
        F run(0);
        for (int n = 0; n <= nmax; ++n) {
            run -= c_of(j, n);
            eta[static_cast<std::size_t>(n)] = run;
        }
        for (int k = 0; k <= nmax; ++k) {
            F sum(0);
            for (int n = k; n <= nmax; ++n) {
                Rational binq = binomial_rational(n, k);
                F bin(0);
                if constexpr (std::is_same_v<F, Rational>) bin = binq;
                else bin = binq.template to<F>();
                sum += bin * (-eta[static_cast<std::size_t>(n)]);
            }
            d[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
                (k % 2 == 0) ? -sum : sum;
        }
    }
    return d;
}

} // namespace detail

// Coefficient of (1-zeta)^k in (1/j!) sum_m zeta(-j-m-beta) (log zeta)^m / m!.
inline double c_coeff(int j, int k, double beta) {
    if (j < 0 || k < 0) throw std::domain_error("c_coeff: j, k must be nonnegative");
    if (beta < 0.0 || beta >= 1.0) throw std::domain_error("c_coeff: beta must lie in [0,1)");
    return static_cast<double>(detail::c_coeff_ld(j, k, static_cast<long double>(beta)));
}

// Exact rational value at beta = 0 (zeta at nonpositive integers is rational).
inline Rational c_coeff_rational(int j, int k) {
    if (j < 0 || k < 0) throw std::domain_error("c_coeff: j, k must be nonnegative");
    Rational sum(0);
    for (int m = 0; m <= k; ++m) {
        Rational L = detail::log_power_coeff(m, k);
        if (L == Rational(0)) continue;
        sum += zeta_rational(-(j + m)) * L / detail::factorial_rational(m);
    }
    return sum / detail::factorial_rational(j);
}

struct CorrectionTable {
    int p = 1;
    double beta = 0.0;
    std::vector<double> b;              // b[n-1] = b_n^{(p)}, n = 1..p-1
    std::vector<std::vector<double>> d; // d[j][n-1] = d_{j,n}^{(p,beta)}
};

struct CorrectionTableRational {
    int p = 1;
    std::vector<Rational> b;
    std::vector<std::vector<Rational>> d; // beta = 0 table
};

inline CorrectionTableRational correction_table_rational(int p) {
    check_bdf_order(p);
    CorrectionTableRational t;
    t.p = p;
    t.d = detail::build_d_table<Rational>(p, [](int j, int n) { return c_coeff_rational(j, n); });
    if (p >= 2) t.b = t.d[0]; // b_n^{(p)} = d_{0,n}^{(p,0)}
    return t;
}

inline CorrectionTable correction_table(int p, double beta) {
    check_bdf_order(p);
    if (beta < 0.0 || beta >= 1.0)
        throw std::domain_error("correction_table: beta must lie in [0,1)");
    CorrectionTable t;
    t.p = p;
    t.beta = beta;
    long double bld = static_cast<long double>(beta);
    auto dld = detail::build_d_table<long double>(
        p, [bld](int j, int n) { return detail::c_coeff_ld(j, n, bld); });
    t.d.assign(dld.size(), {});
    for (std::size_t j = 0; j < dld.size(); ++j)
        for (long double v : dld[j]) t.d[j].push_back(static_cast<double>(v));
    CorrectionTableRational r = correction_table_rational(p);
    for (const Rational& q : r.b) t.b.push_back(q.to_double());
    return t;
}

// psi_p at a complex point.
inline std::complex<double> eval_psi(int p, std::complex<double> zeta_point) {
    check_bdf_order(p);
    std::complex<double> u = 1.0 - zeta_point;
    std::complex<double> sum = 0.0, up = 1.0;
    for (int j = 1; j <= p; ++j) {
        up *= u;
        sum += up / static_cast<double>(j);
    }
    return sum;
}

// mu(zeta) = psi_p(zeta) (sum_n b_n zeta^n + zeta/(1-zeta)).
inline std::complex<double> eval_mu(int p, std::complex<double> zeta_point) {
    check_bdf_order(p);
    if (zeta_point == std::complex<double>(1.0, 0.0))
        throw std::domain_error("eval_mu: singular at zeta = 1");
    CorrectionTableRational t = correction_table_rational(p);
    std::complex<double> bsum = 0.0, zn = 1.0;
    for (int n = 1; n <= p - 1; ++n) {
        zn *= zeta_point;
        bsum += t.b[static_cast<std::size_t>(n - 1)].to_double() * zn;
    }
    bsum += zeta_point / (1.0 - zeta_point);
    return eval_psi(p, zeta_point) * bsum;
}

// beta_j(zeta) = sum_n d_{j,n} zeta^n + Li_{-(j+beta)}(zeta) / j!.
inline std::complex<double> eval_beta_j(int p, int j, double beta,
                                        std::complex<double> zeta_point) {
    check_bdf_order(p);
    if (j < 0 || j > p - 2) throw std::domain_error("eval_beta_j: j must lie in [0, p-2]");
    if (zeta_point == std::complex<double>(1.0, 0.0))
        throw std::domain_error("eval_beta_j: singular at zeta = 1");
    CorrectionTable t = correction_table(p, beta);
    std::complex<double> sum = 0.0, zn = 1.0;
    for (int n = 1; n <= p - 1; ++n) {
        zn *= zeta_point;
        sum += t.d[static_cast<std::size_t>(j)][static_cast<std::size_t>(n - 1)] * zn;
    }
    double jf = static_cast<double>(detail::factorial_ld(j));
    return sum + polylog(-(static_cast<double>(j) + beta), zeta_point) / jf;
}

// |mu(e^{-tau}) - 1| without cancellation. In u = 1 - zeta,
//   mu - 1 = (1-u) sum_{j=1}^p u^{j-1}/j - 1 + psi(u) B(1-u)
// is a polynomial with exact rational coefficients whose valuation is p
// precisely when the b_n satisfy the accuracy condition.
inline std::vector<Rational> mu_minus_one_poly(int p) {
    check_bdf_order(p);
    CorrectionTableRational t = correction_table_rational(p);
    std::vector<Rational> poly(static_cast<std::size_t>(2 * p), Rational(0));
    for (int j = 1; j <= p; ++j) {
        poly[static_cast<std::size_t>(j - 1)] += Rational(1, j);
        poly[static_cast<std::size_t>(j)] -= Rational(1, j);
    }
    poly[0] -= Rational(1);
    std::vector<Rational> B(static_cast<std::size_t>(p), Rational(0)); // B(1-u) in powers of u
    for (int n = 1; n <= p - 1; ++n)
        for (int i = 0; i <= n; ++i) {
            Rational term = t.b[static_cast<std::size_t>(n - 1)] * binomial_rational(n, i);
            if (i % 2 == 1) term = -term;
            B[static_cast<std::size_t>(i)] += term;
        }
    for (int j = 1; j <= p; ++j)
        for (int i = 0; i <= p - 1; ++i)
            poly[static_cast<std::size_t>(j + i)] += Rational(1, j) * B[static_cast<std::size_t>(i)];
    return poly;
}

inline long double mu_defect(int p, long double tau_bar) {
    std::vector<Rational> poly = mu_minus_one_poly(p);
    long double u = -std::expm1(-tau_bar);
    long double acc = 0.0L;
    for (std::size_t i = poly.size(); i-- > 0;)
        acc = acc * u + poly[i].to_long_double();
    return std::fabs(acc);
}

// |beta_j(e^{-tau}) - Gamma(j+1+beta)/(j! psi_p(e^{-tau})^{j+1+beta})| without
// cancellation: substituting Li's singular expansion at w = tau regroups the
// defect into the d-sum, a zeta tail, and Gamma(s')(tau^{-s'} - psi^{-s'}).
inline long double beta_j_defect(int p, int j, long double beta, long double tau_bar) {
    check_bdf_order(p);
    if (j < 0 || j > p - 2) throw std::domain_error("beta_j_defect: j must lie in [0, p-2]");
    auto d = detail::build_d_table<long double>(
        p, [beta](int jj, int n) { return detail::c_coeff_ld(jj, n, beta); });
    long double zp = std::exp(-tau_bar);
    long double sum_d = 0.0L, zn = 1.0L;
    for (int n = 1; n <= p - 1; ++n) {
        zn *= zp;
        sum_d += d[static_cast<std::size_t>(j)][static_cast<std::size_t>(n - 1)] * zn;
    }
    long double zsum = 0.0L;
    long double mtk = 1.0L; // (-tau)^k
    long double kfact = 1.0L;
    for (int k = 0; k <= 60; ++k) {
        if (k > 0) {
            mtk *= -tau_bar;
            kfact *= static_cast<long double>(k);
        }
        long double term = detail::zeta_ld(-(static_cast<long double>(j + k)) - beta) * mtk / kfact;
        zsum += term;
        if (k >= 25 && std::fabs(term) < 1e-25L) break;
    }
    long double sprime = static_cast<long double>(j + 1) + beta;
    long double u = -std::expm1(-tau_bar);
    long double uj = std::pow(u, static_cast<long double>(p));
    long double tail = 0.0L;
    for (int q = p + 1; q <= p + 200; ++q) {
        uj *= u;
        long double term = uj / static_cast<long double>(q);
        tail += term;
        if (term < 1e-24L * (tail + 1e-300L)) break;
    }
    long double delta = -tail / tau_bar; // psi/tau - 1
    long double corr = detail::gamma_ld(sprime) * std::pow(tau_bar, -sprime) *
                       (-std::expm1(-sprime * std::log1p(delta)));
    long double jf = detail::factorial_ld(j);
    return std::fabs(sum_d + zsum / jf + corr / jf);
}

} // namespace hcq
