#pragma once

// Gamma, Riemann zeta, and polylogarithm evaluations used by the correction
// machinery. All internal arithmetic is long double; templated entry points
// cast on return. Poles throw std::domain_error.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace hcq {

namespace detail {

inline constexpr long double pi_ld = std::numbers::pi_v<long double>;

// B_1 = -1/2; odd indices > 1 vanish; even indices from the exact table.
inline Rational bernoulli_rational(int n) {
    if (n < 0) throw std::domain_error("bernoulli index must be nonnegative");
    if (n == 0) return Rational(1);
    if (n == 1) return Rational(-1, 2);
    if (n % 2 == 1) return Rational(0);
    static const Rational even_table[] = {
        Rational(1),                      // B_0 (placeholder for indexing)
        Rational(1, 6),                   // B_2
        Rational(-1, 30),                 // B_4
        Rational(1, 42),                  // B_6
        Rational(-1, 30),                 // B_8
        Rational(5, 66),                  // B_10
        Rational(-691, 2730),             // B_12
        Rational(7, 6),                   // B_14
        Rational(-3617, 510),             // B_16
        Rational(43867, 798),             // B_18
        Rational(-174611, 330),           // B_20
        Rational(854513, 138),            // B_22
        Rational(-236364091, 2730),       // B_24
        Rational(8553103, 6),             // B_26
        Rational(-23749461029LL, 870),    // B_28
        Rational(8615841276005LL, 14322), // B_30
    };
    if (n > 30) throw std::domain_error("bernoulli table ends at B_30");
    return even_table[n / 2];
}

inline long double sinpi_ld(long double x) {
    long double m = std::nearbyint(x);
    long double r = x - m;
    long double s = std::sin(pi_ld * r);
    return (static_cast<long long>(m) % 2 != 0) ? -s : s;
}

inline bool is_integer_ld(long double x) { return x == std::floor(x); }

// Lanczos approximation, g = 7, 9 coefficients, with reflection for x < 1/2.
inline long double gamma_ld(long double x) {
    if (x <= 0.0L && is_integer_ld(x))
        throw std::domain_error("gamma pole at nonpositive integer");
    static const long double c[9] = {
        0.99999999999980993L,
        676.5203681218851L,
        -1259.1392167224028L,
        771.32342877765313L,
        -176.61502916214059L,
        12.507343278686905L,
        -0.13857109526572012L,
        9.9843695780195716e-6L,
        1.5056327351493116e-7L,
    };
    if (x < 0.5L) {
        // Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return pi_ld / (sinpi_ld(x) * gamma_ld(1.0L - x));
    }
    long double z = x - 1.0L;
    long double a = c[0];
    for (int i = 1; i < 9; ++i) a += c[i] / (z + static_cast<long double>(i));
    long double t = z + 7.5L;
    return std::sqrt(2.0L * pi_ld) * std::pow(t, z + 0.5L) * std::exp(-t) * a;
}

// Euler-Maclaurin tail for s > 1.
inline long double zeta_em_ld(long double s) {
    constexpr int N = 25;
    constexpr int J = 14; // Bernoulli corrections through B_28
    long double sum = 0.0L;
    for (int k = 1; k < N; ++k) sum += std::pow(static_cast<long double>(k), -s);
    long double Nld = static_cast<long double>(N);
    sum += 0.5L * std::pow(Nld, -s);
    sum += std::pow(Nld, 1.0L - s) / (s - 1.0L);
    long double poch = s;                          // s(s+1)...(s+2j-2)
    long double npow = std::pow(Nld, -s - 1.0L);  // N^{1-s-2j}
    long double fact = 2.0L;                       // (2j)!
    for (int j = 1; j <= J; ++j) {
        long double b2j = bernoulli_rational(2 * j).to_long_double();
        sum += (b2j / fact) * poch * npow;
        poch *= (s + static_cast<long double>(2 * j - 1)) * (s + static_cast<long double>(2 * j));
        npow /= Nld * Nld;
        fact *= static_cast<long double>(2 * j + 1) * static_cast<long double>(2 * j + 2);
    }
    return sum;
}

// Borwein's alternating-series acceleration of eta(s) for 0 < s < 1.
inline long double zeta_borwein_ld(long double s) {
    constexpr int n = 30;
    long double d[n + 1];
    long double term = 1.0L / static_cast<long double>(n); // i = 0 term before the n factor
    long double acc = term;
    d[0] = static_cast<long double>(n) * acc;
    for (int i = 1; i <= n; ++i) {
        term *= 4.0L * static_cast<long double>(n + i - 1) * static_cast<long double>(n - i + 1) /
                (static_cast<long double>(2 * i) * static_cast<long double>(2 * i - 1));
        acc += term;
        d[i] = static_cast<long double>(n) * acc;
    }
    long double eta = 0.0L;
    for (int k = 0; k < n; ++k) {
        long double piece = (d[k] - d[n]) * std::pow(static_cast<long double>(k + 1), -s);
        eta += (k % 2 == 0) ? -piece : piece;
    }
    eta /= d[n];
    return eta / (1.0L - std::pow(2.0L, 1.0L - s));
}

inline long double zeta_ld(long double s) {
    if (s == 1.0L) throw std::domain_error("zeta pole at s = 1");
    if (s == 0.0L) return -0.5L;
    if (s > 1.0L) return zeta_em_ld(s);
    if (s > 0.0L) return zeta_borwein_ld(s);
    if (is_integer_ld(s) && static_cast<long long>(s) % 2 == 0) return 0.0L; // trivial zeros
    // Functional equation: zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s).
    long double t = 1.0L - s;
    return std::pow(2.0L, s) * std::pow(pi_ld, s - 1.0L) * sinpi_ld(0.5L * s) *
           gamma_ld(t) * zeta_em_ld(t);
}

// Eulerian numbers A(n, k), row n.
inline std::vector<long double> eulerian_row(int n) {
    std::vector<long double> row(1, 1.0L);
    for (int m = 1; m <= n; ++m) {
        std::vector<long double> next(static_cast<std::size_t>(m), 0.0L);
        for (int k = 0; k < m; ++k) {
            long double left = (k < static_cast<int>(row.size())) ? row[static_cast<std::size_t>(k)] : 0.0L;
            long double up = (k - 1 >= 0 && k - 1 < static_cast<int>(row.size()))
                                 ? row[static_cast<std::size_t>(k - 1)]
                                 : 0.0L;
            next[static_cast<std::size_t>(k)] =
                static_cast<long double>(k + 1) * left + static_cast<long double>(m - k) * up;
        }
        row = std::move(next);
    }
    return row;
}

using cld = std::complex<long double>;

// Li_{-n}(z) = sum_k A(n,k) z^{n-k} / (1-z)^{n+1}, n >= 0 (n = 0: z/(1-z)).
inline cld polylog_neg_int_ld(int n, cld z) {
    cld one(1.0L, 0.0L);
    if (n == 0) return z / (one - z);
    std::vector<long double> a = eulerian_row(n);
    cld num(0.0L, 0.0L);
    // Horner in z over coefficients of z^{n-k}, k = 0..n-1.
    for (int k = 0; k < n; ++k) num = num * z + cld(a[static_cast<std::size_t>(k)], 0.0L);
    num *= z;
    return num / std::pow(one - z, static_cast<long double>(n + 1));
}

inline cld polylog_series_ld(long double s, cld z) {
    cld sum(0.0L, 0.0L);
    cld zk(1.0L, 0.0L);
    long double az = std::abs(z);
    int kmin = static_cast<int>(std::ceil(std::fmax(4.0L, -s + 4.0L)));
    for (int k = 1; k <= 200000; ++k) {
        zk *= z;
        cld term = zk * std::pow(static_cast<long double>(k), -s);
        sum += term;
        if (k >= kmin && std::abs(term) < 1e-21L * (1.0L + std::abs(sum))) break;
        (void)az;
    }
    return sum;
}

// Singular expansion about z = 1 for non-integer s:
//   Li_s(z) = Gamma(1-s) w^{s-1} + sum_{k>=0} zeta(s-k) (-w)^k / k!,  w = -log z,
// valid for |w| < 2 pi. (Sign check: s = 0 recovers 1/(e^w - 1).)
inline cld polylog_singular_ld(long double s, cld z) {
    cld w = -std::log(z);
    cld sum = gamma_ld(1.0L - s) * std::exp((s - 1.0L) * std::log(w));
    cld mwk(1.0L, 0.0L); // (-w)^k
    long double kfact = 1.0L;
    for (int k = 0; k <= 140; ++k) {
        if (k > 0) {
            mwk *= -w;
            kfact *= static_cast<long double>(k);
        }
        cld term = zeta_ld(s - static_cast<long double>(k)) * mwk / kfact;
        sum += term;
        if (k >= 30 && std::abs(term) < 1e-22L * (1.0L + std::abs(sum))) break;
    }
    return sum;
}

inline cld polylog_core_ld(long double s, cld z) {
    if (std::abs(z) >= 1.0L) throw std::domain_error("polylog requires |z| < 1");
    if (z == cld(0.0L, 0.0L)) return cld(0.0L, 0.0L);
    if (s <= 0.0L && is_integer_ld(s))
        return polylog_neg_int_ld(static_cast<int>(-s), z);
    if (s == 1.0L) return -std::log(cld(1.0L, 0.0L) - z);
    bool s_int = is_integer_ld(s);
    if (std::abs(z) <= 0.5L || s_int) return polylog_series_ld(s, z);
    return polylog_singular_ld(s, z);
}

} // namespace detail

// Gamma function; relative error stays below 1e-13 for |x| <= 30.
template <class T = double>
T gamma(T x) {
    return static_cast<T>(detail::gamma_ld(static_cast<long double>(x)));
}

// Riemann zeta; pole at s = 1 throws, trivial zeros are exact.
template <class T = double>
T zeta(T s) {
    return static_cast<T>(detail::zeta_ld(static_cast<long double>(s)));
}

// Exact zeta values at nonpositive integer arguments:
// zeta(0) = -1/2, zeta(-n) = -B_{n+1}/(n+1).
inline Rational zeta_rational(int s) {
    if (s > 0) throw std::domain_error("zeta_rational is defined on nonpositive integers");
    if (s == 0) return Rational(-1, 2);
    int n = -s;
    return -detail::bernoulli_rational(n + 1) / Rational(n + 1);
}

// Polylogarithm Li_s(z) on the open unit disk; absolute error <= 1e-11.
template <class T = double>
T polylog(T s, T z) {
    return static_cast<T>(
        detail::polylog_core_ld(static_cast<long double>(s),
                                detail::cld(static_cast<long double>(z), 0.0L))
            .real());
}

template <class T>
std::complex<T> polylog(T s, std::complex<T> z) {
    detail::cld r = detail::polylog_core_ld(
        static_cast<long double>(s),
        detail::cld(static_cast<long double>(z.real()), static_cast<long double>(z.imag())));
    return std::complex<T>(static_cast<T>(r.real()), static_cast<T>(r.imag()));
}

} // namespace hcq
