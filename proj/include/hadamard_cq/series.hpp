#pragma once

// Power-series powering by the J.C.P. Miller recurrence:
//   w_0 = a_0^alpha,
//   w_n = (1/(n a_0)) sum_{k=1}^{min(n,deg)} ((alpha+1)k - n) a_k w_{n-k}.
// O(deg * N) for a degree-deg input series.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace hcq {

template <class T>
std::vector<T> series_power_t(const std::vector<T>& a, T alpha, int N) {
    if (a.empty() || a[0] == T(0))
        throw std::domain_error("series_power: leading coefficient must be nonzero");
    if (N < 0) throw std::domain_error("series_power: N must be nonnegative");
    int deg = static_cast<int>(a.size()) - 1;
    std::vector<T> w(static_cast<std::size_t>(N) + 1, T(0));
    w[0] = std::pow(a[0], alpha);
    for (int n = 1; n <= N; ++n) {
        T s = T(0);
        int kmax = std::min(n, deg);
        for (int k = 1; k <= kmax; ++k)
            s += ((alpha + T(1)) * T(k) - T(n)) * a[static_cast<std::size_t>(k)] *
                 w[static_cast<std::size_t>(n - k)];
        w[static_cast<std::size_t>(n)] = s / (T(n) * a[0]);
    }
    return w;
}

inline std::vector<double> series_power(const std::vector<double>& a, double alpha, int N) {
    return series_power_t<double>(a, alpha, N);
}

} // namespace hcq
