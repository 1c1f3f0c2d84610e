#pragma once

// 1D Lagrange finite elements on (0, L) with homogeneous Dirichlet conditions:
// uniform elements, equispaced intra-element nodes up to degree 5, banded
// symmetric storage (half-bandwidth k), banded Cholesky with a per-shift
// factorization cache. Templated on the scalar so the time stepper can run
// its solves in long double.

#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hcq {

using FemVector = std::vector<double>;

namespace fem_detail {

// Gauss-Legendre rule on [0,1]; nodes by Newton iteration on P_n in long double.
template <class T>
std::pair<std::vector<T>, std::vector<T>> gauss_legendre_01(int n) {
    std::vector<T> x(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        long double z = std::cos(std::numbers::pi_v<long double> *
                                  (static_cast<long double>(i) + 0.75L) /
                                  (static_cast<long double>(n) + 0.5L));
        long double dp = 1.0L;
        for (int it = 0; it < 100; ++it) {
            long double p0 = 1.0L, p1 = z;
            for (int j = 2; j <= n; ++j) {
                long double p2 = ((2.0L * j - 1.0L) * z * p1 - (j - 1.0L) * p0) /
                                 static_cast<long double>(j);
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) { p1 = z; p0 = 1.0L; }
            dp = static_cast<long double>(n) * (z * p1 - p0) / (z * z - 1.0L);
            long double dz = p1 / dp;
            z -= dz;
            if (std::fabs(dz) < 1e-19L) break;
        }
        x[static_cast<std::size_t>(i)] = static_cast<T>((z + 1.0L) / 2.0L);
        w[static_cast<std::size_t>(i)] = static_cast<T>(1.0L / ((1.0L - z * z) * dp * dp));
    }
    return {x, w};
}

// Equispaced Lagrange basis on the reference element [0,1]: values and
// derivatives of all k+1 shape functions at xi.
template <class T>
void lagrange_eval(int k, T xi, std::vector<T>& phi, std::vector<T>& dphi) {
    phi.assign(static_cast<std::size_t>(k) + 1, T(0));
    dphi.assign(static_cast<std::size_t>(k) + 1, T(0));
    auto node = [k](int r) { return T(r) / T(k); };
    for (int r = 0; r <= k; ++r) {
        T p(1);
        for (int s = 0; s <= k; ++s)
            if (s != r) p *= (xi - node(s)) / (node(r) - node(s));
        phi[static_cast<std::size_t>(r)] = p;
        T d(0);
        for (int q = 0; q <= k; ++q) {
            if (q == r) continue;
            T pq = T(1) / (node(r) - node(q));
            for (int s = 0; s <= k; ++s)
                if (s != r && s != q) pq *= (xi - node(s)) / (node(r) - node(s));
            d += pq;
        }
        dphi[static_cast<std::size_t>(r)] = d;
    }
}

} // namespace fem_detail

// Symmetric banded matrix, lower storage: at(d, i) = A(i+d, i), 0 <= d <= hb.
template <class T>
struct BandSymT {
    int n = 0;
    int hb = 0;
    std::vector<T> data;

    void init(int n_, int hb_) {
        n = n_;
        hb = hb_;
        data.assign(static_cast<std::size_t>(hb + 1) * static_cast<std::size_t>(n), T(0));
    }
    T& at(int d, int i) { return data[static_cast<std::size_t>(d) * n + i]; }
    const T& at(int d, int i) const { return data[static_cast<std::size_t>(d) * n + i]; }

    // y = A x using symmetry.
    std::vector<T> mul(const std::vector<T>& x) const {
        std::vector<T> y(static_cast<std::size_t>(n), T(0));
        for (int i = 0; i < n; ++i) {
            y[static_cast<std::size_t>(i)] += at(0, i) * x[static_cast<std::size_t>(i)];
            for (int d = 1; d <= hb && i + d < n; ++d) {
                y[static_cast<std::size_t>(i + d)] += at(d, i) * x[static_cast<std::size_t>(i)];
                y[static_cast<std::size_t>(i)] += at(d, i) * x[static_cast<std::size_t>(i + d)];
            }
        }
        return y;
    }

    // In-place banded Cholesky A = L L^T; throws if not SPD.
    void cholesky() {
        for (int j = 0; j < n; ++j) {
            T s = at(0, j);
            for (int m = std::max(0, j - hb); m < j; ++m) {
                T l = at(j - m, m);
                s -= l * l;
            }
            if (!(s > T(0))) throw std::runtime_error("banded Cholesky: matrix not SPD");
            at(0, j) = std::sqrt(s);
            for (int d = 1; d <= hb && j + d < n; ++d) {
                int i = j + d;
                T v = at(d, j);
                for (int m = std::max(0, i - hb); m < j; ++m)
                    v -= at(i - m, m) * at(j - m, m);
                at(d, j) = v / at(0, j);
            }
        }
    }

    // Solve L L^T x = b for a factored matrix.
    std::vector<T> solve_factored(const std::vector<T>& b) const {
        std::vector<T> y(b);
        for (int i = 0; i < n; ++i) {
            T s = y[static_cast<std::size_t>(i)];
            for (int m = std::max(0, i - hb); m < i; ++m)
                s -= at(i - m, m) * y[static_cast<std::size_t>(m)];
            y[static_cast<std::size_t>(i)] = s / at(0, i);
        }
        for (int i = n - 1; i >= 0; --i) {
            T s = y[static_cast<std::size_t>(i)];
            for (int d = 1; d <= hb && i + d < n; ++d)
                s -= at(d, i) * y[static_cast<std::size_t>(i + d)];
            y[static_cast<std::size_t>(i)] = s / at(0, i);
        }
        return y;
    }
};

template <class T>
struct FemSpaceT {
    double L = 0.0;
    int M = 0;
    int k = 1;
    int n_dof = 0;             // M*k - 1 interior unknowns
    double h = 0.0;            // element width
    std::vector<double> nodes; // interior global Lagrange node coordinates
    BandSymT<T> mass, stiffness;

    // Reference-element quadrature data: assembly rule (k+1 points) and the
    // high-order rule (k+3 points) used for loads and error integrals.
    std::vector<T> qx_hi, qw_hi;
    std::vector<std::vector<T>> phi_hi, dphi_hi; // [q][r]

    struct FactorCache {
        std::mutex mu;
        std::map<T, std::shared_ptr<const BandSymT<T>>> factors;
    };
    std::shared_ptr<FactorCache> cache = std::make_shared<FactorCache>();

    // global index of node r in element e, or -1 for a boundary node
    int gdof(int e, int r) const {
        int g = e * k + r;
        return (g == 0 || g == M * k) ? -1 : g - 1;
    }

    std::shared_ptr<const BandSymT<T>> factor_for(T lambda) const {
        std::lock_guard<std::mutex> lock(cache->mu);
        auto it = cache->factors.find(lambda);
        if (it != cache->factors.end()) return it->second;
        auto f = std::make_shared<BandSymT<T>>();
        f->init(n_dof, k);
        for (std::size_t i = 0; i < f->data.size(); ++i)
            f->data[i] = lambda * mass.data[i] + stiffness.data[i];
        f->cholesky();
        cache->factors.emplace(lambda, f);
        return f;
    }
};

using FemSpace = FemSpaceT<double>;

template <class T>
FemSpaceT<T> build_space_t(double L, int M, int k, int nq_override = 0) {
    if (!(L > 0.0)) throw std::domain_error("build_space: L must be positive");
    if (M < 2) throw std::domain_error("build_space: M must be at least 2");
    if (k < 1 || k > 5) throw std::domain_error("build_space: degree k must lie in [1, 5]");
    FemSpaceT<T> sp;
    sp.L = L;
    sp.M = M;
    sp.k = k;
    sp.n_dof = M * k - 1;
    sp.h = L / static_cast<double>(M);
    sp.nodes.resize(static_cast<std::size_t>(sp.n_dof));
    for (int g = 1; g < M * k; ++g)
        sp.nodes[static_cast<std::size_t>(g - 1)] =
            L * static_cast<double>(g) / static_cast<double>(M * k);
    int nq = (nq_override > 0) ? nq_override : k + 1;
    auto [qx, qw] = fem_detail::gauss_legendre_01<T>(nq);
    std::vector<std::vector<T>> phi(qx.size()), dphi(qx.size());
    for (std::size_t q = 0; q < qx.size(); ++q)
        fem_detail::lagrange_eval<T>(k, qx[q], phi[q], dphi[q]);
    sp.mass.init(sp.n_dof, k);
    sp.stiffness.init(sp.n_dof, k);
    T hT = static_cast<T>(sp.h);
    for (int e = 0; e < M; ++e)
        for (int r = 0; r <= k; ++r) {
            int gi = sp.gdof(e, r);
            if (gi < 0) continue;
            for (int s = 0; s <= r; ++s) {
                int gj = sp.gdof(e, s);
                if (gj < 0) continue;
                T me(0), ke(0);
                for (std::size_t q = 0; q < qx.size(); ++q) {
                    me += qw[q] * phi[q][static_cast<std::size_t>(r)] *
                          phi[q][static_cast<std::size_t>(s)];
                    ke += qw[q] * dphi[q][static_cast<std::size_t>(r)] *
                          dphi[q][static_cast<std::size_t>(s)];
                }
                int lo = std::min(gi, gj), d = std::abs(gi - gj);
                sp.mass.at(d, lo) += hT * me;
                sp.stiffness.at(d, lo) += ke / hT;
            }
        }
    auto [hx, hw] = fem_detail::gauss_legendre_01<T>(k + 3);
    sp.qx_hi = hx;
    sp.qw_hi = hw;
    sp.phi_hi.resize(hx.size());
    sp.dphi_hi.resize(hx.size());
    for (std::size_t q = 0; q < hx.size(); ++q)
        fem_detail::lagrange_eval<T>(k, hx[q], sp.phi_hi[q], sp.dphi_hi[q]);
    return sp;
}

inline FemSpace build_space(double L, int M, int k) { return build_space_t<double>(L, M, k); }

// Load vector b_i = (f, chi_i) with the k+3-point rule.
template <class T, class Fn>
std::vector<T> load_vector(const FemSpaceT<T>& sp, Fn&& f) {
    std::vector<T> b(static_cast<std::size_t>(sp.n_dof), T(0));
    for (int e = 0; e < sp.M; ++e) {
        double x0 = sp.h * static_cast<double>(e);
        for (std::size_t q = 0; q < sp.qx_hi.size(); ++q) {
            double xq = x0 + sp.h * static_cast<double>(sp.qx_hi[q]);
            T fv = static_cast<T>(f(xq)) * sp.qw_hi[q] * static_cast<T>(sp.h);
            for (int r = 0; r <= sp.k; ++r) {
                int gi = sp.gdof(e, r);
                if (gi >= 0)
                    b[static_cast<std::size_t>(gi)] += fv * sp.phi_hi[q][static_cast<std::size_t>(r)];
            }
        }
    }
    return b;
}

template <class T, class Fn>
std::vector<T> l2_project_t(const FemSpaceT<T>& sp, Fn&& f) {
    BandSymT<T> m = sp.mass;
    m.cholesky();
    return m.solve_factored(load_vector(sp, std::forward<Fn>(f)));
}

// Ritz projection: stiffness c = b with b_i = (v', chi_i').
template <class T, class Fn1, class Fn2>
std::vector<T> ritz_project_t(const FemSpaceT<T>& sp, Fn1&& /*v*/, Fn2&& v_prime) {
    std::vector<T> b(static_cast<std::size_t>(sp.n_dof), T(0));
    for (int e = 0; e < sp.M; ++e) {
        double x0 = sp.h * static_cast<double>(e);
        for (std::size_t q = 0; q < sp.qx_hi.size(); ++q) {
            double xq = x0 + sp.h * static_cast<double>(sp.qx_hi[q]);
            T fv = static_cast<T>(v_prime(xq)) * sp.qw_hi[q]; // (1/h) * h cancels
            for (int r = 0; r <= sp.k; ++r) {
                int gi = sp.gdof(e, r);
                if (gi >= 0)
                    b[static_cast<std::size_t>(gi)] += fv * sp.dphi_hi[q][static_cast<std::size_t>(r)];
            }
        }
    }
    BandSymT<T> s = sp.stiffness;
    s.cholesky();
    return s.solve_factored(b);
}

template <class T>
std::vector<T> solve_shifted(const FemSpaceT<T>& sp, T lambda, const std::vector<T>& rhs) {
    if (lambda < T(0)) throw std::domain_error("solve_shifted: lambda must be nonnegative");
    return sp.factor_for(lambda)->solve_factored(rhs);
}

// sqrt(integral (u_h - exact)^2) with the k+3-point rule per element.
template <class T, class Fn>
T l2_error_t(const FemSpaceT<T>& sp, const std::vector<T>& coeffs, Fn&& exact) {
    T acc(0);
    for (int e = 0; e < sp.M; ++e) {
        double x0 = sp.h * static_cast<double>(e);
        for (std::size_t q = 0; q < sp.qx_hi.size(); ++q) {
            double xq = x0 + sp.h * static_cast<double>(sp.qx_hi[q]);
            T uh(0);
            for (int r = 0; r <= sp.k; ++r) {
                int gi = sp.gdof(e, r);
                if (gi >= 0)
                    uh += coeffs[static_cast<std::size_t>(gi)] *
                          sp.phi_hi[q][static_cast<std::size_t>(r)];
            }
            T diff = uh - static_cast<T>(exact(xq));
            acc += sp.qw_hi[q] * static_cast<T>(sp.h) * diff * diff;
        }
    }
    return std::sqrt(acc);
}

// Double-precision convenience wrappers matching the public vocabulary.
inline FemVector l2_project(const FemSpace& sp, const std::function<double(double)>& f) {
    return l2_project_t<double>(sp, f);
}
inline FemVector ritz_project(const FemSpace& sp, const std::function<double(double)>& v,
                              const std::function<double(double)>& v_prime) {
    return ritz_project_t<double>(sp, v, v_prime);
}
inline FemVector solve_shifted(const FemSpace& sp, double lambda, const FemVector& rhs) {
    return solve_shifted<double>(sp, lambda, rhs);
}
inline double l2_error(const FemSpace& sp, const FemVector& coeffs,
                       const std::function<double(double)>& exact) {
    return l2_error_t<double>(sp, coeffs, exact);
}

} // namespace hcq
