#pragma once

// Truncated Taylor expansion of an expression in lt at lt = 0 (fixed x):
// jet arithmetic with Cauchy products and ODE recurrences for the analytic
// calls. Supplies delta_t^j g(a) = j! coeffs[j] to the corrected scheme.
// Non-analytic lt-dependence (fractional powers, log through 0) is rejected.

#include <cmath>
#include <vector>

#include "expr.hpp"

namespace hcq {

struct TaylorJet {
    int J = 0;
    std::vector<double> coeffs; // coeffs[0..J]
};

namespace expr_detail {

using Jet = std::vector<double>; // length J+1

inline bool jet_is_const(const Jet& a) {
    for (std::size_t i = 1; i < a.size(); ++i)
        if (a[i] != 0.0) return false;
    return true;
}

inline Jet jet_const(double v, int J) {
    Jet a(static_cast<std::size_t>(J) + 1, 0.0);
    a[0] = v;
    return a;
}

inline Jet jet_mul(const Jet& a, const Jet& b) {
    int J = static_cast<int>(a.size()) - 1;
    Jet c(a.size(), 0.0);
    for (int n = 0; n <= J; ++n)
        for (int k = 0; k <= n; ++k)
            c[static_cast<std::size_t>(n)] += a[static_cast<std::size_t>(k)] *
                                              b[static_cast<std::size_t>(n - k)];
    return c;
}

inline Jet jet_div(const Jet& a, const Jet& b, const Node& site) {
    if (b[0] == 0.0) {
        if (jet_is_const(b)) throw EvalError("division by zero in '" + describe(site) + "'");
        throw NonAnalyticError("division by an lt-vanishing denominator in '" + describe(site) +
                               "'");
    }
    int J = static_cast<int>(a.size()) - 1;
    Jet d(a.size(), 0.0);
    for (int n = 0; n <= J; ++n) {
        double s = a[static_cast<std::size_t>(n)];
        for (int k = 1; k <= n; ++k)
            s -= b[static_cast<std::size_t>(k)] * d[static_cast<std::size_t>(n - k)];
        d[static_cast<std::size_t>(n)] = s / b[0];
    }
    return d;
}

inline Jet jet_exp(const Jet& u) {
    int J = static_cast<int>(u.size()) - 1;
    Jet e(u.size(), 0.0);
    e[0] = std::exp(u[0]);
    for (int n = 1; n <= J; ++n) {
        double s = 0.0;
        for (int k = 1; k <= n; ++k)
            s += static_cast<double>(k) * u[static_cast<std::size_t>(k)] *
                 e[static_cast<std::size_t>(n - k)];
        e[static_cast<std::size_t>(n)] = s / static_cast<double>(n);
    }
    return e;
}

inline Jet jet_log(const Jet& u, const Node& site) {
    if (u[0] <= 0.0) {
        if (jet_is_const(u))
            throw EvalError("log of a nonpositive value in '" + describe(site) + "'");
        throw NonAnalyticError("log of an lt-dependent argument through 0 in '" + describe(site) +
                               "'");
    }
    int J = static_cast<int>(u.size()) - 1;
    Jet v(u.size(), 0.0);
    v[0] = std::log(u[0]);
    for (int n = 1; n <= J; ++n) {
        double s = static_cast<double>(n) * u[static_cast<std::size_t>(n)];
        for (int k = 1; k < n; ++k)
            s -= static_cast<double>(k) * v[static_cast<std::size_t>(k)] *
                 u[static_cast<std::size_t>(n - k)];
        v[static_cast<std::size_t>(n)] = s / (static_cast<double>(n) * u[0]);
    }
    return v;
}

inline void jet_sincos(const Jet& u, Jet& s, Jet& c) {
    int J = static_cast<int>(u.size()) - 1;
    s.assign(u.size(), 0.0);
    c.assign(u.size(), 0.0);
    s[0] = std::sin(u[0]);
    c[0] = std::cos(u[0]);
    for (int n = 1; n <= J; ++n) {
        double ds = 0.0, dc = 0.0;
        for (int k = 1; k <= n; ++k) {
            double ku = static_cast<double>(k) * u[static_cast<std::size_t>(k)];
            ds += ku * c[static_cast<std::size_t>(n - k)];
            dc -= ku * s[static_cast<std::size_t>(n - k)];
        }
        s[static_cast<std::size_t>(n)] = ds / static_cast<double>(n);
        c[static_cast<std::size_t>(n)] = dc / static_cast<double>(n);
    }
}

// u^y for scalar y via the power recurrence n u_0 P_n = sum ((y+1)k - n) u_k P_{n-k}.
inline Jet jet_pow_scalar(const Jet& u, double y, const Node& site) {
    int J = static_cast<int>(u.size()) - 1;
    if (jet_is_const(u)) return jet_const(eval_pow(site, u[0], y), J);
    bool y_int = (y == std::floor(y));
    if (y_int && y >= 0.0) {
        Jet r = jet_const(1.0, J);
        for (long i = 0; i < static_cast<long>(y); ++i) r = jet_mul(r, u);
        return r;
    }
    if (y_int) { // negative integer exponent
        Jet r = jet_const(1.0, J);
        for (long i = 0; i < -static_cast<long>(y); ++i) r = jet_mul(r, u);
        return jet_div(jet_const(1.0, J), r, site);
    }
    if (u[0] <= 0.0)
        throw NonAnalyticError("non-integer power of an lt-dependent base vanishing at lt = 0 in '" +
                               describe(site) + "'");
    Jet P(u.size(), 0.0);
    P[0] = std::pow(u[0], y);
    for (int n = 1; n <= J; ++n) {
        double s = 0.0;
        for (int k = 1; k <= n; ++k)
            s += ((y + 1.0) * static_cast<double>(k) - static_cast<double>(n)) *
                 u[static_cast<std::size_t>(k)] * P[static_cast<std::size_t>(n - k)];
        P[static_cast<std::size_t>(n)] = s / (static_cast<double>(n) * u[0]);
    }
    return P;
}

inline Jet jet_node(const Node& n, double x, int J) {
    switch (n.kind) {
        case Node::Kind::Number:
            return jet_const(n.value, J);
        case Node::Kind::Var:
            if (n.name == "x") return jet_const(x, J);
            else {
                Jet a = jet_const(0.0, J);
                if (J >= 1) a[1] = 1.0; // lt
                return a;
            }
        case Node::Kind::Pi:
            return jet_const(std::numbers::pi, J);
        case Node::Kind::Unary: {
            Jet a = jet_node(*n.args[0], x, J);
            for (double& v : a) v = -v;
            return a;
        }
        case Node::Kind::Binary: {
            Jet a = jet_node(*n.args[0], x, J);
            Jet b = jet_node(*n.args[1], x, J);
            switch (n.op) {
                case '+':
                    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
                    return a;
                case '-':
                    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
                    return a;
                case '*':
                    return jet_mul(a, b);
                case '/':
                    return jet_div(a, b, n);
                case '^':
                    if (!jet_is_const(b))
                        return jet_exp(jet_mul(b, jet_log(a, n)));
                    return jet_pow_scalar(a, b[0], n);
            }
            throw EvalError("bad operator");
        }
        case Node::Kind::Call: {
            Jet a = jet_node(*n.args[0], x, J);
            if (n.name == "sin" || n.name == "cos") {
                Jet s, c;
                jet_sincos(a, s, c);
                return (n.name == "sin") ? s : c;
            }
            if (n.name == "exp") return jet_exp(a);
            if (n.name == "log") return jet_log(a, n);
            if (n.name == "sqrt") return jet_pow_scalar(a, 0.5, n);
            if (n.name == "gamma") {
                if (!jet_is_const(a))
                    throw NonAnalyticError("gamma of an lt-dependent argument in '" + describe(n) +
                                           "' is not supported in Taylor mode");
                if (a[0] <= 0.0 && a[0] == std::floor(a[0]))
                    throw EvalError("gamma pole in '" + describe(n) + "'");
                return jet_const(gamma<double>(a[0]), J);
            }
            Jet b = jet_node(*n.args[1], x, J); // pow
            if (!jet_is_const(b)) return jet_exp(jet_mul(b, jet_log(a, n)));
            return jet_pow_scalar(a, b[0], n);
        }
    }
    throw EvalError("bad node");
}

} // namespace expr_detail

inline TaylorJet taylor_in_lt(const Expression& e, double x, int J) {
    if (J < 0) throw std::domain_error("taylor_in_lt: order must be nonnegative");
    TaylorJet out;
    out.J = J;
    out.coeffs = expr_detail::jet_node(*e.root, x, J);
    return out;
}

} // namespace hcq
