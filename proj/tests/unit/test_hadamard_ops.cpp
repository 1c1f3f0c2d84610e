#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

#include <hadamard_cq/cq.hpp>
#include <hadamard_cq/hadamard_ops.hpp>

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("exact fractional derivative of log powers", "[hadamard][exact]") {
    // Gamma(sigma+1)/Gamma(sigma+1-alpha) (log t/a)^{sigma-alpha}
    hcq::LogPower u1{1.0, 1.0};
    double e1 = std::exp(1.0);
    // integral (alpha = -1) of log t at t = a e: (1/2) log^2 = 1/2
    REQUIRE_THAT(hcq::exact_hadamard(-1.0, u1, e1), WithinRel(0.5, 1e-14));
    // half derivative of log t at log(t/a) = 1: 1/Gamma(3/2)
    REQUIRE_THAT(hcq::exact_hadamard(0.5, u1, e1),
                 WithinRel(1.1283791670955125739, 1e-14));
    // half derivative of log^{1/2}: Gamma(3/2) (log)^0
    hcq::LogPower uh{0.5, 1.0};
    REQUIRE_THAT(hcq::exact_hadamard(0.5, uh, 3.7),
                 WithinRel(0.88622692545275801365, 1e-14));
}

TEST_CASE("exact derivative rejects bad input", "[hadamard][exact]") {
    hcq::LogPower ok{1.0, 1.0};
    REQUIRE_THROWS_AS(hcq::exact_hadamard(0.5, ok, 1.0), std::domain_error);  // t = a
    REQUIRE_THROWS_AS(hcq::exact_hadamard(0.5, ok, 0.5), std::domain_error);  // t < a
    REQUIRE_THROWS_AS(hcq::exact_hadamard(0.5, hcq::LogPower{0.0, 1.0}, 2.0),
                      std::domain_error);
    REQUIRE_THROWS_AS(hcq::exact_hadamard(0.5, hcq::LogPower{1.0, -1.0}, 2.0),
                      std::domain_error);
    // Gamma(sigma+1-alpha) pole: sigma = 0.5, alpha = 1.5
    REQUIRE_THROWS_AS(hcq::exact_hadamard(1.5, hcq::LogPower{0.5, 1.0}, 2.0),
                      std::domain_error);
}

TEST_CASE("discrete integral of the constant function", "[hadamard][discrete]") {
    // alpha = -1, p = 1: weights of (1-z)^-1 are all ones, so the discrete
    // Hadamard integral of u == 1 is (n+1) tau at node n.
    hcq::ExpMesh mesh = hcq::build_mesh(1.0, std::exp(2.0), 8);
    std::vector<double> ones(9, 1.0);
    std::vector<double> out = hcq::discrete_hadamard(-1.0, 1, mesh, ones);
    for (int n = 0; n <= 8; ++n) {
        INFO("n = " << n);
        REQUIRE_THAT(out[n], WithinRel((n + 1) * mesh.tau_bar, 1e-14));
    }
}

TEST_CASE("discrete operator maps to uniform-mesh quadrature bitwise", "[hadamard][discrete]") {
    // With samples u(t_n) = U(n tau) the exponential-mesh operator must
    // coincide bit for bit with plain uniform-mesh CQ applied to U.
    const double a = 2.0, T = 2.0 * std::exp(3.0);
    const int N = 48, p = 3;
    const double alpha = 0.5;
    hcq::ExpMesh mesh = hcq::build_mesh(a, T, N);
    std::vector<double> samples(N + 1);
    for (int n = 0; n <= N; ++n) samples[n] = std::pow(mesh.tbar[n], 2.5);

    std::vector<double> dh = hcq::discrete_hadamard(alpha, p, mesh, samples);

    std::vector<long double> w =
        hcq::cq_weights_t<long double>(p, static_cast<long double>(alpha), N);
    long double scale = std::pow(static_cast<long double>(mesh.tau_bar),
                                 static_cast<long double>(-alpha));
    for (int n = 0; n <= N; ++n) {
        long double acc = 0.0L;
        for (int k = 0; k <= n; ++k)
            acc += w[n - k] * static_cast<long double>(samples[k]);
        double ref = static_cast<double>(scale * acc);
        INFO("n = " << n);
        REQUIRE(dh[n] == ref);
    }
}

TEST_CASE("discrete operator validates sample length", "[hadamard][discrete]") {
    hcq::ExpMesh mesh = hcq::build_mesh(1.0, 2.0, 4);
    std::vector<double> bad(4, 1.0);
    REQUIRE_THROWS_AS(hcq::discrete_hadamard(0.5, 1, mesh, bad), std::invalid_argument);
}

TEST_CASE("truncation study shows order p for smooth log powers", "[hadamard][truncation]") {
    for (double alpha : {0.5, -0.5}) {
        for (int p : {1, 2, 3}) {
            double sigma = p + 1.0;
            auto rows =
                hcq::truncation_study(alpha, sigma, p, 1.0, std::exp(2.0), {32, 64, 128, 256});
            REQUIRE(rows.size() == 4);
            REQUIRE(std::isnan(rows[0].order));
            double last = rows.back().order;
            INFO("alpha = " << alpha << ", p = " << p << ", order = " << last);
            REQUIRE_THAT(last, WithinAbs(static_cast<double>(p), 0.2));
        }
    }
}

TEST_CASE("truncation order drops to sigma + 1 for rough log powers", "[hadamard][truncation]") {
    // sigma = 1.5, alpha = 0.5, p = 3: sigma - alpha = 1 is not p - 1,
    // so the order caps at min(sigma + 1, p) = 2.5
    auto rows = hcq::truncation_study(0.5, 1.5, 3, 1.0, std::exp(2.0), {64, 128, 256, 512});
    INFO("order = " << rows.back().order);
    REQUIRE_THAT(rows.back().order, WithinAbs(2.5, 0.2));
}

TEST_CASE("truncation superconvergence at the Gamma pole", "[hadamard][truncation]") {
    // sigma - alpha = p - 1 kills the leading error term: order sigma + 1 > p
    auto r1 = hcq::truncation_study(0.5, 0.5, 1, 1.0, std::exp(2.0), {64, 128, 256, 512});
    INFO("p = 1 order = " << r1.back().order);
    REQUIRE_THAT(r1.back().order, WithinAbs(1.5, 0.2));
    auto r2 = hcq::truncation_study(0.5, 1.5, 2, 1.0, std::exp(2.0), {64, 128, 256, 512});
    INFO("p = 2 order = " << r2.back().order);
    REQUIRE_THAT(r2.back().order, WithinAbs(2.5, 0.2));
}

TEST_CASE("truncation study validates N >= p", "[hadamard][truncation]") {
    REQUIRE_THROWS_AS(hcq::truncation_study(0.5, 2.0, 3, 1.0, 2.0, {2, 8}), std::domain_error);
}
