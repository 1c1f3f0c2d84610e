#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

#include <hadamard_cq/mesh.hpp>

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("mesh nodes follow the exponential rule", "[mesh]") {
    hcq::ExpMesh m = hcq::build_mesh(1.0, 4.0, 2);
    REQUIRE_THAT(m.tau_bar, WithinRel(0.5 * std::log(4.0), 1e-16));
    REQUIRE(m.t[0] == 1.0);
    REQUIRE_THAT(m.t[1], WithinRel(2.0, 1e-15));
    REQUIRE(m.t[2] == 4.0);
    REQUIRE(m.tbar[0] == 0.0);
    REQUIRE_THAT(m.tbar[2], WithinRel(std::log(4.0), 1e-16));
}

TEST_CASE("unit log-step mesh", "[mesh]") {
    double e3 = std::exp(3.0);
    hcq::ExpMesh m = hcq::build_mesh(1.0, e3, 3);
    REQUIRE_THAT(m.tau_bar, WithinRel(1.0, 1e-15));
    REQUIRE_THAT(m.t[1], WithinRel(std::exp(1.0), 1e-14));
    REQUIRE_THAT(m.t[2], WithinRel(std::exp(2.0), 1e-14));
    REQUIRE(m.t[3] == e3);
}

TEST_CASE("mesh endpoints are pinned exactly", "[mesh]") {
    hcq::ExpMesh m = hcq::build_mesh(0.3, 17.9, 7);
    REQUIRE(m.t.front() == 0.3);
    REQUIRE(m.t.back() == 17.9);
    REQUIRE(static_cast<int>(m.t.size()) == m.N + 1);
}

TEST_CASE("node ratio is constant", "[mesh]") {
    hcq::ExpMesh m = hcq::build_mesh(2.0, 50.0, 20);
    double q = std::pow(50.0 / 2.0, 1.0 / 20.0);
    for (int n = 0; n < 20; ++n) {
        INFO("n = " << n);
        REQUIRE_THAT(m.t[n + 1] / m.t[n], WithinRel(q, 1e-13));
    }
    // tbar is the uniform image of t
    for (int n = 0; n <= 20; ++n)
        REQUIRE_THAT(m.tbar[n], WithinAbs(std::log(m.t[n] / 2.0), 1e-13));
}

TEST_CASE("refined meshes nest", "[mesh]") {
    hcq::ExpMesh coarse = hcq::build_mesh(1.0, 9.0, 8);
    hcq::ExpMesh fine = hcq::build_mesh(1.0, 9.0, 16);
    for (int n = 0; n <= 8; ++n) {
        INFO("n = " << n);
        REQUIRE_THAT(fine.t[2 * n], WithinRel(coarse.t[n], 1e-13));
    }
}

TEST_CASE("mesh rejects bad input", "[mesh]") {
    REQUIRE_THROWS_AS(hcq::build_mesh(0.0, 2.0, 4), std::domain_error);
    REQUIRE_THROWS_AS(hcq::build_mesh(-1.0, 2.0, 4), std::domain_error);
    REQUIRE_THROWS_AS(hcq::build_mesh(1.0, 1.0, 4), std::domain_error);
    REQUIRE_THROWS_AS(hcq::build_mesh(2.0, 1.0, 4), std::domain_error);
    REQUIRE_THROWS_AS(hcq::build_mesh(1.0, 2.0, 0), std::domain_error);
}
