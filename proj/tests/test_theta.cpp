#include "lgell/theta.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>

using namespace lgell;

namespace {

// 2 sum_{n >= 0} (-1)^n q^{(n + 1/2)^2 / 2} sin((2n + 1) pi nu)
cplx theta_by_sum(cplx nu, cplx tau)
{
    const double pi = std::numbers::pi;
    const cplx i(0, 1);
    cplx s = 0;
    for (int n = 0; n < 60; ++n) {
        const double h = n + 0.5;
        s += (n % 2 ? -2.0 : 2.0) * std::exp(i * pi * tau * h * h) * std::sin(static_cast<double>(2 * n + 1) * pi * nu);
    }
    return s;
}

} // namespace

TEST_CASE("product formula matches the series expansion")
{
    for (const auto& s : theta_samples(20, 3))
        CHECK(std::abs(theta_value(s.nu, s.tau) - theta_by_sum(s.nu, s.tau)) < 1e-12 * std::max(1.0, std::abs(theta_by_sum(s.nu, s.tau))));
}

TEST_CASE("zeros and parity")
{
    cplx tau(0.1, 1.1);
    CHECK(std::abs(theta_value(0.0, tau)) < 1e-15);
    CHECK(std::abs(theta_value(tau, tau)) < 1e-12);
    CHECK(std::abs(theta_value(-0.3, tau) + theta_value(0.3, tau)) < 1e-12);
    CHECK_THROWS_AS(theta_value(0.1, cplx(0.2, 0.0)), std::domain_error);
}

TEST_CASE("automatic truncation grows with Im nu and shrinks with Im tau")
{
    CHECK(theta_terms(cplx(0, 3), cplx(0, 1)) > theta_terms(cplx(0, 0), cplx(0, 1)));
    CHECK(theta_terms(0.1, cplx(0, 2)) < theta_terms(0.1, cplx(0, 0.5)));
    CHECK(theta_terms(0.1, cplx(0, 1), ThetaParams{7, 1e-10}) == 7);
}

TEST_CASE("transformation identities")
{
    ThetaIdentityReport r = check_theta_identities(theta_samples(10, 0));
    for (std::size_t k = 0; k < 4; ++k) {
        INFO(ThetaIdentityReport::names[k]);
        CHECK(r.checked[k] == 10);
        CHECK(r.max_residual[k] < 1e-9);
    }
}

TEST_CASE("samples are reproducible")
{
    auto a = theta_samples(5, 42), b = theta_samples(5, 42), c = theta_samples(5, 43);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(a[i].nu == b[i].nu);
        CHECK(a[i].tau == b[i].tau);
    }
    CHECK(a[0].nu != c[0].nu);
}
