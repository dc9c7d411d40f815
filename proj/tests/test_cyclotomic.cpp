#include "lgell/cyclotomic.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>

using namespace lgell;

namespace {

std::complex<double> zeta(long k, long n)
{
    return std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
}

} // namespace

TEST_CASE("cyclotomic polynomials and Euler phi")
{
    CHECK(euler_phi(12) == 4);
    CHECK(euler_phi(5) == 4);
    CHECK(cyclotomic_polynomial(6) == std::vector<Int>{1, -1, 1});
}

TEST_CASE("roots of unity evaluate to the complex roots")
{
    for (std::uint32_t n : {1u, 2u, 3u, 4u, 5u, 8u, 12u, 20u})
        for (long k = -3; k < static_cast<long>(n) + 3; ++k)
            CHECK(std::abs(root_of_unity(k, n).to_complex() - zeta(k, n)) < 1e-12);
}

TEST_CASE("arithmetic matches complex evaluation")
{
    const std::uint32_t n = 12;
    CycNum a = root_of_unity(1, n) + CycNum(make_rat(2, 3)) * root_of_unity(5, n);
    CycNum b = root_of_unity(7, n) - root_of_unity(2, n);
    std::complex<double> ca = zeta(1, n) + 2.0 / 3.0 * zeta(5, n), cb = zeta(7, n) - zeta(2, n);
    CHECK(std::abs((a * b).to_complex() - ca * cb) < 1e-12);
    CHECK(std::abs((a + b).to_complex() - (ca + cb)) < 1e-12);
    CycNum c = a;
    c.add_product(a, b);
    CHECK(std::abs(c.to_complex() - (ca + ca * cb)) < 1e-12);
}

TEST_CASE("sum over all N-th roots is zero, rational projections succeed")
{
    for (std::uint32_t n : {3u, 4u, 5u, 12u}) {
        CycNum s;
        for (long k = 0; k < static_cast<long>(n); ++k)
            s += root_of_unity(k, n);
        CHECK(s.is_zero());
        CHECK(cyc_to_rational(root_of_unity(1, n) * root_of_unity(-1, n)) == 1);
    }
    // zeta_8 + zeta_8^7 = sqrt 2 is real but irrational
    CHECK_THROWS_AS(cyc_to_rational(root_of_unity(1, 8) + root_of_unity(7, 8)), NotRationalError);
    CHECK(cyc_to_rational(root_of_unity(1, 3) + root_of_unity(2, 3)) == -1);
}

TEST_CASE("lifting a rational keeps its value")
{
    CycNum r = CycNum(make_rat(5, 7)).lifted_to(10);
    CHECK(r.is_rational());
    CHECK(cyc_to_rational(r) == make_rat(5, 7));
}
