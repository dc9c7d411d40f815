#include "lgell/genus.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>

using namespace lgell;

namespace {

const cplx I(0, 1);
constexpr double pi = std::numbers::pi;

GenusModel model(const char* text, bool sl = false)
{
    Potential p = parse_potential(text);
    return GenusModel::make(p, sl ? sl_subgroup(p) : grading_subgroup(p));
}

// theta_2, theta_3, theta_4 from their lattice sums
cplx theta_k(int k, cplx z, cplx tau)
{
    cplx s = 0;
    for (int n = -40; n <= 40; ++n) {
        const double h = k == 2 ? n + 0.5 : n;
        const double sign = k == 4 && n % 2 ? -1.0 : 1.0;
        s += sign * std::exp(I * pi * tau * h * h + 2.0 * pi * I * h * z);
    }
    return s;
}

// the weak Jacobi form of weight 0 and index 1
cplx phi01(cplx z, cplx tau)
{
    cplx s = 0;
    for (int k = 2; k <= 4; ++k) {
        cplx r = theta_k(k, z, tau) / theta_k(k, 0, tau);
        s += r * r;
    }
    return 4.0 * s;
}

Rat coeff(const BiSeries& s, const Rat& q, const Rat& y)
{
    return cyc_to_rational(coefficient_at(s, q, y));
}

} // namespace

TEST_CASE("model construction validates admissibility")
{
    Potential quintic = parse_potential("x1^5+x2^5+x3^5+x4^5+x5^5");
    CHECK_THROWS_AS(GenusModel::make(quintic, aut_group(quintic)), AdmissibilityError);
    SymmetryGroup small = SymmetryGroup::generated_by(5, {parse_phase_vector("1/5,4/5,0,0,0", 5)});
    CHECK_THROWS_AS(GenusModel::make(quintic, small), AdmissibilityError);
    Potential chain = parse_potential("x1^3*x2+x2^4");
    CHECK_THROWS_AS(GenusModel::make(chain, grading_subgroup(chain)), AdmissibilityError);

    GenusModel m = model("x1^3*x2+x2^4+x3^4+x4^4", true);
    CHECK(m.phase_modulus == 4);
    CHECK(m.denominator == 4);
    CHECK(!m.has_quadratic_fermat);
    CHECK(model("x1^2+x2^2").has_quadratic_fermat);
}

TEST_CASE("untwisted cone series at q^0")
{
    Charges c;
    c.q = {make_rat(1, 5)};
    BiSeries s = cone_supertrace_series(c, rectangle(0, -2, 2));
    CHECK(s.size() == 4);
    for (int k = 0; k < 4; ++k)
        CHECK(coeff(s, 0, make_rat(k, 5)) == 1);
    c.q = {make_rat(1, 2)};
    CHECK(cone_supertrace_series(c, rectangle(2, -3, 3)) == BiSeries::one(2, rectangle(2, -3, 3)));
}

TEST_CASE("x^2 + y^2 gives the constant 2")
{
    GenusSeries g = ell_genus_series(model("x1^2+x2^2"), {});
    CHECK(g.series.size() == 1);
    CHECK(coeff(g.series, 0, 0) == 2);
    CHECK(g.has_quadratic_fermat);
    for (cplx z : {cplx(0.1, 0.02), cplx(0.37, -0.1), cplx(-0.2, 0.15)})
        CHECK(std::abs(ell_genus_numeric(model("x1^2+x2^2"), z, cplx(0.1, 1.2)) - 2.0) < 1e-6);
}

TEST_CASE("K3 potentials give twice the index-1 weak Jacobi form")
{
    for (const char* text : {"x1^4+x2^4+x3^4+x4^4", "x1^3*x2+x2^4+x3^4+x4^4", "x1^3*x2+x2^3*x1+x3^4+x4^4"}) {
        GenusModel m = model(text);
        GenusSeries g = ell_genus_series(m, {});
        for (cplx z : {cplx(0.13, 0.05), cplx(0.31, -0.08)}) {
            const cplx tau(0.1, 1.3);
            const cplx expect = 2.0 * phi01(z, tau);
            CHECK(std::abs(ell_genus_numeric(m, z, tau) - expect) < 1e-9 * std::abs(expect));
            CHECK(std::abs(g.series.evaluate(z, tau) - expect) < 1e-4 * std::abs(expect));
        }
        CHECK(coeff(g.series, 0, 0) == 20);
        CHECK(coeff(g.series, 0, 1) == 2);
        CHECK(coeff(g.series, 1, 0) == 216);
    }
}

TEST_CASE("quintic: finite y-range, mirror sign, cusp and rationality")
{
    GenusOptions o;
    o.qmax = 1;
    GenusSeries j = ell_genus_series(model("x1^5+x2^5+x3^5+x4^5+x5^5"), o);
    GenusSeries sl = ell_genus_series(model("x1^5+x2^5+x3^5+x4^5+x5^5", true), o);
    CHECK(j.series == -sl.series);
    CHECK(j.series.min_q() >= 0);
    CHECK(j.series.all_rational());
    CHECK(j.margin >= 1);
    for (const auto& t : j.series.terms())
        if (t.q == 0)
            CHECK(abs(make_rat(t.y, j.series.denominator())) <= make_rat(3, 2));
}

TEST_CASE("widening from a small window reaches the same series")
{
    GenusModel m = model("x1^5+x2^5+x3^5+x4^5+x5^5");
    GenusOptions narrow;
    narrow.qmax = 1;
    narrow.ywin = Rat(1);
    GenusSeries a = ell_genus_series(m, narrow);
    CHECK(a.widenings >= 1);
    GenusOptions wide;
    wide.qmax = 1;
    CHECK(a.series == ell_genus_series(m, wide).series);
}

TEST_CASE("projection and phase-sum routes agree")
{
    for (auto [text, sl] : std::vector<std::pair<const char*, bool>>{
             {"x1^2+x2^2", false}, {"x1^3+x2^3+x3^3", true}, {"x1^3*x2+x2^4+x3^4+x4^4", false}, {"x1^3*x2+x2^3*x1+x3^4+x4^4", true}}) {
        GenusModel m = model(text, sl);
        GenusOptions a, b;
        a.ywin = b.ywin = Rat(4);
        a.widen = b.widen = false;
        b.route = SumRoute::phase_sum;
        CHECK(ell_genus_series(m, a).series == ell_genus_series(m, b).series);
        for (const auto& n : m.group.elements()) {
            Window w = rectangle(1, -3, 3);
            BiSeries s = sector_supertrace_series(m, n, w, SumRoute::projection);
            CHECK(s == sector_supertrace_series(m, n, w, SumRoute::phase_sum));
            CHECK(s.min_q() >= 0);
        }
    }
}

TEST_CASE("single sector pair: series against theta values")
{
    GenusModel m = model("x1^5+x2^5+x3^5+x4^5+x5^5");
    PhaseVector n = grading_element(m.potential), n1 = PhaseVector::zero(5);
    const cplx z(0.23, 0.04), tau(0.11, 1.31);
    BiSeries s = sector_pair_series(m, n, n1, rectangle(2, -40, 40));
    CHECK(std::abs(s.evaluate(z, tau) - sector_value_numeric(m, n, n1, z, tau)) < 1e-4);
}

TEST_CASE("near poles")
{
    GenusModel m = model("x1^3+x2^3+x3^3");
    PhaseVector zero = PhaseVector::zero(3);
    CHECK_THROWS_AS(sector_value_numeric(m, zero, zero, 0.0, cplx(0, 1)), NearPoleError);
    NumericInfo info;
    cplx v = ell_genus_numeric(model("x1^2+x2^2"), 0.0, cplx(0, 1), &info);
    CHECK(info.retries == 1);
    CHECK(info.z_used == cplx(1e-3, 0));
    CHECK(std::abs(v - 2.0) < 1e-9);
}

TEST_CASE("theta ratios are invariant under integer shifts of the phase")
{
    const cplx z(0.17, 0.03), tau(0.05, 1.2);
    const double c = 0.2, a = 0.4, b = 0.6;
    cplx r0 = theta_value((1 - c) * z - a * tau - b, tau) / theta_value(c * z + a * tau + b, tau);
    cplx r1 = theta_value((1 - c) * z - a * tau - (b + 1), tau) / theta_value(c * z + a * tau + b + 1.0, tau);
    CHECK(std::abs(r0 - r1) < 1e-12 * std::abs(r0));
}

TEST_CASE("transition count of the projection route")
{
    CHECK(projection_transitions(model("x1^5+x2^5+x3^5+x4^5+x5^5", true)) > 0);
}
