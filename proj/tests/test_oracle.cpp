#include "lgell/genus.hpp"
#include "lgell/oracle.hpp"

#include "doctest.h"

using namespace lgell;

namespace {

Charges charges_of(std::vector<Rat> q)
{
    Charges c;
    c.q = std::move(q);
    return c;
}

} // namespace

TEST_CASE("mode table follows the weight assignments")
{
    auto modes = mode_table(charges_of({make_rat(1, 5)}), 1);
    CHECK(modes.size() == 6);
    for (const auto& m : modes) {
        switch (m.family) {
        case ModeFamily::b: CHECK(m.j_weight == make_rat(1, 5)); CHECK(!m.fermionic); break;
        case ModeFamily::a: CHECK(m.j_weight == make_rat(-1, 5)); CHECK(m.level >= 1); break;
        case ModeFamily::phi: CHECK(m.j_weight == make_rat(-4, 5)); CHECK(m.fermionic); break;
        case ModeFamily::psi: CHECK(m.j_weight == make_rat(4, 5)); CHECK(m.fermionic); break;
        }
        CHECK(m.l_weight == m.level);
    }
}

TEST_CASE("free states reproduce the product formula")
{
    for (auto q : std::vector<std::vector<Rat>>{{make_rat(1, 2)}, {make_rat(1, 5)}, {make_rat(1, 4), make_rat(1, 4)}, {make_rat(1, 3), make_rat(1, 3), make_rat(1, 3)}}) {
        Window w = rectangle(2, -3, 3);
        CHECK(free_state_series(charges_of(q), w) == cone_supertrace_series(charges_of(q), w));
    }
    CHECK(free_state_series(charges_of({}), rectangle(2, -1, 1)) == BiSeries::one(1, rectangle(2, -1, 1)));
}

TEST_CASE("single charge 1/5 at level zero")
{
    BiSeries s = free_state_series(charges_of({make_rat(1, 5)}), rectangle(0, 0, make_rat(9, 10)));
    for (int k = 0; k < 4; ++k)
        CHECK(coefficient_at(s, 0, make_rat(k, 5)) == CycNum(1));
    CHECK(coefficient_at(s, 0, make_rat(4, 5)).is_zero());
}

TEST_CASE("state cap")
{
    CHECK_THROWS_AS(free_state_series(charges_of({make_rat(1, 5), make_rat(1, 5)}), rectangle(2, -3, 3), 10), StateCapError);
}

TEST_CASE("zero-mode lattice count equals the untwisted sector at q^0")
{
    for (const char* text : {"x1^2+x2^2", "x1^3+x2^3+x3^3", "x1^5+x2^5+x3^5+x4^5+x5^5", "x1^3*x2+x2^4+x3^4+x4^4"}) {
        Potential p = parse_potential(text);
        for (const auto& g : {grading_subgroup(p), sl_subgroup(p)}) {
            GenusModel m = GenusModel::make(p, g);
            Window w{0, std::nullopt, 5, 0};
            CHECK(zero_level_group_average(p, g, w) == sector_supertrace_series(m, PhaseVector::zero(p.dimension()), w));
        }
    }
    // trivial group: no constraint, so the free q^0 slice
    Potential p = parse_potential("x1^3+x2^3");
    SymmetryGroup trivial = SymmetryGroup::generated_by(2, {});
    Window w{0, std::nullopt, 3, 0};
    CHECK(zero_level_group_average(p, trivial, w) == free_state_series(compute_charges(p), w));
}

TEST_CASE("membership filter")
{
    Potential quintic = parse_potential("x1^5+x2^5+x3^5+x4^5+x5^5");
    BiSeries s = zero_level_group_average(quintic, grading_subgroup(quintic), Window{0, std::nullopt, 2, 0});
    CHECK(coefficient_at(s, 0, make_rat(1, 5)).is_zero());
    CHECK(coefficient_at(s, 0, 1) == CycNum(101));

    Potential x2y2 = parse_potential("x1^2+x2^2");
    BiSeries t = zero_level_group_average(x2y2, grading_subgroup(x2y2), Window{0, std::nullopt, 3, 0});
    // even total occupancy only: y^0 from the vacuum, y^1 from b b, b psi (twice, with sign) and psi psi
    CHECK(coefficient_at(t, 0, 0) == CycNum(1));
    CHECK(coefficient_at(t, 0, make_rat(1, 2)).is_zero());
}

TEST_CASE("Jacobian ring of the Fermat quintic")
{
    Potential quintic = parse_potential("x1^5+x2^5+x3^5+x4^5+x5^5");
    CHECK(jacobian_ring_count(quintic, 5) == 101);
    CHECK(jacobian_ring_count(quintic, 0) == 1);
    CHECK(jacobian_ring_count(quintic, 15) == 1);
    CHECK(jacobian_ring_count(parse_potential("x1^3+x2^3+x3^3"), 3) == 1);
    CHECK_THROWS_AS(jacobian_ring_count(parse_potential("x1^3*x2+x2^4"), 1), ValidationError);
}
