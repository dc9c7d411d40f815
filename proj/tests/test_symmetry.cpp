#include "lgell/symmetry.hpp"

#include "doctest.h"

#include <numeric>
#include <set>

using namespace lgell;

namespace {

const std::vector<const char*> calabi_yau = {"x1^5+x2^5+x3^5+x4^5+x5^5", "x1^3+x2^3+x3^3", "x1^2+x2^2",
                                             "x1^3*x2+x2^4+x3^4+x4^4", "x1^3*x2+x2^3*x1+x3^4+x4^4"};

// Every p on the lattice spanned by the entries of A^{-1} with A p integral.
std::set<std::vector<Rat>> brute_aut(const Potential& p)
{
    const std::size_t d = p.dimension();
    RatMat inv = invert_rational_matrix(p.exponents());
    long l = 1;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            l = std::lcm(l, static_cast<long>(inv(i, j).get_den().get_si()));
    std::set<std::vector<Rat>> out;
    std::vector<long> c(d, 0);
    for (;;) {
        bool ok = true;
        for (std::size_t i = 0; i < d && ok; ++i) {
            Rat row = 0;
            for (std::size_t j = 0; j < d; ++j)
                row += p.exponent(i, j) * make_rat(c[j], l);
            ok = is_integer(row);
        }
        if (ok) {
            std::vector<Rat> v;
            for (auto x : c)
                v.push_back(make_rat(x, l));
            out.insert(v);
        }
        std::size_t k = 0;
        while (k < d && ++c[k] == l)
            c[k++] = 0;
        if (k == d)
            break;
    }
    return out;
}

std::set<std::vector<Rat>> as_set(const SymmetryGroup& g)
{
    std::set<std::vector<Rat>> s;
    for (const auto& e : g.elements())
        s.insert(e.components());
    return s;
}

} // namespace

TEST_CASE("phase vectors are reduced mod 1")
{
    PhaseVector v({make_rat(6, 5), make_rat(-1, 5)});
    CHECK(v[0] == make_rat(1, 5));
    CHECK(v[1] == make_rat(4, 5));
    CHECK((v + v)[1] == make_rat(3, 5));
    CHECK((-v)[0] == make_rat(4, 5));
    CHECK((v * 5).is_zero());
    CHECK(to_string(v) == "1/5,4/5");
    CHECK(parse_phase_vector("1/5,4/5", 2) == v);
    CHECK_THROWS(parse_phase_vector("1/5", 2));
}

TEST_CASE("automorphism groups match lattice enumeration")
{
    for (const char* text : calabi_yau) {
        Potential p = parse_potential(text);
        SymmetryGroup aut = aut_group(p);
        CHECK(as_set(aut) == brute_aut(p));
        CHECK(Int(static_cast<long>(aut.order())) == abs(determinant(p.exponents())));
        Int prod = 1;
        for (const auto& f : aut.invariant_factors())
            prod *= f;
        CHECK(prod == Int(static_cast<long>(aut.order())));

        std::size_t sl = 0;
        for (const auto& e : brute_aut(p))
            sl += is_integer(PhaseVector(e).sum());
        CHECK(sl_subgroup(p).order() == sl);
    }
    CHECK(aut_group(parse_potential("x1^5+x2^5+x3^5+x4^5+x5^5")).invariant_factors() == std::vector<Int>(5, 5));
}

TEST_CASE("grading element and admissibility")
{
    Potential p = parse_potential("x1^3*x2+x2^4+x3^4+x4^4");
    PhaseVector j = grading_element(p);
    CHECK(j == PhaseVector(compute_charges(p).q));
    CHECK(in_aut(p, j));
    CHECK(is_admissible(p, grading_subgroup(p)));
    CHECK(is_admissible(p, sl_subgroup(p)));
    CHECK(!is_admissible(p, aut_group(p)));
    CHECK_THROWS_AS(admissible_subgroups(parse_potential("x1^3*x2+x2^4")), ValidationError);
}

TEST_CASE("admissible groups are exactly the subgroups between <J> and SL")
{
    // subgroups of (Z/5)^3: 1 + 31 + 31 + 1
    CHECK(admissible_subgroups(parse_potential("x1^5+x2^5+x3^5+x4^5+x5^5")).size() == 64);
    // cyclic quotients SL/<J>: one group per divisor of the index
    for (auto [text, index, divisors] : std::vector<std::tuple<const char*, std::size_t, std::size_t>>{
             {"x1^3+x2^3+x3^3", 3, 2}, {"x1^2+x2^2", 1, 1}, {"x1^3*x2+x2^4+x3^4+x4^4", 4, 3},
             {"x1^3*x2+x2^3*x1+x3^4+x4^4", 8, 4}}) {
        Potential p = parse_potential(text);
        SymmetryGroup j = grading_subgroup(p), sl = sl_subgroup(p);
        CHECK(sl.order() == index * j.order());
        // exhibit an element whose image in SL/<J> has full order, so the quotient is cyclic
        bool cyclic = index == 1;
        for (const auto& e : sl.elements()) {
            std::size_t k = 1;
            while (!j.contains(e * static_cast<long>(k)))
                ++k;
            cyclic |= k == index;
        }
        CHECK(cyclic);
        auto groups = admissible_subgroups(p);
        CHECK(groups.size() == divisors);
        for (const auto& g : groups) {
            CHECK(j.is_subgroup_of(g));
            CHECK(g.is_subgroup_of(sl));
        }
    }
}

TEST_CASE("dual groups")
{
    for (const char* text : calabi_yau) {
        Potential p = parse_potential(text);
        Potential t = transpose_potential(p);
        const Int det = abs(determinant(p.exponents()));
        CHECK(dual_group(p, grading_subgroup(p)) == sl_subgroup(t));
        CHECK(dual_group(p, sl_subgroup(p)) == grading_subgroup(t));
        for (const auto& g : admissible_subgroups(p)) {
            SymmetryGroup d = dual_group(p, g);
            CHECK(Int(static_cast<long>(g.order() * d.order())) == det);
            CHECK(dual_group(t, d) == g);
            // pairing definition checked directly
            RatMat a = to_rational(p.exponents());
            for (const auto& x : d.generators())
                for (const auto& y : g.generators()) {
                    Rat s = 0;
                    for (std::size_t i = 0; i < p.dimension(); ++i)
                        for (std::size_t k = 0; k < p.dimension(); ++k)
                            s += x[i] * a(i, k) * y[k];
                    CHECK(is_integer(s));
                }
        }
    }
}

TEST_CASE("generated groups and box representatives")
{
    SymmetryGroup g = SymmetryGroup::generated_by(2, {parse_phase_vector("1/4,1/2", 2)});
    CHECK(g.order() == 4);
    CHECK(g.elements()[0].is_zero());
    CHECK(g.contains(parse_phase_vector("1/2,0", 2)));
    CHECK(g.invariant_factors() == std::vector<Int>{4});
    CHECK(box_representatives(g).size() == 4);
    CHECK(serialize_generators(grading_subgroup(parse_potential("x1^5+x2^5+x3^5+x4^5+x5^5"))) ==
          std::vector<std::string>{"1/5,1/5,1/5,1/5,1/5"});
}
