#include "lgell/potential.hpp"

#include "doctest.h"

using namespace lgell;

TEST_CASE("parsing the text grammar")
{
    Potential p = parse_potential("x1^5 + x2^5+x3^5+x4^5+x5^5");
    CHECK(p.dimension() == 5);
    CHECK(p.exponents() == int_matrix({{5, 0, 0, 0, 0}, {0, 5, 0, 0, 0}, {0, 0, 5, 0, 0}, {0, 0, 0, 5, 0}, {0, 0, 0, 0, 5}}));
    CHECK(parse_potential("x1^2*x2+x2^2*x1").exponents() == int_matrix({{2, 1}, {1, 2}}));
    CHECK(parse_potential("x1^3*x2+x2^4").exponents() == int_matrix({{3, 1}, {0, 4}}));
    CHECK(parse_potential("x1^3*x2+x2^4").to_text() == "x1^3*x2+x2^4");
}

TEST_CASE("parsing the JSON form")
{
    Potential p = parse_potential(R"({"monomials": [[3, 1], [0, 4]]})");
    CHECK(p == parse_potential("x1^3*x2+x2^4"));
}

TEST_CASE("malformed and invalid input")
{
    try {
        parse_potential("x1^3+*x2");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 5);
    }
    CHECK_THROWS_AS(parse_potential("x1^0"), ParseError);
    CHECK_THROWS_AS(parse_potential("x1^2*x2^2+x1*x2"), ValidationError);         // singular exponent matrix
    CHECK_THROWS_AS(parse_potential("x1^2+x3^2"), ValidationError);               // x2 never appears
}

TEST_CASE("atom decomposition")
{
    auto atoms = decompose_atoms(parse_potential("x1^3*x2+x2^4+x3^4+x4^4")).atoms;
    REQUIRE(atoms.size() == 3);
    CHECK(atoms[0].kind == AtomKind::chain);
    CHECK(atoms[0].variables == std::vector<std::size_t>{0, 1});
    CHECK(atoms[0].exponents == std::vector<long>{3, 4});
    CHECK(atoms[1].kind == AtomKind::fermat);

    auto loop = decompose_atoms(parse_potential("x1^3*x2+x2^3*x1+x3^4+x4^4")).atoms;
    REQUIRE(loop.size() == 3);
    CHECK(loop[0].kind == AtomKind::loop);
    CHECK(loop[0].variables == std::vector<std::size_t>{0, 1});

    // a three-chain written out of order
    auto chain = decompose_atoms(parse_potential("x3^5+x2^2*x3+x1^2*x2")).atoms;
    REQUIRE(chain.size() == 1);
    CHECK(chain[0].kind == AtomKind::chain);
    CHECK(chain[0].variables == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("charges solve A q = 1")
{
    for (const char* text : {"x1^5+x2^5+x3^5+x4^5+x5^5", "x1^3*x2+x2^4+x3^4+x4^4", "x1^3*x2+x2^3*x1+x3^4+x4^4",
                             "x1^2*x2+x2^2*x1", "x1^3*x2+x2^4"}) {
        Potential p = parse_potential(text);
        Charges c = compute_charges(p);
        Rat sum = 0;
        for (std::size_t i = 0; i < p.dimension(); ++i) {
            Rat row = 0;
            for (std::size_t j = 0; j < p.dimension(); ++j)
                row += p.exponent(i, j) * c.q[j];
            CHECK(row == 1);
            sum += c.q[i];
        }
        CHECK(c.cbar == static_cast<long>(p.dimension()) - 2 * sum);
        CHECK(c.cy_degree.has_value() == (is_integer(sum) && sum > 0));
    }
    Charges quintic = compute_charges(parse_potential("x1^5+x2^5+x3^5+x4^5+x5^5"));
    CHECK(quintic.cbar == 3);
    CHECK(*quintic.cy_degree == 1);
    CHECK(!compute_charges(parse_potential("x1^3*x2+x2^4")).cy_degree);
}

TEST_CASE("transpose swaps the exponent matrix")
{
    Potential p = parse_potential("x1^3*x2+x2^4+x3^4+x4^4");
    Potential t = transpose_potential(p);
    CHECK(t.exponents() == p.exponents().transposed());
    CHECK(transpose_potential(t) == p);
}
