#include <doctest.h>

#include <cmath>

#include "bnf/polynomial.hpp"

using namespace bnf;

namespace {
const Complex I{0.0, 1.0};
}

TEST_CASE("add_term canonicalizes and merges") {
    HomogeneousPolynomial p(2, 1);
    p.add_term(IndexTuple{{-1, mode1(1)}, {1, mode1(2)}}, 2.0);
    p.add_term(IndexTuple{{1, mode1(2)}, {-1, mode1(1)}}, 3.0);
    CHECK(p.term_count() == 1);
    CHECK(p.orbit_coefficient(IndexTuple{{1, mode1(2)}, {-1, mode1(1)}}) ==
          Complex{5.0, 0.0});
    // symmetric coefficient divides by the orbit size (2 here)
    CHECK(p.symmetric_coefficient(IndexTuple{{-1, mode1(1)}, {1, mode1(2)}}) ==
          Complex{2.5, 0.0});
}

TEST_CASE("exact zero coefficients are dropped") {
    HomogeneousPolynomial p(2, 1);
    p.add_term(IndexTuple{{1, mode1(0)}, {1, mode1(0)}}, 1.0);
    p.add_term(IndexTuple{{1, mode1(0)}, {1, mode1(0)}}, -1.0);
    CHECK(p.empty());
}

TEST_CASE("sn_norm hand value: z_(+,2) z_(-,1) z_(-,1) at s=1, N=1") {
    // orbit coefficient 1, orbit size 3 -> f~ = 1/3; momentum 0;
    // ratio j1*/(j2* j3*) = 3/4; norm = (3/4)^1 * 1/3 = 1/4
    HomogeneousPolynomial p(3, 1);
    p.add_term(IndexTuple{{1, mode1(2)}, {-1, mode1(1)}, {-1, mode1(1)}}, 1.0);
    CHECK(sn_norm(p, 1.0, 1.0) == doctest::Approx(0.25));
}

TEST_CASE("sn_norm weights momentum classes by <b>^{N-s}") {
    HomogeneousPolynomial p(2, 1);
    // momentum 3, single-slot weights <2>=3, <1>=2 -> ratio 3/2, orbit 2
    p.add_term(IndexTuple{{1, mode1(2)}, {1, mode1(1)}}, 1.0);
    // N=3, s=1: <3>^2 * (3/2) * 1/2 = 16 * 0.75 = 12
    CHECK(sn_norm(p, 1.0, 3.0) == doctest::Approx(12.0));
    CHECK_THROWS_AS(sn_norm(p, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("poisson bracket oracle: {xi_0^2, xibar_0^2} = -4i xi_0 xibar_0") {
    HomogeneousPolynomial f(2, 1), g(2, 1);
    f.add_term(IndexTuple{{1, mode1(0)}, {1, mode1(0)}}, 1.0);
    g.add_term(IndexTuple{{-1, mode1(0)}, {-1, mode1(0)}}, 1.0);
    HomogeneousPolynomial h = poisson_bracket(f, g);
    REQUIRE(h.order() == 2);
    CHECK(h.orbit_coefficient(IndexTuple{{1, mode1(0)}, {-1, mode1(0)}}) ==
          Complex{0.0, -4.0});
}

TEST_CASE("poisson bracket is antisymmetric") {
    HomogeneousPolynomial f(3, 1), g(3, 1);
    f.add_term(IndexTuple{{1, mode1(1)}, {1, mode1(0)}, {-1, mode1(1)}},
               Complex{0.3, 0.1});
    f.add_term(IndexTuple{{1, mode1(2)}, {-1, mode1(1)}, {-1, mode1(1)}}, 0.7);
    g.add_term(IndexTuple{{1, mode1(1)}, {-1, mode1(0)}, {-1, mode1(2)}},
               Complex{-0.2, 0.5});
    HomogeneousPolynomial fg = poisson_bracket(f, g);
    HomogeneousPolynomial gf = poisson_bracket(g, f);
    gf *= Complex{-1.0, 0.0};
    for (const auto& [t, c] : fg.terms())
        CHECK(std::abs(c - gf.orbit_coefficient(t)) <= 1e-14 * std::abs(c));
    CHECK(fg.term_count() == gf.term_count());
}

TEST_CASE("evaluate matches a hand expansion") {
    StateVector z(1, 2);
    z.at(mode1(0)) = Complex{0.5, 0.25};
    z.at(mode1(1)) = Complex{-0.3, 0.4};
    HomogeneousPolynomial p(3, 1);
    // xi_0^2 xibar_1, as-written coefficient 2 with orbit size 3
    p.add_term(IndexTuple{{1, mode1(0)}, {1, mode1(0)}, {-1, mode1(1)}}, 2.0);
    Complex expect = 2.0 * z.at(mode1(0)) * z.at(mode1(0)) *
                     std::conj(z.at(mode1(1)));
    CHECK(std::abs(evaluate(p, z) - expect) < 1e-15);
}

TEST_CASE("vector_field matches finite differences") {
    StateVector z(1, 2);
    z.at(mode1(0)) = Complex{0.4, -0.2};
    z.at(mode1(1)) = Complex{0.1, 0.3};
    z.at(mode1(-1)) = Complex{-0.2, 0.1};
    HomogeneousPolynomial p(3, 1);
    p.add_term(IndexTuple{{1, mode1(1)}, {1, mode1(-1)}, {-1, mode1(0)}},
               Complex{0.8, -0.3});
    p.add_term(IndexTuple{{1, mode1(0)}, {1, mode1(0)}, {-1, mode1(0)}}, 0.5);
    TangentVector v = vector_field(p, z);

    // independent slot-by-slot expansion: dxi_0 = -i dP/dxibar_0
    Complex xi1 = z.at(mode1(1)), xim1 = z.at(mode1(-1)), xi0 = z.at(mode1(0));
    Complex dP_dxibar0 = Complex{0.8, -0.3} * xi1 * xim1 + 0.5 * xi0 * xi0;
    CHECK(std::abs(v.dxi.at(pack_mode(mode1(0))) - (-I) * dP_dxibar0) < 1e-14);
    // dxibar_1 = +i dP/dxi_1
    Complex dP_dxi1 = Complex{0.8, -0.3} * xim1 * std::conj(xi0);
    CHECK(std::abs(v.dxibar.at(pack_mode(mode1(1))) - I * dP_dxi1) < 1e-14);
}

TEST_CASE("reality check") {
    HomogeneousPolynomial p(2, 1);
    p.add_term(IndexTuple{{1, mode1(1)}, {1, mode1(0)}}, Complex{0.2, 0.5});
    p.add_term(IndexTuple{{-1, mode1(1)}, {-1, mode1(0)}}, Complex{0.2, -0.5});
    CHECK(reality_check(p));
    p.add_term(IndexTuple{{1, mode1(2)}, {-1, mode1(2)}}, Complex{0.0, 1.0});
    CHECK_FALSE(reality_check(p));
}

TEST_CASE("family norm sums |f_{i+2}| R^i") {
    HomogeneousPolynomial p3(3, 1), p4(4, 1);
    p3.add_term(IndexTuple{{1, mode1(0)}, {1, mode1(0)}, {-1, mode1(0)}}, 1.0);
    p4.add_term(
        IndexTuple{{1, mode1(0)}, {1, mode1(0)}, {-1, mode1(0)}, {-1, mode1(0)}},
        2.0);
    PolynomialFamily F;
    F.add_part(p3);
    F.add_part(p4);
    double n3 = sn_norm(p3, 0.0, 2.0), n4 = sn_norm(p4, 0.0, 2.0);
    CHECK(family_norm(F, 0.0, 2.0, 0.5) ==
          doctest::Approx(n3 * 0.5 + n4 * 0.25));
}

TEST_CASE("sobolev norm uses the doubled convention") {
    StateVector z(1, 1);
    z.at(mode1(0)) = 1.0;
    CHECK(z.sobolev_norm(0.0) == doctest::Approx(std::sqrt(2.0)));
    CHECK(z.sobolev_norm(3.0) == doctest::Approx(std::sqrt(2.0)));
    z.at(mode1(1)) = Complex{0.0, 2.0};
    // s=1: 2*(1 + <1>^2*4) = 34
    CHECK(z.sobolev_norm(1.0) == doctest::Approx(std::sqrt(34.0)));
}

TEST_CASE("super-actions key by modulus class") {
    StateVector z(1, 1);
    z.at(mode1(1)) = 1.0;
    z.at(mode1(-1)) = Complex{0.0, 2.0};
    auto J = super_actions(z);
    CHECK(J.at(1) == doctest::Approx(5.0));
    auto Ia = actions(z);
    CHECK(Ia.at(pack_mode(mode1(1))) == doctest::Approx(1.0));
    CHECK(Ia.at(pack_mode(mode1(-1))) == doctest::Approx(4.0));
}

TEST_CASE("symmetrize merges permutation-equivalent raw monomials") {
    std::vector<std::pair<IndexTuple, Complex>> raw = {
        {IndexTuple{{1, mode1(1)}, {-1, mode1(0)}}, 1.0},
        {IndexTuple{{-1, mode1(0)}, {1, mode1(1)}}, 1.0},
    };
    HomogeneousPolynomial p = symmetrize(raw, 1);
    CHECK(p.term_count() == 1);
    CHECK(p.orbit_coefficient(IndexTuple{{1, mode1(1)}, {-1, mode1(0)}}) ==
          Complex{2.0, 0.0});
}
