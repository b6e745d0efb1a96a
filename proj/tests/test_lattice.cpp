#include <doctest.h>

#include "bnf/lattice.hpp"

using namespace bnf;

TEST_CASE("canonical order: plus deltas first, then lexicographic") {
    IndexTuple t{{-1, mode1(2)}, {1, mode1(5)}, {1, mode1(-3)}};
    IndexTuple c = t.canonical();
    CHECK(c.entries[0] == LatticeIndex{1, mode1(-3)});
    CHECK(c.entries[1] == LatticeIndex{1, mode1(5)});
    CHECK(c.entries[2] == LatticeIndex{-1, mode1(2)});
}

TEST_CASE("momentum is the signed mode sum") {
    IndexTuple t{{1, mode1(3)}, {-1, mode1(1)}, {-1, mode1(1)}};
    CHECK(momentum(t) == mode1(1));
    IndexTuple t2{{1, mode2(1, 2)}, {-1, mode2(1, -2)}};
    CHECK(momentum(t2) == mode2(0, 4));
}

TEST_CASE("weights and rearrangement") {
    IndexTuple t{{1, mode1(2)}, {-1, mode1(1)}, {-1, mode1(1)}};
    auto w = decreasing_rearrangement(t);
    REQUIRE(w.size() == 3);
    CHECK(w[0] == doctest::Approx(3.0));
    CHECK(w[1] == doctest::Approx(2.0));
    CHECK(w[2] == doctest::Approx(2.0));
    CHECK(weight(mode2(3, 4)) == doctest::Approx(6.0));
    CHECK(norm_sq(mode2(3, 4)) == 25);
}

TEST_CASE("super-action resonance balances signs per modulus class") {
    // (+1) and (-(-1)) cancel within |a|^2 = 1
    CHECK(is_super_action_resonant(
        IndexTuple{{1, mode1(1)}, {-1, mode1(-1)}}));
    CHECK(is_super_action_resonant(IndexTuple{{1, mode1(1)}, {-1, mode1(1)}}));
    CHECK_FALSE(is_super_action_resonant(
        IndexTuple{{1, mode1(1)}, {1, mode1(-1)}}));
    // odd length can never balance
    CHECK_FALSE(is_super_action_resonant(
        IndexTuple{{1, mode1(1)}, {-1, mode1(1)}, {1, mode1(0)}}));
    // different moduli do not cancel each other
    CHECK_FALSE(is_super_action_resonant(
        IndexTuple{{1, mode1(1)}, {-1, mode1(2)}}));
}

TEST_CASE("action resonance requires exact mode match") {
    CHECK(is_action_resonant(IndexTuple{{1, mode1(1)}, {-1, mode1(1)}}));
    CHECK_FALSE(is_action_resonant(IndexTuple{{1, mode1(1)}, {-1, mode1(-1)}}));
    CHECK(is_action_resonant(IndexTuple{
        {1, mode2(1, 2)}, {1, mode2(0, 0)}, {-1, mode2(1, 2)}, {-1, mode2(0, 0)}}));
}

TEST_CASE("rearrangement bound holds on assorted tuples") {
    CHECK(check_rearrangement_bound(
        IndexTuple{{1, mode1(9)}, {-1, mode1(5)}, {-1, mode1(4)}}));
    CHECK(check_rearrangement_bound(
        IndexTuple{{1, mode2(7, -3)}, {1, mode2(-7, 3)}, {-1, mode2(0, 0)}}));
    CHECK(check_rearrangement_bound(IndexTuple{{1, mode1(100)}, {-1, mode1(100)}}));
}

TEST_CASE("conjugation flips every delta") {
    IndexTuple t{{1, mode1(2)}, {-1, mode1(3)}};
    IndexTuple c = conjugate(t);
    CHECK(c.entries[0] == LatticeIndex{-1, mode1(2)});
    CHECK(c.entries[1] == LatticeIndex{1, mode1(3)});
}

TEST_CASE("orbit size counts distinct permutations") {
    CHECK(orbit_size(IndexTuple{{1, mode1(0)}, {1, mode1(0)}, {1, mode1(0)}}) ==
          doctest::Approx(1.0));
    CHECK(orbit_size(IndexTuple{{1, mode1(2)}, {-1, mode1(1)}, {-1, mode1(1)}}) ==
          doctest::Approx(3.0));
    CHECK(orbit_size(IndexTuple{{1, mode1(1)}, {1, mode1(2)}, {-1, mode1(3)}}) ==
          doctest::Approx(6.0));
}
