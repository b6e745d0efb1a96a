#include <doctest.h>

#include <cmath>

#include "bnf/frequency.hpp"
#include "bnf/polynomial.hpp"

using namespace bnf;

TEST_CASE("NLW frequencies: omega_a = sqrt(a^2 + m)") {
    auto m = FrequencyModel::nlw(1.5);
    CHECK(m.frequency(mode1(0)) == doctest::Approx(std::sqrt(1.5)));
    CHECK(m.frequency(mode1(3)) == doctest::Approx(std::sqrt(10.5)));
    CHECK(m.frequency(mode1(-3)) == m.frequency(mode1(3)));
    CHECK_THROWS_AS(FrequencyModel::nlw(0.5), std::invalid_argument);
    CHECK_THROWS_AS(FrequencyModel::nlw(2.5), std::invalid_argument);
}

TEST_CASE("NLS frequencies: |a|^2 + v_a/<a>^m") {
    std::unordered_map<std::uint64_t, double> v;
    v[pack_mode(mode2(0, 0))] = 0.25;
    v[pack_mode(mode2(1, 1))] = -0.5;
    auto m = FrequencyModel::nls(2, 2.0, v, 1);
    CHECK(m.frequency(mode2(0, 0)) == doctest::Approx(0.25));
    double w11 = 1.0 + std::sqrt(2.0);
    CHECK(m.frequency(mode2(1, 1)) == doctest::Approx(2.0 - 0.5 / (w11 * w11)));
    CHECK_THROWS_AS(m.frequency(mode2(3, 3)), std::out_of_range);
    v[pack_mode(mode2(0, 0))] = 0.75;  // outside [-1/2, 1/2]
    CHECK_THROWS_AS(FrequencyModel::nls(2, 2.0, v, 1), std::invalid_argument);
}

TEST_CASE("small divisor oracle: 2 sqrt(2) - 1 at m=1") {
    auto m = FrequencyModel::nlw(1.0);
    IndexTuple t{{1, mode1(1)}, {1, mode1(1)}, {-1, mode1(0)}};
    CHECK(m.small_divisor(t) ==
          doctest::Approx(2.0 * std::sqrt(2.0) - 1.0));
}

TEST_CASE("threshold formula") {
    IndexTuple t{{1, mode1(2)}, {-1, mode1(1)}, {-1, mode1(1)}};
    // momentum 0, ratio = 3/(1*2*2) = 0.75
    CHECK(threshold(t, 0.1, 1.0) == doctest::Approx(0.075));
    CHECK(threshold(t, 0.1, 2.0) == doctest::Approx(0.05625));
    CHECK(threshold(t, 0.1, 0.0) == doctest::Approx(0.1));  // tau=0 shortcut
}

TEST_CASE("for_each_tuple enumerates signed multisets once") {
    int count = 0;
    for_each_tuple(1, 1, 3, [&](const IndexTuple& t) {
        ++count;
        CHECK(t.size() == 3);
        CHECK(t.canonical() == t);
    });
    // alphabet 6 (3 modes x 2 signs), multisets C(6+3-1, 3) = 56
    CHECK(count == 56);
}

TEST_CASE("non-resonance scan flags small divisors") {
    auto m = FrequencyModel::nlw(1.0);
    // gamma large enough to catch 2 sqrt(2) - 1 ~ 1.83 at tau=0
    auto v = check_nonresonant_up_to_order(m, 3, 2.0, 0.0, 1,
                                           ResonanceClass::SuperAction);
    CHECK(!v.empty());
    // tiny gamma: nothing flagged
    auto v2 = check_nonresonant_up_to_order(m, 3, 1e-8, 0.0, 1,
                                            ResonanceClass::SuperAction);
    CHECK(v2.empty());
    for (const auto& viol : v) CHECK(viol.divisor < viol.bound);
}

TEST_CASE("resonant classes are exempt from the scan") {
    // an action-resonant pair has divisor exactly 0 yet is never reported
    auto m = FrequencyModel::nlw(1.3);
    auto v = check_nonresonant_up_to_order(m, 4, 1e-12, 0.0, 2,
                                           ResonanceClass::SuperAction);
    for (const auto& viol : v)
        CHECK_FALSE(is_super_action_resonant(viol.tuple));
}

TEST_CASE("NLW gap bounds hold across the mass range") {
    CHECK(check_nlw_gap_bounds(1.0));
    CHECK(check_nlw_gap_bounds(1.5));
    CHECK(check_nlw_gap_bounds(2.0));
}
