#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "bnf/measure.hpp"

using namespace bnf;

TEST_CASE("indicator oracle: m=1 divisor 1.83 clears the 0.033 bound") {
    IndexTuple t{{1, mode1(1)}, {1, mode1(1)}, {-1, mode1(0)}};
    CHECK_FALSE(resonant_indicator_nlw(1.0, t, 0.1, 1.0));
    CHECK_FALSE(resonant_indicator_nlw(1.0, t, 0.0, 1.0));  // gamma 0: never
    CHECK(resonant_indicator_nlw(1.0, t, 1e3, 1.0));        // huge gamma: always
    IndexTuple res{{1, mode1(1)}, {-1, mode1(1)}, {1, mode1(0)}, {-1, mode1(0)}};
    CHECK_THROWS_AS(resonant_indicator_nlw(1.0, res, 0.1, 1.0),
                    std::invalid_argument);
}

TEST_CASE("NLW sweep: zero at gamma 0, monotone under coupling") {
    std::vector<double> gammas{0.0, 1e-8, 1e-4, 1e-2, 1.0};
    auto reports = estimate_theta_nlw(1, gammas, 10.0, 4, 300, 1234);
    REQUIRE(reports.size() == gammas.size());
    CHECK(reports[0].hit_fraction == 0.0);
    for (std::size_t k = 1; k < reports.size(); ++k)
        CHECK(reports[k - 1].hit_fraction <= reports[k].hit_fraction);
    for (const auto& r : reports) {
        CHECK(r.hit_fraction >= 0.0);
        CHECK(r.hit_fraction <= 1.0);
        CHECK(r.samples == 300);
        CHECK(r.seed == 1234);
    }
}

TEST_CASE("same seed reproduces the sweep exactly") {
    std::vector<double> gammas{1e-6, 1e-3};
    auto a = estimate_theta_nlw(1, gammas, 10.0, 3, 200, 99);
    auto b = estimate_theta_nlw(1, gammas, 10.0, 3, 200, 99);
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].hit_fraction == b[k].hit_fraction);
        CHECK(a[k].per_l == b[k].per_l);
    }
}

TEST_CASE("per-l breakdown never exceeds the total") {
    auto reports = estimate_theta_nlw(2, {1e-3}, 5.0, 3, 200, 7);
    for (const auto& [l, frac] : reports[0].per_l) {
        CHECK(l >= 3);
        CHECK(l <= 4);
        CHECK(frac <= reports[0].hit_fraction + 1e-15);
    }
}

TEST_CASE("confidence halfwidth shrinks like 1/sqrt(n)") {
    auto small = estimate_theta_nlw(1, {1e-1}, 5.0, 3, 100, 5);
    auto big = estimate_theta_nlw(1, {1e-1}, 5.0, 3, 1600, 5);
    if (small[0].hit_fraction > 0.0 && big[0].hit_fraction > 0.0)
        CHECK(big[0].ci_halfwidth < small[0].ci_halfwidth);
}

TEST_CASE("closed-form bounds") {
    CHECK(theta_bound_nlw(1, 1e-7) ==
          doctest::Approx(std::exp(36.0) * std::pow(1e-7, 1.0 / 63.0)));
    CHECK(excluded_bound_nls(1, 1e-7, 2, 2.0) ==
          doctest::Approx(std::pow(576.0, 4.0) * std::pow(1e-7, 2.0 / 6.0)));
}

TEST_CASE("NLS sweep basics") {
    std::vector<double> gammas{0.0, 1e-4, 1e-1};
    auto reports = estimate_excluded_nls(1, gammas, 5.0, 2, 2, 2.0, 100, 77);
    CHECK(reports[0].hit_fraction == 0.0);
    CHECK(reports[1].hit_fraction <= reports[2].hit_fraction);
}

TEST_CASE("per-tuple NLS measure obeys the 2 (j_l*)^m threshold bound") {
    // a single tuple at d=2: the excluded v-set is a slab of width
    // 2 (j_l*)^m threshold in the dominant v coordinate
    IndexTuple t{{1, mode2(1, 0)}, {1, mode2(1, 1)}, {-1, mode2(0, 0)}};
    const double gamma = 0.05, tau = 3.0, decay = 2.0;
    double frac = per_tuple_excluded_nls(t, gamma, tau, 2, decay, 2, 4000, 31);
    auto w = decreasing_rearrangement(t);
    double jl = w.back();
    double bound = 2.0 * std::pow(jl, decay) * threshold(t, gamma, tau);
    CHECK(frac <= bound + 0.02);  // one-sided, plus Monte Carlo slack
}

TEST_CASE("per-tuple NLW measure respects the gamma^{1/l} envelope") {
    IndexTuple t{{1, mode1(2)}, {1, mode1(1)}, {-1, mode1(0)}};
    const double gamma = 1e-4, tau = 30.0;
    double frac = per_tuple_excluded_nlw(t, gamma, tau, 4000, 17);
    auto w = decreasing_rearrangement(t);
    const int l = 3;
    double bound = std::pow(2.0, 3 * l + 6) * std::pow(l, 9.0) *
                   std::pow(w[1], 4.0) *
                   std::pow(w[2], 3.0 * l + 2.0 - tau / (3.0 * l)) *
                   std::pow(gamma, 1.0 / l);
    CHECK(frac <= bound + 0.02);
}
