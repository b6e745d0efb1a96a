#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bnf/frequency.hpp"

namespace bnf {

struct MeasureReport {
    long long samples = 0;
    double gamma = 0.0;
    double tau = 0.0;
    int r = 0;
    int cutoff = 0;
    double hit_fraction = 0.0;      // cutoff-visible excluded fraction
    double closed_form_bound = 0.0;       // closed-form upper bound
    double ci_halfwidth = 0.0;      // 1.96 sqrt(p(1-p)/n)
    std::map<int, double> per_l;    // hit fraction per tuple length
    std::uint64_t seed = 0;
};

/// Indicator of the excluded mass set for one tuple:
/// |sum delta omega_a(m)| < gamma (j1*/(<M> j2*...jl*))^tau.
/// Throws std::invalid_argument when the tuple is super-action resonant
/// (such tuples are exempt and never enter Theta).
bool resonant_indicator_nlw(double m, const IndexTuple& t, double gamma,
                            double tau);

/// Monte Carlo estimate of |Theta| / |[1,2]| for the NLW family: samples
/// masses uniformly, scans all non-resonant tuples of length 3..r+2 over
/// modes |a| <= cutoff. All gammas share one sample stream, so the
/// reported fractions are exactly monotone in gamma.
std::vector<MeasureReport> estimate_theta_nlw(int r,
                                              const std::vector<double>& gammas,
                                              double tau, int cutoff,
                                              long long samples,
                                              std::uint64_t seed);

/// NLS analogue over random potentials: v_a iid uniform on [-1/2,1/2] for
/// |a|_inf <= cutoff, tuples outside the action-resonant class.
std::vector<MeasureReport> estimate_excluded_nls(
    int r, const std::vector<double>& gammas, double tau, int cutoff, int dim,
    double decay, long long samples, std::uint64_t seed);

/// Empirical measure of {v : |divisor| < threshold} for one fixed tuple.
double per_tuple_excluded_nls(const IndexTuple& t, double gamma, double tau,
                              int dim, double decay, int cutoff,
                              long long samples, std::uint64_t seed);

/// Empirical measure of {m : indicator} for one fixed tuple.
double per_tuple_excluded_nlw(const IndexTuple& t, double gamma, double tau,
                              long long samples, std::uint64_t seed);

/// e^{12(r+2)} gamma^{1/(7(r+2)^2)}
double theta_bound_nlw(int r, double gamma);

/// rho^{r+3} gamma^{m/(m+2d)}
double excluded_bound_nls(int r, double gamma, int dim, double decay);

/// CSV rows "gamma,hit_fraction,ci,bound" with a header line.
std::string measure_csv(const std::vector<MeasureReport>& reports);

}  // namespace bnf
