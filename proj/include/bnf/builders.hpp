#pragma once

#include <unordered_map>
#include <vector>

#include "bnf/frequency.hpp"
#include "bnf/polynomial.hpp"

namespace bnf {

/// One power-series order of the nonlinearity: the Fourier table of F_n
/// (wave) or G_n (Schroedinger). For NLS the monomial u^{n-q} ubar^q is
/// fixed by the conjugate count q; NLW ignores q (all sign patterns).
struct NonlinearityOrder {
    int n = 3;
    int q = 0;
    std::unordered_map<std::uint64_t, Complex> fourier;  // packed b -> hat F_n(b)
};

struct NonlinearitySpec {
    FrequencyKind kind = FrequencyKind::NLW;
    int dim = 1;
    int cutoff = 0;  // |b|_inf range of the tables
    std::vector<NonlinearityOrder> orders;

    const NonlinearityOrder* order(int n) const;
    /// hat F_n(-b) = conj(hat F_n(b)) on every table.
    bool reality_ok() const;
};

/// x-independent monomial nonlinearity c u^n (NLS: c u^{n-q} ubar^q):
/// a single Fourier coefficient at b = 0.
NonlinearitySpec monomial_spec(FrequencyKind kind, int n, Complex c = 1.0,
                               int q = 0, int dim = 1);

/// Analytic banded profile hat F_n(b) = e^{-mu |b|} for |b|_inf <= cutoff,
/// one table per order 3..max_order.
NonlinearitySpec banded_spec(FrequencyKind kind, int max_order, double mu,
                             int cutoff, int dim = 1, int q = 0);

/// P_n = sum_b hat F_n(-b) sum_{M(j)=b} z_j / (sqrt(2)^n sqrt(omega_{a_1} ... omega_{a_n}))
/// over all sign patterns, modes |a|_inf <= mode_cutoff, orders n <= max_order.
/// Orders without a table are skipped with a warning on stderr.
PolynomialFamily build_nlw(const NonlinearitySpec& spec, double mass,
                           int mode_cutoff, int max_order);

/// P_n = sum_b hat G_n(-b) sum_{M(j)=b} z_j restricted to tuples with
/// exactly q conjugated slots (delta = -1); no omega weights.
PolynomialFamily build_nls(const NonlinearitySpec& spec, int mode_cutoff,
                           int max_order);

/// Smallest slope C_N with <|P|>_{0,N}^R <= C_N R on the represented
/// family: max of family_norm(F,0,N,R)/R over R = R' k/grid, k=1..grid.
double estimate_C_N(const PolynomialFamily& F, double N, double R_prime,
                    int grid = 16);

}  // namespace bnf
