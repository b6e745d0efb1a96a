#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bnf/frequency.hpp"
#include "bnf/polynomial.hpp"

namespace bnf {

/// rho = 2^{d+4} 3^d
double rho_constant(int dim);

struct NormalFormConfig {
    int r = 1;              // iteration steps
    double gamma = 1e-3;
    double tau = 0.0;
    double s0 = 0.0;
    double N = 2.0;
    double R_prime = 1.0;
    double C_N = 1.0;
    bool c_n_estimated = false;
    int order_cap = 0;      // 0: default r + 4
    int dim = 1;
    int cutoff = 8;
    bool certificate = true;
    std::optional<double> R_report;  // evaluation radius, default R_*/2

    void validate() const;  // throws std::invalid_argument
    int effective_order_cap() const { return order_cap > 0 ? order_cap : r + 4; }
};

/// R_* = min(R'/2, gamma / (10 rho r^4 C_N))
double r_star(const NormalFormConfig& cfg);

/// Homological split of a homogeneous polynomial f against H_0:
/// per canonical tuple, with D = sum_k delta_k omega_{a_k},
///   |D| >= threshold  ->  chi_T = f_T / (-i D),  Z_T = 0
///   otherwise         ->  chi_T = 0,             Z_T = f_T.
/// A divisor of exactly zero always goes to Z. The reconstruction
/// identity {chi, H_0} + Z = f holds coefficientwise with the bracket
/// of poisson_bracket (see h0_bracket).
struct HomologicalSplit {
    HomogeneousPolynomial chi;
    HomogeneousPolynomial normal;
};

HomologicalSplit solve_homological(const HomogeneousPolynomial& f,
                                   const FrequencyModel& freq,
                                   double gamma, double tau);

/// {f, H_0} computed coefficientwise: each monomial picks up the factor
/// -i (delta_1 omega_{a_1} + ... + delta_l omega_{a_l}).
HomogeneousPolynomial h0_bracket(const HomogeneousPolynomial& f,
                                 const FrequencyModel& freq);

/// Pullback f o Phi^1_chi = sum_k (1/k!) ad^k f truncated at order_cap,
/// with ad g = {g, chi}. Exact for all retained orders; tail_dropped is
/// set when a nonzero term past the cap was discarded.
PolynomialFamily lie_transform(const PolynomialFamily& F,
                               const HomogeneousPolynomial& chi,
                               int order_cap);

struct CertificateRow {
    int l = 0;
    double chi_norm = 0.0;          // |chi_l|_{s0+l tau, N}
    double disp_lhs = 0.0, disp_rhs = 0.0;  // flow-displacement bound chain
    double z_lhs = 0.0, z_rhs = 0.0;        // <|Z^(l)|> at R_l vs l C_N R_l
    double rem_lhs = 0.0, rem_rhs = 0.0;    // <|R^(l)|> at R_l vs C_N R_l (R_l/R_*l)^l
    bool ok = false;
};

struct Certificate {
    std::vector<CertificateRow> rows;
    double R = 0.0, R_star = 0.0;
    double disp_total_lhs = 0.0, disp_total_rhs = 0.0;  // total displacement bound
    double z_total_lhs = 0.0, z_total_rhs = 0.0;        // normal-part bound at R
    double rem_total_lhs = 0.0, rem_total_rhs = 0.0;    // remainder bound at R
    bool c_n_estimated = false;
    bool all_ok = false;
};

struct NormalFormOutcome {
    std::vector<HomogeneousPolynomial> generators;  // chi_1 .. chi_r
    PolynomialFamily normal;     // Z, orders 3..r+2
    PolynomialFamily remainder;  // R, orders r+3..order_cap
    Certificate certificate;
};

/// Mutable per-step state of the iteration.
struct NormalFormState {
    int step = 0;  // l completed so far
    PolynomialFamily normal;
    PolynomialFamily remainder;
    std::vector<HomogeneousPolynomial> generators;
};

/// One iteration of the normal-form recursion: extracts the order-(l+2)
/// remainder part, solves the homological equation, pushes everything
/// through the Lie transform, and re-grades. Appends a certificate row.
void normal_form_step(NormalFormState& state, int l, const FrequencyModel& freq,
                      const NormalFormConfig& cfg, Certificate& cert);

NormalFormOutcome birkhoff_normal_form(const PolynomialFamily& P,
                                       const FrequencyModel& freq,
                                       const NormalFormConfig& cfg);

enum class TransformDirection { Forward, Inverse };

/// phi (Forward) or phi^{-1} (Inverse) applied by integrating each
/// generator's Hamiltonian flow for time +-1 with fixed-step RK4.
StateVector transform_state(const StateVector& z,
                            const std::vector<HomogeneousPolynomial>& generators,
                            TransformDirection dir, int steps_per_unit = 32);

enum class PlannerMode { NLW, NLS, NLSXFree };

struct PlannerSchedule {
    bool feasible = false;
    double min_epsilon = 0.0;  // largest epsilon with r >= 1 (when infeasible)
    int r = 0;
    double gamma = 0.0;
    double tau = 0.0;
    double s = 0.0;
    double horizon = 0.0;
    // natural logs, exact even when gamma / horizon / min_epsilon leave the
    // double range
    double log_gamma = 0.0;
    double log_horizon = 0.0;
    double log_min_epsilon = 0.0;
    std::string description;
};

/// Closed-form parameter schedules for sub-exponential stability horizons.
/// NLW uses lambda in (0, 1/4); NLS modes use (d, decay) to fix tau.
PlannerSchedule parameter_planner(double epsilon, PlannerMode mode,
                                  double lambda = 0.2, int dim = 2,
                                  double decay = 2.0);

}  // namespace bnf
