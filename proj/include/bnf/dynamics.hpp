#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "bnf/normal_form.hpp"
#include "bnf/polynomial.hpp"

namespace bnf {

/// Strided snapshots of the truncated flow with observables recomputed
/// exactly at the stored points.
struct Trajectory {
    std::vector<double> times;
    std::vector<StateVector> states;
    std::vector<double> norms;     // ||z||_s at the observation index s
    std::vector<double> energies;  // H0 + Re P
    std::vector<std::map<long long, double>> super_action_tables;
    std::vector<std::unordered_map<std::uint64_t, double>> action_tables;
    double s_obs = 0.0;
    bool blow_up = false;  // guard radius exceeded, run stopped early
};

struct IntegrateOptions {
    double s_obs = 0.0;       // Sobolev index for the recorded norm
    int stride = 64;          // snapshot every this many steps
    double guard_radius = 0;  // 0: no guard; else stop once ||z||_s exceeds it
};

/// H(z) = sum_a omega_a |xi_a|^2 + Re P(z).
double energy(const FrequencyModel& H0, const PolynomialFamily& P,
              const StateVector& z);

/// Strang splitting for z_a' = -i dH/dzbar_a: exact rotation
/// e^{-i omega_a dt/2}, one RK4 step of X_P, rotation again. T may be
/// negative (time reversal).
Trajectory integrate(const FrequencyModel& H0, const PolynomialFamily& P,
                     const StateVector& z0, double T, double dt,
                     const IntegrateOptions& opts = {});

struct StabilityReport {
    double epsilon = 0.0;        // ||z(0)||_s
    double max_norm_ratio = 0.0; // max_t ||z(t)||_s / epsilon
    double max_j_drift = 0.0;    // max_{t,a} <a>^{2s} |J_a(t) - J_a(0)|
    double max_i_drift = 0.0;    // per-mode action version
    double j_drift_scaled = 0.0; // max_j_drift / epsilon^{3-nu}
    bool norm_ok = false;        // max_norm_ratio <= 2
    bool drift_ok = false;       // j_drift_scaled <= c2
};

StabilityReport stability_report(const Trajectory& traj, double s, double nu,
                                 double c2);

struct DriftReport {
    double epsilon = 0.0;
    double norm_drift = 0.0;  // max_t | ||z'(t)||_s - ||z'(0)||_s |
    double j_drift = 0.0;     // max_t <a>^{2s} |J_a(t) - J_a(0)| along z'
    double remainder_norm = 0.0;  // <|R|>_{0,N} at the initial radius
    bool within_ball = true;      // stayed inside 2 epsilon
};

/// Transforms z0 by phi^{-1}, integrates it under the normal-form
/// Hamiltonian H0 + Z + R, and reports the norm drift the remainder
/// induces.
DriftReport verify_transformed_drift(const FrequencyModel& H0,
                                     const NormalFormOutcome& outcome,
                                     const StateVector& z0, double T, double dt,
                                     double s_obs, double N);

/// CSV rows "t,norm,energy,max_weighted_j_drift".
std::string trajectory_csv(const Trajectory& traj, double s);

}  // namespace bnf
