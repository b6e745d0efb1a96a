#include "bnf/dynamics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bnf {

namespace {

void rotate(StateVector& z, const FrequencyModel& H0, double dt) {
    z.for_each_mode([&](const ModeVector& a) {
        z.at(a) *= std::exp(Complex{0.0, -H0.frequency(a) * dt});
    });
}

void rk4_substep(StateVector& z, const PolynomialFamily& P, double h) {
    if (P.empty()) return;
    auto deriv = [&](const StateVector& s) { return vector_field(P, s).dxi; };
    auto apply = [&](const std::unordered_map<std::uint64_t, Complex>& k,
                     double frac) {
        StateVector r = z;
        for (const auto& [key, v] : k) r.at(unpack_mode(key)) += frac * h * v;
        return r;
    };
    auto k1 = deriv(z);
    auto k2 = deriv(apply(k1, 0.5));
    auto k3 = deriv(apply(k2, 0.5));
    auto k4 = deriv(apply(k3, 1.0));
    auto add = [&](const std::unordered_map<std::uint64_t, Complex>& k,
                   double wgt) {
        for (const auto& [key, v] : k) z.at(unpack_mode(key)) += wgt * h * v;
    };
    add(k1, 1.0 / 6.0);
    add(k2, 1.0 / 3.0);
    add(k3, 1.0 / 3.0);
    add(k4, 1.0 / 6.0);
}

void snapshot(Trajectory& traj, double t, const StateVector& z,
              const FrequencyModel& H0, const PolynomialFamily& P, double s) {
    traj.times.push_back(t);
    traj.states.push_back(z);
    traj.norms.push_back(z.sobolev_norm(s));
    traj.energies.push_back(energy(H0, P, z));
    traj.super_action_tables.push_back(super_actions(z));
    traj.action_tables.push_back(actions(z));
}

}  // namespace

double energy(const FrequencyModel& H0, const PolynomialFamily& P,
              const StateVector& z) {
    double e = 0.0;
    z.for_each_mode([&](const ModeVector& a) {
        e += H0.frequency(a) * std::norm(z.at(a));
    });
    if (!P.empty()) e += evaluate(P, z).real();
    return e;
}

Trajectory integrate(const FrequencyModel& H0, const PolynomialFamily& P,
                     const StateVector& z0, double T, double dt,
                     const IntegrateOptions& opts) {
    if (dt <= 0.0) throw std::invalid_argument("integrate: dt > 0 required");
    Trajectory traj;
    traj.s_obs = opts.s_obs;
    const double dir = T < 0.0 ? -1.0 : 1.0;
    const double h = dir * dt;
    const long long steps =
        static_cast<long long>(std::ceil(std::abs(T) / dt - 1e-12));

    StateVector z = z0;
    snapshot(traj, 0.0, z, H0, P, opts.s_obs);
    double t = 0.0;
    for (long long k = 0; k < steps; ++k) {
        double step = h;
        if (std::abs(t + step) > std::abs(T)) step = T - t;  // final partial step
        rotate(z, H0, step / 2.0);
        rk4_substep(z, P, step);
        rotate(z, H0, step / 2.0);
        t += step;
        double norm = z.sobolev_norm(opts.s_obs);
        if (!std::isfinite(norm) ||
            (opts.guard_radius > 0.0 && norm > opts.guard_radius)) {
            traj.blow_up = true;
            snapshot(traj, t, z, H0, P, opts.s_obs);
            return traj;
        }
        if ((k + 1) % opts.stride == 0 || k + 1 == steps)
            snapshot(traj, t, z, H0, P, opts.s_obs);
    }
    return traj;
}

namespace {

double class_weight(long long asq) { return 1.0 + std::sqrt(static_cast<double>(asq)); }

double weighted_table_drift(const std::map<long long, double>& now,
                            const std::map<long long, double>& start,
                            double s) {
    double worst = 0.0;
    for (const auto& [asq, j] : now) {
        auto it = start.find(asq);
        double j0 = it == start.end() ? 0.0 : it->second;
        worst = std::max(worst,
                         std::pow(class_weight(asq), 2.0 * s) * std::abs(j - j0));
    }
    for (const auto& [asq, j0] : start)
        if (!now.count(asq))
            worst = std::max(worst, std::pow(class_weight(asq), 2.0 * s) * j0);
    return worst;
}

}  // namespace

StabilityReport stability_report(const Trajectory& traj, double s, double nu,
                                 double c2) {
    if (traj.times.empty())
        throw std::invalid_argument("stability_report: empty trajectory");
    StabilityReport rep;
    rep.epsilon = traj.norms.front();
    const auto& j0 = traj.super_action_tables.front();
    const auto& i0 = traj.action_tables.front();
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        rep.max_norm_ratio =
            std::max(rep.max_norm_ratio, traj.norms[k] / rep.epsilon);
        rep.max_j_drift = std::max(
            rep.max_j_drift,
            weighted_table_drift(traj.super_action_tables[k], j0, s));
        double worst_i = 0.0;
        for (const auto& [key, v] : traj.action_tables[k]) {
            auto it = i0.find(key);
            double v0 = it == i0.end() ? 0.0 : it->second;
            worst_i = std::max(worst_i, std::pow(weight(unpack_mode(key)), 2.0 * s) *
                                            std::abs(v - v0));
        }
        rep.max_i_drift = std::max(rep.max_i_drift, worst_i);
    }
    rep.j_drift_scaled = rep.max_j_drift / std::pow(rep.epsilon, 3.0 - nu);
    rep.norm_ok = rep.max_norm_ratio <= 2.0;
    rep.drift_ok = rep.j_drift_scaled <= c2;
    return rep;
}

DriftReport verify_transformed_drift(const FrequencyModel& H0,
                                     const NormalFormOutcome& outcome,
                                     const StateVector& z0, double T, double dt,
                                     double s_obs, double N) {
    StateVector zp = transform_state(z0, outcome.generators,
                                     TransformDirection::Inverse);
    PolynomialFamily normal_ham;
    for (const auto& [n, p] : outcome.normal.parts) normal_ham.add_part(p);
    for (const auto& [n, p] : outcome.remainder.parts) normal_ham.add_part(p);

    IntegrateOptions opts;
    opts.s_obs = s_obs;
    DriftReport rep;
    rep.epsilon = zp.sobolev_norm(s_obs);
    opts.guard_radius = 4.0 * rep.epsilon;
    Trajectory traj = integrate(H0, normal_ham, zp, T, dt, opts);
    for (double n : traj.norms)
        rep.norm_drift = std::max(rep.norm_drift, std::abs(n - rep.epsilon));
    const auto& j0 = traj.super_action_tables.front();
    for (const auto& table : traj.super_action_tables)
        rep.j_drift =
            std::max(rep.j_drift, weighted_table_drift(table, j0, s_obs));
    rep.within_ball = !traj.blow_up;
    for (double n : traj.norms) rep.within_ball = rep.within_ball && n <= 2.0 * rep.epsilon;
    rep.remainder_norm = outcome.remainder.empty()
                             ? 0.0
                             : family_norm(outcome.remainder, 0.0, N, rep.epsilon);
    return rep;
}

std::string trajectory_csv(const Trajectory& traj, double s) {
    std::ostringstream os;
    os.precision(17);
    os << "t,norm,energy,max_weighted_j_drift\n";
    const auto& j0 = traj.super_action_tables.empty()
                         ? std::map<long long, double>{}
                         : traj.super_action_tables.front();
    for (std::size_t k = 0; k < traj.times.size(); ++k)
        os << traj.times[k] << ',' << traj.norms[k] << ',' << traj.energies[k]
           << ',' << weighted_table_drift(traj.super_action_tables[k], j0, s)
           << '\n';
    return os.str();
}

}  // namespace bnf
