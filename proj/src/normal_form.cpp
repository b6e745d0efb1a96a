#include "bnf/normal_form.hpp"

#include <cmath>
#include <stdexcept>

namespace bnf {

namespace {
constexpr Complex kI{0.0, 1.0};

double signed_divisor(const IndexTuple& t, const FrequencyModel& freq) {
    double s = 0.0;
    for (const auto& j : t.entries) s += j.delta * freq.frequency(j.a);
    return s;
}

void check_finite(const PolynomialFamily& F, const char* what) {
    for (const auto& [n, p] : F.parts)
        for (const auto& [t, c] : p.terms())
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
                throw std::runtime_error(std::string("normal form diverged in ") + what);
}
}  // namespace

double rho_constant(int dim) {
    if (dim < 1) throw std::invalid_argument("rho_constant: dim >= 1");
    return std::pow(2.0, dim + 4) * std::pow(3.0, dim);
}

void NormalFormConfig::validate() const {
    if (r < 1) throw std::invalid_argument("NormalFormConfig: r >= 1 required");
    if (gamma <= 0.0) throw std::invalid_argument("NormalFormConfig: gamma > 0 required");
    if (tau < 0.0) throw std::invalid_argument("NormalFormConfig: tau >= 0 required");
    if (R_prime <= 0.0 || C_N <= 0.0)
        throw std::invalid_argument("NormalFormConfig: R', C_N > 0 required");
    if (effective_order_cap() < r + 3)
        throw std::invalid_argument("NormalFormConfig: order_cap >= r+3 required");
    if (certificate && N < s0 + r * tau + (dim + 1))
        throw std::invalid_argument(
            "NormalFormConfig: certificate mode needs N >= s0 + r tau + d + 1");
}

double r_star(const NormalFormConfig& cfg) {
    double rho = rho_constant(cfg.dim);
    double r4 = std::pow(static_cast<double>(cfg.r), 4);
    return std::min(cfg.R_prime / 2.0, cfg.gamma / (10.0 * rho * r4 * cfg.C_N));
}

HomologicalSplit solve_homological(const HomogeneousPolynomial& f,
                                   const FrequencyModel& freq,
                                   double gamma, double tau) {
    HomologicalSplit out;
    out.chi = HomogeneousPolynomial(f.order(), f.dim());
    out.normal = HomogeneousPolynomial(f.order(), f.dim());
    for (const auto& [t, c] : f.terms()) {
        double d = signed_divisor(t, freq);
        if (d != 0.0 && std::abs(d) >= threshold(t, gamma, tau))
            out.chi.add_term(t, c / (-kI * d));
        else
            out.normal.add_term(t, c);
    }
    return out;
}

HomogeneousPolynomial h0_bracket(const HomogeneousPolynomial& f,
                                 const FrequencyModel& freq) {
    HomogeneousPolynomial out(f.order(), f.dim());
    for (const auto& [t, c] : f.terms())
        out.add_term(t, -kI * signed_divisor(t, freq) * c);
    return out;
}

PolynomialFamily lie_transform(const PolynomialFamily& F,
                               const HomogeneousPolynomial& chi,
                               int order_cap) {
    PolynomialFamily out;
    out.order_cap = order_cap;
    out.tail_dropped = F.tail_dropped;
    if (chi.empty()) {
        for (const auto& [n, p] : F.parts) {
            if (p.empty()) continue;
            if (n <= order_cap) out.add_part(p);
            else out.tail_dropped = true;
        }
        return out;
    }
    if (chi.order() < 3)
        throw std::invalid_argument("lie_transform: generator order >= 3 required");
    int raise = chi.order() - 2;
    for (const auto& [n, p] : F.parts) {
        if (p.empty()) continue;
        if (n > order_cap) { out.tail_dropped = true; continue; }
        out.add_part(p);
        HomogeneousPolynomial g = p;
        for (int k = 1;; ++k) {
            if (n + k * raise > order_cap) {
                if (!g.empty()) out.tail_dropped = true;  // next ad may be nonzero
                break;
            }
            g = poisson_bracket(g, chi);
            g *= Complex{1.0 / k, 0.0};
            if (g.empty()) break;
            out.add_part(g);
        }
    }
    return out;
}

void normal_form_step(NormalFormState& state, int l, const FrequencyModel& freq,
                      const NormalFormConfig& cfg, Certificate& cert) {
    const int cap = cfg.effective_order_cap();
    HomogeneousPolynomial f(l + 2, cfg.dim);
    if (const auto* part = state.remainder.part(l + 2)) f = *part;
    if (state.remainder.min_order() != 0 && state.remainder.min_order() < l + 2)
        throw std::logic_error("normal_form_step: remainder below expected order");

    HomologicalSplit split = solve_homological(f, freq, cfg.gamma, cfg.tau);

    // current perturbation Z + R through the transform
    PolynomialFamily current;
    current.order_cap = cap;
    current.tail_dropped = state.remainder.tail_dropped;
    for (const auto& [n, p] : state.normal.parts) current.add_part(p);
    for (const auto& [n, p] : state.remainder.parts) current.add_part(p);
    PolynomialFamily pushed = lie_transform(current, split.chi, cap);

    // pullback of H_0 minus H_0: W + sum_{i>=1} ad^i W / (i+1)! with
    // W = Z_l - f = ad_chi H_0 at first order
    HomogeneousPolynomial w = split.normal;
    {
        HomogeneousPolynomial mf = f;
        mf *= Complex{-1.0, 0.0};
        w += mf;
    }
    if (!w.empty()) pushed.add_part(w);
    if (!split.chi.empty() && !w.empty()) {
        int raise = split.chi.order() - 2;
        HomogeneousPolynomial g = w;
        for (int i = 1;; ++i) {
            if (w.order() + i * raise > cap) {
                if (!g.empty()) pushed.tail_dropped = true;
                break;
            }
            g = poisson_bracket(g, split.chi);
            g *= Complex{1.0 / (i + 1), 0.0};
            if (g.empty()) break;
            pushed.add_part(g);
        }
    }
    check_finite(pushed, "normal_form_step");

    NormalFormState next;
    next.step = l;
    next.generators = state.generators;
    next.generators.push_back(split.chi);
    next.normal.order_cap = cap;
    next.remainder.order_cap = cap;
    next.remainder.tail_dropped = pushed.tail_dropped;
    for (const auto& [n, p] : pushed.parts) {
        if (p.empty()) continue;
        if (n <= l + 2) next.normal.add_part(p);
        else next.remainder.add_part(p);
    }
    if (next.normal.min_order() != 0 && next.normal.min_order() < 3)
        throw std::logic_error("normal_form_step: normal part below order 3");

    if (cfg.certificate) {
        CertificateRow row;
        row.l = l;
        const double sl = cfg.s0 + l * cfg.tau;
        const double R = cert.R;
        const double Rs = cert.R_star;
        const double Rl = R * (2.0 - static_cast<double>(l) / cfg.r);
        const double Rlm1 = R * (2.0 - static_cast<double>(l - 1) / cfg.r);
        const double Rsl = Rs * (2.0 - static_cast<double>(l) / cfg.r);
        row.chi_norm = split.chi.empty() ? 0.0 : sn_norm(split.chi, sl, cfg.N);
        row.disp_lhs = row.chi_norm * std::pow(Rlm1 / 2.0, l + 1);
        row.disp_rhs = cfg.C_N / (std::pow(2.0, l + 1) * cfg.gamma) * Rlm1 * Rlm1;
        row.z_lhs = next.normal.empty() ? 0.0 : family_norm(next.normal, sl, cfg.N, Rl);
        row.z_rhs = l * cfg.C_N * Rl;
        row.rem_lhs =
            next.remainder.empty() ? 0.0 : family_norm(next.remainder, sl, cfg.N, Rl);
        row.rem_rhs = cfg.C_N * Rl * std::pow(Rl / Rsl, l);
        const double tol = 1.0 + 1e-9;
        row.ok = row.disp_lhs <= row.disp_rhs * tol && row.z_lhs <= row.z_rhs * tol &&
                 row.rem_lhs <= row.rem_rhs * tol;
        cert.rows.push_back(row);
    }
    state = std::move(next);
}

NormalFormOutcome birkhoff_normal_form(const PolynomialFamily& P,
                                       const FrequencyModel& freq,
                                       const NormalFormConfig& cfg) {
    cfg.validate();
    if (!P.empty() && P.min_order() < 3)
        throw std::invalid_argument("birkhoff_normal_form: P must have orders >= 3");

    NormalFormOutcome out;
    Certificate& cert = out.certificate;
    cert.R_star = r_star(cfg);
    cert.R = cfg.R_report.value_or(cert.R_star / 2.0);
    if (cert.R > cert.R_star)
        throw std::invalid_argument("birkhoff_normal_form: report radius exceeds R_*");
    cert.c_n_estimated = cfg.c_n_estimated;

    NormalFormState state;
    state.remainder = P;
    state.remainder.order_cap = cfg.effective_order_cap();
    state.normal.order_cap = cfg.effective_order_cap();
    for (int l = 1; l <= cfg.r; ++l) normal_form_step(state, l, freq, cfg, cert);

    out.generators = state.generators;
    out.normal = state.normal;
    out.remainder = state.remainder;

    if (cfg.certificate) {
        const double sr = cfg.s0 + cfg.r * cfg.tau;
        cert.disp_total_lhs = 0.0;
        for (const auto& row : cert.rows) cert.disp_total_lhs += row.disp_lhs;
        cert.disp_total_rhs = 2.0 * cfg.C_N / cfg.gamma * cert.R * cert.R;
        cert.z_total_lhs =
            out.normal.empty() ? 0.0 : family_norm(out.normal, sr, cfg.N, cert.R);
        cert.z_total_rhs = cfg.r * cfg.C_N * cert.R;
        cert.rem_total_lhs =
            out.remainder.empty() ? 0.0 : family_norm(out.remainder, sr, cfg.N, cert.R);
        cert.rem_total_rhs =
            cfg.C_N / std::pow(cert.R_star, cfg.r) * std::pow(cert.R, cfg.r + 1);
        const double tol = 1.0 + 1e-9;
        cert.all_ok = cert.disp_total_lhs <= cert.disp_total_rhs * tol &&
                      cert.z_total_lhs <= cert.z_total_rhs * tol &&
                      cert.rem_total_lhs <= cert.rem_total_rhs * tol;
        for (const auto& row : cert.rows) cert.all_ok = cert.all_ok && row.ok;
    }
    return out;
}

namespace {

// one RK4 step of xi' = X_chi(xi) with step h
void rk4_step(StateVector& z, const HomogeneousPolynomial& chi, double h) {
    auto deriv = [&](const StateVector& s) { return vector_field(chi, s).dxi; };
    StateVector tmp = z;
    auto k1 = deriv(z);
    auto apply = [&](const StateVector& base,
                     const std::unordered_map<std::uint64_t, Complex>& k, double frac) {
        StateVector r = base;
        for (const auto& [key, v] : k) r.at(unpack_mode(key)) += frac * h * v;
        return r;
    };
    StateVector s2 = apply(z, k1, 0.5);
    auto k2 = deriv(s2);
    StateVector s3 = apply(z, k2, 0.5);
    auto k3 = deriv(s3);
    StateVector s4 = apply(z, k3, 1.0);
    auto k4 = deriv(s4);
    auto add = [&](const std::unordered_map<std::uint64_t, Complex>& k, double wgt) {
        for (const auto& [key, v] : k) z.at(unpack_mode(key)) += wgt * h * v;
    };
    add(k1, 1.0 / 6.0);
    add(k2, 1.0 / 3.0);
    add(k3, 1.0 / 3.0);
    add(k4, 1.0 / 6.0);
}

void flow_time(StateVector& z, const HomogeneousPolynomial& chi, double T, int steps) {
    if (chi.empty()) return;
    double h = T / steps;
    for (int k = 0; k < steps; ++k) {
        rk4_step(z, chi, h);
        if (!std::isfinite(z.sobolev_norm(0.0)))
            throw std::runtime_error("transform_state: generator flow diverged");
    }
}

}  // namespace

StateVector transform_state(const StateVector& z,
                            const std::vector<HomogeneousPolynomial>& generators,
                            TransformDirection dir, int steps_per_unit) {
    StateVector out = z;
    if (dir == TransformDirection::Forward) {
        // phi = Phi_{chi_1} o ... o Phi_{chi_r}: innermost flow first
        for (auto it = generators.rbegin(); it != generators.rend(); ++it)
            flow_time(out, *it, 1.0, steps_per_unit);
    } else {
        for (const auto& chi : generators)
            flow_time(out, chi, -1.0, steps_per_unit);
    }
    return out;
}

PlannerSchedule parameter_planner(double epsilon, PlannerMode mode, double lambda,
                                  int dim, double decay) {
    if (epsilon <= 0.0 || epsilon >= 1.0)
        throw std::invalid_argument("parameter_planner: epsilon in (0,1) required");
    PlannerSchedule out;
    const double L = std::log(1.0 / epsilon);
    switch (mode) {
        case PlannerMode::NLW: {
            if (lambda <= 0.0 || lambda >= 0.25)
                throw std::invalid_argument("parameter_planner: lambda in (0, 1/4)");
            out.r = static_cast<int>(std::floor(std::pow(L, lambda))) - 2;
            out.log_gamma = -91.0 * std::pow(L, 3.0 * lambda);
            out.gamma = std::exp(out.log_gamma);
            out.tau = 63.0 * std::pow(out.r + 2.0, 3.0);
            out.s = 63.0 * std::pow(L, 4.0 * lambda);
            out.log_horizon = 0.5 * std::pow(L, 1.0 + lambda);
            out.horizon = std::exp(out.log_horizon);
            out.feasible = out.r >= 1;
            out.log_min_epsilon = -std::pow(3.0, 1.0 / lambda);
            out.min_epsilon = std::exp(out.log_min_epsilon);
            out.description = "NLW sub-exponential schedule";
            break;
        }
        case PlannerMode::NLS: {
            const double rho = rho_constant(dim);
            const double lnrho = std::log(rho);
            const double Lr = L / lnrho;              // log_rho(1/eps)
            const double LL = std::log(Lr) / lnrho;   // log_rho log_rho(1/eps)
            out.tau = 15.0 * (decay + 2.0 * dim + 1.0);
            if (Lr <= 1.0 || LL <= 0.0) {
                out.feasible = false;
                out.log_min_epsilon = -rho * lnrho;
                out.min_epsilon = std::pow(rho, -rho);
                out.description = "NLS schedule (epsilon too large)";
                break;
            }
            out.r = static_cast<int>(std::floor(Lr / (12.0 * out.tau * LL))) - 3;
            out.log_gamma = -Lr / (2.0 * out.tau * LL) * lnrho;
            out.gamma = std::exp(out.log_gamma);
            out.s = Lr / (12.0 * LL);
            out.log_horizon = Lr * Lr / (24.0 * out.tau * LL) * lnrho;
            out.horizon = std::exp(out.log_horizon);
            out.feasible = out.r >= 1;
            if (!out.feasible) {
                // bisect for the largest epsilon giving r >= 1
                double lo = L, hi = L;
                while (true) {
                    hi *= 2.0;
                    double lr = hi / lnrho, ll = std::log(lr) / lnrho;
                    if (std::floor(lr / (12.0 * out.tau * ll)) - 3.0 >= 1.0) break;
                    if (hi > 1e12) break;
                }
                for (int it = 0; it < 200; ++it) {
                    double mid = 0.5 * (lo + hi);
                    double lr = mid / lnrho, ll = std::log(lr) / lnrho;
                    bool ok = std::floor(lr / (12.0 * out.tau * ll)) - 3.0 >= 1.0;
                    (ok ? hi : lo) = mid;
                }
                out.log_min_epsilon = -hi;
                out.min_epsilon = std::exp(-hi);
            }
            out.description = "NLS sub-exponential schedule";
            break;
        }
        case PlannerMode::NLSXFree: {
            const double rho = rho_constant(dim);
            const double lnrho = std::log(rho);
            const double Lr = L / lnrho;
            out.r = static_cast<int>(std::floor(Lr / 30.0)) - 3;
            out.log_gamma = -L / 3.0;
            out.gamma = std::exp(out.log_gamma);
            out.tau = 15.0 * (decay + 2.0 * dim + 1.0);
            out.s = out.tau / 9.0 * Lr;
            out.log_horizon = Lr * Lr / 46.0 * lnrho;
            out.horizon = std::exp(out.log_horizon);
            out.feasible = out.r >= 1;
            out.log_min_epsilon = -120.0 * lnrho;
            out.min_epsilon = std::exp(out.log_min_epsilon);
            out.description = "NLS x-independent schedule";
            break;
        }
    }
    return out;
}

}  // namespace bnf
