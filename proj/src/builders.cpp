#include "bnf/builders.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace bnf {

const NonlinearityOrder* NonlinearitySpec::order(int n) const {
    for (const auto& o : orders)
        if (o.n == n) return &o;
    return nullptr;
}

bool NonlinearitySpec::reality_ok() const {
    for (const auto& o : orders) {
        for (const auto& [key, c] : o.fourier) {
            ModeVector b = unpack_mode(key);
            ModeVector nb{};
            for (int k = 0; k < kMaxDim; ++k) nb[k] = -b[k];
            auto it = o.fourier.find(pack_mode(nb));
            if (it == o.fourier.end()) return false;
            if (std::abs(it->second - std::conj(c)) >
                1e-14 * (1.0 + std::abs(c)))
                return false;
        }
    }
    return true;
}

NonlinearitySpec monomial_spec(FrequencyKind kind, int n, Complex c, int q,
                               int dim) {
    if (n < 3) throw std::invalid_argument("monomial_spec: n >= 3 required");
    NonlinearitySpec s;
    s.kind = kind;
    s.dim = dim;
    s.cutoff = 0;
    NonlinearityOrder o;
    o.n = n;
    o.q = q;
    o.fourier[pack_mode(ModeVector{})] = c;
    s.orders.push_back(std::move(o));
    return s;
}

NonlinearitySpec banded_spec(FrequencyKind kind, int max_order, double mu,
                             int cutoff, int dim, int q) {
    if (max_order < 3) throw std::invalid_argument("banded_spec: max_order >= 3");
    NonlinearitySpec s;
    s.kind = kind;
    s.dim = dim;
    s.cutoff = cutoff;
    StateVector box(dim, cutoff);
    for (int n = 3; n <= max_order; ++n) {
        NonlinearityOrder o;
        o.n = n;
        o.q = q;
        box.for_each_mode([&](const ModeVector& b) {
            o.fourier[pack_mode(b)] =
                std::exp(-mu * std::sqrt(static_cast<double>(norm_sq(b))));
        });
        s.orders.push_back(std::move(o));
    }
    return s;
}

namespace {

Complex table_at_minus(const NonlinearityOrder& o, const ModeVector& b) {
    ModeVector nb{};
    for (int k = 0; k < kMaxDim; ++k) nb[k] = -b[k];
    auto it = o.fourier.find(pack_mode(nb));
    return it == o.fourier.end() ? Complex{0.0, 0.0} : it->second;
}

}  // namespace

PolynomialFamily build_nlw(const NonlinearitySpec& spec, double mass,
                           int mode_cutoff, int max_order) {
    FrequencyModel freq = FrequencyModel::nlw(mass);
    PolynomialFamily out;
    out.order_cap = max_order;
    for (int n = 3; n <= max_order; ++n) {
        const auto* o = spec.order(n);
        if (!o) {
            std::cerr << "build_nlw: no Fourier table for order " << n
                      << ", skipping\n";
            continue;
        }
        HomogeneousPolynomial p(n, spec.dim);
        const double root2n = std::pow(std::sqrt(2.0), n);
        for_each_tuple(spec.dim, mode_cutoff, n, [&](const IndexTuple& t) {
            Complex f = table_at_minus(*o, momentum(t));
            if (f == Complex{0.0, 0.0}) return;
            double wprod = 1.0;
            for (const auto& j : t.entries) wprod *= freq.frequency(j.a);
            Complex coef = f / (root2n * std::sqrt(wprod));
            p.add_term(t, orbit_size(t) * coef);
        });
        if (!p.empty()) out.add_part(p);
    }
    return out;
}

PolynomialFamily build_nls(const NonlinearitySpec& spec, int mode_cutoff,
                           int max_order) {
    PolynomialFamily out;
    out.order_cap = max_order;
    for (int n = 3; n <= max_order; ++n) {
        const auto* o = spec.order(n);
        if (!o) {
            std::cerr << "build_nls: no Fourier table for order " << n
                      << ", skipping\n";
            continue;
        }
        HomogeneousPolynomial p(n, spec.dim);
        for_each_tuple(spec.dim, mode_cutoff, n, [&](const IndexTuple& t) {
            int minus = 0;
            for (const auto& j : t.entries) minus += j.delta < 0;
            if (minus != o->q) return;
            Complex g = table_at_minus(*o, momentum(t));
            if (g == Complex{0.0, 0.0}) return;
            p.add_term(t, orbit_size(t) * g);
        });
        if (!p.empty()) out.add_part(p);
    }
    return out;
}

double estimate_C_N(const PolynomialFamily& F, double N, double R_prime,
                    int grid) {
    if (R_prime <= 0.0 || grid < 1)
        throw std::invalid_argument("estimate_C_N: R' > 0 and grid >= 1");
    double best = 0.0;
    for (int k = 1; k <= grid; ++k) {
        double R = R_prime * k / grid;
        best = std::max(best, family_norm(F, 0.0, N, R) / R);
    }
    return best;
}

}  // namespace bnf
