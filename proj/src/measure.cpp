#include "bnf/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "bnf/normal_form.hpp"
#include "bnf/polynomial.hpp"

namespace bnf {

namespace {

std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// One scanned tuple, reduced to what the divisor needs.
/// NLW: divisor(m) = sum_k coeff_k sqrt(a_sq_k + m)   (coeff = net sign count)
/// NLS: divisor(v) = base + sum_k coeff_k v[idx_k]    (coeff = delta/<a>^decay)
struct CompiledTuple {
    int l = 0;
    double thresh1 = 0.0;  // threshold at gamma = 1
    double base = 0.0;
    std::vector<std::pair<double, double>> wave;  // (a_sq, coeff)
    std::vector<std::pair<int, double>> pot;      // (mode slot, coeff)
};

std::vector<CompiledTuple> compile_nlw(int r, double tau, int cutoff) {
    std::vector<CompiledTuple> out;
    for (int l = 3; l <= r + 2; ++l) {
        for_each_tuple(1, cutoff, l, [&](const IndexTuple& t) {
            if (is_super_action_resonant(t)) return;
            std::map<long long, int> net;
            for (const auto& j : t.entries) net[norm_sq(j.a)] += j.delta;
            CompiledTuple c;
            c.l = l;
            c.thresh1 = threshold(t, 1.0, tau);
            for (const auto& [asq, k] : net)
                if (k != 0) c.wave.emplace_back(static_cast<double>(asq), k);
            out.push_back(std::move(c));
        });
    }
    return out;
}

int box_slot(const ModeVector& a, int dim, int cutoff) {
    int idx = 0;
    for (int k = 0; k < dim; ++k) idx = idx * (2 * cutoff + 1) + (a[k] + cutoff);
    return idx;
}

std::vector<CompiledTuple> compile_nls(int r, double tau, int cutoff, int dim,
                                       double decay) {
    std::vector<CompiledTuple> out;
    for (int l = 3; l <= r + 2; ++l) {
        for_each_tuple(dim, cutoff, l, [&](const IndexTuple& t) {
            if (is_action_resonant(t)) return;
            CompiledTuple c;
            c.l = l;
            c.thresh1 = threshold(t, 1.0, tau);
            std::map<int, double> net;
            for (const auto& j : t.entries) {
                c.base += j.delta * static_cast<double>(norm_sq(j.a));
                net[box_slot(j.a, dim, cutoff)] +=
                    j.delta / std::pow(weight(j.a), decay);
            }
            for (const auto& [slot, coeff] : net)
                if (coeff != 0.0) c.pot.emplace_back(slot, coeff);
            out.push_back(std::move(c));
        });
    }
    return out;
}

/// q-statistic: min over tuples of |divisor| / threshold(gamma=1); the
/// sample is a hit for gamma iff q < gamma, giving an exact monotone
/// coupling across the whole gamma grid from one stream.
struct SampleStats {
    double q = std::numeric_limits<double>::infinity();
    std::map<int, double> q_per_l;
};

std::vector<MeasureReport> reduce(const std::vector<double>& gammas,
                                  const std::vector<SampleStats>& stats,
                                  double tau, int r, int cutoff,
                                  std::uint64_t seed,
                                  const std::function<double(double)>& bound) {
    std::vector<MeasureReport> out;
    const double n = static_cast<double>(stats.size());
    for (double g : gammas) {
        MeasureReport rep;
        rep.samples = static_cast<long long>(stats.size());
        rep.gamma = g;
        rep.tau = tau;
        rep.r = r;
        rep.cutoff = cutoff;
        rep.seed = seed;
        long long hits = 0;
        std::map<int, long long> hits_l;
        for (const auto& s : stats) {
            if (s.q < g) ++hits;
            for (const auto& [l, ql] : s.q_per_l)
                if (ql < g) ++hits_l[l];
        }
        rep.hit_fraction = hits / n;
        for (const auto& [l, h] : hits_l) rep.per_l[l] = h / n;
        rep.ci_halfwidth =
            1.96 * std::sqrt(rep.hit_fraction * (1.0 - rep.hit_fraction) / n);
        rep.closed_form_bound = bound(g);
        out.push_back(std::move(rep));
    }
    return out;
}

}  // namespace

bool resonant_indicator_nlw(double m, const IndexTuple& t, double gamma,
                            double tau) {
    if (is_super_action_resonant(t))
        throw std::invalid_argument(
            "resonant_indicator_nlw: tuple is super-action resonant");
    if (gamma == 0.0) return false;
    FrequencyModel freq = FrequencyModel::nlw(m);
    return freq.small_divisor(t) < threshold(t, gamma, tau);
}

std::vector<MeasureReport> estimate_theta_nlw(int r,
                                              const std::vector<double>& gammas,
                                              double tau, int cutoff,
                                              long long samples,
                                              std::uint64_t seed) {
    auto tuples = compile_nlw(r, tau, cutoff);
    std::vector<SampleStats> stats(samples);
    for (long long i = 0; i < samples; ++i) {
        std::mt19937_64 rng(mix(seed ^ static_cast<std::uint64_t>(i)));
        double m = std::uniform_real_distribution<double>(1.0, 2.0)(rng);
        SampleStats& s = stats[i];
        for (const auto& c : tuples) {
            double d = 0.0;
            for (const auto& [asq, coeff] : c.wave)
                d += coeff * std::sqrt(asq + m);
            double q = std::abs(d) / c.thresh1;
            s.q = std::min(s.q, q);
            auto [it, fresh] =
                s.q_per_l.try_emplace(c.l, std::numeric_limits<double>::infinity());
            it->second = std::min(it->second, q);
        }
    }
    return reduce(gammas, stats, tau, r, cutoff, seed,
                  [&](double g) { return theta_bound_nlw(r, g); });
}

std::vector<MeasureReport> estimate_excluded_nls(
    int r, const std::vector<double>& gammas, double tau, int cutoff, int dim,
    double decay, long long samples, std::uint64_t seed) {
    auto tuples = compile_nls(r, tau, cutoff, dim, decay);
    int slots = 1;
    for (int k = 0; k < dim; ++k) slots *= 2 * cutoff + 1;
    std::vector<SampleStats> stats(samples);
    std::vector<double> v(slots);
    for (long long i = 0; i < samples; ++i) {
        std::mt19937_64 rng(mix(seed ^ static_cast<std::uint64_t>(i)));
        std::uniform_real_distribution<double> uni(-0.5, 0.5);
        for (auto& x : v) x = uni(rng);
        SampleStats& s = stats[i];
        for (const auto& c : tuples) {
            double d = c.base;
            for (const auto& [slot, coeff] : c.pot) d += coeff * v[slot];
            double q = std::abs(d) / c.thresh1;
            s.q = std::min(s.q, q);
            auto [it, fresh] =
                s.q_per_l.try_emplace(c.l, std::numeric_limits<double>::infinity());
            it->second = std::min(it->second, q);
        }
    }
    return reduce(gammas, stats, tau, r, cutoff, seed,
                  [&](double g) { return excluded_bound_nls(r, g, dim, decay); });
}

double per_tuple_excluded_nls(const IndexTuple& t, double gamma, double tau,
                              int dim, double decay, int cutoff,
                              long long samples, std::uint64_t seed) {
    const double bound = threshold(t, gamma, tau);
    long long hits = 0;
    for (long long i = 0; i < samples; ++i) {
        std::mt19937_64 rng(mix(seed ^ static_cast<std::uint64_t>(i)));
        std::uniform_real_distribution<double> uni(-0.5, 0.5);
        std::unordered_map<std::uint64_t, double> v;
        // one draw per distinct mode, in canonical entry order
        for (const auto& j : t.canonical().entries)
            if (!v.count(pack_mode(j.a))) v[pack_mode(j.a)] = uni(rng);
        double d = 0.0;
        for (const auto& j : t.entries)
            d += j.delta * (static_cast<double>(norm_sq(j.a)) +
                            v[pack_mode(j.a)] / std::pow(weight(j.a), decay));
        if (std::abs(d) < bound) ++hits;
    }
    (void)cutoff;
    (void)dim;
    return static_cast<double>(hits) / samples;
}

double per_tuple_excluded_nlw(const IndexTuple& t, double gamma, double tau,
                              long long samples, std::uint64_t seed) {
    long long hits = 0;
    for (long long i = 0; i < samples; ++i) {
        std::mt19937_64 rng(mix(seed ^ static_cast<std::uint64_t>(i)));
        double m = std::uniform_real_distribution<double>(1.0, 2.0)(rng);
        if (resonant_indicator_nlw(m, t, gamma, tau)) ++hits;
    }
    return static_cast<double>(hits) / samples;
}

double theta_bound_nlw(int r, double gamma) {
    return std::exp(12.0 * (r + 2)) *
           std::pow(gamma, 1.0 / (7.0 * (r + 2.0) * (r + 2.0)));
}

double excluded_bound_nls(int r, double gamma, int dim, double decay) {
    return std::pow(rho_constant(dim), r + 3.0) *
           std::pow(gamma, decay / (decay + 2.0 * dim));
}

std::string measure_csv(const std::vector<MeasureReport>& reports) {
    std::ostringstream os;
    os.precision(17);
    os << "gamma,hit_fraction,ci,bound\n";
    for (const auto& r : reports)
        os << r.gamma << ',' << r.hit_fraction << ',' << r.ci_halfwidth << ','
           << r.closed_form_bound << '\n';
    return os.str();
}

}  // namespace bnf
