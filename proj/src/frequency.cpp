#include "bnf/frequency.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bnf/polynomial.hpp"

namespace bnf {

FrequencyModel FrequencyModel::nlw(double mass) {
    if (mass < 1.0 || mass > 2.0)
        throw std::invalid_argument("FrequencyModel::nlw: mass must lie in [1,2]");
    FrequencyModel m;
    m.kind_ = FrequencyKind::NLW;
    m.dim_ = 1;
    m.mass_ = mass;
    return m;
}

FrequencyModel FrequencyModel::nls(int dim, double decay,
                                   std::unordered_map<std::uint64_t, double> v_table,
                                   int cutoff) {
    if (decay <= dim / 2.0)
        throw std::invalid_argument("FrequencyModel::nls: decay must exceed d/2");
    for (const auto& [k, v] : v_table)
        if (v < -0.5 || v > 0.5)
            throw std::invalid_argument("FrequencyModel::nls: v_a outside [-1/2,1/2]");
    FrequencyModel m;
    m.kind_ = FrequencyKind::NLS;
    m.dim_ = dim;
    m.decay_ = decay;
    m.cutoff_ = cutoff;
    m.table_ = std::move(v_table);
    return m;
}

FrequencyModel FrequencyModel::custom(int dim,
                                      std::unordered_map<std::uint64_t, double> omega_table,
                                      int cutoff) {
    FrequencyModel m;
    m.kind_ = FrequencyKind::Custom;
    m.dim_ = dim;
    m.cutoff_ = cutoff;
    m.table_ = std::move(omega_table);
    return m;
}

double FrequencyModel::frequency(const ModeVector& a) const {
    switch (kind_) {
        case FrequencyKind::NLW:
            return std::sqrt(static_cast<double>(norm_sq(a)) + mass_);
        case FrequencyKind::NLS: {
            auto it = table_.find(pack_mode(a));
            if (it == table_.end())
                throw std::out_of_range("FrequencyModel: mode outside NLS potential table");
            return static_cast<double>(norm_sq(a))
                   + it->second / std::pow(weight(a), decay_);
        }
        case FrequencyKind::Custom: {
            auto it = table_.find(pack_mode(a));
            if (it == table_.end())
                throw std::out_of_range("FrequencyModel: mode outside custom table");
            return it->second;
        }
    }
    return 0.0;
}

double FrequencyModel::small_divisor(const IndexTuple& t) const {
    double s = 0.0;
    for (const auto& j : t.entries) s += j.delta * frequency(j.a);
    return std::abs(s);
}

double threshold(const IndexTuple& t, double gamma, double tau) {
    if (gamma < 0.0 || tau < 0.0)
        throw std::invalid_argument("threshold: requires gamma >= 0, tau >= 0");
    if (tau == 0.0) return gamma;
    auto w = decreasing_rearrangement(t);
    double ratio = w.empty() ? 1.0 : w[0];
    ratio /= weight(momentum(t));
    for (std::size_t k = 1; k < w.size(); ++k) ratio /= w[k];
    return gamma * std::pow(ratio, tau);
}

void for_each_tuple(int dim, int cutoff, int length,
                    const std::function<void(const IndexTuple&)>& fn) {
    std::vector<LatticeIndex> alphabet;
    {
        StateVector box(dim, cutoff);  // reuse the box walker
        box.for_each_mode([&](const ModeVector& a) {
            alphabet.push_back(LatticeIndex{1, a});
            alphabet.push_back(LatticeIndex{-1, a});
        });
    }
    std::sort(alphabet.begin(), alphabet.end());
    IndexTuple t;
    t.entries.reserve(length);
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (static_cast<int>(t.entries.size()) == length) { fn(t); return; }
        for (std::size_t i = start; i < alphabet.size(); ++i) {
            t.entries.push_back(alphabet[i]);
            rec(i);
            t.entries.pop_back();
        }
    };
    rec(0);
}

std::vector<ResonanceViolation> check_nonresonant_up_to_order(
    const FrequencyModel& model, int r, double gamma, double tau, int cutoff,
    ResonanceClass cls, bool momentum_zero_only, std::size_t max_violations) {
    std::vector<ResonanceViolation> out;
    for (int l = 3; l <= r; ++l) {
        for_each_tuple(model.dim(), cutoff, l, [&](const IndexTuple& t) {
            if (out.size() >= max_violations) return;
            if (momentum_zero_only && momentum(t) != ModeVector{}) return;
            bool resonant = cls == ResonanceClass::SuperAction
                                ? is_super_action_resonant(t)
                                : is_action_resonant(t);
            if (resonant) return;
            double div = model.small_divisor(t);
            double bound = threshold(t, gamma, tau);
            if (div < bound) out.push_back({t, div, bound});
        });
    }
    return out;
}

bool check_nlw_gap_bounds(double mass, int cutoff) {
    auto omega_inv2 = [&](int a) {
        return 1.0 / (static_cast<double>(a) * a + mass);
    };
    if (omega_inv2(0) - omega_inv2(1) < 1.0 / 6.0 - 1e-15) return false;
    for (int a = 2; a <= cutoff; ++a)
        if (omega_inv2(0) - omega_inv2(a) < 1.0 / 3.0 - 1e-15) return false;
    for (int b = 1; b <= cutoff; ++b) {
        double wb = 1.0 + b;
        for (int a = b + 1; a <= cutoff; ++a)
            if (omega_inv2(b) - omega_inv2(a) <= std::pow(wb, -3.0)) return false;
    }
    return true;
}

}  // namespace bnf
