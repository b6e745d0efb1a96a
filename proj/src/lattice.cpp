#include "bnf/lattice.hpp"

#include <algorithm>
#include <map>

namespace bnf {

IndexTuple IndexTuple::canonical() const {
    IndexTuple out = *this;
    std::sort(out.entries.begin(), out.entries.end());
    return out;
}

ModeVector momentum(const IndexTuple& t) {
    ModeVector m{};
    for (const auto& j : t.entries)
        for (int k = 0; k < kMaxDim; ++k) m[k] += j.delta * j.a[k];
    return m;
}

std::vector<double> decreasing_rearrangement(const IndexTuple& t) {
    std::vector<double> w;
    w.reserve(t.size());
    for (const auto& j : t.entries) w.push_back(weight(j));
    std::sort(w.begin(), w.end(), std::greater<>());
    return w;
}

bool is_super_action_resonant(const IndexTuple& t) {
    if (t.size() % 2 != 0) return false;
    // modulus class |a|^2 -> signed count of deltas
    std::map<long long, int> balance;
    for (const auto& j : t.entries) balance[norm_sq(j.a)] += j.delta;
    for (const auto& [cls, b] : balance)
        if (b != 0) return false;
    return true;
}

bool is_action_resonant(const IndexTuple& t) {
    if (t.size() % 2 != 0) return false;
    std::map<ModeVector, int> balance;
    for (const auto& j : t.entries) balance[j.a] += j.delta;
    for (const auto& [a, b] : balance)
        if (b != 0) return false;
    return true;
}

bool check_rearrangement_bound(const IndexTuple& t) {
    auto w = decreasing_rearrangement(t);
    if (w.size() < 2) return true;
    double rhs = weight(momentum(t)) * w[1];
    double tail = 1.0;
    for (std::size_t k = 2; k < w.size(); ++k) tail *= w[k];
    rhs *= std::pow(tail, 2.0 / 3.0);
    // tiny slack so exact-equality cases survive roundoff
    return w[0] <= rhs * (1.0 + 1e-12);
}

IndexTuple conjugate(const IndexTuple& t) {
    IndexTuple out = t;
    for (auto& j : out.entries) j.delta = -j.delta;
    return out;
}

double orbit_size(const IndexTuple& t) {
    IndexTuple c = t.canonical();
    double num = 1.0;
    for (std::size_t k = 2; k <= c.size(); ++k) num *= static_cast<double>(k);
    double den = 1.0;
    std::size_t i = 0;
    while (i < c.size()) {
        std::size_t run = 1;
        while (i + run < c.size() && c.entries[i + run] == c.entries[i]) ++run;
        for (std::size_t k = 2; k <= run; ++k) den *= static_cast<double>(k);
        i += run;
    }
    return num / den;
}

}  // namespace bnf
