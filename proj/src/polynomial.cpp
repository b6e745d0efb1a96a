#include "bnf/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bnf {

namespace {

constexpr Complex kI{0.0, 1.0};

// distinct entries of a canonical tuple with multiplicities
struct SlotCounts {
    std::vector<LatticeIndex> slots;
    std::vector<int> counts;
};

SlotCounts slot_counts(const IndexTuple& t) {
    SlotCounts sc;
    std::size_t i = 0;
    while (i < t.entries.size()) {
        std::size_t run = 1;
        while (i + run < t.entries.size() && t.entries[i + run] == t.entries[i]) ++run;
        sc.slots.push_back(t.entries[i]);
        sc.counts.push_back(static_cast<int>(run));
        i += run;
    }
    return sc;
}

IndexTuple remove_one(const IndexTuple& t, const LatticeIndex& j) {
    IndexTuple out;
    out.entries.reserve(t.entries.size() - 1);
    bool skipped = false;
    for (const auto& e : t.entries) {
        if (!skipped && e == j) { skipped = true; continue; }
        out.entries.push_back(e);
    }
    return out;
}

}  // namespace

StateVector::StateVector(int dim, int cutoff) : dim_(dim), cutoff_(cutoff) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("StateVector: bad dim");
    if (cutoff < 0) throw std::invalid_argument("StateVector: bad cutoff");
    std::size_t n = 1;
    for (int k = 0; k < dim; ++k) n *= static_cast<std::size_t>(2 * cutoff + 1);
    xi_.assign(n, Complex{});
}

std::size_t StateVector::flat(const ModeVector& a) const {
    std::size_t idx = 0;
    for (int k = 0; k < dim_; ++k)
        idx = idx * static_cast<std::size_t>(2 * cutoff_ + 1)
              + static_cast<std::size_t>(a[k] + cutoff_);
    return idx;
}

bool StateVector::contains(const ModeVector& a) const {
    for (int k = 0; k < dim_; ++k)
        if (a[k] < -cutoff_ || a[k] > cutoff_) return false;
    for (int k = dim_; k < kMaxDim; ++k)
        if (a[k] != 0) return false;
    return true;
}

Complex& StateVector::at(const ModeVector& a) {
    if (!contains(a)) throw std::out_of_range("StateVector: mode outside cutoff");
    return xi_[flat(a)];
}

const Complex& StateVector::at(const ModeVector& a) const {
    if (!contains(a)) throw std::out_of_range("StateVector: mode outside cutoff");
    return xi_[flat(a)];
}

Complex StateVector::z(const LatticeIndex& j) const {
    const Complex& v = at(j.a);
    return j.delta > 0 ? v : std::conj(v);
}

double StateVector::sobolev_norm(double s) const {
    double acc = 0.0;
    for_each_mode([&](const ModeVector& a) {
        double w = weight(a);
        acc += std::pow(w, 2.0 * s) * std::norm(at(a));
    });
    return std::sqrt(2.0 * acc);
}

void HomogeneousPolynomial::add_term(const IndexTuple& t, Complex c) {
    if (static_cast<int>(t.size()) != order_)
        throw std::invalid_argument("HomogeneousPolynomial: tuple length != order");
    IndexTuple key = t.canonical();
    Complex& slot = terms_[key];
    slot += c;
    if (slot == Complex{}) terms_.erase(key);
}

Complex HomogeneousPolynomial::orbit_coefficient(const IndexTuple& t) const {
    auto it = terms_.find(t.canonical());
    return it == terms_.end() ? Complex{} : it->second;
}

Complex HomogeneousPolynomial::symmetric_coefficient(const IndexTuple& t) const {
    auto it = terms_.find(t.canonical());
    if (it == terms_.end()) return {};
    return it->second / orbit_size(it->first);
}

void HomogeneousPolynomial::prune(double epsilon) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (std::abs(it->second) <= epsilon) it = terms_.erase(it);
        else ++it;
    }
}

HomogeneousPolynomial& HomogeneousPolynomial::operator*=(Complex c) {
    if (c == Complex{}) { terms_.clear(); return *this; }
    for (auto& [t, v] : terms_) v *= c;
    return *this;
}

HomogeneousPolynomial& HomogeneousPolynomial::operator+=(const HomogeneousPolynomial& other) {
    if (other.empty()) return *this;
    if (order_ != other.order_ || dim_ != other.dim_)
        throw std::invalid_argument("HomogeneousPolynomial: order/dim mismatch in +=");
    for (const auto& [t, v] : other.terms_) {
        Complex& slot = terms_[t];
        slot += v;
        if (slot == Complex{}) terms_.erase(t);
    }
    return *this;
}

HomogeneousPolynomial symmetrize(
    const std::vector<std::pair<IndexTuple, Complex>>& raw, int dim) {
    if (raw.empty()) return {};
    int order = static_cast<int>(raw.front().first.size());
    HomogeneousPolynomial out(order, dim);
    for (const auto& [t, c] : raw) {
        if (static_cast<int>(t.size()) != order)
            throw std::invalid_argument("symmetrize: mixed orders");
        out.add_term(t, c);
    }
    return out;
}

Complex evaluate(const HomogeneousPolynomial& f, const StateVector& z) {
    Complex acc{};
    for (const auto& [t, c] : f.terms()) {
        Complex m = c;
        for (const auto& j : t.entries) m *= z.z(j);
        acc += m;
    }
    return acc;
}

double sn_norm(const HomogeneousPolynomial& f, double s, double N) {
    if (N < s) throw std::invalid_argument("sn_norm: requires N >= s");
    if (s < 0.0) throw std::invalid_argument("sn_norm: requires s >= 0");
    // momentum class -> sup of (j1*/(j2*...jl*))^s |f~|
    std::unordered_map<std::uint64_t, double> sup;
    std::unordered_map<std::uint64_t, double> bweight;
    for (const auto& [t, c] : f.terms()) {
        auto w = decreasing_rearrangement(t);
        double ratio = w.empty() ? 1.0 : w[0];
        for (std::size_t k = 1; k < w.size(); ++k) ratio /= w[k];
        double val = std::pow(ratio, s) * std::abs(c) / orbit_size(t);
        ModeVector b = momentum(t);
        std::uint64_t key = pack(LatticeIndex{1, b});
        auto [it, fresh] = sup.try_emplace(key, val);
        if (!fresh) it->second = std::max(it->second, val);
        if (fresh) bweight[key] = weight(b);
    }
    double acc = 0.0;
    for (const auto& [key, v] : sup)
        acc += std::pow(bweight[key], N - s) * v;
    return acc;
}

HomogeneousPolynomial poisson_bracket(const HomogeneousPolynomial& f,
                                      const HomogeneousPolynomial& g) {
    if (f.empty() || g.empty()) return {};
    if (f.dim() != g.dim())
        throw std::invalid_argument("poisson_bracket: dimension mismatch");
    int out_order = f.order() + g.order() - 2;
    HomogeneousPolynomial out(out_order, f.dim());
    if (out_order < 1) return {};  // scalar result collapses

    std::vector<std::pair<const IndexTuple*, SlotCounts>> gslots;
    gslots.reserve(g.terms().size());
    for (const auto& [t, c] : g.terms()) gslots.emplace_back(&t, slot_counts(t));

    std::size_t gi = 0;
    for (const auto& [tg, cg] : g.terms()) {
        const SlotCounts& sg = gslots[gi++].second;
        for (const auto& [tf, cf] : f.terms()) {
            SlotCounts sf = slot_counts(tf);
            for (std::size_t u = 0; u < sf.slots.size(); ++u) {
                const LatticeIndex& jf = sf.slots[u];
                LatticeIndex jbar = conjugate(jf);
                for (std::size_t v = 0; v < sg.slots.size(); ++v) {
                    if (!(sg.slots[v] == jbar)) continue;
                    // contraction over mode a = jf.a:
                    //   delta=+1 slot in f pairs with the df/dxi dg/dxibar term,
                    //   delta=-1 slot with the opposite sign.
                    double n = static_cast<double>(sf.counts[u] * sg.counts[v]);
                    Complex coef = (jf.delta > 0 ? -kI : kI) * cf * cg * n;
                    IndexTuple merged = remove_one(tf, jf);
                    IndexTuple grem = remove_one(tg, jbar);
                    merged.entries.insert(merged.entries.end(),
                                          grem.entries.begin(), grem.entries.end());
                    out.add_term(merged, coef);
                }
            }
        }
    }
    return out;
}

TangentVector vector_field(const HomogeneousPolynomial& f, const StateVector& z) {
    TangentVector out;
    for (const auto& [t, c] : f.terms()) {
        SlotCounts sc = slot_counts(t);
        for (std::size_t u = 0; u < sc.slots.size(); ++u) {
            const LatticeIndex& j = sc.slots[u];
            if (!z.contains(j.a))
                throw std::out_of_range("vector_field: mode outside state cutoff");
            // derivative of the monomial with respect to z_j
            Complex prod = c * static_cast<double>(sc.counts[u]);
            IndexTuple rest = remove_one(t, j);
            for (const auto& e : rest.entries) prod *= z.z(e);
            std::uint64_t key = pack_mode(j.a);
            if (j.delta < 0)
                out.dxi[key] += -kI * prod;       // -i dH/dxibar_a
            else
                out.dxibar[key] += kI * prod;     // -i (-dH/dxi_a)
        }
    }
    return out;
}

bool reality_check(const HomogeneousPolynomial& f) {
    for (const auto& [t, c] : f.terms()) {
        Complex partner = f.orbit_coefficient(conjugate(t));
        if (std::abs(partner - std::conj(c)) > 1e-12 * (1.0 + std::abs(c)))
            return false;
    }
    return true;
}

bool PolynomialFamily::empty() const {
    for (const auto& [n, p] : parts)
        if (!p.empty()) return false;
    return true;
}

int PolynomialFamily::min_order() const {
    for (const auto& [n, p] : parts)
        if (!p.empty()) return n;
    return 0;
}

int PolynomialFamily::max_order() const {
    int m = 0;
    for (const auto& [n, p] : parts)
        if (!p.empty()) m = n;
    return m;
}

const HomogeneousPolynomial* PolynomialFamily::part(int order) const {
    auto it = parts.find(order);
    return it == parts.end() ? nullptr : &it->second;
}

void PolynomialFamily::add_part(const HomogeneousPolynomial& p) {
    if (p.empty()) return;
    auto it = parts.find(p.order());
    if (it == parts.end()) parts.emplace(p.order(), p);
    else it->second += p;
}

double family_norm(const PolynomialFamily& F, double s, double N, double R) {
    if (R <= 0.0) throw std::invalid_argument("family_norm: requires R > 0");
    double acc = 0.0;
    for (const auto& [n, p] : F.parts) {
        if (p.empty()) continue;
        acc += sn_norm(p, s, N) * std::pow(R, n - 2);
    }
    return acc;
}

Complex evaluate(const PolynomialFamily& F, const StateVector& z) {
    Complex acc{};
    for (const auto& [n, p] : F.parts) acc += evaluate(p, z);
    return acc;
}

TangentVector vector_field(const PolynomialFamily& F, const StateVector& z) {
    TangentVector out;
    for (const auto& [n, p] : F.parts) {
        TangentVector v = vector_field(p, z);
        for (const auto& [k, c] : v.dxi) out.dxi[k] += c;
        for (const auto& [k, c] : v.dxibar) out.dxibar[k] += c;
    }
    return out;
}

bool reality_check(const PolynomialFamily& F) {
    for (const auto& [n, p] : F.parts)
        if (!reality_check(p)) return false;
    return true;
}

std::map<long long, double> super_actions(const StateVector& z) {
    std::map<long long, double> out;
    z.for_each_mode([&](const ModeVector& a) {
        out[norm_sq(a)] += std::norm(z.at(a));
    });
    return out;
}

std::unordered_map<std::uint64_t, double> actions(const StateVector& z) {
    std::unordered_map<std::uint64_t, double> out;
    z.for_each_mode([&](const ModeVector& a) {
        out[pack_mode(a)] = std::norm(z.at(a));
    });
    return out;
}

std::uint64_t pack_mode(const ModeVector& a) { return pack(LatticeIndex{1, a}); }

ModeVector unpack_mode(std::uint64_t key) {
    ModeVector a{};
    for (int k = kMaxDim - 1; k >= 0; --k) {
        a[k] = static_cast<int>(key & 0xfffu) - 2048;
        key >>= 12;
    }
    return a;
}

}  // namespace bnf
