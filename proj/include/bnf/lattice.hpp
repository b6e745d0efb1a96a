#pragma once

#include <array>
#include <cstdint>
#include <cmath>
#include <vector>

namespace bnf {

// Maximum spatial dimension supported at runtime.
inline constexpr int kMaxDim = 4;

using ModeVector = std::array<int, kMaxDim>;

inline ModeVector mode1(int a0) { return ModeVector{a0, 0, 0, 0}; }
inline ModeVector mode2(int a0, int a1) { return ModeVector{a0, a1, 0, 0}; }

/// Signed Fourier index j = (delta, a) with delta in {+1,-1}.
/// Coordinates beyond the active dimension are kept at zero, so values
/// with different runtime dimensions still compare and hash consistently.
struct LatticeIndex {
    int delta = 1;
    ModeVector a{};

    friend bool operator==(const LatticeIndex&, const LatticeIndex&) = default;
};

/// Canonical total order: delta descending (+1 first), then lexicographic a.
inline bool operator<(const LatticeIndex& x, const LatticeIndex& y) {
    if (x.delta != y.delta) return x.delta > y.delta;
    return x.a < y.a;
}

inline LatticeIndex conjugate(const LatticeIndex& j) { return {-j.delta, j.a}; }

/// |a|^2 as an exact integer; used for modulus classes.
inline long long norm_sq(const ModeVector& a) {
    long long s = 0;
    for (int c : a) s += static_cast<long long>(c) * c;
    return s;
}

/// <a> = 1 + |a|
inline double weight(const ModeVector& a) {
    return 1.0 + std::sqrt(static_cast<double>(norm_sq(a)));
}

inline double weight(const LatticeIndex& j) { return weight(j.a); }

/// Packs an index into 64 bits for hashing. Coordinates must lie in
/// [-2047, 2047], far beyond any cutoff used here.
inline std::uint64_t pack(const LatticeIndex& j) {
    std::uint64_t v = j.delta > 0 ? 1u : 0u;
    for (int k = 0; k < kMaxDim; ++k)
        v = (v << 12) | static_cast<std::uint64_t>(j.a[k] + 2048);
    return v;
}

/// Ordered tuple of lattice indices. canonical() sorts entries by the
/// fixed total order; all permutation-invariant quantities (momentum,
/// weights, resonance class) may be computed on either form.
struct IndexTuple {
    std::vector<LatticeIndex> entries;

    IndexTuple() = default;
    explicit IndexTuple(std::vector<LatticeIndex> e) : entries(std::move(e)) {}
    IndexTuple(std::initializer_list<LatticeIndex> e) : entries(e) {}

    std::size_t size() const { return entries.size(); }
    IndexTuple canonical() const;

    friend bool operator==(const IndexTuple&, const IndexTuple&) = default;
};

struct IndexTupleHash {
    std::size_t operator()(const IndexTuple& t) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        for (const auto& j : t.entries) {
            std::uint64_t x = pack(j) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            x ^= x >> 30; x *= 0xbf58476d1ce4e5b9ull;
            x ^= x >> 27; x *= 0x94d049bb133111ebull;
            x ^= x >> 31;
            h ^= x;
            h *= 0x100000001b3ull;
        }
        return static_cast<std::size_t>(h);
    }
};

/// M(j) = delta_1 a_1 + ... + delta_l a_l
ModeVector momentum(const IndexTuple& t);

/// Weights <j_k> sorted descending.
std::vector<double> decreasing_rearrangement(const IndexTuple& t);

/// True iff a sign-flipping permutation matches entries by modulus |a|:
/// in every |a|^2 class the counts of delta=+1 and delta=-1 entries agree.
bool is_super_action_resonant(const IndexTuple& t);

/// True iff a sign-flipping permutation matches entries exactly by a.
bool is_action_resonant(const IndexTuple& t);

/// j_1* <= <M(j)> j_2* (prod_{k>=3} j_k*)^(2/3); holds for every tuple.
bool check_rearrangement_bound(const IndexTuple& t);

/// Conjugates every entry (all deltas flipped), preserving order.
IndexTuple conjugate(const IndexTuple& t);

/// Number of distinct ordered permutations of the tuple's entries,
/// l! / prod(multiplicity!).  Returned as double (l stays small).
double orbit_size(const IndexTuple& t);

}  // namespace bnf
