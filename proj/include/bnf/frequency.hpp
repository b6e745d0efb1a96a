#pragma once

#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "bnf/lattice.hpp"

namespace bnf {

enum class FrequencyKind { NLW, NLS, Custom };

enum class ResonanceClass { SuperAction, Action };  // J_l vs I_l

/// Frequency family omega_a.
///   NLW (d=1):  omega_a = sqrt(a^2 + m), mass m in [1,2].
///   NLS:        omega_a = |a|^2 + v_a / <a>^decay, v_a in [-1/2,1/2]
///               tabulated for |a|_inf <= cutoff.
///   Custom:     explicit table.
class FrequencyModel {
public:
    static FrequencyModel nlw(double mass);
    static FrequencyModel nls(int dim, double decay,
                              std::unordered_map<std::uint64_t, double> v_table,
                              int cutoff);
    static FrequencyModel custom(int dim,
                                 std::unordered_map<std::uint64_t, double> omega_table,
                                 int cutoff);

    FrequencyKind kind() const { return kind_; }
    int dim() const { return dim_; }
    double mass() const { return mass_; }
    double decay() const { return decay_; }
    int cutoff() const { return cutoff_; }
    const std::unordered_map<std::uint64_t, double>& table() const { return table_; }

    double frequency(const ModeVector& a) const;
    double small_divisor(const IndexTuple& t) const;

private:
    FrequencyKind kind_ = FrequencyKind::NLW;
    int dim_ = 1;
    double mass_ = 1.0;          // NLW
    double decay_ = 2.0;         // NLS
    int cutoff_ = -1;            // -1: unbounded (NLW)
    std::unordered_map<std::uint64_t, double> table_;  // NLS: v_a, Custom: omega_a
};

/// gamma (j1* / (<M(j)> j2* ... jl*))^tau
double threshold(const IndexTuple& t, double gamma, double tau);

struct ResonanceViolation {
    IndexTuple tuple;
    double divisor;
    double bound;
};

/// Enumerates unordered tuples (multisets with signs) of length 3..r over
/// modes |a|_inf <= cutoff, skips the chosen resonant class, and returns
/// those with |sum delta omega| < threshold. With momentum_zero_only set,
/// only momentum-zero tuples are scanned.
std::vector<ResonanceViolation> check_nonresonant_up_to_order(
    const FrequencyModel& model, int r, double gamma, double tau, int cutoff,
    ResonanceClass cls, bool momentum_zero_only = false,
    std::size_t max_violations = 1000);

/// Verifies the NLW frequency-gap inequalities
///   omega_0^-2 - omega_1^-2 >= 1/6,
///   omega_0^-2 - omega_a^-2 >= 1/3          (a >= 2),
///   omega_b^-2 - omega_a^-2 >  <b>^-3       (a > b >= 1)
/// for modes up to the cutoff.
bool check_nlw_gap_bounds(double mass, int cutoff = 64);

/// Visits every signed multiset of the given length drawn from modes
/// |a|_inf <= cutoff (entries nondecreasing in the canonical order).
void for_each_tuple(int dim, int cutoff, int length,
                    const std::function<void(const IndexTuple&)>& fn);

}  // namespace bnf
